#!/usr/bin/env python3
"""Run the full experiment grid: every shell preset x every SLO.

Produces, under the output directory (default: results/):
  <shell>_<slo>.json        placement files
  <shell>_<slo>.csv         aggregate distance time series
  <shell>_<slo>_nodes.csv   per-node series (mean SLOs only, for verification)
  summary.txt               resource counts and verification verdicts

Desk-scale by default (one orbital period, 10 s steps); pass --paper-scale
for the full 86,400 s / 1 s run (slow).
"""

import argparse
import sys
from pathlib import Path

from leoplace.cli import EXIT_OK, EXIT_VIOLATION, PRESETS, main as cli_main, read_placement_file

SLOS = ["hops:1", "hops:4", "max:10ms", "mean:10ms", "max:100ms", "mean:100ms"]


def run(outdir: Path, paper_scale: bool) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    lines = []
    for preset in PRESETS:
        for slo in SLOS:
            tag = f"{preset}_{slo.replace(':', '-')}"
            placement = outdir / f"{tag}.json"
            agg = outdir / f"{tag}.csv"
            print(f"=== {preset} {slo}")
            code = cli_main(["place", "--shell", preset, "--slo", slo, "--out", str(placement)])
            if code != EXIT_OK:
                return code
            sim = ["simulate", "--placement", str(placement), "--out", str(agg)]
            per_node = None
            if slo.startswith("mean"):
                per_node = outdir / f"{tag}_nodes.csv"
                sim += ["--per-node", str(per_node)]
            if paper_scale:
                sim.append("--paper-scale")
            code = cli_main(sim)
            if code != EXIT_OK:
                return code
            if slo.startswith("hops"):
                verdict = "n/a (hop SLO)"
            else:
                series = per_node if slo.startswith("mean") else agg
                code = cli_main(["verify", "--timeseries", str(series), "--slo", slo])
                if code not in (EXIT_OK, EXIT_VIOLATION):
                    return code
                verdict = "adherent" if code == EXIT_OK else "violated"
            count = len(read_placement_file(str(placement)).resources)
            lines.append(f"{preset:12s} {slo:12s} resources={count:5d}  {verdict}")
    summary = "\n".join(lines) + "\n"
    (outdir / "summary.txt").write_text(summary)
    print("\n" + summary)
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results", help="output directory")
    parser.add_argument("--paper-scale", action="store_true", help="86,400 s at 1 s steps")
    args = parser.parse_args()
    sys.exit(run(Path(args.out), args.paper_scale))
