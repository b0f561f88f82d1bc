"""Command-line front end: presets, placement files, simulation, SLO verification.

Subcommands: ``place``, ``simulate``, ``verify``, ``shells``.  Exit codes:
0 success/adherent, 1 usage error, 2 input-file error, 3 SLO violation,
4 output write error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .errors import DomainError, NoSuchLink
from .geom import DEFAULT_CONSTANTS, HopWeights, PhysicalConstants, ShellParams, orbital_period
from .orbitsim import SimConfig, TimeSeries, run_simulation
from .torus import DiscretePlacement, TorusCoord, assign_resources
from .wplace import SloSpec, WeightedPlacement, placement_for_slo, slo_distance_km

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_VIOLATION = 3
EXIT_OUTPUT = 4

PRESETS: dict[str, ShellParams] = {
    "starlink-a": ShellParams(72, 22, 550.0, 53.0),
    "starlink-b": ShellParams(5, 75, 1275.0, 81.0),
    "kuiper-a": ShellParams(34, 34, 630.0, 51.9),
    "kuiper-b": ShellParams(28, 28, 590.0, 33.0),
}

AGGREGATE_HEADER = "t_s,mean_km,max_km"
PER_NODE_HEADER = "t_s,plane,slot,distance_km"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# --- config files -----------------------------------------------------------

CONFIG_KEYS = {
    "shell.planes",
    "shell.sats_per_plane",
    "shell.altitude_km",
    "shell.inclination_deg",
    "constants.earth_radius_km",
    "constants.mu",
    "constants.c_km_s",
    "sim.duration_s",
    "sim.step_s",
}


def load_config(path: str) -> dict[str, float]:
    """Parse a `key = value` config file; '#' starts a comment."""
    values: dict[str, float] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise CliError(EXIT_INPUT, f"{path}:{lineno}: expected key = value")
                key, _, value = line.partition("=")
                key = key.strip()
                if key not in CONFIG_KEYS:
                    raise CliError(EXIT_INPUT, f"{path}:{lineno}: unknown key {key!r}")
                try:
                    values[key] = float(value.strip())
                except ValueError:
                    raise CliError(EXIT_INPUT, f"{path}:{lineno}: bad number {value.strip()!r}")
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read config {path}: {exc}")
    return values


def shell_from_config(values: dict[str, float], path: str) -> ShellParams:
    needed = ["shell.planes", "shell.sats_per_plane", "shell.altitude_km", "shell.inclination_deg"]
    missing = [k for k in needed if k not in values]
    if missing:
        raise CliError(EXIT_INPUT, f"{path}: missing {', '.join(missing)}")
    return ShellParams(
        int(values["shell.planes"]),
        int(values["shell.sats_per_plane"]),
        values["shell.altitude_km"],
        values["shell.inclination_deg"],
    )


def constants_from_config(values: dict[str, float]) -> PhysicalConstants:
    return PhysicalConstants(
        earth_radius_km=values.get("constants.earth_radius_km", DEFAULT_CONSTANTS.earth_radius_km),
        mu_m3_s2=values.get("constants.mu", DEFAULT_CONSTANTS.mu_m3_s2),
        c_km_s=values.get("constants.c_km_s", DEFAULT_CONSTANTS.c_km_s),
    )


def resolve_shell(name_or_path: str) -> tuple[ShellParams, dict[str, float]]:
    """A preset name, or a config file defining the shell.* keys."""
    if name_or_path in PRESETS:
        return PRESETS[name_or_path], {}
    import os

    if not os.path.exists(name_or_path):
        raise CliError(
            EXIT_INPUT,
            f"unknown shell {name_or_path!r}: not a preset "
            f"({', '.join(sorted(PRESETS))}) and no such config file",
        )
    values = load_config(name_or_path)
    return shell_from_config(values, name_or_path), values


# --- placement files ---------------------------------------------------------

@dataclass
class PlacementFile:
    """On-disk placement: shell, SLO, metric weights, bound, resources, assignment."""

    shell: ShellParams
    slo: SloSpec
    weights: HopWeights | None
    d_km: float | None
    d_hops: int | None
    epsilon_km: float
    max_distance_km: float | None
    resources: tuple[TorusCoord, ...]
    assignment: dict[TorusCoord, TorusCoord]
    version: str = __version__

    @classmethod
    def from_placement(
        cls, shell: ShellParams, slo: SloSpec, placement: DiscretePlacement | WeightedPlacement
    ) -> "PlacementFile":
        if isinstance(placement, WeightedPlacement):
            return cls(
                shell,
                slo,
                placement.weights,
                placement.d_km,
                None,
                placement.epsilon_km,
                placement.max_distance_km,
                placement.resources,
                placement.assignment,
            )
        return cls(
            shell, slo, None, None, placement.d, 0.0, None,
            placement.resources, placement.assignment,
        )

    def to_placement(self) -> DiscretePlacement | WeightedPlacement:
        dims = self.shell.dims
        if self.weights is None:
            return DiscretePlacement(dims, self.d_hops, self.resources, self.assignment)
        return WeightedPlacement(
            dims, self.weights, self.d_km, self.resources, self.assignment,
            self.epsilon_km, self.max_distance_km,
        )

    def to_json(self) -> str:
        doc = {
            "format": "leoplace-placement",
            "version": self.version,
            "shell": {
                "planes": self.shell.planes,
                "sats_per_plane": self.shell.sats_per_plane,
                "altitude_km": self.shell.altitude_km,
                "inclination_deg": self.shell.inclination_deg,
            },
            "slo": str(self.slo),
            "weights_km": None
            if self.weights is None
            else {
                "inter_plane": self.weights.inter_plane_km,
                "intra_plane": self.weights.intra_plane_km,
                "metric_kind": self.weights.metric_kind,
            },
            "d_km": self.d_km,
            "d_hops": self.d_hops,
            "epsilon_km": self.epsilon_km,
            "max_distance_km": self.max_distance_km,
            "resources": [[p, s] for p, s in self.resources],
            "assignment": {f"{p},{s}": [rp, rs] for (p, s), (rp, rs) in sorted(self.assignment.items())},
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str, path: str = "<placement>") -> "PlacementFile":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(EXIT_INPUT, f"{path}: not valid JSON: {exc}")
        try:
            if doc.get("format") != "leoplace-placement":
                raise KeyError("format")
            sh = doc["shell"]
            shell = ShellParams(
                int(sh["planes"]), int(sh["sats_per_plane"]),
                float(sh["altitude_km"]), float(sh["inclination_deg"]),
            )
            slo = SloSpec.parse(doc["slo"])
            weights = None
            if doc["weights_km"] is not None:
                w = doc["weights_km"]
                weights = HopWeights(float(w["inter_plane"]), float(w["intra_plane"]), w["metric_kind"])
            resources = tuple(TorusCoord(int(p), int(s)) for p, s in doc["resources"])
            assignment = {}
            for key, (rp, rs) in doc["assignment"].items():
                p, s = key.split(",")
                assignment[TorusCoord(int(p), int(s))] = TorusCoord(int(rp), int(rs))
            d_km = None if doc["d_km"] is None else float(doc["d_km"])
            d_hops = None if doc["d_hops"] is None else int(doc["d_hops"])
            max_km = None if doc["max_distance_km"] is None else float(doc["max_distance_km"])
            out = cls(
                shell, slo, weights, d_km, d_hops, float(doc["epsilon_km"]),
                max_km, resources, assignment, str(doc.get("version", "")),
            )
        except (KeyError, TypeError, ValueError, DomainError) as exc:
            raise CliError(EXIT_INPUT, f"{path}: invalid placement file: {exc}")
        expected = shell.planes * shell.sats_per_plane
        if len(out.assignment) != expected:
            raise CliError(
                EXIT_INPUT,
                f"{path}: assignment covers {len(out.assignment)} of {expected} nodes",
            )
        return out


def read_placement_file(path: str) -> PlacementFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read placement {path}: {exc}")
    return PlacementFile.from_json(text, path)


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(EXIT_OUTPUT, f"cannot write {path}: {exc}")


# --- time-series CSV ----------------------------------------------------------

def write_aggregate_csv(path: str, series: TimeSeries) -> None:
    lines = [AGGREGATE_HEADER]
    for t, mean, mx in zip(series.times_s, series.mean_km, series.max_km):
        lines.append(f"{t:.6g},{mean:.6g},{mx:.6g}")
    _write_text(path, "\n".join(lines) + "\n")


def write_per_node_csv(path: str, series: TimeSeries) -> None:
    n, m = series.dims
    lines = [PER_NODE_HEADER]
    for k, t in enumerate(series.times_s):
        row = series.per_node_km[k]
        for p in range(n):
            base = p * m
            for s in range(m):
                lines.append(f"{t:.6g},{p},{s},{row[base + s]:.6g}")
    _write_text(path, "\n".join(lines) + "\n")


def read_timeseries_csv(path: str) -> tuple[str, list[list[float]]]:
    """Returns ("aggregate" | "per_node", parsed rows)."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read time series {path}: {exc}")
    if not lines:
        raise CliError(EXIT_INPUT, f"{path}: empty file, expected a CSV header")
    header = lines[0]
    if header == AGGREGATE_HEADER:
        kind, width = "aggregate", 3
    elif header == PER_NODE_HEADER:
        kind, width = "per_node", 4
    else:
        raise CliError(EXIT_INPUT, f"{path}: unexpected header {header!r}")
    if len(lines) == 1:
        raise CliError(EXIT_INPUT, f"{path}: no data rows")
    rows = []
    for lineno, line in enumerate(lines[1:], 2):
        parts = line.split(",")
        if len(parts) != width:
            raise CliError(EXIT_INPUT, f"{path}:{lineno}: expected {width} fields")
        try:
            rows.append([float(x) for x in parts])
        except ValueError:
            raise CliError(EXIT_INPUT, f"{path}:{lineno}: bad number")
    return kind, rows


# --- subcommands ---------------------------------------------------------------

def place_cmd(args) -> int:
    try:
        slo = SloSpec.parse(args.slo)
    except DomainError as exc:
        raise CliError(EXIT_USAGE, str(exc))
    shell, config = resolve_shell(args.shell)
    consts = constants_from_config(config)
    try:
        placement = placement_for_slo(shell, slo, consts)
    except (DomainError, NoSuchLink) as exc:
        raise CliError(EXIT_INPUT, f"cannot place on this shell: {exc}")
    record = PlacementFile.from_placement(shell, slo, placement)
    _write_text(args.out, record.to_json() + "\n")
    print(f"shell: {args.shell} ({shell.planes}x{shell.sats_per_plane})")
    print(f"slo: {slo}")
    print(f"resources: {len(placement.resources)}")
    if isinstance(placement, WeightedPlacement):
        print(f"epsilon_bound_km: {placement.epsilon_km:.6g}")
        print(f"max_weighted_distance_km: {placement.max_distance_km:.6g}")
    else:
        print("epsilon_bound_km: 0")
    print(f"wrote {args.out}")
    return EXIT_OK


def simulate_cmd(args) -> int:
    record = read_placement_file(args.placement)
    config_values = load_config(args.config) if args.config else {}
    consts = constants_from_config(config_values)
    if args.paper_scale:
        duration = 86400.0
        step = 1.0
    else:
        duration = config_values.get("sim.duration_s", orbital_period(record.shell, consts))
        step = config_values.get("sim.step_s", 10.0)
    if args.duration is not None:
        duration = args.duration
    if args.step is not None:
        step = args.step
    try:
        sim_config = SimConfig(duration_s=duration, step_s=step)
        placement = record.to_placement()
        series = run_simulation(record.shell, placement, sim_config, consts)
    except DomainError as exc:
        raise CliError(EXIT_INPUT, str(exc))
    write_aggregate_csv(args.out, series)
    print(f"simulated {len(series.times_s)} steps of {step:g} s")
    print(f"worst distance: {series.max_km.max():.6g} km")
    print(f"wrote {args.out}")
    if args.per_node:
        write_per_node_csv(args.per_node, series)
        print(f"wrote {args.per_node}")
    return EXIT_OK


def verify_cmd(args) -> int:
    try:
        slo = SloSpec.parse(args.slo)
    except DomainError as exc:
        raise CliError(EXIT_USAGE, str(exc))
    if slo.kind == "hops":
        raise CliError(EXIT_USAGE, "hop SLOs cannot be verified against a distance time series")
    bound_km = slo_distance_km(slo)
    kind, rows = read_timeseries_csv(args.timeseries)
    if slo.kind == "max":
        if kind == "aggregate":
            worst = max(row[2] for row in rows)
        else:
            worst = max(row[3] for row in rows)
        label = "per-timestep max distance"
    else:
        if kind != "per_node":
            raise CliError(
                EXIT_INPUT, "mean SLO verification needs a per-node CSV (simulate --per-node)"
            )
        sums: dict[tuple[int, int], list[float]] = {}
        for _, plane, slot, dist in rows:
            acc = sums.setdefault((int(plane), int(slot)), [0.0, 0])
            acc[0] += dist
            acc[1] += 1
        worst = max(total / count for total, count in sums.values())
        label = "per-node time-mean distance"
    margin = bound_km - worst
    adherent = worst <= bound_km + 1e-9
    print(f"slo: {slo} ({bound_km:.6g} km)")
    print(f"worst {label}: {worst:.6g} km")
    print(f"margin: {margin:.6g} km")
    print(f"adherent: {'yes' if adherent else 'no'}")
    return EXIT_OK if adherent else EXIT_VIOLATION


def shells_cmd(_args) -> int:
    for name, shell in PRESETS.items():
        print(
            f"{name}: {shell.planes} planes x {shell.sats_per_plane} sats, "
            f"{shell.altitude_km:g} km, {shell.inclination_deg:g} deg "
            f"({shell.planes * shell.sats_per_plane} nodes)"
        )
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; this tool reserves 2 for input files
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="leoplace", description=__doc__)
    parser.add_argument("--version", action="version", version=f"leoplace {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_place = sub.add_parser("place", help="construct a resource placement")
    p_place.add_argument("--shell", required=True, help="preset name or config file path")
    p_place.add_argument("--slo", required=True, help="hops:<int> | max:<v><ms|km> | mean:<v><ms|km>")
    p_place.add_argument("--out", required=True, help="placement JSON output path")
    p_place.set_defaults(func=place_cmd)

    p_sim = sub.add_parser("simulate", help="simulate resource distances")
    p_sim.add_argument("--placement", required=True, help="placement JSON path")
    p_sim.add_argument("--duration", type=float, help="seconds (default: one orbital period)")
    p_sim.add_argument("--step", type=float, help="seconds (default: 10)")
    p_sim.add_argument("--paper-scale", action="store_true", help="86400 s at 1 s steps")
    p_sim.add_argument("--config", help="config file for sim.*/constants.* defaults")
    p_sim.add_argument("--out", required=True, help="aggregate CSV output path")
    p_sim.add_argument("--per-node", help="also write a per-node CSV here")
    p_sim.set_defaults(func=simulate_cmd)

    p_verify = sub.add_parser("verify", help="check a time series against an SLO")
    p_verify.add_argument("--timeseries", required=True, help="CSV from simulate")
    p_verify.add_argument("--slo", required=True, help="max:<v><ms|km> | mean:<v><ms|km>")
    p_verify.set_defaults(func=verify_cmd)

    p_shells = sub.add_parser("shells", help="list built-in shell presets")
    p_shells.set_defaults(func=shells_cmd)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"leoplace: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
