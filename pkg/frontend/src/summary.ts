/** Table-style summary of placement files, with published reference counts inline. */

import { PlacementDoc, ShellParams } from "./placement.js";

const KNOWN_SHELLS: Array<{ name: string; shell: ShellParams }> = [
  { name: "starlink-a", shell: { planes: 72, sats_per_plane: 22, altitude_km: 550, inclination_deg: 53.0 } },
  { name: "starlink-b", shell: { planes: 5, sats_per_plane: 75, altitude_km: 1275, inclination_deg: 81.0 } },
  { name: "kuiper-a", shell: { planes: 34, sats_per_plane: 34, altitude_km: 630, inclination_deg: 51.9 } },
  { name: "kuiper-b", shell: { planes: 28, sats_per_plane: 28, altitude_km: 590, inclination_deg: 33.0 } },
];

const SLO_COLUMNS = ["hops:1", "hops:4", "mean:10ms", "max:10ms", "mean:100ms", "max:100ms"];

/** Published resource-node counts per shell and SLO. */
const REFERENCE_COUNTS: Record<string, Record<string, number>> = {
  "starlink-a": { "hops:1": 354, "hops:4": 55, "mean:10ms": 94, "max:10ms": 135, "mean:100ms": 2, "max:100ms": 2 },
  "starlink-b": { "hops:1": 75, "hops:4": 17, "mean:10ms": 45, "max:10ms": 45, "mean:100ms": 2, "max:100ms": 2 },
  "kuiper-a": { "hops:1": 245, "hops:4": 41, "mean:10ms": 128, "max:10ms": 106, "mean:100ms": 2, "max:100ms": 2 },
  "kuiper-b": { "hops:1": 178, "hops:4": 25, "mean:10ms": 80, "max:10ms": 178, "mean:100ms": 2, "max:100ms": 2 },
};

function shellName(shell: ShellParams): string {
  for (const known of KNOWN_SHELLS) {
    if (
      known.shell.planes === shell.planes &&
      known.shell.sats_per_plane === shell.sats_per_plane &&
      known.shell.altitude_km === shell.altitude_km &&
      known.shell.inclination_deg === shell.inclination_deg
    ) {
      return known.name;
    }
  }
  return `${shell.planes}x${shell.sats_per_plane}@${shell.altitude_km}km`;
}

function pad(text: string, width: number): string {
  return text.length >= width ? text : text + " ".repeat(width - text.length);
}

export function renderSummary(docs: PlacementDoc[]): string {
  const cells = new Map<string, Map<string, string>>();
  const nodes = new Map<string, number>();
  const extraColumns: string[] = [];
  for (const doc of docs) {
    const name = shellName(doc.shell);
    nodes.set(name, doc.shell.planes * doc.shell.sats_per_plane);
    if (!cells.has(name)) cells.set(name, new Map());
    const reference = REFERENCE_COUNTS[name]?.[doc.slo];
    const cell =
      reference === undefined ? `${doc.resourceCount}` : `${doc.resourceCount} (paper ${reference})`;
    cells.get(name)!.set(doc.slo, cell);
    if (!SLO_COLUMNS.includes(doc.slo) && !extraColumns.includes(doc.slo)) {
      extraColumns.push(doc.slo);
    }
  }
  const columns = [...SLO_COLUMNS, ...extraColumns].filter((slo) =>
    [...cells.values()].some((row) => row.has(slo)),
  );
  const rows: string[][] = [["shell", "nodes", ...columns]];
  const order = [...cells.keys()].sort(
    (a, b) =>
      KNOWN_SHELLS.findIndex((k) => k.name === a) - KNOWN_SHELLS.findIndex((k) => k.name === b),
  );
  for (const name of order) {
    const row = [name, String(nodes.get(name))];
    for (const slo of columns) {
      row.push(cells.get(name)!.get(slo) ?? "-");
    }
    rows.push(row);
  }
  const widths = rows[0].map((_, col) => Math.max(...rows.map((row) => row[col].length)));
  return rows
    .map((row) => row.map((cell, col) => pad(cell, widths[col])).join("  ").trimEnd())
    .join("\n");
}
