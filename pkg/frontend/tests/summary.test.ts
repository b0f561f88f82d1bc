import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { join } from "node:path";

import { parsePlacementFile, PlacementFormatError } from "../src/placement.js";
import { renderSummary } from "../src/summary.js";

const FIXTURES = join(__dirname, "fixtures");

function load(name: string) {
  return parsePlacementFile(readFileSync(join(FIXTURES, name), "utf-8"), name);
}

describe("parsePlacementFile", () => {
  it("reads shell, slo and resource count", () => {
    const doc = load("starlink-b_hops1.json");
    expect(doc.shell.planes).toBe(5);
    expect(doc.shell.sats_per_plane).toBe(75);
    expect(doc.slo).toBe("hops:1");
    expect(doc.resourceCount).toBe(75);
  });

  it("rejects non-placement JSON", () => {
    expect(() => parsePlacementFile('{"format": "other"}')).toThrow(PlacementFormatError);
    expect(() => parsePlacementFile("{nope")).toThrow(PlacementFormatError);
  });
});

describe("renderSummary", () => {
  const files = [
    "starlink-b_hops1.json",
    "starlink-b_hops4.json",
    "starlink-b_mean10.json",
    "starlink-b_max10.json",
    "starlink-b_mean100.json",
    "starlink-b_max100.json",
    "kuiper-b_hops1.json",
  ];

  it("builds a shell-by-slo grid with reference counts inline", () => {
    const table = renderSummary(files.map(load));
    const lines = table.split("\n");
    expect(lines[0]).toMatch(/^shell\s+nodes\s+hops:1\s+hops:4\s+mean:10ms\s+max:10ms/);
    const starlinkRow = lines.find((l) => l.startsWith("starlink-b"));
    expect(starlinkRow).toBeDefined();
    expect(starlinkRow).toContain("375");
    expect(starlinkRow).toContain("75 (paper 75)");
    expect(starlinkRow).toContain("45 (paper 45)");
    expect(starlinkRow).toContain("2 (paper 2)");
    const kuiperRow = lines.find((l) => l.startsWith("kuiper-b"));
    expect(kuiperRow).toBeDefined();
    expect(kuiperRow).toContain("(paper 178)");
    // kuiper-b has no hops:4 file in this set
    expect(kuiperRow).toContain("-");
  });

  it("keeps shells in constellation order", () => {
    const table = renderSummary([load("kuiper-b_hops1.json"), load("starlink-b_hops1.json")]);
    const lines = table.split("\n");
    expect(lines[1]).toMatch(/^starlink-b/);
    expect(lines[2]).toMatch(/^kuiper-b/);
  });

  it("labels unknown shells by their parameters", () => {
    const doc = {
      shell: { planes: 3, sats_per_plane: 4, altitude_km: 700, inclination_deg: 60 },
      slo: "hops:1",
      resourceCount: 3,
    };
    const table = renderSummary([doc]);
    expect(table).toContain("3x4@700km");
    expect(table).not.toContain("paper");
  });

  it("is a pure function of its inputs", () => {
    const docs = files.map(load);
    expect(renderSummary(docs)).toBe(renderSummary(files.map(load)));
  });
});
