import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { existsSync, mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { runCli } from "../src/cli.js";

const FIXTURES = join(__dirname, "fixtures");

let workdir: string;

beforeEach(() => {
  workdir = mkdtempSync(join(tmpdir(), "leoplace-plots-"));
  vi.spyOn(console, "log").mockImplementation(() => {});
  vi.spyOn(console, "error").mockImplementation(() => {});
});

afterEach(() => {
  rmSync(workdir, { recursive: true, force: true });
  vi.restoreAllMocks();
});

describe("timeseries command", () => {
  it("writes a chart from labeled inputs", () => {
    const out = join(workdir, "chart.png");
    const code = runCli([
      "timeseries",
      "--metric", "max",
      "--slo-km", "2997.92",
      "--input", `starlink-b=${join(FIXTURES, "starlink-b_max10.csv")}`,
      "--input", `kuiper-b=${join(FIXTURES, "kuiper-b_max10.csv")}`,
      "--out", out,
    ]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
  });

  it("rejects a malformed input flag", () => {
    expect(runCli(["timeseries", "--input", "nolabel", "--out", join(workdir, "c.png")])).toBe(1);
  });

  it("rejects a bad metric", () => {
    const code = runCli([
      "timeseries",
      "--metric", "p99",
      "--input", `x=${join(FIXTURES, "starlink-b_max10.csv")}`,
      "--out", join(workdir, "c.png"),
    ]);
    expect(code).toBe(1);
  });

  it("fails on schema mismatch without writing a file", () => {
    const bad = join(workdir, "bad.csv");
    writeFileSync(bad, "a,b\n1,2\n");
    const out = join(workdir, "chart.png");
    const code = runCli(["timeseries", "--input", `bad=${bad}`, "--out", out]);
    expect(code).toBe(2);
    expect(existsSync(out)).toBe(false);
  });

  it("fails on an empty series without writing a file", () => {
    const empty = join(workdir, "empty.csv");
    writeFileSync(empty, "");
    const out = join(workdir, "chart.png");
    const code = runCli(["timeseries", "--input", `empty=${empty}`, "--out", out]);
    expect(code).toBe(2);
    expect(existsSync(out)).toBe(false);
  });

  it("fails cleanly on a missing file", () => {
    const code = runCli([
      "timeseries",
      "--input", `x=${join(workdir, "does-not-exist.csv")}`,
      "--out", join(workdir, "c.png"),
    ]);
    expect(code).toBe(2);
  });
});

describe("summary command", () => {
  it("prints the grid", () => {
    const log = vi.mocked(console.log);
    const code = runCli([
      "summary",
      join(FIXTURES, "starlink-b_hops1.json"),
      join(FIXTURES, "kuiper-b_hops1.json"),
    ]);
    expect(code).toBe(0);
    const output = log.mock.calls.map((c) => c.join(" ")).join("\n");
    expect(output).toContain("starlink-b");
    expect(output).toContain("75 (paper 75)");
  });

  it("needs at least one file", () => {
    expect(runCli(["summary"])).toBe(1);
  });

  it("rejects a non-placement file", () => {
    const bad = join(workdir, "bad.json");
    writeFileSync(bad, "{}");
    expect(runCli(["summary", bad])).toBe(2);
  });
});

it("rejects unknown commands", () => {
  expect(runCli(["frobnicate"])).toBe(1);
  expect(runCli([])).toBe(1);
});
