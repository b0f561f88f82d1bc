#!/usr/bin/env node
/**
 * Figure and summary generation from leoplace output files.
 *
 *   leoplace-plots timeseries --metric max --input label=series.csv [...] \
 *       [--slo-km 2997.92] [--title "..."] --out chart.png
 *   leoplace-plots summary placement.json [...]
 */

import { parseArgs } from "node:util";
import { readFileSync, writeFileSync } from "node:fs";

import { parseAggregateCsv, CsvFormatError } from "./csv.js";
import { parsePlacementFile, PlacementFormatError } from "./placement.js";
import { renderChart, FigureSpec } from "./chart.js";
import { renderSummary } from "./summary.js";

function fail(message: string): never {
  throw new CliUsageError(message);
}

class CliUsageError extends Error {}

function timeseriesCommand(argv: string[]): number {
  const { values } = parseArgs({
    args: argv,
    options: {
      input: { type: "string", multiple: true },
      metric: { type: "string" },
      "slo-km": { type: "string" },
      title: { type: "string" },
      out: { type: "string" },
    },
  });
  const inputs = values.input ?? [];
  if (inputs.length === 0) fail("need at least one --input label=path");
  const metric = values.metric ?? "max";
  if (metric !== "mean" && metric !== "max") fail(`--metric must be mean or max, got ${metric}`);
  if (!values.out) fail("missing --out");
  const sloKm = values["slo-km"] === undefined ? undefined : Number(values["slo-km"]);
  if (sloKm !== undefined && !(sloKm > 0)) fail("--slo-km must be a positive number");

  const spec: FigureSpec = { series: [], metric, sloKm, title: values.title };
  for (const input of inputs) {
    const eq = input.indexOf("=");
    if (eq <= 0) fail(`--input must look like label=path, got ${input}`);
    const label = input.slice(0, eq);
    const path = input.slice(eq + 1);
    spec.series.push({ label, series: parseAggregateCsv(readFileSync(path, "utf-8"), path) });
  }
  writeFileSync(values.out, renderChart(spec));
  console.log(`wrote ${values.out}`);
  return 0;
}

function summaryCommand(argv: string[]): number {
  const { positionals } = parseArgs({ args: argv, allowPositionals: true, options: {} });
  if (positionals.length === 0) fail("need at least one placement file");
  const docs = positionals.map((path) =>
    parsePlacementFile(readFileSync(path, "utf-8"), path),
  );
  console.log(renderSummary(docs));
  return 0;
}

export function runCli(argv: string[]): number {
  try {
    const [command, ...rest] = argv;
    if (command === "timeseries") return timeseriesCommand(rest);
    if (command === "summary") return summaryCommand(rest);
    fail(`unknown command ${command ?? "(none)"}; expected timeseries or summary`);
  } catch (err) {
    if (err instanceof CliUsageError) {
      console.error(`leoplace-plots: usage error: ${err.message}`);
      return 1;
    }
    if (err instanceof CsvFormatError || err instanceof PlacementFormatError) {
      console.error(`leoplace-plots: ${err.message}`);
      return 2;
    }
    if ((err as NodeJS.ErrnoException).code !== undefined) {
      console.error(`leoplace-plots: ${(err as Error).message}`);
      return 2;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(runCli(process.argv.slice(2)));
}
