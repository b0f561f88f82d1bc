/** Readers for the simulator's time-series CSV formats. */

import Papa from "papaparse";

export const AGGREGATE_HEADER = ["t_s", "mean_km", "max_km"];

export interface AggregateSeries {
  t: number[];
  mean: number[];
  max: number[];
}

export class CsvFormatError extends Error {}

export function parseAggregateCsv(text: string, source = "<csv>"): AggregateSeries {
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new CsvFormatError(`${source}: ${parsed.errors[0].message}`);
  }
  const rows = parsed.data;
  if (rows.length === 0) {
    throw new CsvFormatError(`${source}: empty file, expected a CSV header`);
  }
  const header = rows[0];
  if (header.length !== 3 || !AGGREGATE_HEADER.every((h, i) => header[i] === h)) {
    throw new CsvFormatError(
      `${source}: expected header ${AGGREGATE_HEADER.join(",")}, got ${header.join(",")}`,
    );
  }
  if (rows.length === 1) {
    throw new CsvFormatError(`${source}: no data rows`);
  }
  const series: AggregateSeries = { t: [], mean: [], max: [] };
  for (let i = 1; i < rows.length; i++) {
    const row = rows[i];
    if (row.length !== 3) {
      throw new CsvFormatError(`${source}:${i + 1}: expected 3 fields, got ${row.length}`);
    }
    const values = row.map(Number);
    if (values.some(Number.isNaN)) {
      throw new CsvFormatError(`${source}:${i + 1}: non-numeric value`);
    }
    series.t.push(values[0]);
    series.mean.push(values[1]);
    series.max.push(values[2]);
  }
  return series;
}
