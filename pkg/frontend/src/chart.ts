/** Time-series chart rendering: one line per series, optional SLO reference line. */

import { AggregateSeries } from "./csv.js";
import { Raster, Rgb } from "./raster.js";
import { textWidth } from "./font.js";

export interface LabeledSeries {
  label: string;
  series: AggregateSeries;
}

export interface FigureSpec {
  series: LabeledSeries[];
  metric: "mean" | "max";
  sloKm?: number;
  title?: string;
}

export const WIDTH = 800;
export const HEIGHT = 500;
export const MARGIN = { left: 80, right: 24, top: 48, bottom: 56 } as const;

export const SERIES_COLORS: Rgb[] = [
  [31, 119, 180],
  [255, 127, 14],
  [44, 160, 44],
  [148, 103, 189],
  [140, 86, 75],
  [227, 119, 194],
];
export const SLO_COLOR: Rgb = [214, 39, 40];
const AXIS_COLOR: Rgb = [0, 0, 0];
const GRID_COLOR: Rgb = [225, 225, 225];

export function plotArea() {
  return {
    x0: MARGIN.left,
    y0: MARGIN.top,
    x1: WIDTH - MARGIN.right,
    y1: HEIGHT - MARGIN.bottom,
  };
}

function niceStep(range: number, targetTicks: number): number {
  const raw = range / targetTicks;
  const magnitude = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const mult of [1, 2, 5, 10]) {
    if (mult * magnitude >= raw) return mult * magnitude;
  }
  return 10 * magnitude;
}

function formatTick(value: number): string {
  if (Math.abs(value) >= 1000 && Number.isInteger(value / 100)) {
    return `${value / 1000}k`;
  }
  return Number.isInteger(value) ? String(value) : value.toPrecision(3);
}

export function seriesValues(spec: FigureSpec, entry: LabeledSeries): number[] {
  return spec.metric === "mean" ? entry.series.mean : entry.series.max;
}

/** Pixel mapping shared by the renderer and by tests that inspect output. */
export function figureScales(spec: FigureSpec) {
  const tMin = Math.min(...spec.series.map((s) => Math.min(...s.series.t)));
  const tMax = Math.max(...spec.series.map((s) => Math.max(...s.series.t)));
  const vMax = Math.max(
    ...spec.series.map((s) => Math.max(...seriesValues(spec, s))),
    spec.sloKm ?? 0,
  );
  const area = plotArea();
  const yTop = vMax * 1.08 || 1.0;
  return {
    tMin,
    tMax,
    yTop,
    xScale: (t: number) =>
      area.x0 + ((t - tMin) / Math.max(tMax - tMin, 1e-12)) * (area.x1 - area.x0),
    yScale: (v: number) => area.y1 - (v / yTop) * (area.y1 - area.y0),
  };
}

export function renderChart(spec: FigureSpec): Buffer {
  if (spec.series.length === 0) {
    throw new Error("chart needs at least one input series");
  }
  const values = (entry: LabeledSeries) => seriesValues(spec, entry);
  const area = plotArea();
  const { tMin, tMax, yTop, xScale, yScale } = figureScales(spec);

  const raster = new Raster(WIDTH, HEIGHT);

  // gridlines and tick labels
  const yStep = niceStep(yTop, 5);
  for (let v = 0; v <= yTop + 1e-9; v += yStep) {
    const y = Math.round(yScale(v));
    if (v > 0) raster.line(area.x0, y, area.x1, y, GRID_COLOR);
    const label = formatTick(v);
    raster.text(area.x0 - 8 - textWidth(label), y - 3, label, AXIS_COLOR);
  }
  const xStep = niceStep(tMax - tMin || 1, 6);
  for (let t = tMin; t <= tMax + 1e-9; t += xStep) {
    const x = Math.round(xScale(t));
    raster.line(x, area.y1, x, area.y1 + 4, AXIS_COLOR);
    const label = formatTick(t);
    raster.text(x - textWidth(label) / 2, area.y1 + 8, label, AXIS_COLOR);
  }

  // axes
  raster.line(area.x0, area.y0, area.x0, area.y1, AXIS_COLOR);
  raster.line(area.x0, area.y1, area.x1, area.y1, AXIS_COLOR);
  raster.text(area.x0 + 4, area.y0 - 12, `${spec.metric} resource distance (km)`, AXIS_COLOR);
  const xLabel = "time (s)";
  raster.text((area.x0 + area.x1) / 2 - textWidth(xLabel) / 2, HEIGHT - 16, xLabel, AXIS_COLOR);
  if (spec.title) {
    raster.text(area.x0 + 4, 8, spec.title, AXIS_COLOR, 2);
  }

  // series polylines
  spec.series.forEach((entry, index) => {
    const color = SERIES_COLORS[index % SERIES_COLORS.length];
    const vs = values(entry);
    for (let i = 1; i < entry.series.t.length; i++) {
      raster.line(
        xScale(entry.series.t[i - 1]),
        yScale(vs[i - 1]),
        xScale(entry.series.t[i]),
        yScale(vs[i]),
        color,
      );
    }
  });

  // SLO reference line above the data so crossings stay visible
  if (spec.sloKm !== undefined) {
    raster.dashedHLine(yScale(spec.sloKm), area.x0, area.x1, SLO_COLOR);
    raster.text(area.x1 - 80, yScale(spec.sloKm) - 10, "slo", SLO_COLOR);
  }

  // legend, outside the plot area
  let legendX = area.x0 + 140;
  spec.series.forEach((entry, index) => {
    const color = SERIES_COLORS[index % SERIES_COLORS.length];
    raster.fillRect(legendX, area.y0 - 14, 10, 4, color);
    raster.text(legendX + 14, area.y0 - 16, entry.label, AXIS_COLOR);
    legendX += 14 + textWidth(entry.label) + 18;
  });

  return raster.toPng();
}
