/**
 * Deterministic SVG line charts: objective value vs. budget k, one series
 * per heuristic. Geometry is the only place values are treated as numbers;
 * nothing from the data rows is reprinted except via the table module.
 */

import { DataError, SweepRecord } from "./csv.js";

export interface FigureSpec {
  /** sweep CSV path */
  input: string;
  /** objective column filter, e.g. "polarization" */
  objective: string;
  /** output SVG path */
  output: string;
  title?: string;
}

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { top: 48, right: 184, bottom: 56, left: 72 };

const PALETTE = [
  "#1b9e77",
  "#d95f02",
  "#7570b3",
  "#e7298a",
  "#66a61e",
  "#e6ab02",
  "#a6761d",
  "#666666",
];

interface Series {
  heuristic: string;
  points: Array<{ k: number; value: number }>;
}

function groupSeries(records: SweepRecord[], objective: string): Series[] {
  const filtered = records.filter((r) => r.objective === objective);
  if (filtered.length === 0) {
    const present = [...new Set(records.map((r) => r.objective))].sort();
    throw new DataError(
      `objective ${JSON.stringify(objective)} not present in CSV (found: ${present.join(", ")})`,
    );
  }
  const order: string[] = [];
  const byHeuristic = new Map<string, Series>();
  for (const r of filtered) {
    let series = byHeuristic.get(r.heuristic);
    if (!series) {
      series = { heuristic: r.heuristic, points: [] };
      byHeuristic.set(r.heuristic, series);
      order.push(r.heuristic);
    }
    series.points.push({ k: r.k, value: Number(r.value) });
  }
  for (const series of byHeuristic.values()) {
    series.points.sort((a, b) => a.k - b.k);
  }
  return order.map((h) => byHeuristic.get(h)!);
}

function ticks(lo: number, hi: number, count: number): number[] {
  const out: number[] = [];
  for (let i = 0; i < count; i++) {
    out.push(lo + ((hi - lo) * i) / (count - 1));
  }
  return out;
}

function fmtTick(x: number): string {
  if (x === 0) return "0";
  const rounded = Number(x.toPrecision(3));
  return String(rounded);
}

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Render the filtered sweep as a standalone SVG document. */
export function renderFigureSvg(
  records: SweepRecord[],
  objective: string,
  title?: string,
): string {
  const series = groupSeries(records, objective);
  const allPoints = series.flatMap((s) => s.points);
  const kLo = Math.min(...allPoints.map((p) => p.k));
  const kHi = Math.max(...allPoints.map((p) => p.k));
  const vLo = Math.min(0, ...allPoints.map((p) => p.value));
  let vHi = Math.max(...allPoints.map((p) => p.value));
  if (vHi === vLo) vHi = vLo + 1;
  const kSpan = kHi === kLo ? 1 : kHi - kLo;

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (k: number) => MARGIN.left + ((k - kLo) / kSpan) * plotW;
  const sy = (v: number) => MARGIN.top + plotH - ((v - vLo) / (vHi - vLo)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  if (title) {
    parts.push(
      `<text x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" y="24" text-anchor="middle" font-size="16">${esc(title)}</text>`,
    );
  }

  // axes
  const x0 = MARGIN.left;
  const y0 = MARGIN.top + plotH;
  parts.push(
    `<line x1="${x0}" y1="${y0}" x2="${x0 + plotW}" y2="${y0}" stroke="black"/>`,
    `<line x1="${x0}" y1="${MARGIN.top}" x2="${x0}" y2="${y0}" stroke="black"/>`,
  );
  for (const t of ticks(kLo, kHi, 6)) {
    const x = sx(t).toFixed(2);
    parts.push(
      `<line x1="${x}" y1="${y0}" x2="${x}" y2="${y0 + 5}" stroke="black"/>`,
      `<text x="${x}" y="${y0 + 20}" text-anchor="middle" font-size="11">${fmtTick(t)}</text>`,
    );
  }
  for (const t of ticks(vLo, vHi, 6)) {
    const y = sy(t).toFixed(2);
    parts.push(
      `<line x1="${x0 - 5}" y1="${y}" x2="${x0}" y2="${y}" stroke="black"/>`,
      `<text x="${x0 - 8}" y="${y}" text-anchor="end" dominant-baseline="middle" font-size="11">${fmtTick(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${x0 + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="13">k</text>`,
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">${esc(objective)}</text>`,
  );

  // series
  series.forEach((s, idx) => {
    const color = PALETTE[idx % PALETTE.length];
    const coords = s.points
      .map((p) => `${sx(p.k).toFixed(2)},${sy(p.value).toFixed(2)}`)
      .join(" ");
    if (s.points.length > 1) {
      parts.push(
        `<polyline points="${coords}" fill="none" stroke="${color}" stroke-width="1.75"/>`,
      );
    } else {
      // keep a degenerate polyline so every series is inspectable
      parts.push(`<polyline points="${coords}" fill="none" stroke="${color}"/>`);
    }
    for (const p of s.points) {
      parts.push(
        `<circle cx="${sx(p.k).toFixed(2)}" cy="${sy(p.value).toFixed(2)}" r="2.5" fill="${color}"/>`,
      );
    }
  });

  // legend
  const legendX = WIDTH - MARGIN.right + 16;
  series.forEach((s, idx) => {
    const y = MARGIN.top + 12 + idx * 20;
    parts.push(
      `<line x1="${legendX}" y1="${y}" x2="${legendX + 22}" y2="${y}" stroke="${PALETTE[idx % PALETTE.length]}" stroke-width="2"/>`,
      `<text x="${legendX + 28}" y="${y + 4}" font-size="12">${esc(s.heuristic)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
