/**
 * Budget tables in the style of the experiment reports: one row per
 * objective, columns for the original (k = 0) value and each requested
 * budget. Cell contents are the untouched strings from the CSV.
 */

import { DataError, SweepRecord } from "./csv.js";

const OBJECTIVE_ORDER = ["disagreement", "polarization", "weighted_sum"];

function objectiveRank(name: string): number {
  const idx = OBJECTIVE_ORDER.indexOf(name);
  return idx === -1 ? OBJECTIVE_ORDER.length : idx;
}

/** Render a markdown table of verbatim values at k = 0 and the given ks. */
export function renderTable(
  records: SweepRecord[],
  ks: number[],
  heuristic = "greedy",
): string {
  const mine = records.filter((r) => r.heuristic === heuristic);
  if (mine.length === 0) {
    const present = [...new Set(records.map((r) => r.heuristic))].sort();
    throw new DataError(
      `heuristic ${JSON.stringify(heuristic)} not present in CSV (found: ${present.join(", ")})`,
    );
  }
  const objectives = [...new Set(mine.map((r) => r.objective))].sort(
    (a, b) => objectiveRank(a) - objectiveRank(b) || a.localeCompare(b),
  );
  const byKey = new Map<string, string>();
  for (const r of mine) {
    byKey.set(`${r.objective}@${r.k}`, r.value);
  }
  const columns = [0, ...ks];
  const header = ["objective", "original", ...ks.map((k) => `k=${k}`)];
  const rows = objectives.map((objective) => {
    const cells = columns.map((k) => {
      const value = byKey.get(`${objective}@${k}`);
      if (value === undefined) {
        throw new DataError(`k=${k} missing for objective ${JSON.stringify(objective)}`);
      }
      return value;
    });
    return [objective, ...cells];
  });

  const widths = header.map((h, c) =>
    Math.max(h.length, ...rows.map((row) => row[c].length)),
  );
  const fmt = (cells: string[]) =>
    "| " + cells.map((cell, c) => cell.padEnd(widths[c])).join(" | ") + " |";
  const divider = "| " + widths.map((w) => "-".repeat(w)).join(" | ") + " |";
  return [fmt(header), divider, ...rows.map(fmt)].join("\n") + "\n";
}
