/**
 * Strict reader for sweep CSVs produced by the opdisrupt CLI.
 *
 * The value/lambda columns are kept as the exact strings from the file:
 * this package is a presentation layer and must never reformat or
 * recompute the numbers it prints.
 */

export const SWEEP_CSV_HEADER = "heuristic,objective,lambda,k,value,seed,graph_id";

/** Input does not match the sweep CSV schema. */
export class SchemaError extends Error {
  override name = "SchemaError";
}

/** Well-formed input lacks the requested slice (objective, budget, ...). */
export class DataError extends Error {
  override name = "DataError";
}

export interface SweepRecord {
  heuristic: string;
  objective: string;
  /** verbatim string from the file */
  lambda: string;
  k: number;
  /** verbatim string from the file */
  value: string;
  seed: string;
  graphId: string;
}

const INT_RE = /^-?\d+$/;

function isFiniteNumber(text: string): boolean {
  if (text.trim() === "") return false;
  return Number.isFinite(Number(text));
}

export function parseSweepCsv(text: string, source = "<csv>"): SweepRecord[] {
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop(); // trailing newline
  }
  if (lines.length === 0 || lines[0] !== SWEEP_CSV_HEADER) {
    throw new SchemaError(
      `${source}: bad header ${JSON.stringify(lines[0] ?? "")}, expected ${JSON.stringify(SWEEP_CSV_HEADER)}`,
    );
  }
  const records: SweepRecord[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i];
    if (line === "") continue;
    const fields = line.split(",");
    if (fields.length !== 7) {
      throw new SchemaError(`${source}:${i + 1}: expected 7 fields, got ${fields.length}`);
    }
    const [heuristic, objective, lambda, kRaw, value, seed, graphId] = fields;
    if (!INT_RE.test(kRaw)) {
      throw new SchemaError(`${source}:${i + 1}: k is not an integer: ${JSON.stringify(kRaw)}`);
    }
    if (!isFiniteNumber(lambda)) {
      throw new SchemaError(`${source}:${i + 1}: lambda is not a number: ${JSON.stringify(lambda)}`);
    }
    if (!isFiniteNumber(value)) {
      throw new SchemaError(`${source}:${i + 1}: value is not a number: ${JSON.stringify(value)}`);
    }
    if (!INT_RE.test(seed)) {
      throw new SchemaError(`${source}:${i + 1}: seed is not an integer: ${JSON.stringify(seed)}`);
    }
    records.push({
      heuristic,
      objective,
      lambda,
      k: Number(kRaw),
      value,
      seed,
      graphId,
    });
  }
  return records;
}
