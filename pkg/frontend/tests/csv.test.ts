import * as fs from "node:fs";
import * as path from "node:path";
import { describe, expect, it } from "vitest";

import { DataError, SchemaError, SWEEP_CSV_HEADER, parseSweepCsv } from "../src/csv.js";

const FIXTURE = path.join(__dirname, "fixtures", "sweep.csv");

describe("parseSweepCsv", () => {
  it("reads a CSV produced by the experiment CLI", () => {
    const records = parseSweepCsv(fs.readFileSync(FIXTURE, "utf-8"), FIXTURE);
    expect(records.length).toBe(108); // 6 heuristics x 3 objectives x 6 budgets
    const heuristics = new Set(records.map((r) => r.heuristic));
    expect(heuristics.size).toBe(6);
    expect(records[0].objective).toBe("disagreement");
    expect(records[0].k).toBe(0);
  });

  it("keeps value strings verbatim", () => {
    const text = `${SWEEP_CSV_HEADER}\ngreedy,disagreement,1,0,0.52712495180059149,12,g\n`;
    const [record] = parseSweepCsv(text);
    expect(record.value).toBe("0.52712495180059149");
    expect(record.lambda).toBe("1");
  });

  it("rejects a wrong header with a SchemaError", () => {
    const bad = "a,b,c\n1,2,3\n";
    expect(() => parseSweepCsv(bad)).toThrowError(SchemaError);
    try {
      parseSweepCsv(bad, "input.csv");
    } catch (err) {
      expect((err as Error).name).toBe("SchemaError");
      expect((err as Error).message).toContain("input.csv");
    }
  });

  it("rejects rows with the wrong number of fields", () => {
    const bad = `${SWEEP_CSV_HEADER}\ngreedy,disagreement,1,0\n`;
    expect(() => parseSweepCsv(bad)).toThrowError(SchemaError);
  });

  it("rejects non-integer k and non-numeric value", () => {
    const badK = `${SWEEP_CSV_HEADER}\ngreedy,disagreement,1,zero,0.5,12,g\n`;
    expect(() => parseSweepCsv(badK)).toThrowError(SchemaError);
    const badValue = `${SWEEP_CSV_HEADER}\ngreedy,disagreement,1,0,much,12,g\n`;
    expect(() => parseSweepCsv(badValue)).toThrowError(SchemaError);
    const badSeed = `${SWEEP_CSV_HEADER}\ngreedy,disagreement,1,0,0.5,s12,g\n`;
    expect(() => parseSweepCsv(badSeed)).toThrowError(SchemaError);
  });

  it("accepts a header-only file", () => {
    expect(parseSweepCsv(`${SWEEP_CSV_HEADER}\n`)).toEqual([]);
  });

  it("exports distinct error types", () => {
    expect(new SchemaError("x")).toBeInstanceOf(Error);
    expect(new DataError("x")).toBeInstanceOf(Error);
    expect(new DataError("x").name).toBe("DataError");
  });
});
