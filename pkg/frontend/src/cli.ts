#!/usr/bin/env node
/**
 * plotkit: render figures and tables from opdisrupt sweep CSVs.
 *
 *   plotkit plot  --in sweep.csv --objective polarization --out fig.svg [--title "..."]
 *   plotkit table --in sweep.csv [--ks 20,50,100] [--heuristic greedy]
 *
 * Exit code 0 on success; on failure prints `<ErrorName>: <message>` to
 * stderr and exits 1.
 */

import * as fs from "node:fs";

import { parseSweepCsv } from "./csv.js";
import { renderFigureSvg } from "./figure.js";
import { renderTable } from "./table.js";

interface Flags {
  [key: string]: string;
}

function parseFlags(argv: string[]): Flags {
  const flags: Flags = {};
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (!arg.startsWith("--")) {
      throw new Error(`unexpected argument ${JSON.stringify(arg)}`);
    }
    const name = arg.slice(2);
    const value = argv[i + 1];
    if (value === undefined || value.startsWith("--")) {
      throw new Error(`flag --${name} needs a value`);
    }
    flags[name] = value;
    i++;
  }
  return flags;
}

function required(flags: Flags, name: string): string {
  const value = flags[name];
  if (value === undefined) {
    throw new Error(`missing required flag --${name}`);
  }
  return value;
}

function loadRecords(path: string) {
  return parseSweepCsv(fs.readFileSync(path, "utf-8"), path);
}

function cmdPlot(flags: Flags): void {
  const input = required(flags, "in");
  const objective = required(flags, "objective");
  const output = required(flags, "out");
  const svg = renderFigureSvg(loadRecords(input), objective, flags["title"]);
  fs.writeFileSync(output, svg);
  process.stdout.write(`wrote ${output}\n`);
}

function cmdTable(flags: Flags): void {
  const input = required(flags, "in");
  const ks = (flags["ks"] ?? "")
    .split(",")
    .map((tok) => tok.trim())
    .filter((tok) => tok !== "")
    .map((tok) => {
      if (!/^\d+$/.test(tok)) {
        throw new Error(`bad --ks entry ${JSON.stringify(tok)}`);
      }
      return Number(tok);
    });
  process.stdout.write(renderTable(loadRecords(input), ks, flags["heuristic"] ?? "greedy"));
}

export function main(argv: string[]): number {
  try {
    const [command, ...rest] = argv;
    if (command === "plot") {
      cmdPlot(parseFlags(rest));
    } else if (command === "table") {
      cmdTable(parseFlags(rest));
    } else {
      throw new Error(`usage: plotkit <plot|table> --in <csv> [...]`);
    }
    return 0;
  } catch (err) {
    const e = err as Error;
    process.stderr.write(`${e.name ?? "Error"}: ${e.message}\n`);
    return 1;
  }
}

if (process.argv[1] && /cli\.js$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
