// Loaders for the experiment artifacts (summary.json, regret_curve.csv,
// trace.csv). This package only ever reads the published schemas.

import * as fs from "fs";
import * as path from "path";
import { parseCsv } from "./csv";

export interface Aggregate {
  [metric: string]: { mean: number; std: number };
}

export interface Summary {
  config: any;
  kappas: { [label: string]: { runs: any[]; aggregate: Aggregate } };
}

export function loadSummary(input: string): Summary {
  let file = input;
  if (fs.existsSync(input) && fs.statSync(input).isDirectory()) {
    file = path.join(input, "summary.json");
  }
  if (!fs.existsSync(file)) {
    throw new Error(`no summary.json at ${input}`);
  }
  const summary = JSON.parse(fs.readFileSync(file, "utf-8")) as Summary;
  if (!summary.kappas || Object.keys(summary.kappas).length === 0) {
    throw new Error("summary has an empty kappa list");
  }
  return summary;
}

export function sortedKappas(summary: Summary): string[] {
  return Object.keys(summary.kappas).sort((a, b) => parseFloat(a) - parseFloat(b));
}

export interface CurvePoint {
  round: number;
  player: number;
  cum: number;
  avg: number;
}

// one array of points per run directory under a kappa_<value> directory
export function loadRegretCurves(kappaDir: string): { run: string; points: CurvePoint[] }[] {
  if (!fs.existsSync(kappaDir) || !fs.statSync(kappaDir).isDirectory()) {
    throw new Error(`not a kappa directory: ${kappaDir}`);
  }
  const runs = fs
    .readdirSync(kappaDir)
    .filter((n) => n.startsWith("run_"))
    .sort((a, b) => parseInt(a.slice(4)) - parseInt(b.slice(4)));
  if (runs.length === 0) {
    throw new Error(`no run_* directories under ${kappaDir}`);
  }
  return runs.map((run) => {
    const file = path.join(kappaDir, run, "regret_curve.csv");
    if (!fs.existsSync(file)) {
      throw new Error(`missing ${file}`);
    }
    const points = parseCsv(fs.readFileSync(file, "utf-8")).map((r) => ({
      round: parseInt(r.round),
      player: parseInt(r.player),
      cum: parseFloat(r.cum_regret),
      avg: parseFloat(r.avg_regret),
    }));
    return { run, points };
  });
}

export interface TraceRow {
  round: number;
  player: number;
  schedule: number[];
}

export function loadTrace(input: string): TraceRow[] {
  let file = input;
  if (fs.existsSync(input) && fs.statSync(input).isDirectory()) {
    file = path.join(input, "trace.csv");
  }
  if (!fs.existsSync(file)) {
    throw new Error(`no trace.csv at ${input}`);
  }
  const rows = parseCsv(fs.readFileSync(file, "utf-8")).map((r) => ({
    round: parseInt(r.round),
    player: parseInt(r.player),
    schedule: r.schedule.split(",").map((x) => parseInt(x)),
  }));
  if (rows.length === 0 || rows.some((r) => isNaN(r.round) || r.schedule.some(isNaN))) {
    throw new Error(`malformed trace: ${file}`);
  }
  return rows;
}
