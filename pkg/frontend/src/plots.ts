// The six figure kinds. Each consumes experiment artifacts and returns an
// SVG string; render() writes it to disk.

import * as fs from "fs";
import * as path from "path";
import {
  loadRegretCurves,
  loadSummary,
  loadTrace,
  sortedKappas,
  Summary,
} from "./data";
import { heatmap, linePlot, Series } from "./svg";

export const KINDS = [
  "regret_cumulative",
  "regret_average",
  "dist_eq",
  "tv",
  "actions",
  "welfare",
] as const;

export type Kind = (typeof KINDS)[number];

const PLAYER_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

function regretPlot(input: string, field: "cum" | "avg"): string {
  const runs = loadRegretCurves(input);
  const players = [...new Set(runs[0].points.map((p) => p.player))].sort();
  const series: Series[] = [];
  // faint per-run lines
  for (const { points } of runs) {
    for (const pl of players) {
      series.push({
        points: points
          .filter((p) => p.player === pl)
          .map((p) => [p.round, p[field]] as [number, number]),
        color: PLAYER_COLORS[(pl - 1) % PLAYER_COLORS.length],
        width: 1,
        opacity: 0.25,
      });
    }
  }
  // dark mean line per player (mean over runs at shared checkpoints)
  for (const pl of players) {
    const byRound = new Map<number, number[]>();
    for (const { points } of runs) {
      for (const p of points) {
        if (p.player !== pl) continue;
        if (!byRound.has(p.round)) byRound.set(p.round, []);
        byRound.get(p.round)!.push(p[field]);
      }
    }
    const mean: [number, number][] = [...byRound.entries()]
      .filter(([, vals]) => vals.length === runs.length)
      .sort((a, b) => a[0] - b[0])
      .map(([r, vals]) => [r, vals.reduce((a, b) => a + b, 0) / vals.length]);
    series.push({
      label: `player ${pl} mean`,
      points: mean,
      color: PLAYER_COLORS[(pl - 1) % PLAYER_COLORS.length],
      width: 2.5,
    });
  }
  const label = field === "cum" ? "cumulative regret" : "average regret";
  return linePlot({
    title: `${label} (${path.basename(input)})`,
    xLabel: "round",
    yLabel: label,
    series,
  });
}

function meanSeries(summary: Summary, metric: string): [number, number][] {
  return sortedKappas(summary).map((k) => {
    const agg = summary.kappas[k].aggregate;
    if (!(metric in agg)) throw new Error(`metric ${metric} missing from summary`);
    return [parseFloat(k), agg[metric].mean];
  });
}

function distEqPlot(input: string): string {
  const summary = loadSummary(input);
  return linePlot({
    title: "distance to equilibrium vs kappa",
    xLabel: "kappa",
    yLabel: "distance",
    series: [
      { label: "dist_ne", points: meanSeries(summary, "dist_ne"), color: "#1f77b4", width: 2 },
      { label: "dist_ce", points: meanSeries(summary, "dist_ce"), color: "#d62728", width: 2 },
      // regret baseline the other distances are read against
      { label: "dist_cce", points: meanSeries(summary, "dist_cce"), color: "#7f7f7f", width: 2 },
    ],
  });
}

function scalarPlot(input: string, metric: string, title: string): string {
  const summary = loadSummary(input);
  return linePlot({
    title,
    xLabel: "kappa",
    yLabel: metric,
    series: [{ label: metric, points: meanSeries(summary, metric), color: "#1f77b4", width: 2 }],
  });
}

function actionsPlot(input: string): string {
  const rows = loadTrace(input);
  const players = [...new Set(rows.map((r) => r.player))].sort();
  const T = rows[0].schedule.length;
  const rounds = [...new Set(rows.map((r) => r.round))].sort((a, b) => a - b);
  // cap the number of columns so long runs stay readable
  const maxCols = 150;
  const stride = Math.max(1, Math.ceil(rounds.length / maxCols));
  const shown = rounds.filter((_, i) => i % stride === 0);
  const byKey = new Map<string, number[]>();
  for (const r of rows) byKey.set(`${r.round}:${r.player}`, r.schedule);

  const values: number[][] = [];
  const rowLabels: string[] = [];
  for (const pl of players) {
    for (let t = 0; t < T; t++) {
      values.push(shown.map((r) => byKey.get(`${r}:${pl}`)?.[t] ?? 0));
      rowLabels.push(t === 0 ? `p${pl} t=1` : `t=${t + 1}`);
    }
  }
  return heatmap({
    title: `per-step purchases over rounds (${path.basename(path.dirname(path.resolve(input)))})`,
    xLabel: "round",
    yLabel: "player / step",
    values,
    rowLabels,
    colLabels: shown.map(String),
  });
}

export function renderKind(kind: Kind, input: string): string {
  switch (kind) {
    case "regret_cumulative":
      return regretPlot(input, "cum");
    case "regret_average":
      return regretPlot(input, "avg");
    case "dist_eq":
      return distEqPlot(input);
    case "tv":
      return scalarPlot(input, "tv", "TV distance vs kappa");
    case "welfare":
      return scalarPlot(input, "welfare", "welfare vs kappa");
    case "actions":
      return actionsPlot(input);
  }
}

export function render(kind: Kind, input: string, output: string): void {
  const svg = renderKind(kind, input);
  fs.mkdirSync(path.dirname(path.resolve(output)), { recursive: true });
  fs.writeFileSync(output, svg + "\n");
}
