// Deterministic SVG line charts and heatmaps. No timestamps, no randomness:
// identical inputs give identical bytes.

export interface Series {
  label?: string;
  points: [number, number][];
  color: string;
  width?: number;
  opacity?: number;
}

export interface LinePlotOpts {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  width?: number;
  height?: number;
}

const MARGIN = { top: 36, right: 24, bottom: 44, left: 64 };

export function fmt(x: number): string {
  if (!isFinite(x)) return String(x);
  if (x === 0) return "0";
  const a = Math.abs(x);
  if (a >= 1e5 || a < 1e-3) return x.toExponential(2);
  return parseFloat(x.toPrecision(6)).toString();
}

export function niceTicks(lo: number, hi: number, n = 5): number[] {
  if (!(hi > lo)) {
    hi = lo + 1;
  }
  const span = hi - lo;
  const step0 = span / n;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= step0) {
      step = m * mag;
      break;
    }
  }
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push(Math.abs(t) < step * 1e-9 ? 0 : t);
  }
  return ticks;
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function linePlot(opts: LinePlotOpts): string {
  const W = opts.width ?? 640;
  const H = opts.height ?? 420;
  const iw = W - MARGIN.left - MARGIN.right;
  const ih = H - MARGIN.top - MARGIN.bottom;

  const xs = opts.series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = opts.series.flatMap((s) => s.points.map((p) => p[1]));
  if (xs.length === 0) throw new Error("no data to plot");
  let [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys, 0), Math.max(...ys)];
  if (x1 === x0) x1 = x0 + 1;
  if (y1 === y0) y1 = y0 + 1;
  const sx = (x: number) => MARGIN.left + ((x - x0) / (x1 - x0)) * iw;
  const sy = (y: number) => MARGIN.top + ih - ((y - y0) / (y1 - y0)) * ih;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}">`
  );
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(
    `<text x="${W / 2}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">${esc(opts.title)}</text>`
  );

  for (const t of niceTicks(x0, x1)) {
    const px = sx(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${MARGIN.top}" x2="${fmt(px)}" y2="${MARGIN.top + ih}" stroke="#eeeeee"/>`,
      `<text x="${fmt(px)}" y="${MARGIN.top + ih + 16}" text-anchor="middle" font-family="sans-serif" font-size="10">${fmt(t)}</text>`
    );
  }
  for (const t of niceTicks(y0, y1)) {
    const py = sy(t);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${fmt(py)}" x2="${MARGIN.left + iw}" y2="${fmt(py)}" stroke="#eeeeee"/>`,
      `<text x="${MARGIN.left - 6}" y="${fmt(py + 3)}" text-anchor="end" font-family="sans-serif" font-size="10">${fmt(t)}</text>`
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${iw}" height="${ih}" fill="none" stroke="#333333"/>`
  );
  parts.push(
    `<text x="${MARGIN.left + iw / 2}" y="${H - 8}" text-anchor="middle" font-family="sans-serif" font-size="12">${esc(opts.xLabel)}</text>`
  );
  parts.push(
    `<text x="16" y="${MARGIN.top + ih / 2}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 16 ${MARGIN.top + ih / 2})">${esc(opts.yLabel)}</text>`
  );

  for (const s of opts.series) {
    const d = s.points.map((p) => `${fmt(sx(p[0]))},${fmt(sy(p[1]))}`).join(" ");
    parts.push(
      `<polyline points="${d}" fill="none" stroke="${s.color}" stroke-width="${s.width ?? 1.5}" opacity="${s.opacity ?? 1}"${s.label ? ` data-series="${esc(s.label)}"` : ""}/>`
    );
  }

  // legend for labeled series only
  let ly = MARGIN.top + 8;
  for (const s of opts.series.filter((s) => s.label)) {
    parts.push(
      `<line x1="${MARGIN.left + iw - 130}" y1="${ly}" x2="${MARGIN.left + iw - 106}" y2="${ly}" stroke="${s.color}" stroke-width="2"/>`,
      `<text x="${MARGIN.left + iw - 100}" y="${ly + 4}" font-family="sans-serif" font-size="11">${esc(s.label!)}</text>`
    );
    ly += 16;
  }

  parts.push("</svg>");
  return parts.join("\n");
}

export interface HeatmapOpts {
  title: string;
  xLabel: string;
  yLabel: string;
  // values[row][col]; rows drawn top to bottom
  values: number[][];
  rowLabels: string[];
  colLabels: string[];
  width?: number;
  height?: number;
}

// blue (negative) -> white (zero) -> red (positive)
export function divergingColor(v: number, vmax: number): string {
  const t = vmax > 0 ? Math.max(-1, Math.min(1, v / vmax)) : 0;
  const chan = (c: number) => Math.round(c).toString(16).padStart(2, "0");
  if (t >= 0) {
    const k = 1 - t;
    return `#ff${chan(255 * k)}${chan(255 * k)}`;
  }
  const k = 1 + t;
  return `#${chan(255 * k)}${chan(255 * k)}ff`;
}

export function heatmap(opts: HeatmapOpts): string {
  const nRows = opts.values.length;
  const nCols = opts.values[0]?.length ?? 0;
  if (nRows === 0 || nCols === 0) throw new Error("no data to plot");
  const W = opts.width ?? 720;
  const H = opts.height ?? Math.max(220, 40 + 18 * nRows + 60);
  const iw = W - MARGIN.left - MARGIN.right;
  const ih = H - MARGIN.top - MARGIN.bottom;
  const cw = iw / nCols;
  const ch = ih / nRows;
  const vmax = Math.max(1e-12, ...opts.values.flat().map((v) => Math.abs(v)));

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}">`
  );
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(
    `<text x="${W / 2}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">${esc(opts.title)}</text>`
  );
  for (let r = 0; r < nRows; r++) {
    for (let c = 0; c < nCols; c++) {
      parts.push(
        `<rect x="${fmt(MARGIN.left + c * cw)}" y="${fmt(MARGIN.top + r * ch)}" width="${fmt(cw + 0.5)}" height="${fmt(ch + 0.5)}" fill="${divergingColor(opts.values[r][c], vmax)}"/>`
      );
    }
    parts.push(
      `<text x="${MARGIN.left - 6}" y="${fmt(MARGIN.top + r * ch + ch / 2 + 3)}" text-anchor="end" font-family="sans-serif" font-size="10">${esc(opts.rowLabels[r] ?? "")}</text>`
    );
  }
  const colStep = Math.max(1, Math.floor(nCols / 10));
  for (let c = 0; c < nCols; c += colStep) {
    parts.push(
      `<text x="${fmt(MARGIN.left + c * cw + cw / 2)}" y="${MARGIN.top + ih + 14}" text-anchor="middle" font-family="sans-serif" font-size="10">${esc(opts.colLabels[c] ?? "")}</text>`
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${iw}" height="${ih}" fill="none" stroke="#333333"/>`
  );
  parts.push(
    `<text x="${MARGIN.left + iw / 2}" y="${H - 8}" text-anchor="middle" font-family="sans-serif" font-size="12">${esc(opts.xLabel)}</text>`
  );
  parts.push(
    `<text x="16" y="${MARGIN.top + ih / 2}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 16 ${MARGIN.top + ih / 2})">${esc(opts.yLabel)}</text>`
  );
  parts.push("</svg>");
  return parts.join("\n");
}
