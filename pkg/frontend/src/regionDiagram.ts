/** Region-classification diagram: (p, gamma) or (p, q) cells colored by category. */

import { CATEGORY_FILL, CATEGORY_LABEL, Category, categorize } from "./categories.js";
import { ScanTable } from "./scanSchema.js";
import { Scale, escapeText, num, svgDocument, tag } from "./svg.js";
import { ThresholdPoint } from "./thresholdCurve.js";

export interface AxesSpec {
  /** vertical data axis: "gamma" for count diagrams, "q" for weight diagrams */
  y: "gamma" | "q";
  width?: number;
  height?: number;
  title?: string;
}

const MARGIN = { left: 56, right: 16, top: 36, bottom: 44 };

function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

/** Cell edges at midpoints between consecutive grid values. */
function edges(grid: number[]): number[] {
  if (grid.length === 1) {
    const h = Math.max(Math.abs(grid[0]) * 0.05, 0.5);
    return [grid[0] - h, grid[0] + h];
  }
  const out: number[] = [grid[0] - (grid[1] - grid[0]) / 2];
  for (let i = 0; i + 1 < grid.length; i++) {
    out.push((grid[i] + grid[i + 1]) / 2);
  }
  out.push(grid[grid.length - 1] + (grid[grid.length - 1] - grid[grid.length - 2]) / 2);
  return out;
}

export function renderRegion(
  table: ScanTable,
  axes: AxesSpec,
  thresholds?: ThresholdPoint[],
): string {
  const width = axes.width ?? 720;
  const height = axes.height ?? 480;
  const yField = axes.y;
  const body: string[] = [];
  body.push(tag("rect", { x: 0, y: 0, width, height, fill: "#ffffff" }));

  const innerX0 = MARGIN.left;
  const innerX1 = width - MARGIN.right;
  const innerY0 = MARGIN.top;
  const innerY1 = height - MARGIN.bottom;

  const rows = table.rows;
  const seen = new Set<Category>();
  if (rows.length > 0) {
    const ps = uniqueSorted(rows.map((r) => r.p));
    const ys = uniqueSorted(rows.map((r) => (yField === "gamma" ? r.gamma : r.q)));
    const px = edges(ps);
    const py = edges(ys);
    const sx = new Scale(px[0], px[px.length - 1], innerX0, innerX1);
    const sy = new Scale(py[0], py[py.length - 1], innerY1, innerY0);

    for (const row of rows) {
      const i = ps.indexOf(row.p);
      const j = ys.indexOf(yField === "gamma" ? row.gamma : row.q);
      const category = categorize(row);
      seen.add(category);
      const x = sx.at(px[i]);
      const w = sx.at(px[i + 1]) - x;
      const yTop = sy.at(py[j + 1]);
      const h = sy.at(py[j]) - yTop;
      const attrs: Record<string, string | number> = {
        x,
        y: yTop,
        width: w,
        height: h,
        fill: CATEGORY_FILL[category],
        "data-category": category,
        "data-p": num(row.p),
        [`data-${yField}`]: num(yField === "gamma" ? row.gamma : row.q),
      };
      if (category === "unresolved") {
        attrs.stroke = "#d94a4c";
        attrs["stroke-dasharray"] = "3 2";
      }
      body.push(tag("rect", attrs));
    }

    if (thresholds && thresholds.length > 1 && yField === "gamma") {
      const pts = thresholds
        .filter((t) => t.gamma >= py[0] && t.gamma <= py[py.length - 1])
        .filter((t) => t.p >= px[0] && t.p <= px[px.length - 1])
        .map((t) => `${num(sx.at(t.p))},${num(sy.at(t.gamma))}`)
        .join(" ");
      if (pts.length > 0) {
        body.push(
          tag("polyline", {
            points: pts,
            fill: "none",
            stroke: "#1a1a1a",
            "stroke-width": 2,
            "data-role": "threshold-curve",
          }),
        );
      }
    }

    // axis ticks: every p value, and up to 8 y labels
    for (const p of ps) {
      body.push(
        tag(
          "text",
          { x: sx.at(p), y: innerY1 + 16, "font-size": 10, "text-anchor": "middle", fill: "#333333" },
          escapeText(String(p)),
        ),
      );
    }
    const yStep = Math.max(1, Math.floor(ys.length / 8));
    for (let j = 0; j < ys.length; j += yStep) {
      body.push(
        tag(
          "text",
          { x: innerX0 - 6, y: sy.at(ys[j]) + 3, "font-size": 10, "text-anchor": "end", fill: "#333333" },
          escapeText(String(ys[j])),
        ),
      );
    }
  }

  body.push(
    tag("line", { x1: innerX0, y1: innerY1, x2: innerX1, y2: innerY1, stroke: "#000000" }),
    tag("line", { x1: innerX0, y1: innerY0, x2: innerX0, y2: innerY1, stroke: "#000000" }),
    tag(
      "text",
      { x: (innerX0 + innerX1) / 2, y: height - 10, "font-size": 12, "text-anchor": "middle" },
      "p",
    ),
    tag(
      "text",
      { x: 16, y: (innerY0 + innerY1) / 2, "font-size": 12, "text-anchor": "middle" },
      escapeText(yField === "gamma" ? "γ" : "q"),
    ),
  );
  if (axes.title) {
    body.push(
      tag(
        "text",
        { x: (innerX0 + innerX1) / 2, y: 20, "font-size": 13, "text-anchor": "middle" },
        escapeText(axes.title),
      ),
    );
  }
  // legend for the categories actually present
  let lx = innerX0;
  for (const cat of ["0", "1", "2", "ge1", "ge2", "inf", "unresolved"] as Category[]) {
    if (!seen.has(cat)) continue;
    body.push(
      tag("rect", { x: lx, y: 24, width: 10, height: 10, fill: CATEGORY_FILL[cat], stroke: "#666666" }),
      tag(
        "text",
        { x: lx + 14, y: 33, "font-size": 10, "text-anchor": "start" },
        escapeText(CATEGORY_LABEL[cat]),
      ),
    );
    lx += 70;
  }
  return svgDocument(width, height, body);
}
