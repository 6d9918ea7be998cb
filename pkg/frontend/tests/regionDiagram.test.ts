import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { categorize } from "../src/categories.js";
import { renderRegion } from "../src/regionDiagram.js";
import { SCAN_HEADER, parseScanCsv } from "../src/scanSchema.js";
import { parseThresholdCsv } from "../src/thresholdCurve.js";

const HERE = path.dirname(fileURLToPath(import.meta.url));

function fixture(name: string): string {
  return fs.readFileSync(path.join(HERE, "fixtures", name), "utf-8");
}

const scan = parseScanCsv(fixture("scan_p_gamma.csv"));
const thresholds = parseThresholdCsv(fixture("thresholds_l1.csv"));

function cellCategory(p: number, gamma: number): string {
  const row = scan.rows.find((r) => r.p === p && r.gamma === gamma);
  if (!row) throw new Error(`no cell at p=${p}, gamma=${gamma}`);
  return categorize(row);
}

function thresholdAt(p: number): number {
  const pt = thresholds.find((t) => Math.abs(t.p - p) < 1e-9);
  if (!pt) throw new Error(`no threshold point at p=${p}`);
  return pt.gamma;
}

describe("region diagram topology (count diagram reproduction)", () => {
  it("keeps the whole band -7 <= p < -1 single-solution for every gamma", () => {
    for (const row of scan.rows.filter((r) => r.p >= -7 && r.p < -1)) {
      expect(categorize(row)).toBe("1");
    }
  });

  it("marks the p = -1 column as the infinite family", () => {
    for (const row of scan.rows.filter((r) => r.p === -1)) {
      expect(categorize(row)).toBe("inf");
    }
  });

  it("keeps -1 < p < 1 single-solution", () => {
    for (const row of scan.rows.filter((r) => r.p === 0)) {
      expect(categorize(row)).toBe("1");
    }
  });

  it("splits the p < -7 region along the threshold curve", () => {
    for (const p of [-18, -17, -16, -15, -14, -13]) {
      const cut = thresholdAt(p);
      for (const row of scan.rows.filter((r) => r.p === p)) {
        const want = row.gamma > cut ? "ge2" : "ge1";
        expect(categorize(row), `p=${p} gamma=${row.gamma} cut=${cut}`).toBe(want);
      }
    }
  });

  it("changes category across the p = -7 boundary", () => {
    expect(cellCategory(-7, 40)).toBe("1");
    expect(cellCategory(-8, 40)).toBe("ge1");
  });

  it("changes category across the p = -1 boundary", () => {
    expect(cellCategory(-2, 2)).toBe("1");
    expect(cellCategory(-1, 2)).toBe("inf");
    expect(cellCategory(0, 2)).toBe("1");
  });

  it("renders every cell plus the overlaid curve", () => {
    const svg = renderRegion(scan, { y: "gamma" }, thresholds);
    const cells = svg.match(/data-category="/g) ?? [];
    expect(cells.length).toBe(scan.rows.length);
    expect(svg).toContain('data-role="threshold-curve"');
    expect(svg).toContain('data-category="ge2"');
    expect(svg).toContain('data-category="inf"');
    expect(svg.startsWith("<svg ")).toBe(true);
  });

  it("is a pure function of its inputs", () => {
    const a = renderRegion(scan, { y: "gamma" }, thresholds);
    const b = renderRegion(scan, { y: "gamma" }, thresholds);
    expect(a).toBe(b);
  });

  it("renders a header-only table as empty axes", () => {
    const svg = renderRegion(parseScanCsv(SCAN_HEADER + "\n"), { y: "gamma" });
    expect(svg).toContain("<svg ");
    expect(svg).not.toContain("data-category");
  });

  it("styles unresolved rows distinctly instead of dropping them", () => {
    const table = parseScanCsv(
      SCAN_HEADER + "\n-5,1,2,1,0,false,error:ConvergenceFailure\n",
    );
    const svg = renderRegion(table, { y: "gamma" });
    expect(svg).toContain('data-category="unresolved"');
    expect(svg).toContain("stroke-dasharray");
  });
});
