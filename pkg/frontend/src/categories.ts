/** Legend semantics for region diagrams: 0, 1, 2, >=1, >=2, infinity. */

import { ScanRow } from "./scanSchema.js";

export type Category = "0" | "1" | "2" | "ge1" | "ge2" | "inf" | "unresolved";

/** Pinned palette so renders are reproducible byte for byte. */
export const CATEGORY_FILL: Record<Category, string> = {
  "0": "#b9b9b9",
  "1": "#3f6fc4",
  "2": "#d94a4c",
  ge1: "#9db9e3", // lower bound only: at least one solution
  ge2: "#eda3a4", // lower bound only: at least two solutions
  inf: "#f0c419",
  unresolved: "#ffffff",
};

export const CATEGORY_LABEL: Record<Category, string> = {
  "0": "k = 0",
  "1": "k = 1",
  "2": "k = 2",
  ge1: "k ≥ 1",
  ge2: "k ≥ 2",
  inf: "k = ∞",
  unresolved: "unresolved",
};

/**
 * Map one scan record to its legend category.
 *
 * Counts are exact where uniqueness or the constant census settles the
 * question: the q = 1 band p >= -7, and the weighted band q - p <= 8 with
 * p <= -1 <= q (a single constant there).  Everywhere else the scan only
 * certifies lower bounds, so cells read "at least".
 */
export function categorize(row: ScanRow): Category {
  if (row.status !== "ok" && row.status !== "incomplete") {
    return "unresolved";
  }
  if (row.infiniteFamily) {
    return "inf";
  }
  const total = row.constantCount + row.branchCount;
  if (row.q === 1 && row.p >= -7) {
    return total >= 2 ? "2" : total === 1 ? "1" : "0";
  }
  if (row.q >= 1 && row.p <= -1 && row.q - row.p <= 8) {
    return "1";
  }
  return row.branchCount > 0 ? "ge2" : "ge1";
}
