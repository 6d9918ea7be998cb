/** Threshold-curve CSV from `horoperiod thresholds --p-grid ... --format csv`. */

import { SchemaError } from "./scanSchema.js";

export const THRESHOLD_HEADER = "p,l,gamma";

export interface ThresholdPoint {
  p: number;
  l: number;
  gamma: number;
}

export function parseThresholdCsv(text: string): ThresholdPoint[] {
  const lines = text.split("\n").filter((line, i, arr) => !(line === "" && i === arr.length - 1));
  if (lines.length === 0 || lines[0] !== THRESHOLD_HEADER) {
    throw new SchemaError(1, `header must be exactly ${JSON.stringify(THRESHOLD_HEADER)}`);
  }
  const points: ThresholdPoint[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== 3) {
      throw new SchemaError(i + 1, `expected 3 fields, got ${parts.length}`);
    }
    const [p, l, gamma] = parts.map(Number);
    if ([p, l, gamma].some(Number.isNaN)) {
      throw new SchemaError(i + 1, `non-numeric field in ${JSON.stringify(lines[i])}`);
    }
    points.push({ p, l, gamma });
  }
  points.sort((a, b) => a.p - b.p);
  return points;
}
