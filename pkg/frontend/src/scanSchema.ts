/** Strict parsing of the scan CSV emitted by the horoperiod CLI. */

export const SCAN_HEADER =
  "p,q,gamma,constant_count,branch_count,infinite_family,status";

export interface ScanRow {
  p: number;
  q: number;
  gamma: number;
  constantCount: number;
  branchCount: number;
  infiniteFamily: boolean;
  status: string;
}

export interface ScanTable {
  rows: ScanRow[];
}

/** Raised on any deviation from the schema, with the offending line number. */
export class SchemaError extends Error {
  readonly line: number;

  constructor(line: number, message: string) {
    super(`line ${line}: ${message}`);
    this.line = line;
  }
}

function parseNumber(line: number, field: string, text: string): number {
  const value = Number(text);
  if (text.trim() === "" || Number.isNaN(value)) {
    throw new SchemaError(line, `field ${field}: not a number: ${JSON.stringify(text)}`);
  }
  return value;
}

function parseCount(line: number, field: string, text: string): number {
  const value = parseNumber(line, field, text);
  if (!Number.isInteger(value) || value < 0) {
    throw new SchemaError(line, `field ${field}: not a nonnegative integer: ${text}`);
  }
  return value;
}

export function parseScanCsv(text: string): ScanTable {
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  if (lines.length === 0) {
    throw new SchemaError(1, "empty file, expected the scan header");
  }
  if (lines[0] !== SCAN_HEADER) {
    throw new SchemaError(1, `header must be exactly ${JSON.stringify(SCAN_HEADER)}`);
  }
  const rows: ScanRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const lineNo = i + 1;
    const parts = lines[i].split(",");
    if (parts.length !== 7) {
      throw new SchemaError(lineNo, `expected 7 fields, got ${parts.length}`);
    }
    const family = parts[5];
    if (family !== "true" && family !== "false") {
      throw new SchemaError(lineNo, `infinite_family must be true or false, got ${family}`);
    }
    rows.push({
      p: parseNumber(lineNo, "p", parts[0]),
      q: parseNumber(lineNo, "q", parts[1]),
      gamma: parseNumber(lineNo, "gamma", parts[2]),
      constantCount: parseCount(lineNo, "constant_count", parts[3]),
      branchCount: parseCount(lineNo, "branch_count", parts[4]),
      infiniteFamily: family === "true",
      status: parts[6],
    });
  }
  return { rows };
}
