/** Figure-rendering CLI: reads horoperiod CSV/JSON, writes SVG. */

import * as fs from "node:fs";
import * as process from "node:process";

import { parseProfileJson, renderProfile } from "./profilePlot.js";
import { renderRegion } from "./regionDiagram.js";
import { SchemaError, parseScanCsv } from "./scanSchema.js";
import { parseThresholdCsv } from "./thresholdCurve.js";

const USAGE = `usage:
  render-region  <scan.csv> <out.svg> [--thresholds curve.csv] [--y gamma|q]
  render-profile <profile.json> <out.svg>`;

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  try {
    if (command === "render-region") {
      const positional: string[] = [];
      let thresholdsFile: string | undefined;
      let yAxis: "gamma" | "q" = "gamma";
      for (let i = 0; i < rest.length; i++) {
        if (rest[i] === "--thresholds") {
          thresholdsFile = rest[++i];
        } else if (rest[i] === "--y") {
          const v = rest[++i];
          if (v !== "gamma" && v !== "q") {
            process.stderr.write(USAGE + "\n");
            return 64;
          }
          yAxis = v;
        } else if (rest[i].startsWith("--")) {
          process.stderr.write(USAGE + "\n");
          return 64;
        } else {
          positional.push(rest[i]);
        }
      }
      if (positional.length !== 2) {
        process.stderr.write(USAGE + "\n");
        return 64;
      }
      const table = parseScanCsv(fs.readFileSync(positional[0], "utf-8"));
      const thresholds = thresholdsFile
        ? parseThresholdCsv(fs.readFileSync(thresholdsFile, "utf-8"))
        : undefined;
      fs.writeFileSync(positional[1], renderRegion(table, { y: yAxis }, thresholds));
      return 0;
    }
    if (command === "render-profile") {
      if (rest.length !== 2) {
        process.stderr.write(USAGE + "\n");
        return 64;
      }
      const profile = parseProfileJson(fs.readFileSync(rest[0], "utf-8"));
      fs.writeFileSync(rest[1], renderProfile(profile));
      return 0;
    }
    process.stderr.write(USAGE + "\n");
    return 64;
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 1;
    }
    process.stderr.write(`${(err as Error).message}\n`);
    return 1;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
