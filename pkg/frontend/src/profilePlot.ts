/** Polar plot of a solution profile phi(theta). */

import { SchemaError } from "./scanSchema.js";
import { escapeText, num, svgDocument, tag } from "./svg.js";

export interface SolutionProfile {
  p: number;
  q: number;
  gamma: number;
  m: number;
  theta: number[];
  phi: number[];
  residualMax: number;
  hconvexMin: number;
  hkValue: number;
}

export function parseProfileJson(text: string): SolutionProfile {
  let raw: any;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new SchemaError(1, `not valid JSON: ${(err as Error).message}`);
  }
  if (raw.kind !== "solution_profile") {
    throw new SchemaError(1, `kind must be "solution_profile", got ${JSON.stringify(raw.kind)}`);
  }
  if (raw.schema_version !== "1") {
    throw new SchemaError(1, `unsupported schema_version ${JSON.stringify(raw.schema_version)}`);
  }
  const theta = raw.theta;
  const phi = raw.phi;
  if (!Array.isArray(theta) || !Array.isArray(phi) || theta.length !== phi.length || phi.length === 0) {
    throw new SchemaError(1, "theta and phi must be equal-length nonempty arrays");
  }
  if (phi.some((v: unknown) => typeof v !== "number" || !(v as number > 0))) {
    throw new SchemaError(1, "phi samples must be positive numbers");
  }
  return {
    p: raw.p,
    q: raw.q,
    gamma: raw.gamma,
    m: raw.m,
    theta,
    phi,
    residualMax: raw.residual_max,
    hconvexMin: raw.hconvex_min,
    hkValue: raw.hk_value,
  };
}

export function renderProfile(profile: SolutionProfile, size = 480): string {
  const rMax = Math.max(...profile.phi);
  const cx = size / 2;
  const cy = size / 2;
  const scale = (size / 2 - 40) / rMax;

  const pts = profile.theta.map((t, i) => {
    const r = profile.phi[i] * scale;
    return `${num(cx + r * Math.cos(t))},${num(cy - r * Math.sin(t))}`;
  });
  const body: string[] = [
    tag("rect", { x: 0, y: 0, width: size, height: size, fill: "#ffffff" }),
  ];
  // polar reference circles
  for (const frac of [0.25, 0.5, 0.75, 1.0]) {
    body.push(
      tag("circle", {
        cx,
        cy,
        r: rMax * frac * scale,
        fill: "none",
        stroke: "#dddddd",
      }),
    );
  }
  body.push(
    tag("polygon", {
      points: pts.join(" "),
      fill: "rgba(63,111,196,0.25)",
      stroke: "#3f6fc4",
      "stroke-width": 2,
      "data-role": "profile",
    }),
  );
  const caption =
    `m = ${profile.m}, residual_max = ${profile.residualMax.toExponential(2)}, ` +
    `hk_value = ${profile.hkValue.toExponential(2)}`;
  body.push(
    tag(
      "text",
      { x: cx, y: size - 12, "font-size": 12, "text-anchor": "middle" },
      escapeText(caption),
    ),
  );
  return svgDocument(size, size, body);
}
