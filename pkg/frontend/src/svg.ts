/** Minimal deterministic SVG string building. */

export function num(x: number): string {
  // fixed short form keeps output stable across platforms
  const s = x.toFixed(3);
  return s === "-0.000" ? "0.000" : s;
}

export function escapeText(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function tag(
  name: string,
  attrs: Record<string, string | number>,
  body?: string,
): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? num(v) : v}"`)
    .join(" ");
  if (body === undefined) {
    return `<${name} ${parts}/>`;
  }
  return `<${name} ${parts}>${body}</${name}>`;
}

export function svgDocument(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}

/** Affine map from data range to pixel range (pixel y grows downward). */
export class Scale {
  constructor(
    readonly d0: number,
    readonly d1: number,
    readonly p0: number,
    readonly p1: number,
  ) {}

  at(x: number): number {
    const t = (x - this.d0) / (this.d1 - this.d0);
    return this.p0 + t * (this.p1 - this.p0);
  }
}
