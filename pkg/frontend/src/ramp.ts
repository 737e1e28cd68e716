// Fixed colour ramp for probabilities in [0, 1]. The stops are the classic
// sequential reds; luminance decreases strictly along the ramp, so "darker
// cell" always means "higher mean probability". The legend in index.html
// documents the same stops.

const STOPS: ReadonlyArray<readonly [number, number, number]> = [
  [0xff, 0xf5, 0xf0], // 0.00
  [0xfc, 0xbb, 0xa1], // 0.25
  [0xfb, 0x6a, 0x4a], // 0.50
  [0xcb, 0x18, 0x1d], // 0.75
  [0x67, 0x00, 0x0d], // 1.00
];

export function rampColor(p: number): string {
  if (!Number.isFinite(p)) throw new Error("probability must be finite");
  const clamped = Math.min(1, Math.max(0, p));
  const scaled = clamped * (STOPS.length - 1);
  const lo = Math.min(STOPS.length - 2, Math.floor(scaled));
  const t = scaled - lo;
  const a = STOPS[lo]!;
  const b = STOPS[lo + 1]!;
  const mix = (i: number) => Math.round(a[i]! + (b[i]! - a[i]!) * t);
  const hex = (v: number) => v.toString(16).padStart(2, "0");
  return `#${hex(mix(0))}${hex(mix(1))}${hex(mix(2))}`;
}

// Relative luminance of a ramp colour, used by tests to verify that the
// shading order matches the probability order.
export function luminance(color: string): number {
  const r = parseInt(color.slice(1, 3), 16);
  const g = parseInt(color.slice(3, 5), 16);
  const b = parseInt(color.slice(5, 7), 16);
  return 0.2126 * r + 0.7152 * g + 0.0722 * b;
}

export function rampGradientCss(): string {
  const parts = STOPS.map((stop, i) => {
    const hex = (v: number) => v.toString(16).padStart(2, "0");
    const pct = (i / (STOPS.length - 1)) * 100;
    return `#${hex(stop[0]!)}${hex(stop[1]!)}${hex(stop[2]!)} ${pct}%`;
  });
  return `linear-gradient(to right, ${parts.join(", ")})`;
}
