/** Client-side mirror of the engine's colormap math.
 *
 * Kept numerically identical to the server-rendered SVGs so the same
 * ball shows the same shade in the explorer and in exported plots:
 * piecewise-linear interpolation between ordered stops, values clamped
 * to the [vmin, vmax] window, a degenerate window mapping to the middle
 * of the map, channels rounded half-up, and the auto window padding the
 * observed range by 5% on each side.
 */

export type Rgb = readonly [number, number, number];

export interface ColorStop {
  t: number;
  rgb: Rgb;
}

export const REDS: ColorStop[] = [
  { t: 0.0, rgb: [255, 245, 240] },
  { t: 0.25, rgb: [252, 187, 161] },
  { t: 0.5, rgb: [251, 106, 74] },
  { t: 0.75, rgb: [203, 24, 29] },
  { t: 1.0, rgb: [103, 0, 13] },
];

export const RAINBOW: ColorStop[] = [
  { t: 0.0, rgb: [255, 0, 40] },
  { t: 0.2, rgb: [255, 255, 0] },
  { t: 0.4, rgb: [0, 255, 0] },
  { t: 0.6, rgb: [0, 255, 255] },
  { t: 0.8, rgb: [0, 0, 255] },
  { t: 1.0, rgb: [255, 0, 191] },
];

export const COLORMAPS: Record<string, ColorStop[]> = {
  reds: REDS,
  rainbow: RAINBOW,
};

const WINDOW_BUFFER = 0.05;

const roundHalfUp = (x: number): number => Math.floor(x + 0.5);

export function evalColormap(
  stops: ColorStop[],
  value: number,
  vmin: number,
  vmax: number,
): Rgb {
  if (stops.length < 2) throw new Error("colormap needs at least two stops");
  if (vmin > vmax) throw new Error(`vmin ${vmin} exceeds vmax ${vmax}`);
  const t =
    vmin === vmax ? 0.5 : Math.min(Math.max((value - vmin) / (vmax - vmin), 0), 1);
  for (let i = 0; i + 1 < stops.length; i++) {
    const lo = stops[i]!;
    const hi = stops[i + 1]!;
    if (t <= hi.t) {
      const w = (t - lo.t) / (hi.t - lo.t);
      return [
        roundHalfUp(lo.rgb[0] + w * (hi.rgb[0] - lo.rgb[0])),
        roundHalfUp(lo.rgb[1] + w * (hi.rgb[1] - lo.rgb[1])),
        roundHalfUp(lo.rgb[2] + w * (hi.rgb[2] - lo.rgb[2])),
      ];
    }
  }
  return stops[stops.length - 1]!.rgb;
}

export function rgbCss(rgb: Rgb): string {
  return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
}

/** Explicit window, or the observed range padded by the 5% buffer. */
export function colorWindow(
  values: number[],
  vmin: number | null,
  vmax: number | null,
): [number, number] {
  if (vmin !== null && vmax !== null) return [vmin, vmax];
  let lo = 0;
  let hi = 1;
  if (values.length > 0) {
    lo = Math.min(...values);
    hi = Math.max(...values);
  }
  const buffer = WINDOW_BUFFER * (hi - lo);
  return [vmin !== null ? vmin : lo - buffer, vmax !== null ? vmax : hi + buffer];
}
