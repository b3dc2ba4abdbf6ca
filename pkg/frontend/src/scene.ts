/** Pure view-model construction: graph JSON + view options -> drawable scene.
 *
 * Geometry mirrors the engine's SVG renderer — same margin, same
 * [-1, 1] -> pixel projection, same affine disc sizing over the visible
 * nodes, same color window — so the canvas view and an exported SVG of
 * the same graph agree visually. All numbers shown to the user (sizes,
 * means) are taken from the server payload untouched; the client never
 * recomputes statistics.
 */
import { COLORMAPS, colorWindow, evalColormap, rgbCss } from "./colormap.js";
import type { ColorStop } from "./colormap.js";
import type { GraphDoc, GraphNodeDoc } from "./types.js";

export const MARGIN = 40;
export const MIN_DISC = 10;
export const MAX_DISC = 30;

export interface Disc {
  id: number;
  x: number;
  y: number;
  r: number;
  color: string;
  /** the displayed coloring's mean for this ball, verbatim from the payload */
  value: number;
  size: number;
  node: GraphNodeDoc;
}

export interface SceneEdge {
  a: number;
  b: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  intersection: number;
}

export interface Scene {
  discs: Disc[];
  edges: SceneEdge[];
  /** true when a filter removed every ball */
  empty: boolean;
  window: [number, number];
  coloring: string;
}

export interface SceneOptions {
  /** canvas edge length in px (square plot area) */
  sizePx: number;
  coloring: string;
  colormap?: ColorStop[] | string;
  /** keep only balls whose displayed mean exceeds this; null = no filter */
  threshold: number | null;
  vmin: number | null;
  vmax: number | null;
}

function resolveColormap(spec: ColorStop[] | string | undefined): ColorStop[] {
  if (spec === undefined) return COLORMAPS.reds!;
  if (typeof spec !== "string") return spec;
  const found = COLORMAPS[spec];
  if (!found) {
    throw new Error(
      `unknown colormap '${spec}'; have ${Object.keys(COLORMAPS).join(", ")}`,
    );
  }
  return found;
}

function nodeValue(node: GraphNodeDoc, coloring: string): number {
  const value = node.colorings[coloring];
  if (value === undefined) {
    throw new Error(
      `ball ${node.id} has no coloring '${coloring}'; ` +
        `available: ${Object.keys(node.colorings).sort().join(", ")}`,
    );
  }
  return value;
}

function discRadius(size: number, lo: number, hi: number): number {
  if (lo === hi) return (MIN_DISC + MAX_DISC) / 2;
  return MIN_DISC + ((size - lo) / (hi - lo)) * (MAX_DISC - MIN_DISC);
}

export function buildScene(doc: GraphDoc, opts: SceneOptions): Scene {
  const cmap = resolveColormap(opts.colormap);
  const plot = opts.sizePx - 2 * MARGIN;
  const sx = (x: number) => MARGIN + ((x + 1) / 2) * plot;
  const sy = (y: number) => MARGIN + (1 - (y + 1) / 2) * plot;

  const visible = doc.nodes.filter(
    (n) =>
      opts.threshold === null || nodeValue(n, opts.coloring) > opts.threshold,
  );
  const values = visible.map((n) => nodeValue(n, opts.coloring));
  const [lo, hi] = colorWindow(values, opts.vmin, opts.vmax);
  const sizes = visible.map((n) => n.size);
  const loSize = sizes.length ? Math.min(...sizes) : 0;
  const hiSize = sizes.length ? Math.max(...sizes) : 0;

  const discs: Disc[] = visible.map((n, i) => {
    if (n.x === undefined || n.y === undefined) {
      throw new Error(`ball ${n.id} has no layout position`);
    }
    return {
      id: n.id,
      x: sx(n.x),
      y: sy(n.y),
      r: discRadius(n.size, loSize, hiSize),
      color: rgbCss(evalColormap(cmap, values[i]!, lo, hi)),
      value: values[i]!,
      size: n.size,
      node: n,
    };
  });

  const shown = new Set(discs.map((d) => d.id));
  const byId = new Map(discs.map((d) => [d.id, d]));
  const edges: SceneEdge[] = doc.edges
    .filter((e) => shown.has(e.a) && shown.has(e.b))
    .map((e) => {
      const a = byId.get(e.a)!;
      const b = byId.get(e.b)!;
      return {
        a: e.a,
        b: e.b,
        x1: a.x,
        y1: a.y,
        x2: b.x,
        y2: b.y,
        intersection: e.intersection,
      };
    });

  return {
    discs,
    edges,
    empty: doc.nodes.length > 0 && discs.length === 0,
    window: [lo, hi],
    coloring: opts.coloring,
  };
}

/** Compact display of a payload number (no recomputation, just formatting). */
export function fmtValue(v: number): string {
  return v.toPrecision(4);
}

/** Hover text for one ball, straight from the payload values. */
export function tooltipLines(node: GraphNodeDoc, coloring: string): string[] {
  const names = Object.keys(node.colorings).sort();
  const ordered = [coloring, ...names.filter((n) => n !== coloring)];
  return [
    `ball ${node.id} — ${node.size} points`,
    ...ordered.map((name) => `mean ${name} ${fmtValue(nodeValue(node, name))}`),
  ];
}

/** Topmost disc containing the pixel, or null. */
export function hitTest(scene: Scene, px: number, py: number): number | null {
  for (let i = scene.discs.length - 1; i >= 0; i--) {
    const d = scene.discs[i]!;
    const dx = px - d.x;
    const dy = py - d.y;
    if (dx * dx + dy * dy <= d.r * d.r) return d.id;
  }
  return null;
}
