// Pure scene construction: map + query documents in, drawable specs out.
// The only client-side arithmetic is the score-to-darkness mapping; every
// coordinate and score comes from the backend untouched.

import { MapDocument, QueryDocument } from "./types.js";

// Categorical palette for up to 10 clusters, index-mapped from the backend's
// color assignment (0 = heaviest cluster).
export const CLUSTER_PALETTE = [
  "#4e79a7",
  "#f28e2b",
  "#59a045",
  "#e15759",
  "#b07aa1",
  "#76b7b2",
  "#edc948",
  "#ff9da7",
  "#9c755f",
  "#bab0ab",
] as const;

export const DOT_RADIUS = 6;
export const TOP_DOT_RADIUS = 9;

export interface DotSpec {
  id: string;
  name: string;
  x: number;
  y: number;
  radius: number;
  fill: string;
  outlined: boolean;
}

export interface EllipseSpec {
  cx: number;
  cy: number;
  rx: number;
  ry: number;
  rotationDeg: number;
  fill: string;
}

export interface LabelSpec {
  id: string;
  text: string;
  x: number;
  y: number;
}

export interface Scene {
  dots: DotSpec[];
  ellipses: EllipseSpec[];
  labels: LabelSpec[];
}

export interface SceneOptions {
  showDistributions: boolean;
  showAllNames: boolean;
}

export function clusterColor(index: number): string {
  return CLUSTER_PALETTE[index % CLUSTER_PALETTE.length];
}

export function buildScene(doc: MapDocument, opts: SceneOptions): Scene {
  const dots: DotSpec[] = doc.points.map((p) => ({
    id: p.id,
    name: p.name,
    x: p.x,
    y: p.y,
    radius: DOT_RADIUS,
    fill: clusterColor(p.color),
    outlined: false,
  }));
  const ellipses: EllipseSpec[] = opts.showDistributions
    ? doc.ellipses.map((e) => ({
        cx: e.cx,
        cy: e.cy,
        rx: e.rx,
        ry: e.ry,
        rotationDeg: (e.rotation * 180) / Math.PI,
        fill: clusterColor(e.color),
      }))
    : [];
  const labels: LabelSpec[] = opts.showAllNames
    ? dots.map((d) => ({ id: d.id, text: d.name, x: d.x, y: d.y }))
    : [];
  return { dots, ellipses, labels };
}

/**
 * Zero-anchored linear darkness: score 0 maps to the lightest shade, the
 * maximum score to the darkest. All-zero results render uniformly light.
 * Returns a grayscale hex color.
 */
export function queryShade(score: number, maxScore: number): string {
  const t = maxScore > 0 ? Math.min(1, Math.max(0, score / maxScore)) : 0;
  const light = 230;
  const dark = 20;
  const level = Math.round(light + (dark - light) * t);
  const hex = level.toString(16).padStart(2, "0");
  return `#${hex}${hex}${hex}`;
}

export function applyQuery(scene: Scene, results: QueryDocument): Scene {
  const maxScore = Math.max(0, ...Object.values(results.scores));
  const topIds = new Set(results.top.map((t) => t.id));
  const dots = scene.dots.map((d) => {
    const score = results.scores[d.id] ?? 0;
    const isTop = topIds.has(d.id);
    return {
      ...d,
      fill: queryShade(score, maxScore),
      radius: isTop ? TOP_DOT_RADIUS : DOT_RADIUS,
      outlined: isTop,
    };
  });
  return { ...scene, dots };
}
