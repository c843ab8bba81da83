/**
 * Vertex placement, keyed off the service's layout hint. The service's
 * family constructions have stable vertex numbering (star centers at 0,
 * paths in line order, multipartite parts consecutive), so layouts derive
 * everything else from the edge list alone.
 */

import type { GraphPayload, LayoutKind } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

const TAU = Math.PI * 2;

function circle(n: number, width: number, height: number, radiusScale = 0.38): Point[] {
  const cx = width / 2;
  const cy = height / 2;
  const r = Math.min(width, height) * radiusScale;
  const pts: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = -Math.PI / 2 + (TAU * i) / Math.max(n, 1);
    pts.push({ x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
  }
  return pts;
}

function line(n: number, width: number, height: number): Point[] {
  const pts: Point[] = [];
  const margin = width * 0.08;
  const step = n > 1 ? (width - 2 * margin) / (n - 1) : 0;
  for (let i = 0; i < n; i++) {
    pts.push({ x: margin + i * step, y: height / 2 });
  }
  return pts;
}

function star(n: number, width: number, height: number): Point[] {
  // center vertex is index 0 by construction convention
  const ring = circle(Math.max(n - 1, 1), width, height);
  const pts: Point[] = [{ x: width / 2, y: height / 2 }];
  for (let i = 0; i < n - 1; i++) {
    pts.push(ring[i]!);
  }
  return pts;
}

/** Two-color a complete bipartite graph: one side is vertex 0 plus its
 * non-neighbors. */
export function bipartiteSides(graph: GraphPayload): [number[], number[]] {
  const neighbors = new Set<number>();
  for (const [u, v] of graph.edges) {
    if (u === 0) neighbors.add(v);
    if (v === 0) neighbors.add(u);
  }
  const left: number[] = [];
  const right: number[] = [];
  for (let v = 0; v < graph.n; v++) {
    (neighbors.has(v) ? right : left).push(v);
  }
  return [left, right];
}

function bipartite(graph: GraphPayload, width: number, height: number): Point[] {
  const [left, right] = bipartiteSides(graph);
  const pts: Point[] = new Array(graph.n);
  const column = (side: number[], x: number) => {
    const margin = height * 0.12;
    const step = side.length > 1 ? (height - 2 * margin) / (side.length - 1) : 0;
    side.forEach((v, i) => {
      pts[v] = { x, y: side.length === 1 ? height / 2 : margin + i * step };
    });
  };
  column(left, width * 0.3);
  column(right, width * 0.7);
  return pts;
}

/** Deterministic force relaxation from a circle start; fixed iteration
 * count so identical inputs render identically. */
function forceDirected(graph: GraphPayload, width: number, height: number): Point[] {
  const pts = circle(graph.n, width, height, 0.34);
  const ideal = Math.min(width, height) * 0.28;
  for (let iter = 0; iter < 120; iter++) {
    const fx = new Array(graph.n).fill(0);
    const fy = new Array(graph.n).fill(0);
    for (let u = 0; u < graph.n; u++) {
      for (let v = u + 1; v < graph.n; v++) {
        const dx = pts[v]!.x - pts[u]!.x;
        const dy = pts[v]!.y - pts[u]!.y;
        const d2 = Math.max(dx * dx + dy * dy, 1);
        const push = (ideal * ideal) / d2;
        const d = Math.sqrt(d2);
        fx[u] -= (dx / d) * push;
        fy[u] -= (dy / d) * push;
        fx[v] += (dx / d) * push;
        fy[v] += (dy / d) * push;
      }
    }
    for (const [u, v] of graph.edges) {
      const dx = pts[v]!.x - pts[u]!.x;
      const dy = pts[v]!.y - pts[u]!.y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = (d - ideal) / ideal;
      fx[u] += dx * pull * 0.1;
      fy[u] += dy * pull * 0.1;
      fx[v] -= dx * pull * 0.1;
      fy[v] -= dy * pull * 0.1;
    }
    const damp = 0.85 ** iter * 6 + 0.3;
    for (let v = 0; v < graph.n; v++) {
      pts[v] = {
        x: Math.min(Math.max(pts[v]!.x + fx[v] * damp * 0.02, 20), width - 20),
        y: Math.min(Math.max(pts[v]!.y + fy[v] * damp * 0.02, 20), height - 20),
      };
    }
  }
  return pts;
}

export function layoutPositions(
  kind: LayoutKind,
  graph: GraphPayload,
  width: number,
  height: number,
): Point[] {
  if (graph.n === 0) return [];
  switch (kind) {
    case "cycle":
      return circle(graph.n, width, height);
    case "path":
      return line(graph.n, width, height);
    case "star":
      return star(graph.n, width, height);
    case "bipartite":
      return bipartite(graph, width, height);
    default:
      return forceDirected(graph, width, height);
  }
}
