import { describe, expect, it } from "vitest";

import type { GraphPayload } from "../src/api.js";
import { bipartiteSides, layoutPositions } from "../src/layout.js";

function cycleGraph(n: number): GraphPayload {
  const edges: [number, number][] = [];
  for (let i = 0; i < n - 1; i++) edges.push([i, i + 1]);
  edges.push([0, n - 1]);
  return { n, edges };
}

function bipartiteGraph(m: number, n: number): GraphPayload {
  const edges: [number, number][] = [];
  for (let u = 0; u < m; u++) for (let v = m; v < m + n; v++) edges.push([u, v]);
  return { n: m + n, edges };
}

describe("layoutPositions", () => {
  it("is deterministic for identical inputs", () => {
    const g = cycleGraph(7);
    const a = layoutPositions("cycle", g, 640, 480);
    const b = layoutPositions("cycle", g, 640, 480);
    expect(a).toEqual(b);
    const fa = layoutPositions("generic", g, 640, 480);
    const fb = layoutPositions("generic", g, 640, 480);
    expect(fa).toEqual(fb);
  });

  it("places cycle vertices on a circle", () => {
    const pts = layoutPositions("cycle", cycleGraph(6), 640, 480);
    const cx = 320;
    const cy = 240;
    const radii = pts.map((p) => Math.hypot(p.x - cx, p.y - cy));
    for (const r of radii) expect(r).toBeCloseTo(radii[0]!, 6);
  });

  it("places path vertices on a horizontal line in index order", () => {
    const g: GraphPayload = { n: 5, edges: [[0, 1], [1, 2], [2, 3], [3, 4]] };
    const pts = layoutPositions("path", g, 640, 480);
    for (const p of pts) expect(p.y).toBe(240);
    for (let i = 1; i < pts.length; i++) expect(pts[i]!.x).toBeGreaterThan(pts[i - 1]!.x);
  });

  it("puts the star center in the middle", () => {
    const g: GraphPayload = { n: 5, edges: [[0, 1], [0, 2], [0, 3], [0, 4]] };
    const pts = layoutPositions("star", g, 640, 480);
    expect(pts[0]).toEqual({ x: 320, y: 240 });
    for (let i = 1; i < 5; i++) {
      expect(Math.hypot(pts[i]!.x - 320, pts[i]!.y - 240)).toBeGreaterThan(100);
    }
  });

  it("derives the two sides of a bipartite graph from its edges", () => {
    const [left, right] = bipartiteSides(bipartiteGraph(2, 3));
    expect(left).toEqual([0, 1]);
    expect(right).toEqual([2, 3, 4]);
  });

  it("lays bipartite sides out in two columns", () => {
    const pts = layoutPositions("bipartite", bipartiteGraph(2, 3), 640, 480);
    expect(new Set(pts.slice(0, 2).map((p) => p.x)).size).toBe(1);
    expect(new Set(pts.slice(2).map((p) => p.x)).size).toBe(1);
    expect(pts[0]!.x).toBeLessThan(pts[2]!.x);
  });

  it("keeps force-directed positions inside the frame", () => {
    const g: GraphPayload = {
      n: 6,
      edges: [[0, 1], [0, 2], [1, 2], [2, 3], [3, 4], [3, 5]],
    };
    for (const p of layoutPositions("generic", g, 640, 480)) {
      expect(p.x).toBeGreaterThanOrEqual(0);
      expect(p.x).toBeLessThanOrEqual(640);
      expect(p.y).toBeGreaterThanOrEqual(0);
      expect(p.y).toBeLessThanOrEqual(480);
    }
  });

  it("handles the empty graph", () => {
    expect(layoutPositions("generic", { n: 0, edges: [] }, 640, 480)).toEqual([]);
  });
});
