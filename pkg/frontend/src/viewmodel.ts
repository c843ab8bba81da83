/**
 * Pure mapping from service responses to what the board shows. Everything
 * numeric on screen (ticker, edge scores, deltas, hint values) is copied
 * verbatim out of a response payload; this module computes no game
 * arithmetic of its own, only geometry and labels.
 */

import type { GameView, HintPayload, SignSymbol } from "./api.js";
import { layoutPositions, type Point } from "./layout.js";

export interface VertexModel {
  index: number;
  x: number;
  y: number;
  cell: SignSymbol | null;
  clickable: boolean;
  highlighted: boolean;
  suggestedSign: SignSymbol | null;
}

export interface EdgeModel {
  u: number;
  v: number;
  from: Point;
  to: Point;
  /** null while incomplete; otherwise the service-reported score */
  score: number | null;
  fresh: boolean;
}

export interface BoardModel {
  vertices: VertexModel[];
  edges: EdgeModel[];
  banked: number;
  banner: string;
  yourTurn: boolean;
  finished: boolean;
  deltaFlash: string | null;
}

export function outcomeBanner(view: GameView): string {
  if (view.status === "finished") {
    if (view.outcome === "draw") return "Draw";
    return view.outcome === "P" ? "Player P wins" : "Player N wins";
  }
  return view.to_move === view.human_role ? "Your move" : "Engine thinking";
}

export function boardModel(
  view: GameView,
  width: number,
  height: number,
  hint: HintPayload | null = null,
): BoardModel {
  const positions = layoutPositions(view.layout, view.graph, width, height);
  const yourTurn = view.status === "in_progress" && view.to_move === view.human_role;

  const scoreByEdge = new Map<string, number>();
  for (const done of view.completed_edges) {
    scoreByEdge.set(done.edge.join("-"), done.score);
  }
  const freshEdges = new Set((view.new_edges ?? []).map((d) => d.edge.join("-")));

  const suggested = hint?.best_move ?? null;
  const vertices: VertexModel[] = view.cells.map((cell, index) => ({
    index,
    x: positions[index]?.x ?? width / 2,
    y: positions[index]?.y ?? height / 2,
    cell,
    clickable: yourTurn && cell === null,
    highlighted: suggested !== null && suggested.v === index && cell === null,
    suggestedSign: suggested !== null && suggested.v === index ? suggested.sign : null,
  }));

  const edges: EdgeModel[] = view.graph.edges.map(([u, v]) => {
    const key = `${u}-${v}`;
    return {
      u,
      v,
      from: positions[u] ?? { x: 0, y: 0 },
      to: positions[v] ?? { x: 0, y: 0 },
      score: scoreByEdge.get(key) ?? null,
      fresh: freshEdges.has(key),
    };
  });

  const deltaFlash =
    view.banked_delta === undefined
      ? null
      : `${view.banked_delta >= 0 ? "+" : ""}${view.banked_delta}`;

  return {
    vertices,
    edges,
    banked: view.banked_score,
    banner: outcomeBanner(view),
    yourTurn,
    finished: view.status === "finished",
    deltaFlash,
  };
}

/** Hint text; the value is already oriented by the service (positive is
 * good for the human player). */
export function hintText(hint: HintPayload): string {
  if (hint.best_move === null) {
    return "Game over";
  }
  const outlook =
    hint.outcome_with_optimal_play === "draw"
      ? "a draw with best play"
      : `Player ${hint.outcome_with_optimal_play} wins with best play`;
  return (
    `Suggested: vertex ${hint.best_move.v} gets ${hint.best_move.sign} ` +
    `(value for you ${hint.value >= 0 ? "+" : ""}${hint.value}; ${outlook})`
  );
}

/** Every number the model would put on screen, for contract checking. */
export function displayedNumbers(model: BoardModel, hint: HintPayload | null = null): number[] {
  const numbers: number[] = [model.banked];
  for (const edge of model.edges) {
    if (edge.score !== null) numbers.push(edge.score);
  }
  if (model.deltaFlash !== null) numbers.push(Number(model.deltaFlash));
  if (hint !== null) numbers.push(hint.value);
  return numbers;
}
