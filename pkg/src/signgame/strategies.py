"""Executable mirroring strategies and an exact adversarial evaluator.

Each strategy kind is one deterministic instantiation of a response rule:
free choices ("any vertex") are fixed to the lowest index, so the
evaluator can compute the exact score the rule guarantees against a
best-responding opponent. Certifying a bound with one instantiation
witnesses the claim for the whole rule class; a failed instantiation
proves nothing either way.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .engine import (
    GameConfig,
    Move,
    Role,
    Sign,
    apply_move,
    new_game,
    player_to_move,
    score,
)
from .errors import BudgetExceededError, StrategyError
from .graphs import Graph, build_family, CompleteMultipartite, multipartite_offsets

DEFAULT_EVAL_BUDGET = 14

_INF = 1 << 30


class StrategyKind(Enum):
    # respond anywhere with the opposite of the opponent's last sign
    MIRROR_OPPOSITE_SIGN = "mirror-opposite"
    # respond anywhere, always repeating the game's first-move sign: the
    # responder's assignments are all identical, forcing a 3-1 majority on
    # four vertices (copying the last sign instead lets the opponent
    # alternate into the losing 2-2 split)
    MIRROR_SAME_SIGN = "mirror-same"
    # respond in the part opposite the opponent's move, opposite sign
    BIPARTITE_CROSS_MIRROR = "cross-part"
    # respond in the same part, opposite sign; special-cased final cross move
    BIPARTITE_SAME_PART_MIRROR = "same-part"


@dataclass
class StrategyEvalReport:
    """Exact worst case of a forced strategy, from P's perspective."""

    guaranteed_value: int
    witness_line: list
    nodes: int


def _lowest_unassigned(state, vertices=None):
    pool = range(state.graph.vertex_count) if vertices is None else vertices
    for v in pool:
        if state.cells[v] is None:
            return v
    return None


def _default_first_move(state, operated_role):
    sign = Sign.MINUS if operated_role is Role.N else Sign.PLUS
    return Move(_lowest_unassigned(state), sign)


def _part_of(vertex, offsets):
    for i in range(len(offsets) - 1):
        if offsets[i] <= vertex < offsets[i + 1]:
            return i
    raise StrategyError(f"vertex {vertex} outside the declared parts")


def strategy_move(state, config, kind, part_sizes=None) -> Move:
    """The move the given strategy plays for the side to move.

    Bipartite kinds need the two part sizes of the complete bipartite
    construction (parts are consecutive index ranges). When the rule's
    preferred part is exhausted, the move falls back to the opponent's own
    part with the opposite sign, which pairs off score-neutrally.
    """
    mover = player_to_move(state, config)
    if not state.history:
        return _default_first_move(state, mover)
    last = state.history[-1]

    if kind is StrategyKind.MIRROR_OPPOSITE_SIGN:
        return Move(_lowest_unassigned(state), last.sign.opposite)
    if kind is StrategyKind.MIRROR_SAME_SIGN:
        return Move(_lowest_unassigned(state), state.history[0].sign)

    if part_sizes is None or len(part_sizes) != 2:
        raise StrategyError("bipartite strategies need part_sizes with two parts")
    offsets = multipartite_offsets(part_sizes)
    if offsets[-1] != state.graph.vertex_count:
        raise StrategyError("part sizes do not cover the graph")
    last_part = _part_of(last.vertex, offsets)
    parts = [range(offsets[i], offsets[i + 1]) for i in range(2)]

    if kind is StrategyKind.BIPARTITE_CROSS_MIRROR:
        v = _lowest_unassigned(state, parts[1 - last_part])
        if v is None:
            v = _lowest_unassigned(state, parts[last_part])
        if v is None:
            raise StrategyError("no unassigned vertex available")
        return Move(v, last.sign.opposite)

    if kind is StrategyKind.BIPARTITE_SAME_PART_MIRROR:
        v = _lowest_unassigned(state, parts[last_part])
        if v is not None:
            return Move(v, last.sign.opposite)
        v = _lowest_unassigned(state, parts[1 - last_part])
        if v is None:
            raise StrategyError("no unassigned vertex available")
        # Opponent just exhausted a part: P copies their sign, N opposes it.
        sign = last.sign if mover is Role.P else last.sign.opposite
        return Move(v, sign)

    raise StrategyError(f"unknown strategy kind {kind!r}")


def _check_applicable(graph, kind, part_sizes):
    if kind in (StrategyKind.BIPARTITE_CROSS_MIRROR, StrategyKind.BIPARTITE_SAME_PART_MIRROR):
        if part_sizes is None or len(part_sizes) != 2:
            raise StrategyError("bipartite strategies need part_sizes with two parts")
        expected = build_family(CompleteMultipartite(tuple(part_sizes)))
        if expected.vertex_count != graph.vertex_count or expected.edges != graph.edges:
            raise StrategyError(
                "graph is not the complete bipartite graph with the declared parts"
            )


def evaluate_strategy(
    graph,
    config,
    kind,
    operated_role,
    part_sizes=None,
    *,
    budget=DEFAULT_EVAL_BUDGET,
) -> StrategyEvalReport:
    """Exact value (P's perspective) when ``operated_role`` is forced to the
    strategy and the opponent plays a best response.

    For an N-operated strategy the result is what N can guarantee the score
    stays at or below; for P-operated, at or above.
    """
    _check_applicable(graph, kind, part_sizes)
    if graph.vertex_count > budget:
        raise BudgetExceededError(
            f"{graph.vertex_count} vertices exceed strategy evaluation budget {budget}"
        )
    opponent_max = operated_role is Role.N  # opponent is P
    nodes = 0

    def walk(state):
        nonlocal nodes
        nodes += 1
        if state.is_over:
            return score(state.graph, state.cells), []
        mover = player_to_move(state, config)
        if mover is operated_role:
            move = strategy_move(state, config, kind, part_sizes)
            child, _ = apply_move(state, move)
            value, line = walk(child)
            return value, [move] + line
        best = None
        best_line = None
        for v in range(state.graph.vertex_count):
            if state.cells[v] is not None:
                continue
            for sign in (Sign.PLUS, Sign.MINUS):
                move = Move(v, sign)
                child, _ = apply_move(state, move)
                value, line = walk(child)
                if (
                    best is None
                    or (opponent_max and value > best)
                    or (not opponent_max and value < best)
                ):
                    best = value
                    best_line = [move] + line
        return best, best_line

    value, line = walk(new_game(graph))
    return StrategyEvalReport(value, line, nodes)
