"""Rules of the Sign Game.

Two players alternate assigning +1 or -1 to unassigned vertices. When the
second endpoint of an edge is assigned, the edge's score (the product of
its endpoints) is banked. The game ends when every vertex is assigned; the
final score is the sum of all edge scores. Player P wins if it is positive,
Player N if negative, and a zero score is a draw.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (
    GameOverError,
    IllegalMoveError,
    IncompleteGameError,
    TranscriptError,
)
from .graphs import Graph, build_family, parse_family_spec


class Sign(enum.IntEnum):
    PLUS = 1
    MINUS = -1

    @property
    def symbol(self):
        return "+" if self is Sign.PLUS else "-"

    @property
    def opposite(self):
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    @classmethod
    def from_symbol(cls, text):
        if text == "+":
            return cls.PLUS
        if text == "-":
            return cls.MINUS
        raise ValueError(f"bad sign symbol {text!r}, expected '+' or '-'")


class Role(enum.Enum):
    P = "P"
    N = "N"

    @property
    def other(self):
        return Role.N if self is Role.P else Role.P


class Outcome(enum.Enum):
    P_WINS = "P"
    N_WINS = "N"
    DRAW = "draw"


@dataclass(frozen=True)
class GameConfig:
    """Which role moves first; the other role is Player 2."""

    first_role: Role

    @property
    def second_role(self):
        return self.first_role.other

    def role_of_player(self, player_index):
        """Role holding player seat 1 or 2."""
        if player_index == 1:
            return self.first_role
        if player_index == 2:
            return self.first_role.other
        raise ValueError(f"player index must be 1 or 2, got {player_index}")


@dataclass(frozen=True)
class Move:
    vertex: int
    sign: Sign


@dataclass(frozen=True)
class GameState:
    """A (possibly partial) play of the game on a fixed graph.

    ``banked_score`` is maintained incrementally and always equals the sum
    of products over edges whose two endpoints are both assigned.
    """

    graph: Graph
    cells: tuple
    banked_score: int
    history: tuple

    @property
    def moves_made(self):
        return len(self.history)

    @property
    def is_over(self):
        return self.moves_made == self.graph.vertex_count

    def cell(self, v):
        return self.cells[v]


def new_game(graph) -> GameState:
    """Fresh state: all vertices unassigned, nothing banked."""
    return GameState(graph, (None,) * graph.vertex_count, 0, ())


def state_from_cells(graph, cells) -> GameState:
    """State with the given assignment and a synthetic history (assigned
    vertices in index order). Valid because the banked total is independent
    of move order."""
    cells = tuple(cells)
    if len(cells) != graph.vertex_count:
        raise ValueError(
            f"need {graph.vertex_count} cells, got {len(cells)}"
        )
    history = tuple(Move(v, c) for v, c in enumerate(cells) if c is not None)
    return GameState(graph, cells, completed_score(graph, cells), history)


def player_to_move(state, config) -> Role:
    """Whose turn it is; players alternate starting from first_role."""
    if state.is_over:
        raise GameOverError("game is over, nobody is to move")
    return config.first_role if state.moves_made % 2 == 0 else config.first_role.other


def legal_moves(state):
    """All (vertex, sign) pairs on unassigned vertices, sorted by vertex
    with Plus before Minus."""
    moves = []
    for v, c in enumerate(state.cells):
        if c is None:
            moves.append(Move(v, Sign.PLUS))
            moves.append(Move(v, Sign.MINUS))
    return moves


def apply_move(state, move):
    """Apply a legal move; returns (new_state, banked_delta).

    The delta is the sum of products over edges completed by this move:
    positive deltas are points banked for P, negative for N.
    """
    v = move.vertex
    if not 0 <= v < state.graph.vertex_count:
        raise IllegalMoveError(f"vertex {v} out of range")
    if state.cells[v] is not None:
        raise IllegalMoveError(f"vertex {v} already assigned")
    delta = 0
    for u in state.graph.adjacency[v]:
        c = state.cells[u]
        if c is not None:
            delta += int(move.sign) * int(c)
    cells = list(state.cells)
    cells[v] = move.sign
    new_state = GameState(
        state.graph,
        tuple(cells),
        state.banked_score + delta,
        state.history + (move,),
    )
    return new_state, delta


def score(graph, cells) -> int:
    """Final score of a complete assignment: sum of edge products."""
    cells = tuple(cells)
    if len(cells) != graph.vertex_count:
        raise ValueError(f"need {graph.vertex_count} cells, got {len(cells)}")
    if any(c is None for c in cells):
        raise IncompleteGameError("assignment is incomplete")
    return sum(int(cells[u]) * int(cells[v]) for u, v in graph.edges)


def completed_score(graph, cells) -> int:
    """Sum of products over edges whose both endpoints are assigned."""
    total = 0
    for u, v in graph.edges:
        cu, cv = cells[u], cells[v]
        if cu is not None and cv is not None:
            total += int(cu) * int(cv)
    return total


def outcome_from_score(s) -> Outcome:
    if s > 0:
        return Outcome.P_WINS
    if s < 0:
        return Outcome.N_WINS
    return Outcome.DRAW


# --- move transcripts --------------------------------------------------------
#
# Wire format:
#   {"graph": "<family-spec>", "first_role": "P"|"N",
#    "moves": [{"v": int, "sign": "+"|"-"}, ...],
#    "final_score": int, "outcome": "P"|"N"|"draw"}      (last two if finished)


def transcript_dict(spec_text, config, state) -> dict:
    doc = {
        "graph": spec_text,
        "first_role": config.first_role.value,
        "moves": [{"v": m.vertex, "sign": m.sign.symbol} for m in state.history],
    }
    if state.is_over:
        final = score(state.graph, state.cells)
        doc["final_score"] = final
        doc["outcome"] = outcome_from_score(final).value
    return doc


def replay_transcript(doc):
    """Rebuild (config, state, spec) from a transcript dict, replaying every
    move through the engine and checking any recorded result."""
    try:
        spec = parse_family_spec(doc["graph"])
        config = GameConfig(Role(doc["first_role"]))
        moves = doc["moves"]
    except (KeyError, ValueError) as exc:
        raise TranscriptError(f"bad transcript: {exc}") from exc
    graph = build_family(spec)
    state = new_game(graph)
    for entry in moves:
        try:
            move = Move(int(entry["v"]), Sign.from_symbol(entry["sign"]))
        except (KeyError, ValueError, TypeError) as exc:
            raise TranscriptError(f"bad transcript move {entry!r}") from exc
        state, _ = apply_move(state, move)
    if "final_score" in doc:
        if not state.is_over:
            raise TranscriptError("transcript records a result but is unfinished")
        final = score(graph, state.cells)
        if final != doc["final_score"]:
            raise TranscriptError(
                f"recorded final_score {doc['final_score']} != replayed {final}"
            )
        if "outcome" in doc and doc["outcome"] != outcome_from_score(final).value:
            raise TranscriptError("recorded outcome disagrees with replayed score")
    return config, state, spec
