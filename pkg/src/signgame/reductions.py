"""Score-preserving position reductions and the completion-equivalence checker.

Two partially assigned graphs are treated as equivalent when every way of
completing the unassigned vertices (mapped through an explicit
correspondence) produces the same final score on both. This is the
strongest reading of play-order-preserving equivalence: it is order-free
and exhaustively checkable, and all four reduction rules here satisfy it.

Every reduction is pure, re-compacts vertex indices, and returns the
old-to-new index map (removed vertices map to no index, duplicated
vertices to two).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .engine import Sign, completed_score
from .errors import BudgetExceededError, ReductionError
from .graphs import Graph

CHECKER_MAX_UNASSIGNED = 20


@dataclass(frozen=True)
class Position:
    """A graph with some vertices assigned; no turn information."""

    graph: Graph
    cells: tuple

    def __post_init__(self):
        cells = tuple(self.cells)
        if len(cells) != self.graph.vertex_count:
            raise ValueError(
                f"need {self.graph.vertex_count} cells, got {len(cells)}"
            )
        for c in cells:
            if c is not None and not isinstance(c, Sign):
                raise ValueError(f"cell must be a Sign or None, got {c!r}")
        object.__setattr__(self, "cells", cells)

    @property
    def unassigned(self):
        return tuple(v for v, c in enumerate(self.cells) if c is None)

    def assigned_count(self):
        return sum(1 for c in self.cells if c is not None)


@dataclass
class ReducedPosition:
    """Result of a reduction: the new position plus traceability data.

    ``index_map[old]`` lists the new indices carrying old vertex ``old``:
    empty when removed, two entries when the vertex was duplicated.
    """

    position: Position
    index_map: tuple


@dataclass
class EquivalenceReport:
    equivalent: bool
    completions_checked: int
    first_mismatch: Optional[tuple]  # (completion dict, score1, score2)


@dataclass(frozen=True)
class PathSegment:
    """A block of consecutive path edges: half-open edge index range,
    the two bounding vertices, and the vertices strictly inside."""

    edge_start: int
    edge_stop: int
    endvertices: tuple
    interior: tuple


@dataclass
class SegmentDecomposition:
    four_segments: tuple
    k_segment: Optional[PathSegment]

    @property
    def all_segments(self):
        segs = list(self.four_segments)
        if self.k_segment is not None:
            segs.append(self.k_segment)
        return tuple(segs)


# --- helpers ------------------------------------------------------------------


def _compact(position, keep):
    """New position on the vertices in ``keep`` (in order), plus the map."""
    remap = {old: new for new, old in enumerate(keep)}
    kept = set(keep)
    edges = tuple(
        (remap[u], remap[v])
        for u, v in position.graph.edges
        if u in kept and v in kept
    )
    graph = Graph(len(keep), edges)
    cells = tuple(position.cells[old] for old in keep)
    index_map = tuple(
        (remap[v],) if v in kept else () for v in range(position.graph.vertex_count)
    )
    return ReducedPosition(Position(graph, cells), index_map)


def _path_order(graph):
    """Vertices of a path graph in line order, or None if not a path."""
    n = graph.vertex_count
    if n < 2 or graph.edge_count != n - 1:
        return None
    ends = [v for v in range(n) if graph.degree(v) == 1]
    if len(ends) != 2 or any(graph.degree(v) != 2 for v in range(n) if v not in ends):
        return None
    order = [min(ends)]
    prev = None
    while len(order) < n:
        nxt = [u for u in graph.adjacency[order[-1]] if u != prev]
        if len(nxt) != 1:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order


def _cycle_order(graph, start):
    """Vertices of a cycle graph walked from ``start`` (toward its lower
    neighbor first), or None if not a cycle."""
    n = graph.vertex_count
    if n < 3 or graph.edge_count != n:
        return None
    if any(graph.degree(v) != 2 for v in range(n)):
        return None
    order = [start]
    prev, cur = None, start
    nxt = min(graph.adjacency[start])
    while nxt != start:
        order.append(nxt)
        prev, cur = cur, nxt
        onward = [u for u in graph.adjacency[cur] if u != prev]
        if len(onward) != 1:
            return None
        nxt = onward[0]
    if len(order) != n:
        return None
    return order


def _bipartite_parts(graph):
    """The two partitioning sets of a complete bipartite graph, or None.

    Parts are the connected components of the complement; the graph must
    have every cross-part edge and no intra-part edge.
    """
    n = graph.vertex_count
    unseen = set(range(n))
    parts = []
    while unseen:
        v = min(unseen)
        comp = {v}
        frontier = [v]
        while frontier:
            u = frontier.pop()
            nbrs = set(graph.adjacency[u])
            for w in list(unseen):
                if w not in comp and w not in nbrs:
                    comp.add(w)
                    frontier.append(w)
        unseen -= comp
        parts.append(sorted(comp))
    if len(parts) != 2:
        return None
    expected = len(parts[0]) * len(parts[1])
    if graph.edge_count != expected:
        return None
    for part in parts:
        for i, u in enumerate(part):
            for v in part[i + 1:]:
                if graph.has_edge(u, v):
                    return None
    return parts


# --- reductions ---------------------------------------------------------------


def cancel_opposite_leaves(position, leaf_a, leaf_b) -> ReducedPosition:
    """Remove two opposite-signed leaves hanging off the same vertex.

    Whatever the shared neighbor ends up being, the two leaf edges score
    +1 and -1, so dropping both changes no completion's total.
    """
    g = position.graph
    for leaf in (leaf_a, leaf_b):
        if not 0 <= leaf < g.vertex_count:
            raise ReductionError(f"vertex {leaf} out of range")
        if g.degree(leaf) != 1:
            raise ReductionError(f"vertex {leaf} is not a leaf (degree {g.degree(leaf)})")
        if position.cells[leaf] is None:
            raise ReductionError(f"leaf {leaf} is unassigned")
    if g.adjacency[leaf_a][0] != g.adjacency[leaf_b][0]:
        raise ReductionError(
            f"leaves {leaf_a} and {leaf_b} do not share a neighbor"
        )
    if position.cells[leaf_a] is not position.cells[leaf_b].opposite:
        raise ReductionError(
            f"leaves {leaf_a} and {leaf_b} must carry opposite signs"
        )
    keep = [v for v in range(g.vertex_count) if v not in (leaf_a, leaf_b)]
    return _compact(position, keep)


def split_path_at_assigned(position, vertex) -> ReducedPosition:
    """Split a path at an assigned internal vertex into two paths, the split
    vertex duplicated into both with its value."""
    order = _path_order(position.graph)
    if order is None:
        raise ReductionError("underlying graph is not a path")
    if position.cells[vertex] is None:
        raise ReductionError(f"split vertex {vertex} is unassigned")
    pos_in_path = order.index(vertex)
    if pos_in_path in (0, len(order) - 1):
        raise ReductionError(f"split vertex {vertex} is a path endpoint")

    first = order[: pos_in_path + 1]
    second = order[pos_in_path:]
    n1 = len(first)
    edges = [(i, i + 1) for i in range(n1 - 1)]
    edges += [(n1 + i, n1 + i + 1) for i in range(len(second) - 1)]
    graph = Graph(n1 + len(second), tuple(edges))
    cells = tuple(position.cells[v] for v in first) + tuple(
        position.cells[v] for v in second
    )
    index_map = [()] * position.graph.vertex_count
    for new, old in enumerate(first):
        index_map[old] = (new,)
    for off, old in enumerate(second):
        index_map[old] = index_map[old] + (n1 + off,)
    return ReducedPosition(Position(graph, cells), tuple(index_map))


def open_cycle(position, vertex) -> ReducedPosition:
    """Open a cycle at an assigned vertex into a path one vertex longer,
    both path ends inheriting the opened vertex's value."""
    order = _cycle_order(position.graph, vertex)
    if order is None:
        raise ReductionError("underlying graph is not a cycle")
    if position.cells[vertex] is None:
        raise ReductionError(f"vertex {vertex} is unassigned")
    n = len(order)
    graph = Graph(n + 1, tuple((i, i + 1) for i in range(n)))
    cells = tuple(position.cells[v] for v in order) + (position.cells[vertex],)
    index_map = [()] * n
    for new, old in enumerate(order):
        index_map[old] = (new,)
    index_map[vertex] = (0, n)
    return ReducedPosition(Position(graph, cells), tuple(index_map))


def cancel_bipartite_pair(position, u, v) -> ReducedPosition:
    """Remove two opposite-signed vertices from the same partitioning set of
    a complete bipartite graph; their edge scores cancel columnwise."""
    parts = _bipartite_parts(position.graph)
    if parts is None:
        raise ReductionError("underlying graph is not complete bipartite")
    side = next((p for p in parts if u in p), None)
    if side is None or v not in side:
        raise ReductionError(f"vertices {u} and {v} are not in the same partitioning set")
    if position.cells[u] is None or position.cells[v] is None:
        raise ReductionError("both vertices must be assigned")
    if position.cells[u] is not position.cells[v].opposite:
        raise ReductionError(f"vertices {u} and {v} must carry opposite signs")
    keep = [w for w in range(position.graph.vertex_count) if w not in (u, v)]
    return _compact(position, keep)


# --- completion-equivalence checker --------------------------------------------


def _completion_scores(position, columns):
    """Scores of all completions as an int64 vector.

    Completion k assigns column j of ``columns`` the sign Plus when bit j
    of k is set, Minus otherwise.
    """
    col_of = {v: j for j, v in enumerate(columns)}
    u = len(columns)
    count = 1 << u
    base = 0
    linear = np.zeros(u, dtype=np.int64)
    quads = []
    for a, b in position.graph.edges:
        ca, cb = position.cells[a], position.cells[b]
        if ca is not None and cb is not None:
            base += int(ca) * int(cb)
        elif ca is not None:
            linear[col_of[b]] += int(ca)
        elif cb is not None:
            linear[col_of[a]] += int(cb)
        else:
            quads.append((col_of[a], col_of[b]))
    scores = np.full(count, base, dtype=np.int64)
    if u:
        bits = ((np.arange(count, dtype=np.int64)[:, None] >> np.arange(u)) & 1)
        signs = (2 * bits - 1).astype(np.int64)
        for j in range(u):
            if linear[j]:
                scores += linear[j] * signs[:, j]
        for i, j in quads:
            scores += signs[:, i] * signs[:, j]
    return scores


def check_completion_equivalence(
    pos1, pos2, correspondence, *, max_unassigned=CHECKER_MAX_UNASSIGNED
) -> EquivalenceReport:
    """Compare the scores of every completion of two positions.

    ``correspondence`` maps each unassigned vertex of ``pos1`` to the
    unassigned vertex of ``pos2`` that receives the same sign.
    """
    un1 = list(pos1.unassigned)
    un2 = set(pos2.unassigned)
    if set(correspondence.keys()) != set(un1):
        raise ValueError("correspondence keys must be exactly pos1's unassigned vertices")
    mapped = list(correspondence.values())
    if len(set(mapped)) != len(mapped) or set(mapped) != un2:
        raise ValueError("correspondence must be a bijection onto pos2's unassigned vertices")
    if len(un1) > max_unassigned:
        raise BudgetExceededError(
            f"{len(un1)} unassigned vertices exceed checker budget {max_unassigned}"
        )
    scores1 = _completion_scores(pos1, un1)
    scores2 = _completion_scores(pos2, [correspondence[v] for v in un1])
    mismatches = np.nonzero(scores1 != scores2)[0]
    count = len(scores1)
    if mismatches.size == 0:
        return EquivalenceReport(True, count, None)
    k = int(mismatches[0])
    completion = {
        v: (Sign.PLUS if (k >> j) & 1 else Sign.MINUS) for j, v in enumerate(un1)
    }
    return EquivalenceReport(False, count, (completion, int(scores1[k]), int(scores2[k])))


def correspondence_from_maps(pos1, reduced) -> dict:
    """Unassigned-vertex correspondence induced by a reduction's index map."""
    out = {}
    for v in pos1.unassigned:
        targets = reduced.index_map[v]
        if len(targets) != 1:
            raise ValueError(f"unassigned vertex {v} does not map to a single vertex")
        out[v] = targets[0]
    return out


def position_score(position) -> int:
    """Score over completed edges only (partial positions allowed)."""
    return completed_score(position.graph, position.cells)


# --- segment decomposition ------------------------------------------------------


def decompose_segments(n) -> SegmentDecomposition:
    """Partition the n edges of the path on n+1 vertices into leading blocks
    of four consecutive edges plus one trailing block of n mod 4 edges.

    Edge i joins vertices (i, i+1). Each segment's endvertices bound it;
    everything strictly between is interior.
    """
    if n < 1:
        raise ValueError(f"need at least one edge, got {n}")
    fours = []
    for t in range(n // 4):
        start = 4 * t
        fours.append(
            PathSegment(
                edge_start=start,
                edge_stop=start + 4,
                endvertices=(start, start + 4),
                interior=tuple(range(start + 1, start + 4)),
            )
        )
    k = n % 4
    k_segment = None
    if k:
        start = n - k
        k_segment = PathSegment(
            edge_start=start,
            edge_stop=n,
            endvertices=(start, n),
            interior=tuple(range(start + 1, n)),
        )
    return SegmentDecomposition(tuple(fours), k_segment)
