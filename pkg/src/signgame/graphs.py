"""Simple undirected graphs, the standard families the game is played on,
and bit-exact graph6 text encoding.

Vertex numbering conventions are frozen so that move transcripts, reports
and board layouts stay stable across runs:

* ``Complete(n)``, ``Path(n)``, ``Cycle(n)`` use vertices ``0..n-1``; paths
  have edges ``(i, i+1)`` and cycles additionally ``(n-1, 0)``.
* ``Star(n)`` puts the central vertex at index 0, leaves at ``1..n``.
* ``StarForest`` lays components out consecutively, each center first.
* ``CompleteMultipartite`` numbers the parts consecutively in given order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Union

from .errors import FamilySpecError, Graph6Error


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..vertex_count-1``.

    Edges are stored canonically as ``(lo, hi)`` pairs in sorted order, so
    every iteration over them is deterministic and scores are reproducible.
    """

    vertex_count: int
    edges: tuple = ()

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise ValueError(f"vertex_count must be non-negative, got {n}")
        seen = set()
        canon = []
        for edge in self.edges:
            u, v = edge
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"loop at vertex {u} is not allowed")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @cached_property
    def adjacency(self):
        """Per-vertex tuple of sorted neighbor indices, built once."""
        nbrs = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(b)) for b in nbrs)

    @cached_property
    def _edge_set(self):
        return frozenset(self.edges)

    @property
    def edge_count(self):
        return len(self.edges)

    def degree(self, v):
        return len(self.adjacency[v])

    def has_edge(self, u, v):
        return ((u, v) if u < v else (v, u)) in self._edge_set

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


# --- families ---------------------------------------------------------------


@dataclass(frozen=True)
class Complete:
    """K_n: every pair of distinct vertices joined, n >= 2."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise FamilySpecError(f"complete graph needs n >= 2, got {self.n}")


@dataclass(frozen=True)
class Star:
    """S_n: one center of degree n plus n leaves, n >= 1."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise FamilySpecError(f"star needs n >= 1 leaves, got {self.n}")


@dataclass(frozen=True)
class StarForest:
    """Disjoint union of stars, one entry per component's leaf count."""

    leaf_counts: tuple

    def __post_init__(self):
        counts = tuple(int(c) for c in self.leaf_counts)
        if not counts:
            raise FamilySpecError("star forest needs at least one component")
        for c in counts:
            if c < 1:
                raise FamilySpecError(f"star forest leaf count must be >= 1, got {c}")
        object.__setattr__(self, "leaf_counts", counts)


@dataclass(frozen=True)
class CompleteMultipartite:
    """Complete multipartite graph; 2 parts is K_{m,n}, 3 is K_{l,m,n}."""

    part_sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.part_sizes)
        if len(sizes) < 2:
            raise FamilySpecError("complete multipartite needs at least 2 parts")
        for s in sizes:
            if s < 1:
                raise FamilySpecError(f"part size must be >= 1, got {s}")
        object.__setattr__(self, "part_sizes", sizes)


@dataclass(frozen=True)
class Path:
    """P_n: n vertices in a line, n >= 2."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise FamilySpecError(f"path needs n >= 2, got {self.n}")


@dataclass(frozen=True)
class Cycle:
    """C_n: n vertices in a ring, n >= 3."""

    n: int

    def __post_init__(self):
        if self.n < 3:
            raise FamilySpecError(f"cycle needs n >= 3, got {self.n}")


@dataclass(frozen=True)
class Arbitrary:
    """Any graph, given as graph6 text."""

    graph6: str

    def __post_init__(self):
        if not self.graph6:
            raise FamilySpecError("empty graph6 payload")


FamilySpec = Union[Complete, Star, StarForest, CompleteMultipartite, Path, Cycle, Arbitrary]

_INT_FAMILY = re.compile(r"([KSPC])(\d+)\Z")
_MULTI = re.compile(r"K(\d+(?:,\d+)+)\Z")


def parse_family_spec(text) -> FamilySpec:
    """Parse family-spec grammar: ``K<n>``, ``S<n>``, ``K<a>,<b>[,<c>...]``,
    ``P<n>``, ``C<n>``, ``stars:<a>+<b>+...``, ``g6:<graph6>``."""
    s = text.strip()
    if not s:
        raise FamilySpecError("empty family spec")
    if s.startswith("g6:"):
        payload = s[3:]
        if not payload:
            raise FamilySpecError("missing graph6 text after 'g6:'")
        return Arbitrary(payload)
    if s.startswith("stars:"):
        counts = []
        for token in s[len("stars:"):].split("+"):
            if not token.isdigit():
                raise FamilySpecError(f"bad leaf count {token!r} in {s!r}")
            counts.append(int(token))
        return StarForest(tuple(counts))
    m = _MULTI.match(s)
    if m:
        return CompleteMultipartite(tuple(int(t) for t in m.group(1).split(",")))
    m = _INT_FAMILY.match(s)
    if m:
        letter, num = m.group(1), int(m.group(2))
        if letter == "K":
            return Complete(num)
        if letter == "S":
            return Star(num)
        if letter == "P":
            return Path(num)
        return Cycle(num)
    raise FamilySpecError(f"unrecognized family spec {s!r}")


def family_text(spec) -> str:
    """Canonical text form of a family spec (inverse of parse_family_spec)."""
    if isinstance(spec, Complete):
        return f"K{spec.n}"
    if isinstance(spec, Star):
        return f"S{spec.n}"
    if isinstance(spec, StarForest):
        return "stars:" + "+".join(str(c) for c in spec.leaf_counts)
    if isinstance(spec, CompleteMultipartite):
        return "K" + ",".join(str(s) for s in spec.part_sizes)
    if isinstance(spec, Path):
        return f"P{spec.n}"
    if isinstance(spec, Cycle):
        return f"C{spec.n}"
    if isinstance(spec, Arbitrary):
        return "g6:" + spec.graph6
    raise TypeError(f"not a family spec: {spec!r}")


def build_family(spec) -> Graph:
    """Materialize a family spec using the frozen numbering conventions."""
    if isinstance(spec, Complete):
        return Graph(spec.n, tuple(combinations(range(spec.n), 2)))
    if isinstance(spec, Star):
        return Graph(spec.n + 1, tuple((0, i) for i in range(1, spec.n + 1)))
    if isinstance(spec, StarForest):
        return disjoint_union([build_family(Star(c)) for c in spec.leaf_counts])
    if isinstance(spec, CompleteMultipartite):
        sizes = spec.part_sizes
        offsets = [0]
        for s in sizes:
            offsets.append(offsets[-1] + s)
        edges = []
        for i in range(len(sizes)):
            for j in range(i + 1, len(sizes)):
                for u in range(offsets[i], offsets[i + 1]):
                    for v in range(offsets[j], offsets[j + 1]):
                        edges.append((u, v))
        return Graph(offsets[-1], tuple(edges))
    if isinstance(spec, Path):
        return Graph(spec.n, tuple((i, i + 1) for i in range(spec.n - 1)))
    if isinstance(spec, Cycle):
        edges = [(i, i + 1) for i in range(spec.n - 1)]
        edges.append((0, spec.n - 1))
        return Graph(spec.n, tuple(edges))
    if isinstance(spec, Arbitrary):
        return parse_graph6(spec.graph6)
    raise TypeError(f"not a family spec: {spec!r}")


def multipartite_offsets(part_sizes):
    """Start index of each part under the consecutive numbering convention."""
    offsets = [0]
    for s in part_sizes:
        offsets.append(offsets[-1] + s)
    return offsets


def disjoint_union(parts) -> Graph:
    """Combine graphs side by side; part i's vertices are offset by the
    total size of the parts before it."""
    parts = list(parts)
    if not parts:
        raise ValueError("disjoint_union needs at least one graph")
    edges = []
    offset = 0
    for g in parts:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.vertex_count
    return Graph(offset, tuple(edges))


# --- graph6 ------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def parse_graph6(text) -> Graph:
    """Decode a graph6 string (optional ``>>graph6<<`` header accepted)."""
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string")
    vals = []
    for i, ch in enumerate(s):
        o = ord(ch)
        if o < 63 or o > 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range 63..126", offset=i)
        vals.append(o - 63)

    if vals[0] != 63:
        n, idx = vals[0], 1
    elif len(vals) >= 2 and vals[1] != 63:
        if len(vals) < 4:
            raise Graph6Error("truncated size field", offset=len(s))
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        idx = 4
    else:
        if len(vals) < 8:
            raise Graph6Error("truncated size field", offset=len(s))
        n = 0
        for k in range(2, 8):
            n = (n << 6) | vals[k]
        idx = 8

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = vals[idx:]
    if len(body) != need:
        raise Graph6Error(
            f"expected {need} data characters for {n} vertices, found {len(body)}",
            offset=idx,
        )
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if (body[pos // 6] >> (5 - pos % 6)) & 1:
                edges.append((i, j))
            pos += 1
    for k in range(nbits, need * 6):
        if (body[k // 6] >> (5 - k % 6)) & 1:
            raise Graph6Error("nonzero padding bits", offset=idx + k // 6)
    return Graph(n, tuple(edges))


def encode_graph6(g) -> str:
    """Encode a graph as graph6 text; round-trips through parse_graph6."""
    n = g.vertex_count
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)]
    elif n <= 68719476735:
        head = [126, 126] + [63 + ((n >> (6 * k)) & 63) for k in range(5, -1, -1)]
    else:
        raise ValueError(f"graph too large for graph6: {n} vertices")
    has = frozenset(g.edges)
    body = []
    acc = 0
    filled = 0
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | (1 if (i, j) in has else 0)
            filled += 1
            if filled == 6:
                body.append(63 + acc)
                acc, filled = 0, 0
    if filled:
        body.append(63 + (acc << (6 - filled)))
    return "".join(chr(c) for c in head + body)
