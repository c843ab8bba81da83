"""Exact perfect-play evaluation.

Values are always oriented from Player P's perspective: P maximizes the
final score, N minimizes it, and the sign of the optimal value is the
game-theoretic outcome (win > draw > loss is exactly the sign ordering).

Two engines:

* ``solve`` runs a memoized search over bit-packed assignments. States are
  folded under the global sign flip and under permutations of
  interchangeable vertices (equal open or closed neighborhoods), and the
  default mode adds alpha-beta pruning with transposition flags plus a
  static bound from the number of still-incomplete edges. ``pruned=False``
  selects a plain exhaustive minimax over the same state space, kept as a
  verification twin.

* ``solve_counts`` collapses complete and complete multipartite graphs to
  per-part (plus, minus) counts. Internally each part reduces further to
  (remaining, imbalance), which determines the value regardless of the
  original part size, so one cache can be shared across instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .engine import (
    GameConfig,
    GameState,
    Move,
    Outcome,
    Role,
    Sign,
    apply_move,
    outcome_from_score,
    player_to_move,
)
from .errors import BudgetExceededError
from .graphs import Graph, multipartite_offsets

DEFAULT_UNASSIGNED_BUDGET = 16
DEFAULT_COUNTS_STATE_LIMIT = 10_000_000

_INF = 1 << 30
_EXACT, _LOWER, _UPPER = 0, 1, 2


@dataclass
class SolveResult:
    """Exact minimax value plus search statistics.

    ``best_move`` is None only when the game is already over; ties are
    broken by lowest vertex index, then Plus before Minus.
    """

    value: int
    outcome: Outcome
    best_move: Optional[Move]
    nodes_expanded: int
    memo_hits: int


class _Search:
    """One solve invocation over one graph: private tables and counters."""

    def __init__(self, graph, first_role, pruned):
        n = graph.vertex_count
        self.n = n
        self.full = (1 << n) - 1
        self.adj = [0] * n
        for u, v in graph.edges:
            self.adj[u] |= 1 << v
            self.adj[v] |= 1 << u
        self.first_is_p = first_role is Role.P
        self.pruned = pruned
        self.tt = {}
        self.counters = [0, 0]  # nodes expanded, memo hits
        self._init_twin_classes()
        self._ab = _make_ab(self)

    @property
    def nodes(self):
        return self.counters[0]

    @property
    def hits(self):
        return self.counters[1]

    def search_ab(self, p, m, alpha, beta, banked, rem):
        return self._ab(p, m, alpha, beta, banked, rem)

    def _init_twin_classes(self):
        """Group vertices whose swap is a graph automorphism: equal open
        neighborhoods (non-adjacent twins) or equal closed neighborhoods
        (adjacent twins). Used to fold symmetric states."""
        n = self.n
        by_open = {}
        for v in range(n):
            by_open.setdefault(self.adj[v], []).append(v)
        classes = [vs for vs in by_open.values() if len(vs) > 1]
        classed = set(itertools.chain.from_iterable(classes))
        by_closed = {}
        for v in range(n):
            if v not in classed:
                by_closed.setdefault(self.adj[v] | (1 << v), []).append(v)
        classes.extend(vs for vs in by_closed.values() if len(vs) > 1)
        self.class_mask_of = [0] * n
        folded = []
        for vs in classes:
            vs.sort()
            mask = 0
            prefixes = [0]
            for v in vs:
                mask |= 1 << v
                prefixes.append(prefixes[-1] | (1 << v))
            for v in vs:
                self.class_mask_of[v] = mask
            folded.append((mask, prefixes))
        self.classes = folded
        self.singleton_mask = self.full & ~sum(m for m, _ in folded) if folded else self.full
        self.trivial = not folded

    def _canon(self, p, m):
        """Within each twin class, push Plus cells to the lowest slots and
        Minus cells just after; counts are all that matter."""
        if self.trivial:
            return p, m
        cp = p & self.singleton_mask
        cm = m & self.singleton_mask
        for mask, pref in self.classes:
            pc = (p & mask).bit_count()
            mc = (m & mask).bit_count()
            cp |= pref[pc]
            cm |= pref[pc + mc] ^ pref[pc]
        return cp, cm

    def key(self, p, m):
        """Canonical memo key, folding twin permutations and the global
        sign flip (which swaps the plus and minus masks)."""
        a = self._canon(p, m)
        b = self._canon(m, p)
        return a if a <= b else b

    def _is_p_turn(self, occ):
        return ((occ.bit_count() & 1) == 0) == self.first_is_p

    def _moves(self, occ):
        """Unassigned vertices worth expanding: one representative per twin
        class (the lowest unassigned member), every vertex otherwise."""
        un = self.full & ~occ
        out = []
        while un:
            bit = un & -un
            un ^= bit
            cmask = self.class_mask_of[bit.bit_length() - 1]
            if cmask:
                open_in_class = cmask & ~occ
                if open_in_class & -open_in_class != bit:
                    continue
            out.append(bit)
        return out

    # -- plain exhaustive minimax (verification twin) --

    def search_plain(self, p, m):
        occ = p | m
        if occ == self.full:
            return self._terminal_score(p, m)
        key = self.key(p, m)
        cached = self.tt.get(key)
        if cached is not None:
            self.counters[1] += 1
            return cached
        self.counters[0] += 1
        maximizing = self._is_p_turn(occ)
        best = -_INF if maximizing else _INF
        for bit in self._moves(occ):
            for cp, cm in ((p | bit, m), (p, m | bit)):
                v = self.search_plain(cp, cm)
                if maximizing:
                    if v > best:
                        best = v
                else:
                    if v < best:
                        best = v
        self.tt[key] = best
        return best

    def _terminal_score(self, p, m):
        total = 0
        for v in range(self.n):
            a = self.adj[v]
            if (p >> v) & 1:
                total += (a & p).bit_count() - (a & m).bit_count()
            else:
                total += (a & m).bit_count() - (a & p).bit_count()
        return total // 2


def _make_ab(search):
    """Build the alpha-beta recursion with everything bound to locals.

    rem counts edges with at least one unassigned endpoint; each of them
    eventually contributes +-1, so the final score always lies within
    banked +- rem, giving cheap static cutoffs.
    """
    n = search.n
    trivial = search.trivial

    def ab(
        p,
        m,
        alpha,
        beta,
        banked,
        rem,
        full=search.full,
        adj=search.adj,
        first_is_p=search.first_is_p,
        get=search.tt.get,
        tt=search.tt,
        counters=search.counters,
        canon=search._canon,
        cmo=search.class_mask_of,
        shift=n,
        trivial=trivial,
    ):
        if rem == 0:
            return banked
        lo = banked - rem
        if lo >= beta:
            return lo
        hi = banked + rem
        if hi <= alpha:
            return hi
        occ = p | m
        if trivial:
            ka = (p << shift) | m
            kb = (m << shift) | p
            key = ka if ka < kb else kb
        else:
            a = canon(p, m)
            b = canon(m, p)
            key = a if a <= b else b
        entry = get(key)
        if entry is not None:
            counters[1] += 1
            flag, val = entry
            if flag == _EXACT:
                return val
            if flag == _LOWER:
                if val >= beta:
                    return val
                if val > alpha:
                    alpha = val
            else:
                if val <= alpha:
                    return val
                if val < beta:
                    beta = val
        counters[0] += 1
        maximizing = ((occ.bit_count() & 1) == 0) == first_is_p
        # Flat (signed delta, bit) move list; the mover tries the largest
        # immediate bank first.
        options = []
        un = full & ~occ
        while un:
            bit = un & -un
            un ^= bit
            if not trivial:
                cmask = cmo[bit.bit_length() - 1]
                if cmask:
                    open_in_class = cmask & ~occ
                    if open_in_class & -open_in_class != bit:
                        continue
            a = adj[bit.bit_length() - 1]
            d = (a & p).bit_count() - (a & m).bit_count()
            nrem = rem - (a & occ).bit_count()
            options.append((d, bit, nrem))
            options.append((-d, -bit, nrem))  # negative bit marks a minus move
        options.sort(reverse=maximizing)
        alpha0, beta0 = alpha, beta
        if maximizing:
            best = -_INF
            for d, bit, nrem in options:
                if bit > 0:
                    v = ab(p | bit, m, alpha, beta, banked + d, nrem)
                else:
                    v = ab(p, m - bit, alpha, beta, banked + d, nrem)
                if v > best:
                    best = v
                    if best >= beta:
                        break
                    if best > alpha:
                        alpha = best
        else:
            best = _INF
            for d, bit, nrem in options:
                if bit > 0:
                    v = ab(p | bit, m, alpha, beta, banked + d, nrem)
                else:
                    v = ab(p, m - bit, alpha, beta, banked + d, nrem)
                if v < best:
                    best = v
                    if best <= alpha:
                        break
                    if best < beta:
                        beta = best
        if best <= alpha0:
            flag = _UPPER
        elif best >= beta0:
            flag = _LOWER
        else:
            flag = _EXACT
        tt[key] = (flag, best)
        return best

    return ab


def _pack(cells):
    p = m = 0
    for v, c in enumerate(cells):
        if c is Sign.PLUS:
            p |= 1 << v
        elif c is Sign.MINUS:
            m |= 1 << v
    return p, m


def _incomplete_edges(graph, cells):
    return sum(1 for u, v in graph.edges if cells[u] is None or cells[v] is None)


def solve(state, config, *, budget=DEFAULT_UNASSIGNED_BUDGET, pruned=True) -> SolveResult:
    """Exact value of a position under optimal play by both sides.

    Raises BudgetExceededError when more than ``budget`` vertices are still
    unassigned; the library never falls back to a heuristic.
    """
    unassigned = sum(1 for c in state.cells if c is None)
    if unassigned > budget:
        raise BudgetExceededError(
            f"{unassigned} unassigned vertices exceed search budget {budget}"
        )
    search = _Search(state.graph, config.first_role, pruned)
    p0, m0 = _pack(state.cells)
    banked0 = state.banked_score
    rem0 = _incomplete_edges(state.graph, state.cells)
    if pruned:
        value = search.search_ab(p0, m0, -_INF, _INF, banked0, rem0)
    else:
        value = search.search_plain(p0, m0)

    best = None
    if not state.is_over:
        maximizing = player_to_move(state, config) is Role.P
        for v, c in enumerate(state.cells):
            if c is not None:
                continue
            bit = 1 << v
            a = search.adj[v]
            dp = (a & p0).bit_count()
            dm = (a & m0).bit_count()
            nrem = rem0 - dp - dm
            found = None
            for sign, cp, cm, d in (
                (Sign.PLUS, p0 | bit, m0, dp - dm),
                (Sign.MINUS, p0, m0 | bit, dm - dp),
            ):
                if pruned:
                    if maximizing:
                        got = search.search_ab(cp, cm, value - 1, value, banked0 + d, nrem)
                        ok = got >= value
                    else:
                        got = search.search_ab(cp, cm, value, value + 1, banked0 + d, nrem)
                        ok = got <= value
                else:
                    ok = search.search_plain(cp, cm) == value
                if ok:
                    found = Move(v, sign)
                    break
            if found is not None:
                best = found
                break
    return SolveResult(value, outcome_from_score(value), best, search.nodes, search.hits)


def principal_variation(state, config, *, budget=DEFAULT_UNASSIGNED_BUDGET):
    """Tie-break-canonical optimal line from the position to the end of the
    game. Applying it reproduces the solve value as the final score."""
    line = []
    current = state
    while True:
        result = solve(current, config, budget=budget)
        if result.best_move is None:
            return line
        line.append(result.best_move)
        current, _ = apply_move(current, result.best_move)


# --- counts dynamic program ---------------------------------------------------


def _choose2(x):
    return x * (x - 1) // 2 if x >= 2 else 0


def multipartite_completion_score(part_sizes, plus_counts) -> int:
    """Closed-form final score of a completed game from per-part plus counts.

    One part of size n with a pluses (the complete graph K_n):
    C(a,2) + C(b,2) - a*b with b = n - a. Two or more parts (complete
    multipartite): sum over part pairs of (2a_i - n_i)(2a_j - n_j).
    """
    sizes = list(part_sizes)
    plus = list(plus_counts)
    if not sizes or len(sizes) != len(plus):
        raise ValueError("part_sizes and plus_counts must be equal-length and nonempty")
    for a, n in zip(plus, sizes):
        if not 0 <= a <= n:
            raise ValueError(f"plus count {a} out of range for part of size {n}")
    if len(sizes) == 1:
        a, n = plus[0], sizes[0]
        b = n - a
        return _choose2(a) + _choose2(b) - a * b
    diffs = [2 * a - n for a, n in zip(plus, sizes)]
    return sum(
        diffs[i] * diffs[j]
        for i in range(len(diffs))
        for j in range(i + 1, len(diffs))
    )


def counts_state_space(part_sizes) -> int:
    """Number of distinct (plus, minus) count states for the given parts."""
    total = 1
    for s in part_sizes:
        total *= (s + 1) * (s + 2) // 2
    return total


def _canon_counts(parts):
    """Fold the global sign flip: negate all imbalances if the first
    nonzero one is negative."""
    for _, d in parts:
        if d > 0:
            return parts
        if d < 0:
            return tuple((r, -d) for r, d in parts)
    return parts


def _counts_value(root, mover_is_p, cache, counters, single_part):
    """Iterative postorder evaluation of the reduced counts game.

    States are ((remaining, imbalance), ...) per part plus the mover. For a
    single part the payoff is the final imbalance squared (the score is a
    strictly increasing function of it, so optimal play coincides); for
    several parts it is the sum of pairwise imbalance products, which is
    the final score itself. Neither depends on the original part sizes, so
    the cache may be shared across instances.
    """
    root_key = (_canon_counts(root), mover_is_p)
    if root_key in cache:
        counters[1] += 1
        return cache[root_key]
    stack = [root_key]
    while stack:
        state, mover = stack[-1]
        if (state, mover) in cache:
            stack.pop()
            continue
        if all(r == 0 for r, _ in state):
            if single_part:
                val = state[0][1] ** 2
            else:
                val = sum(
                    state[i][1] * state[j][1]
                    for i in range(len(state))
                    for j in range(i + 1, len(state))
                )
            cache[(state, mover)] = val
            counters[0] += 1
            stack.pop()
            continue
        pending = []
        values = []
        for i, (r, d) in enumerate(state):
            if r == 0:
                continue
            for step in (1, -1):
                child = _canon_counts(
                    state[:i] + ((r - 1, d + step),) + state[i + 1:]
                )
                ck = (child, not mover)
                got = cache.get(ck)
                if got is None:
                    pending.append(ck)
                else:
                    values.append(got)
        if pending:
            stack.extend(pending)
            continue
        cache[(state, mover)] = max(values) if mover else min(values)
        counters[0] += 1
        stack.pop()
    return cache[root_key]


def solve_counts(
    part_sizes,
    first_role,
    *,
    cache=None,
    state_limit=DEFAULT_COUNTS_STATE_LIMIT,
) -> SolveResult:
    """Exact value of the fresh game on K_n (one part) or the complete
    multipartite graph with the given parts, by symmetry-collapsed DP.

    Matches ``solve`` on the corresponding concrete graph. Pass a dict as
    ``cache`` to share work across instances; by default each call uses a
    private cache so repeated solves are bit-identical.
    """
    sizes = tuple(int(s) for s in part_sizes)
    if not 1 <= len(sizes) <= 4:
        raise ValueError(f"counts DP supports 1..4 parts, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise ValueError("part sizes must be >= 1")
    if counts_state_space(sizes) > state_limit:
        raise BudgetExceededError(
            f"counts state space {counts_state_space(sizes)} exceeds limit {state_limit}"
        )
    if cache is None:
        cache = {}
    counters = [0, 0]  # nodes expanded, cache hits
    single = len(sizes) == 1
    total = sum(sizes)

    def finished_value(raw):
        # single-part payoff is the squared final imbalance d^2; the score
        # is (d^2 - n)/2, exact because d and n share parity
        return (raw - total) // 2 if single else raw

    mover_is_p = first_role is Role.P
    root = tuple((s, 0) for s in sizes)
    value = finished_value(_counts_value(root, mover_is_p, cache, counters, single))

    offsets = multipartite_offsets(sizes)
    best = None
    best_val = None
    maximizing = mover_is_p
    for i in range(len(sizes)):
        for sign, step in ((Sign.PLUS, 1), (Sign.MINUS, -1)):
            child = root[:i] + ((sizes[i] - 1, step),) + root[i + 1:]
            child_val = finished_value(
                _counts_value(child, not mover_is_p, cache, counters, single)
            )
            better = (
                best_val is None
                or (maximizing and child_val > best_val)
                or (not maximizing and child_val < best_val)
            )
            if better:
                best_val = child_val
                best = Move(offsets[i], sign)
    assert best_val == value
    return SolveResult(value, outcome_from_score(value), best, counters[0], counters[1])
