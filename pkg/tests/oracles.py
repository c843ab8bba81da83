"""Slow, independent reference implementations used only by the tests.

These deliberately share nothing with the library's solver internals: no
bit packing, no symmetry folding, no pruning, no incremental banking.
"""

from signgame.engine import Sign
from signgame.graphs import Graph

P_WINS, DRAW, N_WINS = 1, 0, -1


def plain_score(graph, cells):
    return sum(int(cells[u]) * int(cells[v]) for u, v in graph.edges)


def brute_force_value(graph, cells, to_move_is_p):
    """Exhaustive DFS over every move sequence, no memoization at all.

    Only usable for a handful of unassigned vertices, which is the point:
    it is too simple to be wrong the same way the real solver might be.
    """
    work = list(cells)

    def rec(mover_is_p):
        unassigned = [v for v, c in enumerate(work) if c is None]
        if not unassigned:
            return plain_score(graph, work)
        best = None
        for v in unassigned:
            for s in (Sign.PLUS, Sign.MINUS):
                work[v] = s
                val = rec(not mover_is_p)
                work[v] = None
                if best is None:
                    best = val
                elif mover_is_p:
                    if val > best:
                        best = val
                else:
                    if val < best:
                        best = val
        return best

    return rec(to_move_is_p)


def lattice_value(graph, cells, to_move_is_p):
    """Three-valued win/draw/loss minimax (P_WINS > DRAW > N_WINS from P's
    side), memoized over raw cell tuples."""
    memo = {}

    def rec(state, mover_is_p):
        key = (state, mover_is_p)
        if key in memo:
            return memo[key]
        unassigned = [v for v, c in enumerate(state) if c is None]
        if not unassigned:
            s = plain_score(graph, state)
            out = P_WINS if s > 0 else N_WINS if s < 0 else DRAW
            memo[key] = out
            return out
        values = []
        for v in unassigned:
            for sign in (Sign.PLUS, Sign.MINUS):
                child = state[:v] + (sign,) + state[v + 1:]
                values.append(rec(child, not mover_is_p))
        out = max(values) if mover_is_p else min(values)
        memo[key] = out
        return out

    return rec(tuple(cells), to_move_is_p)


def random_graph(rng, n, edge_prob=0.5):
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                edges.append((u, v))
    return Graph(n, tuple(edges))


def random_cells(rng, n, assigned_prob=0.4):
    cells = []
    for _ in range(n):
        if rng.random() < assigned_prob:
            cells.append(Sign.PLUS if rng.random() < 0.5 else Sign.MINUS)
        else:
            cells.append(None)
    return tuple(cells)


# --- random valid inputs for the four reduction rules ---


def make_leaf_pair_case(rng, max_base=8):
    """A random star with two extra opposite-signed leaves on a random host."""
    from signgame.graphs import Star, build_family
    from signgame.reductions import Position, cancel_opposite_leaves

    base = build_family(Star(rng.randint(1, max_base)))
    host = rng.randrange(base.vertex_count)
    n = base.vertex_count
    g = Graph(n + 2, base.edges + ((host, n), (host, n + 1)))
    cells = list(random_cells(rng, n, assigned_prob=0.35))
    cells += [Sign.PLUS, Sign.MINUS]
    pos = Position(g, tuple(cells))
    return pos, cancel_opposite_leaves(pos, n, n + 1)


def make_path_split_case(rng, max_n=13):
    from signgame.graphs import Path, build_family
    from signgame.reductions import Position, split_path_at_assigned

    n = rng.randint(3, max_n)
    cells = list(random_cells(rng, n, assigned_prob=0.3))
    i = rng.randint(1, n - 2)
    cells[i] = Sign.PLUS if rng.random() < 0.5 else Sign.MINUS
    pos = Position(build_family(Path(n)), tuple(cells))
    return pos, split_path_at_assigned(pos, i)


def make_cycle_open_case(rng, max_n=13):
    from signgame.graphs import Cycle, build_family
    from signgame.reductions import Position, open_cycle

    n = rng.randint(3, max_n)
    cells = list(random_cells(rng, n, assigned_prob=0.3))
    v = rng.randrange(n)
    cells[v] = Sign.PLUS if rng.random() < 0.5 else Sign.MINUS
    pos = Position(build_family(Cycle(n)), tuple(cells))
    return pos, open_cycle(pos, v)


def make_bipartite_pair_case(rng, max_part=5):
    from signgame.graphs import CompleteMultipartite, build_family
    from signgame.reductions import Position, cancel_bipartite_pair

    m = rng.randint(2, max_part)
    n = rng.randint(1, max_part)
    cells = list(random_cells(rng, m + n, assigned_prob=0.3))
    pair = rng.sample(range(m), 2)
    cells[pair[0]] = Sign.PLUS
    cells[pair[1]] = Sign.MINUS
    pos = Position(build_family(CompleteMultipartite((m, n))), tuple(cells))
    return pos, cancel_bipartite_pair(pos, pair[0], pair[1])


REDUCTION_CASE_MAKERS = (
    make_leaf_pair_case,
    make_path_split_case,
    make_cycle_open_case,
    make_bipartite_pair_case,
)
