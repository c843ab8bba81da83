#!/usr/bin/env python3
"""Time exact solves across the graph families at growing sizes."""

import argparse
import time

from signgame.engine import GameConfig, Role, new_game
from signgame.graphs import Complete, CompleteMultipartite, Cycle, Path, Star, build_family, family_text
from signgame.solver import solve, solve_counts


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max", type=int, default=14, help="largest vertex count")
    args = parser.parse_args()

    rows = []
    for n in range(4, args.max + 1, 2):
        rows.append(Complete(n))
        rows.append(Path(n))
        if n >= 3:
            rows.append(Cycle(n))
        rows.append(Star(n - 1))
        if n % 2 == 0:
            rows.append(CompleteMultipartite((n // 2, n // 2)))

    for spec in rows:
        graph = build_family(spec)
        start = time.monotonic()
        result = solve(new_game(graph), GameConfig(Role.P), budget=args.max)
        elapsed = time.monotonic() - start
        print(
            f"{family_text(spec):10} n={graph.vertex_count:3}  value {result.value:+3d}  "
            f"{result.nodes_expanded:9} nodes  {result.memo_hits:9} hits  {elapsed:7.3f}s"
        )

    cache = {}
    start = time.monotonic()
    for n in range(2, 301):
        solve_counts([n], Role.P, cache=cache)
    print(f"\ncounts DP, every complete graph to n=300: {time.monotonic() - start:.3f}s")


if __name__ == "__main__":
    main()
