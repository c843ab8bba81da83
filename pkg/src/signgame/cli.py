"""Command-line interface.

Subcommands: solve, verify, reduce, strategy, conjecture, graph, play,
serve. JSON mode emits a single document on stdout. Exit codes: 0 success
or all checks passed, 1 verification failures, 2 usage errors, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .engine import (
    GameConfig,
    Move,
    Role,
    Sign,
    apply_move,
    legal_moves,
    new_game,
    outcome_from_score,
    player_to_move,
    replay_transcript,
    score,
    transcript_dict,
)
from .errors import (
    BudgetExceededError,
    FamilySpecError,
    Graph6Error,
    ReductionError,
    SignGameError,
    StrategyError,
    TranscriptError,
)
from .graphs import build_family, encode_graph6, family_text, parse_family_spec, parse_graph6
from .reductions import (
    Position,
    cancel_bipartite_pair,
    cancel_opposite_leaves,
    open_cycle,
    split_path_at_assigned,
)
from .solver import DEFAULT_UNASSIGNED_BUDGET, principal_variation, solve
from .strategies import StrategyKind, evaluate_strategy
from .verification import SUITE_NAMES, explore_conjecture, run_suite

DEFAULT_CLI_BUDGET = 14

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class _CliParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _build_parser():
    parser = _CliParser(prog="signgame", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_flags(p, first=True):
        p.add_argument("--graph", help="family spec, e.g. K4, K3,3, S5, P6, C7, stars:3+2, g6:...")
        if first:
            p.add_argument("--first", choices=["P", "N"], default="P", help="role of Player 1")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("solve", help="exact value and best move of a position")
    add_graph_flags(p)
    p.add_argument("--budget", type=int, default=DEFAULT_CLI_BUDGET)
    p.add_argument("--from-transcript", metavar="FILE", help="replay a transcript, then solve")

    p = sub.add_parser("verify", help="run claim-verification sweeps")
    p.add_argument("--suite", default="all", help="|".join(("all",) + SUITE_NAMES))
    p.add_argument("--max", type=int, default=None, help="cap the largest instance size")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("reduce", help="apply a score-preserving reduction, print JSON")
    p.add_argument("--graph", required=True)
    p.add_argument("--assign", default="", help="comma list like 0=+,3=-")
    p.add_argument(
        "--rule",
        required=True,
        choices=["leaf-pair", "path-split", "cycle-open", "bipartite-pair"],
    )
    p.add_argument("--vertices", help="two vertices a,b for pair rules")
    p.add_argument("--vertex", type=int, help="vertex for path-split / cycle-open")

    p = sub.add_parser("strategy", help="evaluate a mirroring strategy exactly")
    add_graph_flags(p)
    p.add_argument("--kind", required=True, choices=[k.value for k in StrategyKind])
    p.add_argument("--operated", choices=["P", "N"], required=True)
    p.add_argument("--parts", help="part sizes m,n for bipartite kinds")
    p.add_argument("--budget", type=int, default=DEFAULT_CLI_BUDGET)

    p = sub.add_parser("conjecture", help="tripartite outcome table")
    p.add_argument("--max", type=int, default=10, help="largest total vertex count")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("graph", help="build, encode, or decode graphs")
    gsub = p.add_subparsers(dest="graph_command", required=True)
    gp = gsub.add_parser("build")
    add_graph_flags(gp, first=False)
    gp = gsub.add_parser("encode")
    gp.add_argument("--graph", required=True)
    gp = gsub.add_parser("decode")
    gp.add_argument("--g6", required=True)
    gp.add_argument("--json", action="store_true")

    p = sub.add_parser("play", help="interactive game against the exact engine")
    add_graph_flags(p)
    p.add_argument("--human", choices=["P", "N"], default="P")
    p.add_argument("--budget", type=int, default=DEFAULT_CLI_BUDGET)
    p.add_argument("--save", metavar="FILE", help="write the finished transcript as JSON")

    p = sub.add_parser("serve", help="run the HTTP game service")
    p.add_argument("--port", type=int, default=8023)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--budget", type=int, default=DEFAULT_CLI_BUDGET)
    p.add_argument("--persist", metavar="DIR", help="append-only transcript directory")

    return parser


def _move_json(move):
    return None if move is None else {"v": move.vertex, "sign": move.sign.symbol}


def _parse_assignment(text, n):
    cells = [None] * n
    if not text:
        return tuple(cells)
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            v_text, sign_text = token.split("=")
            v = int(v_text)
            sign = Sign.from_symbol(sign_text)
        except ValueError as exc:
            raise _UsageError(f"bad assignment token {token!r}") from exc
        if not 0 <= v < n:
            raise _UsageError(f"assignment vertex {v} out of range")
        cells[v] = sign
    return tuple(cells)


def _cmd_solve(args, out):
    if args.from_transcript:
        with open(args.from_transcript) as fh:
            doc = json.load(fh)
        config, state, spec = replay_transcript(doc)
        spec_text = doc["graph"]
    else:
        if not args.graph:
            raise _UsageError("--graph or --from-transcript is required")
        spec = parse_family_spec(args.graph)
        state = new_game(build_family(spec))
        config = GameConfig(Role(args.first))
        spec_text = family_text(spec)
    result = solve(state, config, budget=args.budget)
    line = principal_variation(state, config, budget=args.budget)
    doc = {
        "graph": spec_text,
        "first_role": config.first_role.value,
        "moves_made": state.moves_made,
        "banked_score": state.banked_score,
        "value": result.value,
        "outcome": result.outcome.value,
        "best_move": _move_json(result.best_move),
        "principal_variation": [_move_json(m) for m in line],
        "nodes_expanded": result.nodes_expanded,
        "memo_hits": result.memo_hits,
    }
    if args.json:
        print(json.dumps(doc), file=out)
    else:
        print(f"graph {spec_text}, first {config.first_role.value}", file=out)
        print(f"value {result.value} ({result.outcome.value})", file=out)
        if result.best_move:
            print(f"best move: vertex {result.best_move.vertex} {result.best_move.sign.symbol}", file=out)
        pv = " ".join(f"{m.vertex}{m.sign.symbol}" for m in line)
        print(f"principal variation: {pv or '(game over)'}", file=out)
        print(f"nodes {result.nodes_expanded}, memo hits {result.memo_hits}", file=out)
    return EXIT_OK


def _cmd_verify(args, out):
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    for name in names:
        if name not in SUITE_NAMES:
            raise _UsageError(f"unknown suite {name!r}")
    reports = [run_suite(name, args.max) for name in names]
    all_pass = all(r.passed for r in reports)
    if args.json:
        print(
            json.dumps({"reports": [r.to_dict() for r in reports], "all_pass": all_pass}),
            file=out,
        )
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(
                f"{status} {r.theorem_id}: {r.cases_checked} cases"
                + (f", {len(r.skipped)} skipped" if r.skipped else "")
                + f" ({r.elapsed:.2f}s)",
                file=out,
            )
            for instance, expected, got in r.failures:
                print(f"  FAILURE {instance}: expected {expected}, got {got}", file=out)
    return EXIT_OK if all_pass else EXIT_FAILURES


def _cmd_reduce(args, out):
    spec = parse_family_spec(args.graph)
    graph = build_family(spec)
    cells = _parse_assignment(args.assign, graph.vertex_count)
    position = Position(graph, cells)

    def need_pair():
        if not args.vertices:
            raise _UsageError(f"--vertices a,b is required for {args.rule}")
        try:
            a, b = (int(t) for t in args.vertices.split(","))
        except ValueError as exc:
            raise _UsageError(f"bad --vertices {args.vertices!r}") from exc
        return a, b

    def need_vertex():
        if args.vertex is None:
            raise _UsageError(f"--vertex is required for {args.rule}")
        return args.vertex

    if args.rule == "leaf-pair":
        reduced = cancel_opposite_leaves(position, *need_pair())
    elif args.rule == "path-split":
        reduced = split_path_at_assigned(position, need_vertex())
    elif args.rule == "cycle-open":
        reduced = open_cycle(position, need_vertex())
    else:
        reduced = cancel_bipartite_pair(position, *need_pair())

    pos = reduced.position
    doc = {
        "rule": args.rule,
        "input": {
            "graph": {"n": graph.vertex_count, "edges": [list(e) for e in graph.edges]},
            "cells": [c.symbol if c is not None else None for c in cells],
        },
        "position": {
            "graph": {
                "n": pos.graph.vertex_count,
                "edges": [list(e) for e in pos.graph.edges],
            },
            "cells": [c.symbol if c is not None else None for c in pos.cells],
        },
        "index_map": [list(entry) for entry in reduced.index_map],
    }
    print(json.dumps(doc), file=out)
    return EXIT_OK


def _cmd_strategy(args, out):
    spec = parse_family_spec(args.graph) if args.graph else None
    if spec is None:
        raise _UsageError("--graph is required")
    graph = build_family(spec)
    parts = None
    if args.parts:
        try:
            parts = tuple(int(t) for t in args.parts.split(","))
        except ValueError as exc:
            raise _UsageError(f"bad --parts {args.parts!r}") from exc
    kind = StrategyKind(args.kind)
    config = GameConfig(Role(args.first))
    report = evaluate_strategy(
        graph, config, kind, Role(args.operated), part_sizes=parts, budget=args.budget
    )
    doc = {
        "graph": family_text(spec),
        "first_role": config.first_role.value,
        "kind": kind.value,
        "operated": args.operated,
        "guaranteed_value": report.guaranteed_value,
        "witness_line": [_move_json(m) for m in report.witness_line],
        "nodes": report.nodes,
    }
    if args.json:
        print(json.dumps(doc), file=out)
    else:
        print(
            f"{kind.value} operated by {args.operated} on {family_text(spec)} "
            f"(first {config.first_role.value}): guarantees {report.guaranteed_value}",
            file=out,
        )
        line = " ".join(f"{m.vertex}{m.sign.symbol}" for m in report.witness_line)
        print(f"witness line: {line}", file=out)
    return EXIT_OK


def _cmd_conjecture(args, out):
    report = explore_conjecture(args.max)
    if args.json:
        doc = {
            "rows": [
                {
                    "sizes": list(r.sizes),
                    "first_role": r.first_role.value,
                    "value": r.value,
                    "outcome": r.outcome.value,
                    "expected": r.expected.value,
                    "consistent": r.consistent,
                }
                for r in report.rows
            ],
            "consistent": report.consistent,
        }
        print(json.dumps(doc), file=out)
    else:
        for r in report.rows:
            mark = "ok" if r.consistent else "FINDING"
            sizes = ",".join(map(str, r.sizes))
            print(
                f"K{sizes} first={r.first_role.value}: value {r.value} "
                f"({r.outcome.value}), expected {r.expected.value} [{mark}]",
                file=out,
            )
        n_bad = len(report.inconsistencies)
        verdict = "consistent with the conjecture" if report.consistent else f"{n_bad} findings"
        print(f"{len(report.rows)} cases, {verdict}", file=out)
    return EXIT_OK


def _cmd_graph(args, out):
    if args.graph_command == "build":
        spec = parse_family_spec(args.graph)
        g = build_family(spec)
        doc = {
            "graph": family_text(spec),
            "n": g.vertex_count,
            "edges": [list(e) for e in g.edges],
            "graph6": encode_graph6(g),
        }
        if args.json:
            print(json.dumps(doc), file=out)
        else:
            print(f"{family_text(spec)}: {g.vertex_count} vertices, {g.edge_count} edges", file=out)
            print(f"edges: {' '.join(f'{u}-{v}' for u, v in g.edges)}", file=out)
            print(f"graph6: {doc['graph6']}", file=out)
        return EXIT_OK
    if args.graph_command == "encode":
        g = build_family(parse_family_spec(args.graph))
        print(encode_graph6(g), file=out)
        return EXIT_OK
    g = parse_graph6(args.g6)
    doc = {"n": g.vertex_count, "edges": [list(e) for e in g.edges]}
    if args.json:
        print(json.dumps(doc), file=out)
    else:
        print(f"{g.vertex_count} vertices, {g.edge_count} edges", file=out)
        print(f"edges: {' '.join(f'{u}-{v}' for u, v in g.edges)}", file=out)
    return EXIT_OK


def _render_board(state, out):
    cells = " ".join(
        f"{v}:{c.symbol if c is not None else '.'}" for v, c in enumerate(state.cells)
    )
    print(f"cells  {cells}", file=out)
    done = []
    for u, v in state.graph.edges:
        cu, cv = state.cells[u], state.cells[v]
        if cu is not None and cv is not None:
            done.append(f"{u}-{v}:{int(cu) * int(cv):+d}")
    print(f"edges  {' '.join(done) if done else '(none complete)'}", file=out)
    print(f"banked {state.banked_score}", file=out)


def _cmd_play(args, out, stdin):
    if not args.graph:
        raise _UsageError("--graph is required")
    spec = parse_family_spec(args.graph)
    graph = build_family(spec)
    if graph.vertex_count > args.budget:
        raise BudgetExceededError(
            f"{graph.vertex_count} vertices exceed play budget {args.budget}"
        )
    config = GameConfig(Role(args.first))
    human = Role(args.human)
    state = new_game(graph)
    print(
        f"playing {family_text(spec)}; you are {human.value}, "
        f"{config.first_role.value} moves first",
        file=out,
    )
    while not state.is_over:
        mover = player_to_move(state, config)
        if mover is human:
            _render_board(state, out)
            print("your move (vertex sign, e.g. '2 +'; 'hint'; 'quit'):", file=out)
            line = stdin.readline()
            if not line:
                print("input closed, aborting game", file=out)
                return EXIT_USAGE
            line = line.strip()
            if line == "quit":
                print("game abandoned", file=out)
                return EXIT_OK
            if line == "hint":
                result = solve(state, config, budget=args.budget)
                oriented = result.value if human is Role.P else -result.value
                mv = result.best_move
                print(
                    f"hint: vertex {mv.vertex} {mv.sign.symbol} "
                    f"(value for you {oriented:+d})",
                    file=out,
                )
                continue
            try:
                v_text, sign_text = line.split()
                move = Move(int(v_text), Sign.from_symbol(sign_text))
            except (ValueError, IndexError):
                print(f"could not read move {line!r}", file=out)
                continue
            try:
                state, delta = apply_move(state, move)
            except SignGameError as exc:
                print(f"illegal move: {exc}", file=out)
                continue
            print(f"you played {move.vertex}{move.sign.symbol}, banked {delta:+d}", file=out)
        else:
            result = solve(state, config, budget=args.budget)
            state, delta = apply_move(state, result.best_move)
            print(
                f"engine plays {result.best_move.vertex}{result.best_move.sign.symbol}, "
                f"banked {delta:+d}",
                file=out,
            )
    final = score(graph, state.cells)
    outcome = outcome_from_score(final)
    _render_board(state, out)
    label = {"P": "Player P wins", "N": "Player N wins", "draw": "draw"}[outcome.value]
    print(f"final score {final}: {label}", file=out)
    if args.save:
        with open(args.save, "w") as fh:
            json.dump(transcript_dict(family_text(spec), config, state), fh)
        print(f"transcript written to {args.save}", file=out)
    return EXIT_OK


def _cmd_serve(args):
    import uvicorn

    from .service import build_app

    app = build_app(vertex_limit=args.budget, persist_dir=args.persist)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def run_cli(argv, *, out=None, stdin=None) -> int:
    """Dispatch a CLI invocation; returns the process exit code."""
    out = out if out is not None else sys.stdout
    stdin = stdin if stdin is not None else sys.stdin
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "solve":
            return _cmd_solve(args, out)
        if args.command == "verify":
            return _cmd_verify(args, out)
        if args.command == "reduce":
            return _cmd_reduce(args, out)
        if args.command == "strategy":
            return _cmd_strategy(args, out)
        if args.command == "conjecture":
            return _cmd_conjecture(args, out)
        if args.command == "graph":
            return _cmd_graph(args, out)
        if args.command == "play":
            return _cmd_play(args, out, stdin)
        return _cmd_serve(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FamilySpecError, Graph6Error, TranscriptError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ReductionError, StrategyError, SignGameError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURES
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    raise SystemExit(run_cli(None))


if __name__ == "__main__":
    main()
