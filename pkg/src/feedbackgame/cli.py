"""Command-line front end.

Subcommands: gen, solve, verify-table, kernel, play, serve. Exit codes:
0 success, 1 usage error, 2 domain error (bad input), 3 resource limit
exceeded, 4 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import kernels, solver
from .engine import (
    ALICE,
    BOB,
    ONGOING,
    apply_move,
    legal_moves,
    new_game,
)
from .errors import DomainError, FeedbackGameError, LimitError
from .families import graph_with_layout_json_dict
from .graph import graph_from_json
from .service import family_graph, make_server

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_LIMIT = 3
EXIT_MISMATCH = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="feedbackgame", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family_args(p, with_p=True, with_start=True):
        p.add_argument("--family", default="octa",
                       help="octa | dw | cycle (default octa)")
        p.add_argument("--n", type=int, default=None,
                       help="size parameter: levels / rim length / cycle length")
        p.add_argument("--graph", default=None, metavar="FILE",
                       help="read a custom graph from a JSON file instead")
        if with_p:
            p.add_argument("--p", type=int, default=None,
                           help="octa only: level of the canonical start vertex v<p>")
        if with_start:
            p.add_argument("--start", default=None, metavar="NAME",
                           help="start vertex name (overrides --p)")

    p_gen = sub.add_parser("gen", help="emit a graph as JSON")
    add_family_args(p_gen, with_p=False, with_start=False)
    p_gen.add_argument("--layout", action="store_true", help="include layout hints")
    p_gen.add_argument("--out", default=None, metavar="FILE")

    p_solve = sub.add_parser("solve", help="winner under optimal play")
    add_family_args(p_solve)
    p_solve.add_argument("--backend", default=None, help="auto | numba | python")

    p_table = sub.add_parser("verify-table",
                             help="check solved winners against the closed-form rule")
    p_table.add_argument("--n", type=int, action="append", required=True,
                         help="level count; repeatable")
    p_table.add_argument("--json", action="store_true")
    p_table.add_argument("--backend", default=None)

    p_kernel = sub.add_parser("kernel", help="even-kernel tools")
    p_kernel.add_argument("--mode", required=True,
                          choices=["check", "find", "mod1", "mod2"])
    add_family_args(p_kernel)
    p_kernel.add_argument("--set", default=None, metavar="NAMES",
                          help="check mode: comma-separated member names")
    p_kernel.add_argument("--m", type=int, default=None,
                          help="mod1/mod2: block count")
    p_kernel.add_argument("--k", type=int, default=None,
                          help="mod2: split level")
    p_kernel.add_argument("--start-residue", type=int, default=0, choices=[0, 1],
                          help="mod1: which canonical start to report")

    p_play = sub.add_parser("play", help="interactive terminal game")
    add_family_args(p_play)
    p_play.add_argument("--engine", default="bob", choices=["alice", "bob", "none"],
                        help="side the engine plays (default bob)")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.add_argument("--static", default=None, metavar="DIR",
                         help="serve a built web UI from this directory")
    p_serve.add_argument("--verbose", action="store_true")

    return parser


def _resolve_graph(args, need_start: bool):
    """Shared --family/--graph/--p/--start handling. Returns (graph, layout, start)."""
    if args.graph is not None:
        g = graph_from_json(Path(args.graph).read_text())
        layout = None
    else:
        g, layout = family_graph(args.family, args.n)
    start = None
    if need_start:
        start_name = getattr(args, "start", None)
        p = getattr(args, "p", None)
        if start_name is not None:
            start = g.vertex_index(start_name)
        elif p is not None:
            if args.graph is not None or args.family not in ("octa", "octahedral_path"):
                raise UsageError("--p applies only to --family octa; use --start")
            if not 0 <= p <= args.n:
                raise DomainError(f"need 0 <= p <= n, got p={p}")
            start = 3 * p + 1  # canonical level-p start v<p>
        else:
            raise UsageError("need --start (or --p for octa)")
    return g, layout, start


def cmd_gen(args) -> int:
    g, layout, _ = _resolve_graph(args, need_start=False)
    data = graph_with_layout_json_dict(g, layout if args.layout else None)
    text = json.dumps(data, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _title(player: str) -> str:
    return player.capitalize()


def cmd_solve(args) -> int:
    g, _, start = _resolve_graph(args, need_start=True)
    verdict = solver.solve(g, start, backend=args.backend)
    print(f"winner: {_title(verdict.winner)}")
    if verdict.witness is not None:
        print(f"winning first move: {g.name(verdict.witness)}")
    stats = verdict.stats
    print(
        f"states: {stats.states_explored}  memo: {stats.memo_entries}  "
        f"seconds: {stats.elapsed:.3f}"
    )
    return EXIT_OK


def cmd_verify_table(args) -> int:
    report = solver.verify_octapath_table(args.n, backend=args.backend)
    if args.json:
        print(report.to_json(indent=2))
    else:
        print(report.to_text())
    return EXIT_OK if report.all_agree else EXIT_MISMATCH


def cmd_kernel(args) -> int:
    if args.mode == "check":
        if args.set is None:
            raise UsageError("check mode needs --set")
        g, _, start = _resolve_graph(args, need_start=True)
        members = frozenset(g.vertex_index(nm.strip()) for nm in args.set.split(","))
        check = kernels.is_even_kernel(g, start, members)
        payload = {
            "kernel": sorted(g.name(v) for v in members),
            "verified": check.ok,
        }
        if not check.ok:
            payload["clause"] = check.clause
            payload["detail"] = check.message
        print(json.dumps(payload, indent=2))
        return EXIT_OK

    if args.mode == "find":
        g, _, start = _resolve_graph(args, need_start=True)
        found = kernels.find_even_kernel(g, start)
        if found is None:
            print(json.dumps({"kernel": None, "verified": False}, indent=2))
        else:
            print(json.dumps(
                {"kernel": found.names(g), "verified": True}, indent=2
            ))
        return EXIT_OK

    if args.m is None:
        raise UsageError(f"{args.mode} mode needs --m")
    if args.mode == "mod1":
        ks = kernels.octapath_mod1_kernel(args.m, args.start_residue)
        from .families import octahedral_path

        g = octahedral_path(3 * args.m + 1)
        check = kernels.is_even_kernel(g, ks.start, ks.members)
        print(json.dumps({
            "kernel": ks.names(g),
            "start": g.name(ks.start),
            "levels": 3 * args.m + 1,
            "verified": check.ok,
        }, indent=2))
        return EXIT_OK

    # mod2
    if args.k is None:
        raise UsageError("mod2 mode needs --k")
    near = kernels.octapath_mod2_sets(args.m, args.k)
    g = near.graph
    print(json.dumps({
        "s1": sorted(g.name(v) for v in near.s1),
        "s2": sorted(g.name(v) for v in near.s2),
        "union": sorted(g.name(v) for v in near.union),
        "start": g.name(near.start),
        "levels": 3 * args.m + 2,
        "verified": near.check.ok,
        "clause": near.check.clause,
        "parity_violators": [g.name(v) for v in near.parity_violators],
    }, indent=2))
    return EXIT_OK


def cmd_play(args) -> int:
    g, _, start = _resolve_graph(args, need_start=True)
    engine_side = None if args.engine == "none" else args.engine
    state = new_game(g, start)
    optimal = g.n_edges <= solver.edge_limit()
    if engine_side is not None and not optimal:
        print("note: graph above solver limit; engine plays greedily (non-optimal)")
    print(f"game on {g.n_vertices} vertices / {g.n_edges} edges, start {g.name(start)}")

    def engine_move(st):
        if optimal:
            return solver.best_move(st)
        moves = legal_moves(st)
        for to in moves:
            if apply_move(st, to).status != ONGOING:
                return to
        return moves[0]

    while state.status == ONGOING:
        mover = state.mover
        moves = [g.name(v) for v in legal_moves(state)]
        if engine_side == mover:
            to = engine_move(state)
            print(f"{_title(mover)} (engine) moves to {g.name(to)}")
            state = apply_move(state, to)
            continue
        prompt = f"{_title(mover)} to move from {g.name(state.token)} {moves}: "
        try:
            line = input(prompt).strip()
        except EOFError:
            print("\nno more input; quitting")
            return EXIT_OK
        if line in ("q", "quit", "exit"):
            return EXIT_OK
        if line not in moves:
            print(f"not a legal move: {line!r}")
            continue
        state = apply_move(state, g.vertex_index(line))

    reason = ("returned to start" if state.reason == "returned_to_start"
              else "isolated the token")
    print(f"{_title(state.winner)} wins: {reason} after {state.moves_played} moves")
    return EXIT_OK


def cmd_serve(args) -> int:
    server = make_server(host=args.host, port=args.port, static_dir=args.static,
                         verbose=args.verbose)
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port}/ (ctrl-c to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        print("\nshutting down")
    finally:
        server.server_close()
    return EXIT_OK


_COMMANDS = {
    "gen": cmd_gen,
    "solve": cmd_solve,
    "verify-table": cmd_verify_table,
    "kernel": cmd_kernel,
    "play": cmd_play,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LimitError as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except FeedbackGameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
