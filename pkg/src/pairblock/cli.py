"""Command-line front end: construct, verify, play, simulate, analyze, serve."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analysis, engine
from .errors import InfeasibleError, MalformedInstance, NotPrimitiveError, PairblockError, ZeroVectorError
from .lattice import normalize_directions
from .pairing import build_certificate, dumps_certificate, load_certificate, verify_blocking
from .residues import atlas_to_csv, feasibility_atlas

DEFAULT_BIND = "127.0.0.1:8000"

# Default direction sets for -n shorthand in `analyze lower-bound`.
LOWER_BOUND_PRESETS = {
    1: ((1,),),
    2: ((1, 0), (0, 1)),
}


def parse_direction_list(text: str) -> list[tuple[int, ...]]:
    """Parse "1,0;0,1;1,-1" into vectors."""
    vectors = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            vectors.append(tuple(int(c) for c in chunk.split(",")))
        except ValueError:
            raise ValueError(f"bad direction {chunk!r}: expected comma-separated integers")
    if not vectors:
        raise ValueError("no directions given")
    return vectors


def _print_json(obj: dict) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_construct(args) -> int:
    try:
        vectors = parse_direction_list(args.dirs)
        cert = build_certificate(args.N, args.d, vectors, args.seed, args.p)
    except (NotPrimitiveError, ZeroVectorError) as exc:
        print(f"error: direction not primitive: {exc}", file=sys.stderr)
        return 1
    except (InfeasibleError, ValueError, PairblockError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps_certificate(cert))
    else:
        sys.stdout.write(dumps_certificate(cert))
    print(f"p={cert.spec.prime} m={cert.spec.win_length}")
    for direction, (delta, x, y) in zip(cert.spec.directions, cert.residues.triples):
        print(f"direction {direction}: offset mod p={delta} x={x} y={y}")
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.certificate) as fh:
            cert = load_certificate(fh)
    except OSError as exc:
        print(f"error: cannot read certificate: {exc}", file=sys.stderr)
        return 2
    except MalformedInstance as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = verify_blocking(cert, args.m_override)
    _print_json(report.to_json_dict())
    return 0 if report.blocked else 1


def _load_cert_or_exit(path: str):
    with open(path) as fh:
        return load_certificate(fh)


def cmd_play(args) -> int:
    cert = _load_cert_or_exit(args.cert)
    maker = engine.make_maker(args.maker, args.seed, moves=_parse_moves(args.moves))
    state = engine.play_game(cert.spec, cert, maker)
    if args.transcript:
        with open(args.transcript, "w") as fh:
            engine.write_transcript(state, fh)
    else:
        engine.write_transcript(state, sys.stdout)
    return 0


def _parse_moves(text: str | None):
    if not text:
        return None
    return parse_direction_list(text)


def cmd_simulate(args) -> int:
    cert = _load_cert_or_exit(args.cert)
    breaker_factory = engine.NaiveBreaker if args.naive_breaker else None
    stats = engine.simulate_batch(
        cert.spec, cert, args.maker, args.games, args.seed, breaker_factory
    )
    _print_json(stats.to_json_dict())
    return 0


def cmd_analyze(args) -> int:
    if args.what == "mod6":
        report = analysis.mod6_obstruction_check()
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                report.write_csv(fh)
        _print_json(report.to_json_dict())
        return 0 if report.all_infeasible and report.control_feasible else 1
    if args.what == "lower-bound":
        if args.dirs:
            directions = normalize_directions(parse_direction_list(args.dirs))
        elif args.n in LOWER_BOUND_PRESETS:
            directions = normalize_directions(LOWER_BOUND_PRESETS[args.n])
        else:
            print("error: give --dirs or -n 1/2", file=sys.stderr)
            return 1
        include = []
        if args.include_certificate:
            cert = build_certificate(
                12, directions[0].dim, directions, seed=args.seed
            )
            include.append(analysis.certificate_periodic_pairing(cert))
            if args.m is None:
                args.m = cert.spec.win_length
        report = analysis.lower_bound_demo(
            directions, args.trials, args.seed, m=args.m, include=include
        )
        _print_json(report.to_json_dict())
        return 0
    if args.what == "atlas":
        atlas = feasibility_atlas(args.q, args.n)
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                atlas_to_csv(atlas, fh)
        feasible = sum(1 for ok in atlas.values() if ok)
        _print_json(
            {
                "version": "1",
                "modulus": args.q,
                "offsets": args.n,
                "total": len(atlas),
                "feasible": feasible,
                "infeasible": len(atlas) - feasible,
            }
        )
        return 0
    if args.what == "conjecture2":
        vectors = parse_direction_list(args.vectors)
        witness = analysis.conjecture2_search(vectors)
        out = {"version": "1", "vectors": [list(v) for v in vectors], "found": witness is not None}
        if witness is not None:
            out["partition"] = {
                str(i): [[list(x), list(y)] for x, y in pairs]
                for i, pairs in witness.items()
            }
        _print_json(out)
        return 0 if witness is not None else 1
    if args.what == "conjecture3":
        with open(args.graph) as fh:
            obj = json.load(fh)
        graph = analysis.colored_graph_from_json_dict(obj)
        matching = analysis.conjecture3_search(graph)
        out = {"version": "1", "found": matching is not None}
        if matching is not None:
            out["matching"] = {color: list(edge) for color, edge in matching.items()}
        _print_json(out)
        return 0 if matching is not None else 1
    raise AssertionError(f"unhandled analyze subcommand {args.what}")


def resolve_bind(arg: str | None) -> tuple[str, int]:
    """--bind wins over PAIRBLOCK_BIND wins over the default."""
    bind = arg or os.environ.get("PAIRBLOCK_BIND", DEFAULT_BIND)
    host, _, port = bind.rpartition(":")
    try:
        return host or "127.0.0.1", int(port)
    except ValueError:
        raise ValueError(f"bad bind address {bind!r}: expected host:port") from None


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host, port = resolve_bind(args.bind)
    app = create_app(snapshot_path=args.snapshot)
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


class _Parser(argparse.ArgumentParser):
    # flag errors exit 1, matching the library error convention (argparse default is 2)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pairblock",
        description="Pairing-strategy Breaker: construct, verify, play, analyze.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a pairing certificate")
    p.add_argument("-N", type=int, required=True, help="board side")
    p.add_argument("-d", type=int, required=True, help="board dimension")
    p.add_argument("--dirs", required=True, help='directions, e.g. "1,0;0,1;1,1;1,-1"')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=int, default=None, help="prime override (>= 2n+1)")
    p.add_argument("-o", "--out", default=None, help="certificate output path (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a certificate blocks every window")
    p.add_argument("certificate")
    p.add_argument("--m-override", type=int, default=None, dest="m_override")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("play", help="play one game against the pairing Breaker")
    p.add_argument("--cert", required=True)
    p.add_argument("--maker", default="random", choices=["random", "greedy", "scripted"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--moves", default=None, help='scripted maker moves, e.g. "1,1;2,2"')
    p.add_argument("--transcript", default=None, help="write JSONL transcript here")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("simulate", help="batch games with aggregate statistics")
    p.add_argument("--cert", required=True)
    p.add_argument("--games", type=int, default=100)
    p.add_argument("--maker", default="random", choices=["random", "greedy"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--naive-breaker",
        action="store_true",
        help="control run: Breaker ignores the certificate",
    )
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="obstructions, lower bound, conjectures")
    asub = p.add_subparsers(dest="what", required=True)

    a = asub.add_parser("mod6", help="the three-direction obstruction at modulus 6")
    a.add_argument("--csv", default=None)
    a.set_defaults(func=cmd_analyze)

    a = asub.add_parser("lower-bound", help="refute sampled pairings at m = 2n")
    a.add_argument("-n", type=int, default=None, help="preset direction count (1 or 2)")
    a.add_argument("--dirs", default=None)
    a.add_argument("--trials", type=int, default=100)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--m", type=int, default=None)
    a.add_argument(
        "--include-certificate",
        action="store_true",
        help="also test a constructed certificate pairing at its own win length",
    )
    a.set_defaults(func=cmd_analyze)

    a = asub.add_parser("atlas", help="feasibility of every offset vector")
    a.add_argument("-q", type=int, required=True)
    a.add_argument("-n", type=int, required=True)
    a.add_argument("--csv", default=None)
    a.set_defaults(func=cmd_analyze)

    a = asub.add_parser("conjecture2", help="partition search over Z_2n^d")
    a.add_argument("--vectors", required=True)
    a.set_defaults(func=cmd_analyze)

    a = asub.add_parser("conjecture3", help="one-edge-per-color perfect matching")
    a.add_argument("graph", help="graph JSON path")
    a.set_defaults(func=cmd_analyze)

    p = sub.add_parser("serve", help="run the HTTP game service")
    p.add_argument("--bind", default=None, help="host:port (default env PAIRBLOCK_BIND)")
    p.add_argument("--snapshot", default=None, help="dump sessions here on shutdown")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MalformedInstance as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PairblockError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
