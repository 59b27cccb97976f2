"""Command-line front end.

Exit codes: 0 command ran (any verdict), 2 usage error, 3 invalid input,
4 construction precondition unmet, 5 random attempts exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import codec, feasibility, linalg, oracle, problem, structure

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BAD_INPUT = 3
EXIT_PRECONDITION = 4
EXIT_EXHAUSTED = 5


def _read_problem(path: str, allow_undemanded: bool) -> problem.Problem:
    with open(path, encoding="utf-8") as fh:
        return problem.parse_problem(fh.read(), allow_undemanded=allow_undemanded)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_analyze(args: argparse.Namespace) -> int:
    p = _read_problem(args.problem, args.allow_undemanded)
    report = feasibility.analyze(p)
    if args.emit_graph:
        _write(args.emit_graph, structure.to_dot(p))
    if args.format == "json":
        print(json.dumps(feasibility.report_to_dict(report), sort_keys=True, indent=2))
    else:
        print(feasibility.render_report(report), end="")
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    p = _read_problem(args.problem, args.allow_undemanded)
    if not linalg.is_prime(args.prime):
        raise problem.ProblemError(f"--prime {args.prime} is not prime")
    seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2**32)
    rng = random.Random(seed)
    if args.rate == "1":
        if not feasibility.check_rate_one(p).feasible:
            raise codec.PreconditionError("rate 1 infeasible: problem has conflicts")
        vectors = tuple((1,) for _ in range(p.n))
        code = codec.ScalarLinearCode(length=1, prime=args.prime, vectors=vectors)
        attempts = 1
    elif args.rate == "1/2":
        code, result = codec.construct_rate_half(p, args.prime, rng, args.max_attempts)
        attempts = result.attempts_used
    else:
        code, result = codec.construct_rate_third(p, args.prime, rng, args.max_attempts)
        attempts = result.attempts_used
    _write(args.output, codec.code_to_json(code))
    print(f"seed: {seed}", file=sys.stderr)
    print(f"attempts_used: {attempts}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    p = _read_problem(args.problem, args.allow_undemanded)
    with open(args.code, encoding="utf-8") as fh:
        code = codec.code_from_json(fh.read())
    result = codec.verify(p, code)
    if result.ok:
        print(f"OK ({p.t}/{p.t} receivers)")
    else:
        for m in result.zero_vector_messages:
            print(f"VIOLATION: message {m} is assigned the zero vector")
        for j, k in result.violations:
            print(f"VIOLATION: receiver {j}, message {k}: vector lies in the interfering span")
        bad = {j for j, _ in result.violations}
        print(f"FAILED ({p.t - len(bad)}/{p.t} receivers)")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    p = _read_problem(args.problem, args.allow_undemanded)
    fields = tuple(int(q) for q in args.q.split(","))
    summary = []
    for q in fields:
        result = oracle.min_length(p, q, l_max=args.max_len, n_cap=args.n_cap)
        shown = result.min_length if result.min_length is not None else f">{args.max_len}"
        summary.append(f"{shown} (q={q})")
        if result.witness is not None and args.output:
            _write(args.output, codec.code_to_json(result.witness))
        print(f"q={q}: nodes explored {result.nodes_explored}", file=sys.stderr)
    print("min length: " + ", ".join(summary))
    print(
        "note: lengths are field-relative; absence over the tested fields is not "
        "unconditional infeasibility"
    )
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    p = problem.random_problem(
        args.n, args.density, single_unicast=not args.general, seed=args.seed
    )
    _write(args.output, problem.problem_to_json(p))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="indexcode",
        description="Analyze, construct and verify scalar linear index codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--allow-undemanded", action="store_true", help="accept problems with undemanded messages")

    sp = sub.add_parser("analyze", help="feasibility report for a problem file")
    sp.add_argument("problem")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--emit-graph", metavar="PATH", help="write a dot rendering of the structure")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("construct", help="build a code at a target rate")
    sp.add_argument("problem")
    sp.add_argument("--rate", choices=["1", "1/2", "1/3"], required=True)
    sp.add_argument("--prime", type=int, default=linalg.DEFAULT_PRIME)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--max-attempts", type=int, default=8)
    sp.add_argument("-o", "--output", default="-")
    common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="check a code file against a problem")
    sp.add_argument("problem")
    sp.add_argument("code")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="exhaustive minimum code length over small fields")
    sp.add_argument("problem")
    sp.add_argument("--q", default="2,3", help="comma-separated prime field sizes")
    sp.add_argument("--max-len", type=int, default=oracle.DEFAULT_L_CAP)
    sp.add_argument("--n-cap", type=int, default=oracle.DEFAULT_N_CAP)
    sp.add_argument("-o", "--output", default=None, help="write the smallest witness found")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("gen", help="generate a seeded random problem")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--density", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--general", action="store_true", help="allow multi-demand receivers")
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except codec.AttemptsExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except codec.PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (problem.ProblemError, codec.CodecError, oracle.OracleCapError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
