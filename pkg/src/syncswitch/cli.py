"""Command-line interface.

Numeric results go to stdout as bare decimals; human-oriented detail and
progress go to stderr.  Exit codes: 0 success, 1 domain error (for example
a non-synchronizing input), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .automaton import Dfa, DfaParseError, parse_dfa, serialize_dfa
from .closure import f2_transform, f_transform, power_closure
from .families import (
    a_family,
    b_family,
    cerny,
    cyclic_counterexample,
    fixture,
    p_family,
    p_variant,
    q_family,
    r_family,
)
from .synchro import (
    NotSynchronizingError,
    Objective,
    count_optimal_words,
    min_switch_count,
    optimal_sync_word,
    shortest_sync_length,
)
from .search import SearchSpaceError, cyclic_extremal_search, extremal_search, format_report
from .analysis import verify_lemmas

_OBJECTIVES = {
    "length": Objective.LENGTH,
    "switch": Objective.SWITCH,
    "switch-then-length": Objective.SWITCH_THEN_LENGTH,
}

_FAMILIES = {
    "cerny": cerny,
    "p": p_family,
    "p-variant": p_variant,
    "r": r_family,
    "q": q_family,
    "a": a_family,
    "b": b_family,
}


def _read_dfa(path: str) -> Dfa:
    if path == "-":
        return parse_dfa(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dfa(fh.read())


def _default_jobs() -> int:
    return os.cpu_count() or 1


def _cmd_gen(args) -> int:
    if args.family == "cyclic-counterexample":
        dfa = cyclic_counterexample()
    elif args.family == "fixture":
        if args.n is None:
            raise ValueError("gen fixture needs a fixture name, e.g. 'gen fixture t5'")
        dfa = fixture(args.n)
    else:
        if args.n is None:
            raise ValueError(f"gen {args.family} needs a state count")
        dfa = _FAMILIES[args.family](int(args.n))
    sys.stdout.write(serialize_dfa(dfa))
    return 0


def _cmd_ssl(args) -> int:
    print(shortest_sync_length(_read_dfa(args.file)))
    return 0


def _cmd_sw(args) -> int:
    print(min_switch_count(_read_dfa(args.file)))
    return 0


def _cmd_opt(args) -> int:
    result = optimal_sync_word(_read_dfa(args.file), _OBJECTIVES[args.objective])
    print(f"word={result.word.letters()} len={result.length} sw={result.switch}")
    return 0


def _cmd_count(args) -> int:
    print(count_optimal_words(_read_dfa(args.file), _OBJECTIVES[args.objective]))
    return 0


def _cmd_closure(args) -> int:
    closed, cmap = power_closure(_read_dfa(args.file))
    sys.stdout.write(serialize_dfa(closed))
    for line in cmap.comment_lines():
        print(line)
    return 0


def _cmd_transform(args) -> int:
    dfa = _read_dfa(args.file)
    out = f_transform(dfa) if args.kind == "f" else f2_transform(dfa)
    sys.stdout.write(serialize_dfa(out))
    return 0


def _progress(line: str) -> None:
    print(line, file=sys.stderr)


def _cmd_search(args) -> int:
    report = extremal_search(
        args.n, args.k, shards=args.shards, parallelism=args.jobs,
        long=args.long, allow_huge=args.allow_huge, progress=_progress,
    )
    sys.stdout.write(format_report(report))
    return 0


def _cmd_cyclic_search(args) -> int:
    report = cyclic_extremal_search(
        args.n, args.k, shards=args.shards, parallelism=args.jobs,
        long=args.long, progress=_progress,
    )
    sys.stdout.write(format_report(report))
    return 0


def _cmd_verify_lemmas(args) -> int:
    report = verify_lemmas(args.n, samples=args.samples, seed=args.seed)
    sys.stdout.write(report.to_text())
    return 0 if report.all_pass else 1


def _cmd_verify_paper(args) -> int:
    from .checks import run_checks

    results = run_checks(long=args.long, jobs=args.jobs, progress=_progress)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"CHECK {r.check_id} {status} expected={r.expected} got={r.got}")
        if not r.passed:
            failed += 1
    print(f"# {len(results) - failed}/{len(results)} checks passed", file=sys.stderr)
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syncswitch",
        description="Switch counts and shortest reset words of DFAs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="print a family automaton in the DFA text format")
    p.add_argument("family", choices=sorted(_FAMILIES) + ["cyclic-counterexample", "fixture"])
    p.add_argument("n", nargs="?", default=None,
                   help="state count, or fixture name for 'gen fixture'")
    p.set_defaults(func=_cmd_gen)

    for name, func, text in [
        ("ssl", _cmd_ssl, "shortest synchronizing word length"),
        ("sw", _cmd_sw, "minimal switch count of a synchronizing word"),
    ]:
        p = sub.add_parser(name, help=text)
        p.add_argument("file", help="DFA file, or - for stdin")
        p.set_defaults(func=func)

    p = sub.add_parser("opt", help="an optimal synchronizing word")
    p.add_argument("file", help="DFA file, or - for stdin")
    p.add_argument("--objective", choices=sorted(_OBJECTIVES), default="switch-then-length")
    p.set_defaults(func=_cmd_opt)

    p = sub.add_parser("count", help="number of optimal synchronizing words")
    p.add_argument("file", help="DFA file, or - for stdin")
    p.add_argument("--objective", choices=["length", "switch-then-length"], default="length")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("closure", help="print the power closure")
    p.add_argument("file", help="DFA file, or - for stdin")
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("transform", help="apply the f or f2 transform")
    p.add_argument("kind", choices=["f", "f2"])
    p.add_argument("file", help="DFA file, or - for stdin")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("search", help="exhaustive extremal search over all tables")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--long", action="store_true", help="allow searches past the quick threshold")
    p.add_argument("--allow-huge", action="store_true",
                   help="allow binary searches past n=6 (far beyond desk scale)")
    p.add_argument("--shards", type=int, default=None)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("cyclic-search", help="extremal search over cyclic automata")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True, choices=[2, 3])
    p.add_argument("--long", action="store_true")
    p.add_argument("--shards", type=int, default=None)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.set_defaults(func=_cmd_cyclic_search)

    p = sub.add_parser("verify-lemmas", help="check the distance/measure lemmas")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify_lemmas)

    p = sub.add_parser("verify-paper", help="run the full verification battery")
    p.add_argument("--long", action="store_true",
                   help="include the n=6 binary exhaustive search (hours)")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.set_defaults(func=_cmd_verify_paper)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DfaParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except NotSynchronizingError:
        print("not synchronizing", file=sys.stderr)
        return 1
    except (SearchSpaceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    raise SystemExit(main())
