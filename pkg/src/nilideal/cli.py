"""Command-line interface.

Verdicts are printed to stdout as single lowercase tokens; explanations go
to stderr.  Exit status: 0 for success or a true verdict, 1 for a false
verdict or a failed suite, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import engine
from .engine import DEFAULT_NODE_BUDGET, NoDerivation, NodeBudgetExceeded, NotCanonicalizable
from .presentation import RuleFileError, dumps_rules, load_rules, save_rules, standard_presentation
from .squarefree import EnumerationCapExceeded, count_squarefree, enumerate_squarefree, gen_morphism
from .trace import TraceFormatError, dumps_trace, load_trace, replay
from .verifier import SUITES, VerifyConfig, format_report, growth, run_all
from .words import WordParseError, format_word, parse_word

PROP_SUITES = {
    "1": "prop1", "2": "prop2", "3": "prop3-6", "4": "prop3-6", "5": "prop3-6",
    "6": "prop3-6", "7": "prop7", "8": "invariants", "9": "prop9",
    **{name: name for name in SUITES},
}


class UsageError(Exception):
    pass


def _word(text: str):
    try:
        return parse_word(text)
    except WordParseError as exc:
        raise UsageError(f"bad word {text!r}: {exc}") from None


def _nonzero_word(text: str):
    word = _word(text)
    if word.zero:
        raise UsageError("expected a nonzero word")
    return word


def _presentation(args):
    if args.rules:
        try:
            return load_rules(args.rules)
        except (OSError, RuleFileError) as exc:
            raise UsageError(str(exc)) from None
    return standard_presentation(args.aux)


def cmd_is_zero(args, p) -> int:
    word = _word(args.word)
    zero = engine.is_zero(p, word, node_budget=args.node_budget)
    print("zero" if zero else "nonzero")
    return 0 if zero else 1


def cmd_equal(args, p) -> int:
    u, v = _word(args.u), _word(args.v)
    if u.zero or v.zero:
        other = v if u.zero else u
        same = engine.is_zero(p, other, node_budget=args.node_budget)
    else:
        same = engine.equivalent(p, u, v, node_budget=args.node_budget)
    print("equivalent" if same else "not-equivalent")
    return 0 if same else 1


def cmd_normalize(args, p) -> int:
    word = _word(args.word)
    try:
        canon = engine.canonical_form(p, word, node_budget=args.node_budget)
    except NotCanonicalizable as exc:
        print("not-canonicalizable")
        print(exc, file=sys.stderr)
        return 1
    print(format_word(canon))
    return 0


def cmd_class(args, p) -> int:
    report = engine.class_enumerate(p, _nonzero_word(args.word), node_budget=args.node_budget)
    for member in report.sorted_members():
        print(format_word(member))
    print(f"{report.size} members, {'zero' if report.is_zero else 'nonzero'}", file=sys.stderr)
    return 0


def cmd_trace(args, p) -> int:
    u, v = _nonzero_word(args.u), _word(args.v)
    try:
        trace = engine.derive(p, u, v, node_budget=args.node_budget)
    except NoDerivation as exc:
        print("no-derivation")
        print(exc, file=sys.stderr)
        return 1
    text = dumps_trace(trace)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {len(trace)} steps to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def cmd_replay(args, p) -> int:
    try:
        trace = load_trace(args.path, p)
    except (OSError, TraceFormatError) as exc:
        raise UsageError(str(exc)) from None
    result = replay(p, trace)
    if result:
        print("valid")
        return 0
    print("invalid")
    print(f"step {result.failed_at + 1}: {result.message}", file=sys.stderr)
    return 1


def cmd_squarefree(args, p) -> int:
    if args.len < 1:
        raise UsageError("--len must be >= 1")
    if args.method == "morphism":
        print(format_word(gen_morphism(args.len)))
        return 0
    try:
        words = enumerate_squarefree(args.len, cap=args.cap)
    except EnumerationCapExceeded as exc:
        raise UsageError(str(exc)) from None
    for u in words:
        print(format_word(u))
    print(f"{len(words)} square-free words of length {args.len}", file=sys.stderr)
    return 0


def cmd_growth(args, p) -> int:
    if args.max < 1:
        raise UsageError("--max must be >= 1")
    ok = True
    for n, count in growth(args.max, p, args.node_budget):
        expected = count_squarefree(n)
        ok &= count == expected
        print(f"{n} {count} {expected}")
    return 0 if ok else 1


def cmd_verify(args, p) -> int:
    suites = SUITES
    if args.prop:
        try:
            suites = (PROP_SUITES[args.prop],)
        except KeyError:
            raise UsageError(f"unknown proposition {args.prop!r}") from None
    cfg = VerifyConfig(
        presentation=p if args.rules else None,
        include_taq_zero=args.aux,
        both_aux=args.both_aux,
        suites=suites,
        max_len=args.max_len,
        node_budget=args.node_budget,
    )
    try:
        results = run_all(cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(format_report(results, max_failures=args.max_failures))
    return 0 if all(r.passed for r in results) else 1


def cmd_rules(args, p) -> int:
    if args.dump:
        save_rules(p, args.dump)
        print(f"wrote {len(p)} rules to {args.dump}", file=sys.stderr)
    else:
        sys.stdout.write(dumps_rules(p))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilideal", description=__doc__.splitlines()[0])
    parser.add_argument("--rules", metavar="PATH", help="rule file (default: built-in presentation)")
    parser.add_argument("--aux", action="store_true",
                        help="add the annihilation rules t_i a_j Q -> 0 (i != j)")
    parser.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("is-zero", help="decide whether a word equals 0")
    s.add_argument("word")
    s.set_defaults(func=cmd_is_zero)

    s = sub.add_parser("equal", help="decide whether two words are equal in H")
    s.add_argument("u")
    s.add_argument("v")
    s.set_defaults(func=cmd_equal)

    s = sub.add_parser("normalize", help="canonical form L A, or 0")
    s.add_argument("word")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("class", help="list the congruence class of a word")
    s.add_argument("word")
    s.set_defaults(func=cmd_class)

    s = sub.add_parser("trace", help="shortest derivation from one word to another (or 0)")
    s.add_argument("u")
    s.add_argument("v")
    s.add_argument("--out", metavar="PATH")
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("replay", help="check a trace file")
    s.add_argument("path")
    s.set_defaults(func=cmd_replay)

    s = sub.add_parser("squarefree", help="square-free words over a1, a2, a3")
    s.add_argument("--len", type=int, required=True)
    s.add_argument("--method", choices=("morphism", "enumerate"), default="morphism")
    s.add_argument("--cap", type=int, default=12)
    s.set_defaults(func=cmd_squarefree)

    s = sub.add_parser("growth", help="nonzero classes of L A per length vs square-free counts")
    s.add_argument("--max", type=int, required=True)
    s.set_defaults(func=cmd_growth)

    s = sub.add_parser("verify", help="run the verification suites")
    s.add_argument("--prop", help="1-9, or a suite name: " + ", ".join(SUITES))
    s.add_argument("--max-len", type=int, help="bound used by every selected suite")
    s.add_argument("--both-aux", action="store_true",
                   help="run the suites with and without the t_i a_j Q -> 0 rules")
    s.add_argument("--max-failures", type=int, default=10)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("rules", help="print or save the rule set")
    s.add_argument("--dump", metavar="PATH")
    s.set_defaults(func=cmd_rules)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, _presentation(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NodeBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
