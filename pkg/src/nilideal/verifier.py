"""Exhaustive bounded checks of the structural claims about H.

Each ``verify_*`` function returns a ``SuiteResult``.  Zero verdicts carry a
derivation trace that has been re-checked with ``trace.replay``; nonzero
verdicts come from an exhausted class enumeration.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterator

from . import engine
from .engine import DEFAULT_NODE_BUDGET, class_enumerate
from .invariants import (
    Unclassified,
    check_rule_invariance,
    classify_shape,
    potential,
)
from .presentation import Presentation, standard_presentation
from .squarefree import count_squarefree, squarefree_upto
from .trace import DerivationTrace, dumps_trace, replay
from .words import A_LETTERS, ALPHABET, EMPTY, Word, format_word, w

L = w("L")


@dataclass
class Failure:
    inputs: tuple[str, ...]
    expected: str
    got: str
    trace: DerivationTrace | None = None


@dataclass
class SuiteResult:
    proposition: str
    cases_run: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary_line(self) -> str:
        verdict = "pass" if self.passed else "fail"
        return (
            f"{self.proposition} {verdict} cases={self.cases_run} "
            f"failures={len(self.failures)} elapsed_ms={int(self.elapsed * 1000)}"
        )


class _Suite:
    """Timing and bookkeeping shared by the suites."""

    def __init__(self, name: str, p: Presentation, node_budget: int):
        self.result = SuiteResult(name)
        self.p = p
        self.budget = node_budget
        self._t0 = time.perf_counter()

    def case(self):
        self.result.cases_run += 1

    def fail(self, inputs, expected, got, trace=None):
        if isinstance(inputs, Word):
            inputs = (inputs,)
        self.result.failures.append(
            Failure(tuple(format_word(x) for x in inputs), expected, got, trace)
        )

    def enumerate(self, word: Word, stop_on_zero=False):
        return class_enumerate(self.p, word, node_budget=self.budget, stop_on_zero=stop_on_zero)

    def expect_zero(self, word: Word) -> bool:
        report = self.enumerate(word, stop_on_zero=True)
        if not report.is_zero:
            self.fail(word, "zero", "nonzero")
            return False
        verdict = replay(self.p, report.zero_witness)
        if not verdict:
            self.fail(word, "replayable zero trace", f"replay failed: {verdict.message}",
                      report.zero_witness)
            return False
        return True

    def expect_equivalent(self, u: Word, v: Word, label: str = ""):
        report = self.enumerate(u)
        if v in report:
            trace = report.trace_to(v)
            if not replay(self.p, trace):
                self.fail((u, v), "replayable trace", "replay failed", trace)
        elif not (report.is_zero and engine.is_zero(self.p, v, node_budget=self.budget)):
            self.fail((u, v), f"equivalent {label}".strip(), "not equivalent")

    def done(self) -> SuiteResult:
        self.result.elapsed = time.perf_counter() - self._t0
        return self.result


def _require(cond: bool, message: str):
    if not cond:
        raise ValueError(message)


def ternary(maxlen: int, minlen: int = 1) -> Iterator[Word]:
    for n in range(minlen, maxlen + 1):
        for t in itertools.product(A_LETTERS, repeat=n):
            yield Word(t)


def _default(p: Presentation | None) -> Presentation:
    return standard_presentation() if p is None else p


def verify_prop1(maxlen: int = 3, p: Presentation | None = None,
                 node_budget: int = DEFAULT_NODE_BUDGET) -> SuiteResult:
    """L U is zero when U has a letter outside a1, a2, a3; otherwise its
    canonical form is L U itself or 0."""
    _require(maxlen >= 1, "prop1 needs maxlen >= 1")
    s = _Suite("prop1", _default(p), node_budget)
    for n in range(1, maxlen + 1):
        for letters in itertools.product(ALPHABET, repeat=n):
            s.case()
            word = L * Word(letters)
            if any(x not in A_LETTERS for x in letters):
                s.expect_zero(word)
                continue
            report = s.enumerate(word)
            if report.is_zero:
                if not replay(s.p, report.zero_witness):
                    s.fail(word, "replayable zero trace", "replay failed", report.zero_witness)
                continue
            heads = report.l_initial()
            if heads != [word]:
                s.fail(word, format_word(word), ", ".join(map(format_word, heads)) or "none")
    return s.done()


def verify_prop2(maxlen: int = 5, p: Presentation | None = None,
                 node_budget: int = DEFAULT_NODE_BUDGET) -> SuiteResult:
    """L X Y is equivalent to M P X R s1 Q Y."""
    _require(maxlen >= 2, "prop2 needs maxlen >= 2")
    s = _Suite("prop2", _default(p), node_budget)
    for X in ternary(maxlen - 1):
        for Y in ternary(maxlen - len(X)):
            s.case()
            s.expect_equivalent(L * X * Y, w("M P") * X * w("R s1 Q") * Y)
    return s.done()


def prop3_to_6_identities(maxlen: int) -> Iterator[tuple[str, Word, Word, bool]]:
    """``(label, lhs, rhs, both_sides_zero)`` for every instance up to ``maxlen``."""
    idx = (1, 2, 3)
    a = {i: w(f"a{i}") for i in idx}
    t = {i: w(f"t{i}") for i in idx}
    contexts = [EMPTY, *ternary(maxlen)]
    P, R, Q, g = w("P"), w("R"), w("Q"), w("g")
    s1, s2 = w("s1"), w("s2")
    for i in idx:
        for U in contexts:
            yield "prop3a", P * a[i] * U * R * t[i], a[i] * P * U * R * s1, False
            for j in idx:
                if i != j:
                    yield "prop3b", P * a[j] * U * R * t[i], a[j] * P * U * s2 * R, False
        for V in contexts:
            yield "prop4a", s1 * V * Q * a[i], t[i] * V * a[i] * Q, False
            yield "prop4b", s2 * R * V * Q * a[i], t[i] * V * R * a[i] * Q, False
    for X in ternary(maxlen):
        for V in contexts:
            for Z in contexts:
                yield "prop5a", P * X * V * R * Z * s1 * Q * X, X * P * V * R * s1 * Z * X * Q, False
            # the zero claim follows from P R s1 = 0 only when V is empty
            yield "prop5b", P * X * s2 * V * R * Q * X, X * P * V * R * s1 * X * Q, not V
    for i, j, k in itertools.product(idx, repeat=3):
        if i != j:
            yield "prop6", P * g * a[i] * a[j] * a[k], a[i] * P * g * a[j] * a[k], False


def verify_prop3_to_6(maxlen: int = 2, p: Presentation | None = None,
                      node_budget: int = DEFAULT_NODE_BUDGET) -> SuiteResult:
    _require(maxlen >= 1, "prop3-6 needs maxlen >= 1")
    s = _Suite("prop3-6", _default(p), node_budget)
    nonzero_5b = []
    for label, lhs, rhs, zero in prop3_to_6_identities(maxlen):
        s.case()
        s.expect_equivalent(lhs, rhs, label)
        if zero:
            s.expect_zero(lhs)
            s.expect_zero(rhs)
        elif label == "prop5b" and not engine.is_zero(s.p, rhs, node_budget=node_budget):
            nonzero_5b.append(format_word(rhs))
    if nonzero_5b:
        s.result.notes.append(
            f"prop5b with nonempty V: {len(nonzero_5b)} instances are nonzero, "
            f"e.g. {nonzero_5b[0]}"
        )
    return s.done()


def _xyz(maxtotal: int, allow_empty_xz: bool) -> Iterator[tuple[Word, Word, Word]]:
    lo = 0 if allow_empty_xz else 1
    for Y in ternary(maxtotal // 2):
        room = maxtotal - 2 * len(Y)
        for X in ternary(room - lo, lo):
            for Z in ternary(room - len(X), lo):
                yield X, Y, Z


def verify_prop7(maxtotal: int = 7, p: Presentation | None = None,
                 node_budget: int = DEFAULT_NODE_BUDGET, probe_empty: bool = True) -> SuiteResult:
    """L X Y Y Z is zero for nonempty X, Y, Z.

    With ``probe_empty`` the cases with X or Z empty are also decided and
    summarised in the notes; they do not count as failures.
    """
    _require(maxtotal >= 4, "prop7 needs maxtotal >= 4")
    s = _Suite("prop7", _default(p), node_budget)
    for X, Y, Z in _xyz(maxtotal, False):
        s.case()
        s.expect_zero(L * X * Y * Y * Z)
    if probe_empty:
        probed, nonzero = 0, []
        for X, Y, Z in _xyz(maxtotal, True):
            if X and Z:
                continue
            probed += 1
            word = L * X * Y * Y * Z
            if not engine.is_zero(s.p, word, node_budget=node_budget):
                nonzero.append(format_word(word))
        s.result.notes.append(
            f"empty X or Z probe: {probed} words, {probed - len(nonzero)} zero, {len(nonzero)} nonzero"
            + (f" (first: {nonzero[0]})" if nonzero else "")
        )
    return s.done()


def verify_prop9(maxlen: int = 8, p: Presentation | None = None,
                 node_budget: int = DEFAULT_NODE_BUDGET, check_shapes: bool = True) -> SuiteResult:
    """L U is nonzero for every square-free U; every class member has one of
    the three shapes and L U is the only member starting with L."""
    _require(maxlen >= 1, "prop9 needs maxlen >= 1")
    p = _default(p)
    s = _Suite("prop9[aux]" if p.include_taq_zero else "prop9", p, node_budget)
    for U in squarefree_upto(maxlen):
        s.case()
        word = L * U
        report = s.enumerate(word)
        if report.is_zero:
            s.fail(word, "nonzero", "zero", report.zero_witness)
            continue
        if not report.exhausted:
            s.fail(word, "exhausted class", "partial class")
        heads = report.l_initial()
        if heads != [word]:
            s.fail(word, f"unique L-initial member {word}", ", ".join(map(format_word, heads)))
        if check_shapes:
            for member in report.members:
                if isinstance(classify_shape(member), Unclassified):
                    s.fail((word, member), "shape i, ii or iii", "unclassified")
    return s.done()


def verify_prop9_both(maxlen: int = 8, node_budget: int = DEFAULT_NODE_BUDGET) -> list[SuiteResult]:
    return [
        verify_prop9(maxlen, standard_presentation(aux), node_budget)
        for aux in (False, True)
    ]


def verify_injectivity(maxlen: int = 6, p: Presentation | None = None,
                       node_budget: int = DEFAULT_NODE_BUDGET) -> SuiteResult:
    """Distinct square-free A, B give inequivalent L A, L B.

    Fast path: the a-letter subsequence is conserved, so it must differ.
    Slow path: the enumerated classes must be pairwise disjoint.
    """
    _require(maxlen >= 2, "injectivity needs maxlen >= 2")
    s = _Suite("injectivity", _default(p), node_budget)
    words = squarefree_upto(maxlen)
    subsequences: dict[tuple, Word] = {}
    for A in words:
        key = (L * A).a_subsequence()
        if key in subsequences:
            s.fail((subsequences[key], A), "distinct a-subsequences", "equal")
        subsequences[key] = A
    owner: dict[Word, Word] = {}
    for A in words:
        report = s.enumerate(L * A)
        if report.is_zero:
            s.fail(L * A, "nonzero", "zero", report.zero_witness)
        if L * A not in report:
            s.fail((L * A, L * A), "equivalent", "not equivalent")
        for m in report.members:
            other = owner.setdefault(m, A)
            if other != A:
                s.fail((L * other, L * A), "not equivalent", f"share member {m}")
    n = len(words)
    s.result.cases_run = n * (n - 1) // 2
    return s.done()


def growth(maxlen: int = 6, p: Presentation | None = None,
           node_budget: int = DEFAULT_NODE_BUDGET) -> list[tuple[int, int]]:
    """Number of distinct nonzero classes among ``L A`` with ``|A| = n``."""
    _require(maxlen >= 1, "growth needs maxlen >= 1")
    p = _default(p)
    table = []
    for n in range(1, maxlen + 1):
        canon = set()
        for A in ternary(n, n):
            report = class_enumerate(p, L * A, node_budget=node_budget, stop_on_zero=True)
            if not report.is_zero:
                canon.add(min(report.members, key=Word.sort_key))
        table.append((n, len(canon)))
    return table


def verify_growth(maxlen: int = 6, p: Presentation | None = None,
                  node_budget: int = DEFAULT_NODE_BUDGET) -> SuiteResult:
    s = _Suite("growth", _default(p), node_budget)
    for n, count in growth(maxlen, s.p, node_budget):
        s.case()
        expected = count_squarefree(n)
        s.result.notes.append(f"n={n} nonzero_classes={count} squarefree={expected}")
        if count != expected:
            s.fail((), f"{expected} classes at length {n}", str(count))
    return s.done()


def verify_invariants(p: Presentation | None = None) -> SuiteResult:
    """Every equality rule preserves I0..I4, the potential and the a-subsequence."""
    s = _Suite("invariants", _default(p), DEFAULT_NODE_BUDGET)
    for v in check_rule_invariance(s.p).violations:
        s.fail((), f"rule {v[0]} preserves invariants", f"{v[1]} changes {', '.join(v[2])}")
    for i, rule in s.p.equality_rules:
        s.case()
        if potential(rule.lhs) != potential(rule.rhs):
            s.fail((rule.lhs, rule.rhs), "equal potential", f"rule {i} changes it")
        if rule.lhs.a_subsequence() != rule.rhs.a_subsequence():
            s.fail((rule.lhs, rule.rhs), "equal a-subsequence", f"rule {i} changes it")
    return s.done()


# -- driver -------------------------------------------------------------------

SUITES = ("invariants", "prop1", "prop2", "prop3-6", "prop7", "prop9", "injectivity", "growth")


@dataclass
class VerifyConfig:
    presentation: Presentation | None = None
    include_taq_zero: bool = False
    both_aux: bool = False
    suites: tuple[str, ...] = SUITES
    max_len: int | None = None  # overrides the bound of every selected suite
    prop1_maxlen: int = 3
    prop2_maxlen: int = 5
    prop36_maxlen: int = 2
    prop7_maxtotal: int = 7
    prop9_maxlen: int = 8
    injectivity_maxlen: int = 6
    growth_maxlen: int = 6
    node_budget: int = DEFAULT_NODE_BUDGET


def _run(name: str, cfg: VerifyConfig, p: Presentation) -> SuiteResult:
    def bound(default):
        return default if cfg.max_len is None else cfg.max_len

    b = cfg.node_budget
    if name == "invariants":
        return verify_invariants(p)
    if name == "prop1":
        return verify_prop1(bound(cfg.prop1_maxlen), p, b)
    if name == "prop2":
        return verify_prop2(bound(cfg.prop2_maxlen), p, b)
    if name == "prop3-6":
        return verify_prop3_to_6(bound(cfg.prop36_maxlen), p, b)
    if name == "prop7":
        return verify_prop7(bound(cfg.prop7_maxtotal), p, b)
    if name == "prop9":
        return verify_prop9(bound(cfg.prop9_maxlen), p, b)
    if name == "injectivity":
        return verify_injectivity(bound(cfg.injectivity_maxlen), p, b)
    if name == "growth":
        return verify_growth(bound(cfg.growth_maxlen), p, b)
    raise ValueError(f"unknown suite {name!r}")


def run_all(config: VerifyConfig | None = None) -> list[SuiteResult]:
    cfg = config or VerifyConfig()
    if cfg.presentation is not None:
        presentations = [cfg.presentation]
    elif cfg.both_aux:
        presentations = [standard_presentation(False), standard_presentation(True)]
    else:
        presentations = [standard_presentation(cfg.include_taq_zero)]
    results = []
    for p in presentations:
        for name in cfg.suites:
            result = _run(name, cfg, p)
            if p.include_taq_zero and not result.proposition.endswith("[aux]"):
                result.proposition += "[aux]"
            results.append(result)
    return results


def format_report(results: list[SuiteResult], max_failures: int | None = None) -> str:
    lines = []
    for r in results:
        lines.append(r.summary_line())
        lines.extend(f"note {r.proposition}: {n}" for n in r.notes)
        shown = r.failures if max_failures is None else r.failures[:max_failures]
        for k, f in enumerate(shown, start=1):
            inputs = " | ".join(f.inputs)
            lines.append(f"failure {r.proposition} #{k}: input={inputs} expected={f.expected} got={f.got}")
            if f.trace is not None:
                lines.append("--- trace")
                lines.append(dumps_trace(f.trace).rstrip("\n"))
                lines.append("--- end")
    return "\n".join(lines) + "\n"
