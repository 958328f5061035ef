"""The defining relations of H, expanded into a flat list of rules, and the
rule-file format.

Rule file: one rule per line, ``LHS -> RHS``, with an optional trailing
``# rel N`` or ``# aux`` tag.  ``RHS`` may be ``0``.  Blank lines and lines
that are only a comment are ignored.
"""

from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np
from scipy.optimize import linprog

from .words import (
    A_LETTERS,
    ALPHABET,
    ZERO,
    Word,
    WordParseError,
    format_word,
    parse_word,
    w,
)

AUX = "aux"
PaperId = Union[int, str, None]

# rules produced per relation family by standard_presentation
FAMILY_COUNTS: dict[PaperId, int] = {
    1: 28, 2: 1, 3: 3, 4: 11, 5: 9, 6: 12, 7: 3,
    8: 6, 9: 6, 10: 1, 11: 3, 12: 1, 13: 3, 14: 3,
}
AUX_COUNT = 6


class RuleFileError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Word
    paper_id: PaperId = None

    def __post_init__(self):
        if self.lhs.zero or not self.lhs.letters:
            raise ValueError("rule lhs must be a nonempty word without 0")
        if not self.rhs.zero and not self.rhs.letters:
            raise ValueError("rule rhs must be nonempty or 0")

    @property
    def kind(self) -> str:
        return "annihilation" if self.rhs.zero else "equality"

    @property
    def is_annihilation(self) -> bool:
        return self.rhs.zero

    @property
    def tag(self) -> str:
        if self.paper_id is None:
            return "?"
        return str(self.paper_id)

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} -> {format_word(self.rhs)}"


@dataclass(frozen=True)
class Presentation:
    rules: tuple[Rule, ...]
    include_taq_zero: bool = False

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def equality_rules(self) -> list[tuple[int, Rule]]:
        return [(i, r) for i, r in enumerate(self.rules) if not r.is_annihilation]

    @property
    def annihilation_rules(self) -> list[tuple[int, Rule]]:
        return [(i, r) for i, r in enumerate(self.rules) if r.is_annihilation]

    def family_counts(self) -> dict[PaperId, int]:
        return dict(Counter(r.paper_id for r in self.rules))

    def without(self, paper_id: PaperId) -> Presentation:
        """Copy with every rule of one relation family removed."""
        return Presentation(
            tuple(r for r in self.rules if r.paper_id != paper_id),
            self.include_taq_zero,
        )


def _r(lhs: str, rhs: str, pid: PaperId) -> Rule:
    return Rule(w(lhs), ZERO if rhs == "0" else w(rhs), pid)


def standard_presentation(include_taq_zero: bool = False) -> Presentation:
    idx = (1, 2, 3)
    a = {i: f"a{i}" for i in idx}
    t = {i: f"t{i}" for i in idx}
    rules: list[Rule] = []

    # (1) xL = xM = 0 for every nonzero letter x
    for x in ALPHABET:
        rules.append(_r(f"{x} L", "0", 1))
        rules.append(_r(f"{x} M", "0", 1))
    # (2)
    rules.append(_r("L", "M P g", 2))
    # (3)
    for i in idx:
        rules.append(_r(f"g {a[i]}", f"{a[i]} g", 3))
    # (4) gx = 0 for x outside {a1, a2, a3}
    for x in ALPHABET:
        if x not in A_LETTERS:
            rules.append(_r(f"g {x}", "0", 4))
    # (5)
    for i in idx:
        for j in idx:
            rules.append(_r(f"{a[i]} g {a[j]}", f"{a[i]} R s1 Q {a[j]}", 5))
    # (6)
    for i in idx:
        for x in ("R", *A_LETTERS):
            rules.append(_r(f"{t[i]} {x}", f"{x} {t[i]}", 6))
    # (7)
    for i in idx:
        rules.append(_r(f"P {a[i]} {t[i]}", f"{a[i]} P s1", 7))
    # (8)
    for i in idx:
        for j in idx:
            if i != j:
                rules.append(_r(f"P {a[j]} {t[i]}", f"{a[j]} P s2", 8))
    # (9)
    for i in idx:
        for s in ("s1", "s2"):
            rules.append(_r(f"{s} {a[i]}", f"{a[i]} {s}", 9))
    # (10)
    rules.append(_r("s1 R", "R s1", 10))
    # (11)
    for i in idx:
        rules.append(_r(f"s1 Q {a[i]}", f"{t[i]} {a[i]} Q", 11))
    # (12)
    rules.append(_r("P R s1", "0", 12))
    # (13)
    for i in idx:
        rules.append(_r(f"s2 R {a[i]}", f"{a[i]} s2 R", 13))
    # (14)
    for i in idx:
        rules.append(_r(f"s2 R Q {a[i]}", f"R {t[i]} {a[i]} Q", 14))
    if include_taq_zero:
        for i in idx:
            for j in idx:
                if i != j:
                    rules.append(_r(f"{t[i]} {a[j]} Q", "0", AUX))
    return Presentation(tuple(rules), include_taq_zero)


# -- rule files ---------------------------------------------------------------

_TAG = re.compile(r"^\s*(?:rel\s+(\d+)|(aux))\s*$", re.IGNORECASE)


def parse_rule_line(line: str, lineno: int = 0) -> Rule | None:
    body, _, comment = line.partition("#")
    if not body.strip():
        return None
    if body.count("->") != 1:
        raise RuleFileError(f"line {lineno}: expected 'LHS -> RHS'")
    left, right = body.split("->")
    paper_id: PaperId = None
    m = _TAG.match(comment) if comment else None
    if m:
        paper_id = int(m.group(1)) if m.group(1) else AUX
    try:
        lhs = parse_word(left)
        rhs = parse_word(right)
    except WordParseError as exc:
        raise RuleFileError(f"line {lineno}: {exc}") from None
    if lhs.zero:
        raise RuleFileError(f"line {lineno}: rule lhs may not contain 0")
    return Rule(lhs, rhs, paper_id)


def format_rule_line(rule: Rule) -> str:
    if rule.paper_id is None:
        return str(rule)
    if rule.paper_id == AUX:
        return f"{rule}  # aux"
    return f"{rule}  # rel {rule.paper_id}"


def load_rules(path) -> Presentation:
    text = Path(path).read_text(encoding="utf-8")
    rules = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        rule = parse_rule_line(line, lineno)
        if rule is not None:
            rules.append(rule)
    if not rules:
        raise RuleFileError(f"{path}: no rules")
    return Presentation(tuple(rules), any(r.paper_id == AUX for r in rules))


def dumps_rules(p: Presentation) -> str:
    return "".join(format_rule_line(r) + "\n" for r in p.rules)


def save_rules(p: Presentation, path) -> None:
    Path(path).write_text(dumps_rules(p), encoding="utf-8")


# -- validation ---------------------------------------------------------------


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)
    # letter -> sorted list of "rel N forward|backward" that raise its count
    creators: dict[str, list[str]] = field(default_factory=dict)
    destroyers: dict[str, list[str]] = field(default_factory=dict)
    conserved_weights: dict[str, float] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    @property
    def conserved_potential(self) -> bool:
        return self.conserved_weights is not None


def _conserved_weights(p: Presentation) -> dict[str, float] | None:
    """Per-letter weights >= 1 under which every equality rule is balanced.

    If they exist, the weighted length is constant on a congruence class,
    so every class is finite.
    """
    eq = [r for _, r in p.equality_rules]
    if not eq:
        return {x: 1.0 for x in ALPHABET}
    a_eq = np.zeros((len(eq), len(ALPHABET)))
    for row, r in enumerate(eq):
        for col, x in enumerate(ALPHABET):
            a_eq[row, col] = r.lhs.count(x) - r.rhs.count(x)
    res = linprog(
        c=np.ones(len(ALPHABET)),
        A_eq=a_eq,
        b_eq=np.zeros(len(eq)),
        bounds=[(1, None)] * len(ALPHABET),
        method="highs",
    )
    if res.status != 0:
        return None
    return {x: float(v) for x, v in zip(ALPHABET, res.x)}


def validate(p: Presentation) -> ValidationReport:
    report = ValidationReport()
    if not p.rules:
        report.problems.append("empty presentation")
    creators: dict[str, set[str]] = defaultdict(set)
    destroyers: dict[str, set[str]] = defaultdict(set)
    for i, r in enumerate(p.rules):
        if r.is_annihilation:
            continue
        if "L" in r.rhs.letters:
            report.problems.append(f"rule {i} ({r}): rhs contains L")
        for x in ALPHABET:
            delta = r.rhs.count(x) - r.lhs.count(x)
            if delta > 0:
                creators[x].add(f"rel {r.tag} forward")
                destroyers[x].add(f"rel {r.tag} backward")
            elif delta < 0:
                creators[x].add(f"rel {r.tag} backward")
                destroyers[x].add(f"rel {r.tag} forward")
    report.creators = {x: sorted(v) for x, v in creators.items()}
    report.destroyers = {x: sorted(v) for x, v in destroyers.items()}

    if p.family_counts() == _expected_counts(p.include_taq_zero):
        report.notes.append("family counts match the standard expansion")

    for x in ("L", "g"):
        report.notes.append(f"{x} created only by {' and '.join(report.creators.get(x, ['nothing']))}")

    weights = _conserved_weights(p)
    if weights is None:
        report.problems.append("unbounded growth: no conserved potential")
    else:
        report.conserved_weights = weights
    return report


def _expected_counts(include_taq_zero: bool) -> dict[PaperId, int]:
    counts = dict(FAMILY_COUNTS)
    if include_taq_zero:
        counts[AUX] = AUX_COUNT
    return counts
