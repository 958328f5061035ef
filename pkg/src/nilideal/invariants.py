"""Conserved quantities of the equality rules and the shape classifier for
words equivalent to ``L A``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

from .presentation import Presentation
from .words import A_LETTERS, S_LETTERS, T_LETTERS, Word

MARKERS = T_LETTERS + S_LETTERS


class InvariantError(ValueError):
    pass


class InvariantVector(NamedTuple):
    i0: int
    i1: int
    i2: int
    i3: int
    i4: int


UNIT = InvariantVector(1, 1, 1, 1, 1)


def ivector(word: Word) -> InvariantVector:
    if word.zero:
        raise InvariantError("invariants are undefined on zero")
    c = word.count
    return InvariantVector(
        c("L", "M"),
        c("L", "P"),
        c("L", "g", "R"),
        c("L", "g", "Q"),
        c("L", "g", *MARKERS),
    )


def potential(word: Word) -> int:
    """Weighted length conserved by every equality rule: L weighs 5, g weighs 3."""
    if word.zero:
        raise InvariantError("potential is undefined on zero")
    return len(word) + 4 * word.count("L") + 2 * word.count("g")


@dataclass
class RuleInvarianceReport:
    # (rule index, rule text, names of the differing components)
    violations: list[tuple[int, str, list[str]]]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_rule_invariance(p: Presentation) -> RuleInvarianceReport:
    violations = []
    for i, rule in p.equality_rules:
        left, right = ivector(rule.lhs), ivector(rule.rhs)
        bad = [name for name, x, y in zip(InvariantVector._fields, left, right) if x != y]
        if bad:
            violations.append((i, str(rule), bad))
    return RuleInvarianceReport(violations)


# -- shapes -------------------------------------------------------------------


@dataclass(frozen=True)
class ShapeI:
    a_tail: Word


@dataclass(frozen=True)
class ShapeII:
    a1_part: Word
    a2_part: Word
    a3_part: Word


@dataclass(frozen=True)
class ShapeIII:
    marker: str


@dataclass(frozen=True)
class Unclassified:
    word: Word


Shape = Union[ShapeI, ShapeII, ShapeIII, Unclassified]


def _all_a(letters) -> bool:
    return all(x in A_LETTERS for x in letters)


def classify_shape(word: Word) -> Shape:
    """Sort a word with unit invariant vector into one of the three shapes:

    * ``L A``
    * ``M A1 P A2 g A3``
    * ``M ... P ... R ... Q ...`` with one marker from t1, t2, t3, s1, s2,
      no L and no g

    where A, A1, A2, A3 are words over a1, a2, a3.
    """
    if ivector(word) != UNIT:
        raise InvariantError(f"classify_shape needs invariant vector (1,1,1,1,1): {word}")
    xs = word.letters
    if xs[0] == "L":
        if _all_a(xs[1:]):
            return ShapeI(Word(xs[1:]))
        return Unclassified(word)
    if xs[0] != "M":
        return Unclassified(word)
    if "g" in xs:
        p, gpos = xs.index("P") if "P" in xs else -1, xs.index("g")
        if 0 < p < gpos and _all_a(xs[1:p]) and _all_a(xs[p + 1:gpos]) and _all_a(xs[gpos + 1:]):
            return ShapeII(Word(xs[1:p]), Word(xs[p + 1:gpos]), Word(xs[gpos + 1:]))
        return Unclassified(word)
    if "L" in xs or not all(xs.count(x) == 1 for x in ("P", "R", "Q")):
        return Unclassified(word)
    markers = [x for x in xs if x in MARKERS]
    if len(markers) != 1:
        return Unclassified(word)
    if not xs.index("P") < xs.index("R") < xs.index("Q"):
        return Unclassified(word)
    return ShapeIII(markers[0])


def pq_s_invariant(word: Word) -> int:
    """Number of a-letters strictly between P and Q plus the number of s1, s2."""
    xs = word.letters
    if word.zero or xs.count("P") != 1 or xs.count("Q") != 1 or "g" in xs:
        raise InvariantError(f"pq_s_invariant needs one P, one Q and no g: {word}")
    p, q = xs.index("P"), xs.index("Q")
    if p > q:
        raise InvariantError(f"pq_s_invariant needs P before Q: {word}")
    return sum(1 for x in xs[p + 1:q] if x in A_LETTERS) + word.count(*S_LETTERS)
