"""Word problem for H by breadth-first enumeration of congruence classes.

Equality rules are applied in both directions.  Annihilation rules are
never used as edges: a class is zero iff one of its members contains an
annihilation left-hand side as a factor.  For the standard presentation
every class is finite because ``invariants.potential`` is conserved.

Words are encoded one character per letter while searching, and each
visited word is interned to an integer id that indexes the parent links.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .presentation import Presentation
from .trace import BACKWARD, FORWARD, DerivationStep, DerivationTrace
from .words import ALPHABET, ZERO, Word, format_word

DEFAULT_NODE_BUDGET = 10**7

_ENC = {x: chr(ord("A") + i) for i, x in enumerate(ALPHABET)}
_DEC = {c: x for x, c in _ENC.items()}


class NodeBudgetExceeded(RuntimeError):
    pass


class NoDerivation(ValueError):
    pass


class NotCanonicalizable(ValueError):
    pass


def encode(word: Word) -> str:
    return "".join(_ENC[x] for x in word.letters)


def decode(code: str) -> Word:
    return Word(tuple(_DEC[c] for c in code))


@dataclass(frozen=True)
class _Compiled:
    # first char -> [(pattern, replacement, rule index, direction)]
    edges: dict[str, list[tuple[str, str, int, str]]]
    annihilators: list[tuple[str, int]]
    paper_ids: tuple


@lru_cache(maxsize=16)
def _compile(p: Presentation) -> _Compiled:
    edges: dict[str, list] = {}
    annihilators = []
    for i, rule in enumerate(p.rules):
        lhs = encode(rule.lhs)
        if rule.is_annihilation:
            annihilators.append((lhs, i))
            continue
        rhs = encode(rule.rhs)
        edges.setdefault(lhs[0], []).append((lhs, rhs, i, FORWARD))
        edges.setdefault(rhs[0], []).append((rhs, lhs, i, BACKWARD))
    return _Compiled(edges, annihilators, tuple(r.paper_id for r in p.rules))


def _neighbours(compiled: _Compiled, s: str, rng: random.Random | None):
    out = []
    for pos, ch in enumerate(s):
        for pat, rep, idx, direction in compiled.edges.get(ch, ()):
            if s.startswith(pat, pos):
                out.append((s[:pos] + rep + s[pos + len(pat):], idx, pos, direction))
    if rng is not None:
        rng.shuffle(out)
    return out


def _annihilator_in(compiled: _Compiled, s: str) -> tuple[int, int] | None:
    for pat, idx in compiled.annihilators:
        pos = s.find(pat)
        if pos >= 0:
            return idx, pos
    return None


@dataclass
class ClassReport:
    """Result of enumerating the congruence class of ``seed``."""

    seed: Word
    exhausted: bool
    zero_witness: DerivationTrace | None
    _codes: list[str] = field(repr=False)
    _parents: list[tuple[int, int, int, str] | None] = field(repr=False)
    _paper_ids: tuple = field(repr=False)

    @property
    def is_zero(self) -> bool:
        return self.zero_witness is not None

    @property
    def size(self) -> int:
        return len(self._codes)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self._codes)}

    @cached_property
    def members(self) -> frozenset[Word]:
        return frozenset(decode(c) for c in self._codes)

    def sorted_members(self) -> list[Word]:
        return sorted(self.members, key=Word.sort_key)

    def __contains__(self, word: Word) -> bool:
        return not word.zero and encode(word) in self._index

    def l_initial(self) -> list[Word]:
        return [decode(c) for c in self._codes if c[0] == _ENC["L"]]

    def _path_steps(self, node: int) -> list[DerivationStep]:
        steps = []
        while self._parents[node] is not None:
            parent, idx, pos, direction = self._parents[node]
            steps.append(DerivationStep(self._paper_ids[idx], idx, pos, direction))
            node = parent
        steps.reverse()
        return steps

    def trace_to(self, word: Word) -> DerivationTrace:
        node = self._index.get(encode(word)) if not word.zero else None
        if node is None:
            raise NoDerivation(f"{format_word(word)} is not in the class of {format_word(self.seed)}")
        return DerivationTrace(self.seed, self._path_steps(node), word)


def class_enumerate(
    p: Presentation,
    word: Word,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    stop_on_zero: bool = False,
    shuffle_seed: int | None = None,
) -> ClassReport:
    """Enumerate every word reachable from ``word`` by equality rules.

    ``stop_on_zero`` ends the search at the first member containing an
    annihilation factor (the report is then not exhausted).  ``shuffle_seed``
    permutes the order in which neighbours are queued; the member set does
    not depend on it.
    """
    if word.zero or not word.letters:
        raise ValueError("class_enumerate needs a nonempty nonzero word")
    compiled = _compile(p)
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    seed = encode(word)
    codes = [seed]
    parents: list = [None]
    seen = {seed: 0}
    queue = deque([0])
    witness = None
    while queue:
        node = queue.popleft()
        s = codes[node]
        if witness is None:
            hit = _annihilator_in(compiled, s)
            if hit is not None:
                witness = (node, *hit)
                if stop_on_zero:
                    break
        for t, idx, pos, direction in _neighbours(compiled, s, rng):
            if t in seen:
                continue
            seen[t] = len(codes)
            codes.append(t)
            parents.append((node, idx, pos, direction))
            queue.append(seen[t])
            if len(codes) > node_budget:
                raise NodeBudgetExceeded(
                    f"class of {format_word(word)} exceeds {node_budget} words"
                )
    exhausted = not (stop_on_zero and witness is not None)
    report = ClassReport(word, exhausted, None, codes, parents, compiled.paper_ids)
    if witness is not None:
        node, idx, pos = witness
        steps = report._path_steps(node)
        steps.append(DerivationStep(compiled.paper_ids[idx], idx, pos, FORWARD))
        report.zero_witness = DerivationTrace(word, steps, ZERO)
    return report


def is_zero(p: Presentation, word: Word, **kw) -> bool:
    if word.zero:
        return True
    return class_enumerate(p, word, stop_on_zero=True, **kw).is_zero


def equivalent(p: Presentation, u: Word, v: Word, **kw) -> bool:
    if u.zero or v.zero:
        raise ValueError("equivalent() takes nonzero words; use is_zero for zero")
    report = class_enumerate(p, u, **kw)
    if v in report:
        return True
    return report.is_zero and is_zero(p, v, **kw)


def canonical_form(p: Presentation, word: Word, **kw) -> Word:
    """``0`` or the unique member of the class that starts with L."""
    if word.zero:
        return ZERO
    report = class_enumerate(p, word, **kw)
    if report.is_zero:
        return ZERO
    heads = report.l_initial()
    if not heads:
        raise NotCanonicalizable(f"{format_word(word)} is not equivalent to a word starting with L")
    if len(heads) > 1:
        listed = ", ".join(sorted(map(format_word, heads)))
        raise NotCanonicalizable(f"class of {format_word(word)} has several L-initial members: {listed}")
    return heads[0]


def derive(p: Presentation, u: Word, v: Word, **kw) -> DerivationTrace:
    """Shortest chain of rule applications from ``u`` to ``v`` (``v`` may be 0)."""
    if u.zero:
        raise NoDerivation("derivations start from a nonzero word")
    if v.zero:
        report = class_enumerate(p, u, stop_on_zero=True, **kw)
        if report.zero_witness is None:
            raise NoDerivation(f"{format_word(u)} is not zero")
        return report.zero_witness
    return class_enumerate(p, u, **kw).trace_to(v)
