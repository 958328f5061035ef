"""Letters and words of the semigroup H, plus the text format shared by the CLI,
rule files and trace files.

A word is written as whitespace-separated tokens, e.g. ``"M P a1 R s1 Q a2"``.
The single token ``"0"`` denotes the zero element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

ALPHABET: tuple[str, ...] = (
    "L", "M", "P", "Q", "R", "g",
    "s1", "s2", "t1", "t2", "t3",
    "a1", "a2", "a3",
)
A_LETTERS: tuple[str, ...] = ("a1", "a2", "a3")
S_LETTERS: tuple[str, ...] = ("s1", "s2")
T_LETTERS: tuple[str, ...] = ("t1", "t2", "t3")
ZERO_TOKEN = "0"

LETTER_INDEX = {x: i for i, x in enumerate(ALPHABET)}


class WordParseError(ValueError):
    pass


def is_a(x: str) -> bool:
    return x in A_LETTERS


def is_s(x: str) -> bool:
    return x in S_LETTERS


def is_t(x: str) -> bool:
    return x in T_LETTERS


@dataclass(frozen=True, slots=True)
class Word:
    """An element of the free semigroup on ``ALPHABET``, or the zero element.

    The empty letter sequence is allowed as a building block for composing
    contexts (``Word() * w == w``); it is never produced by ``parse_word``.
    """

    letters: tuple[str, ...] = ()
    zero: bool = False

    def __post_init__(self):
        if self.zero and self.letters:
            raise ValueError("the zero word carries no letters")
        for x in self.letters:
            if x not in LETTER_INDEX:
                raise ValueError(f"not a letter: {x!r}")

    @classmethod
    def of(cls, letters: Iterable[str]) -> Word:
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __mul__(self, other: Word) -> Word:
        if self.zero or other.zero:
            return ZERO
        return Word(self.letters + other.letters)

    def count(self, *letters: str) -> int:
        return sum(self.letters.count(x) for x in letters)

    def a_subsequence(self) -> tuple[str, ...]:
        return tuple(x for x in self.letters if x in A_LETTERS)

    def sort_key(self) -> tuple:
        return (self.zero, len(self.letters), self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


ZERO = Word(zero=True)
EMPTY = Word()


def w(text: str) -> Word:
    """Shorthand for ``parse_word``; the empty string gives the empty word."""
    if not text.strip():
        return EMPTY
    return parse_word(text)


def parse_word(text: str) -> Word:
    tokens = text.split()
    if not tokens:
        raise WordParseError("empty word")
    if ZERO_TOKEN in tokens:
        if len(tokens) != 1:
            raise WordParseError(
                f"'0' must appear alone (position {tokens.index(ZERO_TOKEN)})"
            )
        return ZERO
    for pos, tok in enumerate(tokens):
        if tok not in LETTER_INDEX:
            raise WordParseError(f"unknown token {tok!r} at position {pos}")
    return Word(tuple(tokens))


def format_word(word: Word) -> str:
    if word.zero:
        return ZERO_TOKEN
    return " ".join(word.letters)


def find_factor(word: Word, factor: Word) -> list[int]:
    if factor.zero or not factor.letters:
        raise ValueError("factor must be a nonempty nonzero word")
    if word.zero:
        return []
    hay, needle = word.letters, factor.letters
    k = len(needle)
    return [p for p in range(len(hay) - k + 1) if hay[p:p + k] == needle]


def _codes(letters: Sequence[str]) -> np.ndarray:
    return np.fromiter((LETTER_INDEX[x] for x in letters), dtype=np.int8, count=len(letters))


def find_squares(word: Word) -> list[tuple[int, int]]:
    """All ``(p, k)`` with ``word[p:p+k] == word[p+k:p+2k]``, sorted by ``(k, p)``.

    One vectorized pass per half-length ``k``: position ``p`` starts a square
    iff the ``k`` comparisons ``word[i] == word[i+k]`` for ``i`` in
    ``[p, p+k)`` all hold.
    """
    if word.zero:
        raise ValueError("find_squares is undefined on zero")
    codes = _codes(word.letters)
    n = len(codes)
    found: list[tuple[int, int]] = []
    for k in range(1, n // 2 + 1):
        eq = codes[:-k] == codes[k:]
        c = np.concatenate(([0], np.cumsum(eq, dtype=np.int64)))
        # windows of length k over eq, starting at p = 0 .. n-2k
        hits = np.flatnonzero(c[k:n - k + 1] - c[: n - 2 * k + 1] == k)
        found.extend((int(p), k) for p in hits)
    return found


def is_squarefree(word: Word) -> bool:
    if word.zero:
        raise ValueError("is_squarefree is undefined on zero")
    codes = _codes(word.letters)
    n = len(codes)
    for k in range(1, n // 2 + 1):
        eq = codes[:-k] == codes[k:]
        c = np.concatenate(([0], np.cumsum(eq, dtype=np.int64)))
        if np.any(c[k:n - k + 1] - c[: n - 2 * k + 1] == k):
            return False
    return True
