"""Square-free words over {a1, a2, a3}."""

from __future__ import annotations

from .words import A_LETTERS, Word, find_squares

DEFAULT_CAP = 12

_SUBSTITUTION = {"a1": ("a1", "a2", "a3"), "a2": ("a1", "a3"), "a3": ("a2",)}


class SquareFreeError(RuntimeError):
    pass


class EnumerationCapExceeded(ValueError):
    pass


def gen_morphism(n: int) -> Word:
    """Length-``n`` prefix of the fixed point of a1 -> a1a2a3, a2 -> a1a3, a3 -> a2.

    The result is scanned for squares before it is returned.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    letters: list[str] = ["a1"]
    while len(letters) < n:
        grown: list[str] = []
        for x in letters:
            grown.extend(_SUBSTITUTION[x])
            if len(grown) >= n:
                break
        letters = grown
    word = Word(tuple(letters[:n]))
    squares = find_squares(word)
    if squares:
        raise SquareFreeError(f"generator produced a square at {squares[0]}")
    return word


def has_suffix_square(letters: list[str] | tuple[str, ...]) -> bool:
    """True if some square ends at the last letter."""
    n = len(letters)
    for k in range(1, n // 2 + 1):
        if letters[n - k:] == letters[n - 2 * k:n - k]:
            return True
    return False


def _check(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise EnumerationCapExceeded(f"length {n} is over the enumeration cap {cap}")


def enumerate_squarefree(n: int, cap: int = DEFAULT_CAP) -> list[Word]:
    _check(n, cap)
    out: list[Word] = []
    stack: list[str] = []

    def extend():
        if len(stack) == n:
            out.append(Word(tuple(stack)))
            return
        for x in A_LETTERS:
            stack.append(x)
            if not has_suffix_square(stack):
                extend()
            stack.pop()

    extend()
    return out


def count_squarefree(n: int, cap: int = DEFAULT_CAP) -> int:
    return len(enumerate_squarefree(n, cap))


def squarefree_upto(maxlen: int, cap: int = DEFAULT_CAP) -> list[Word]:
    return [u for n in range(1, maxlen + 1) for u in enumerate_squarefree(n, cap)]
