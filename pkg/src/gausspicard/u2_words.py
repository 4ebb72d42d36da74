"""The finite group U(2; Z[i]) and shortest words in U1, U2.

U(2; Z[i]) has 32 elements: diag(a, b) and antidiag(a, b) for units a, b.
Words are found by breadth-first search over the Cayley graph, appending
letters on the right in the order U1, U2, U1^-1, U2^-1, which yields the
shortlex-least shortest word for every element.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import product

from .exact_arith import UNITS, GaussInt, GaussRat

__all__ = [
    "U2Element",
    "U2Word",
    "U1",
    "U2",
    "LETTERS",
    "enumerate_u2",
    "classified_u2",
    "format_u2_word",
    "u2_word",
    "evaluate_u2",
    "u2_mul",
    "as_u2",
    "NotInGroup",
]

U2Element = tuple[tuple[GaussInt, GaussInt], tuple[GaussInt, GaussInt]]
U2Word = tuple[tuple[str, int], ...]

_0, _1, _I = GaussInt(0), GaussInt(1), GaussInt(0, 1)

U1: U2Element = ((_0, _1), (_1, _0))
U2: U2Element = ((_I, _0), (_0, _1))
ID2: U2Element = ((_1, _0), (_0, _1))

# BFS tie-break order
LETTERS: tuple[tuple[str, int], ...] = (("U1", 1), ("U2", 1), ("U1", -1), ("U2", -1))


class NotInGroup(ValueError):
    pass


def u2_mul(a: U2Element, b: U2Element) -> U2Element:
    (p, q), (r, s) = a
    (w, x), (y, z) = b
    return ((p * w + q * y, p * x + q * z), (r * w + s * y, r * x + s * z))


def u2_star(a: U2Element) -> U2Element:
    (p, q), (r, s) = a
    return ((p.conj(), r.conj()), (q.conj(), s.conj()))


def as_u2(rows) -> U2Element:
    """Coerce a 2x2 array of Gaussian integers (or integral GaussRat) to U2Element."""
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, GaussRat):
                x = x.to_gauss_int()
            elif isinstance(x, int):
                x = GaussInt(x)
            elif not isinstance(x, GaussInt):
                raise TypeError(f"unsupported entry type {type(x).__name__}")
            r.append(x)
        out.append(tuple(r))
    if len(out) != 2 or any(len(r) != 2 for r in out):
        raise ValueError("expected a 2x2 matrix")
    return (out[0], out[1])


def _letter_matrix(name: str, exp: int) -> U2Element:
    base = {"U1": U1, "U2": U2}[name]
    if exp < 0:
        base = u2_star(base)
    out = ID2
    for _ in range(abs(exp)):
        out = u2_mul(out, base)
    return out


def evaluate_u2(word: U2Word) -> U2Element:
    out = ID2
    for name, exp in word:
        out = u2_mul(out, _letter_matrix(name, exp))
    return out


@lru_cache(maxsize=1)
def _cayley_bfs() -> dict[U2Element, U2Word]:
    words: dict[U2Element, U2Word] = {ID2: ()}
    queue = deque([ID2])
    gens = [(letter, _letter_matrix(*letter)) for letter in LETTERS]
    while queue:
        g = queue.popleft()
        for letter, m in gens:
            h = u2_mul(g, m)
            if h not in words:
                words[h] = words[g] + (letter,)
                queue.append(h)
    return words


def enumerate_u2() -> frozenset[U2Element]:
    """All elements of U(2; Z[i]), generated as the closure of U1 and U2."""
    return frozenset(_cayley_bfs())


def classified_u2() -> frozenset[U2Element]:
    """The diagonal/antidiagonal unit matrices, listed directly."""
    diag = {((a, _0), (_0, b)) for a, b in product(UNITS, UNITS)}
    anti = {((_0, b), (a, _0)) for a, b in product(UNITS, UNITS)}
    return frozenset(diag | anti)


def u2_word(u) -> U2Word:
    """Shortest word in U1, U2 (and inverses) evaluating to ``u``."""
    try:
        key = as_u2(u)
    except (TypeError, ValueError) as exc:
        raise NotInGroup(str(exc)) from None
    words = _cayley_bfs()
    if key not in words:
        raise NotInGroup(f"{key} is not in U(2; Z[i])")
    return words[key]


def format_u2_word(word: U2Word) -> str:
    if not word:
        return "1"
    return " ".join(n if e == 1 else f"{n}^{e}" for n, e in word)
