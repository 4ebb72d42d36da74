"""The Hermitian form of signature (3,1) and 4x4 matrices over Q(i).

Coordinates follow the antidiagonal form

    J = [[0, 0, 0, 1],
         [0, 1, 0, 0],
         [0, 0, 1, 0],
         [1, 0, 0, 0]]

with ``<w, z> = z^* J w``.  Index convention: rows and columns are numbered
1..4 in docstrings and 0..3 in code; the middle block (indices 1, 2) carries
the Heisenberg coordinates ``xi_1, xi_2`` in that order.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

from .exact_arith import GaussInt, GaussRat, as_gauss_rat

__all__ = [
    "GroupElement",
    "Vector31",
    "J",
    "IDENTITY",
    "hermitian_product",
    "is_member",
    "stabilizes_infinity",
    "MatrixParseError",
]


class MatrixParseError(ValueError):
    """Malformed matrix JSON; the message carries the offending position."""


def _reduce(re: list[int], im: list[int], den: int):
    if den < 0:
        re = [-x for x in re]
        im = [-x for x in im]
        den = -den
    if den != 1:
        g = den
        for x in re:
            if g == 1:
                break
            g = gcd(g, x)
        for x in im:
            if g == 1:
                break
            g = gcd(g, x)
        if g > 1:
            re = [x // g for x in re]
            im = [x // g for x in im]
            den //= g
    return tuple(re), tuple(im), den


_J_SUPPORT = frozenset({(0, 3), (1, 1), (2, 2)})


class GroupElement:
    """A 4x4 matrix over Q(i), stored as integer numerators over one denominator.

    Instances are immutable and hashable.  Integral matrices (denominator 1)
    multiply with plain integer arithmetic only.
    """

    __slots__ = ("_re", "_im", "_den")

    def __init__(self, rows: Sequence[Sequence]) -> None:
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("GroupElement needs a 4x4 array")
        entries = [as_gauss_rat(x) for r in rows for x in r]
        den = 1
        for e in entries:
            den = den * e.den // gcd(den, e.den)
        re = [e.num.re * (den // e.den) for e in entries]
        im = [e.num.im * (den // e.den) for e in entries]
        self._re, self._im, self._den = _reduce(re, im, den)

    @classmethod
    def _raw(cls, re, im, den: int = 1) -> GroupElement:
        obj = cls.__new__(cls)
        obj._re, obj._im, obj._den = _reduce(list(re), list(im), den)
        return obj

    @classmethod
    def diagonal(cls, entries: Iterable) -> GroupElement:
        d = list(entries)
        return cls([[d[i] if i == j else 0 for j in range(4)] for i in range(4)])

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> GaussRat:
        i, j = ij
        k = 4 * i + j
        return GaussRat(GaussInt(self._re[k], self._im[k]), self._den)

    def rows(self) -> list[list[GaussRat]]:
        return [[self[i, j] for j in range(4)] for i in range(4)]

    @property
    def den(self) -> int:
        return self._den

    def is_integral(self) -> bool:
        return self._den == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self._den == other._den and self._re == other._re and self._im == other._im

    def __hash__(self) -> int:
        return hash((self._re, self._im, self._den))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(self[i, j]) for j in range(4)) for i in range(4))
        return f"GroupElement([{body}])"

    def pretty(self) -> str:
        cells = [[str(self[i, j]) for j in range(4)] for i in range(4)]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[ " + "  ".join(c.rjust(w) for c in r) + " ]" for r in cells)

    # -- algebra ------------------------------------------------------------

    def __matmul__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        ar, ai, br, bi = self._re, self._im, other._re, other._im
        # nonzero entries of each row of the right factor
        rows_b = [[(j, br[k + j], bi[k + j]) for j in range(4) if br[k + j] or bi[k + j]] for k in (0, 4, 8, 12)]
        cr = [0] * 16
        ci = [0] * 16
        for i4 in (0, 4, 8, 12):
            for k in range(4):
                xr = ar[i4 + k]
                xi = ai[i4 + k]
                if not (xr or xi):
                    continue
                for j, yr, yi in rows_b[k]:
                    cr[i4 + j] += xr * yr - xi * yi
                    ci[i4 + j] += xr * yi + xi * yr
        den = self._den * other._den
        if den == 1:
            obj = GroupElement.__new__(GroupElement)
            obj._re, obj._im, obj._den = tuple(cr), tuple(ci), 1
            return obj
        return GroupElement._raw(cr, ci, den)

    __mul__ = __matmul__

    def scale(self, c) -> GroupElement:
        c = as_gauss_rat(c)
        a, b = c.num.re, c.num.im
        re = [a * x - b * y for x, y in zip(self._re, self._im)]
        im = [a * y + b * x for x, y in zip(self._re, self._im)]
        return GroupElement._raw(re, im, self._den * c.den)

    def __neg__(self) -> GroupElement:
        return self.scale(-1)

    def __sub__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        d1, d2 = self._den, other._den
        re = [x * d2 - y * d1 for x, y in zip(self._re, other._re)]
        im = [x * d2 - y * d1 for x, y in zip(self._im, other._im)]
        return GroupElement._raw(re, im, d1 * d2)

    def star(self) -> GroupElement:
        """Conjugate transpose."""
        re = [self._re[4 * j + i] for i in range(4) for j in range(4)]
        im = [-self._im[4 * j + i] for i in range(4) for j in range(4)]
        return GroupElement._raw(re, im, self._den)

    def entry_parts(self, i: int, j: int) -> tuple[int, int]:
        """Numerator ``(re, im)`` of entry (i, j); divide by ``den`` for the value."""
        k = 4 * i + j
        return self._re[k], self._im[k]

    def is_j_unitary(self) -> bool:
        """``G^* J G == J``, evaluated in one pass over integer numerators."""
        re, im = self._re, self._im
        target = self._den * self._den
        # (G^* J G)_ij = sum_k conj(G_ki) (J G)_kj, and J G swaps rows 1 and 4
        r0, r1, r2, r3 = re[0:4], re[4:8], re[8:12], re[12:16]
        i0, i1, i2, i3 = im[0:4], im[4:8], im[8:12], im[12:16]
        for a in range(4):
            a0, a1, a2, a3 = r0[a], r1[a], r2[a], r3[a]
            b0, b1, b2, b3 = i0[a], i1[a], i2[a], i3[a]
            for c in range(a, 4):
                sr = (
                    a0 * r3[c] + b0 * i3[c] + a1 * r1[c] + b1 * i1[c]
                    + a2 * r2[c] + b2 * i2[c] + a3 * r0[c] + b3 * i0[c]
                )
                si = (
                    a0 * i3[c] - b0 * r3[c] + a1 * i1[c] - b1 * r1[c]
                    + a2 * i2[c] - b2 * r2[c] + a3 * i0[c] - b3 * r0[c]
                )
                want = target if (a, c) in _J_SUPPORT else 0
                if sr != want or si != 0:
                    return False
        return True

    def inverse(self) -> GroupElement:
        """Inverse of a J-unitary matrix, computed as ``J G^* J``.

        Raises ValueError when the matrix does not preserve the form, since the
        formula is then not an inverse at all.
        """
        if not self.is_j_unitary():
            raise ValueError("inverse via J G* J requires a J-unitary matrix")
        return J @ self.star() @ J

    def __pow__(self, n: int) -> GroupElement:
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = IDENTITY
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def apply(self, v: "Vector31") -> "Vector31":
        return Vector31(
            sum((self[i, j] * v[j] for j in range(4)), GaussRat(0)) for i in range(4)
        )

    # -- interchange --------------------------------------------------------

    def to_json(self) -> dict:
        return {"rows": [[self[i, j].to_json() for j in range(4)] for i in range(4)]}

    @classmethod
    def from_json(cls, data) -> GroupElement:
        return cls(parse_matrix(data, 4))


def parse_matrix(data, size: int) -> list[list[GaussRat]]:
    """Parse ``{"rows": [[entry, ...], ...]}`` into a square array of GaussRat."""
    if not isinstance(data, dict) or "rows" not in data:
        raise MatrixParseError('expected an object with a "rows" key')
    rows = data["rows"]
    if not isinstance(rows, list) or len(rows) != size:
        raise MatrixParseError(f"rows: expected {size} rows, got {len(rows) if isinstance(rows, list) else type(rows).__name__}")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size:
            raise MatrixParseError(f"rows[{i}]: expected {size} entries")
        parsed = []
        for j, entry in enumerate(row):
            try:
                parsed.append(GaussRat.from_json(entry))
            except (ValueError, TypeError) as exc:
                raise MatrixParseError(f"rows[{i}][{j}]: {exc}") from None
        out.append(parsed)
    return out


class Vector31(tuple):
    """A column vector of four Gaussian rationals."""

    def __new__(cls, entries: Iterable) -> Vector31:
        vals = tuple(as_gauss_rat(x) for x in entries)
        if len(vals) != 4:
            raise ValueError("Vector31 needs 4 entries")
        return super().__new__(cls, vals)

    def scale(self, c) -> Vector31:
        return Vector31(c * x for x in self)

    def __repr__(self) -> str:
        return f"Vector31({', '.join(str(x) for x in self)})"


J = GroupElement([[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]])
IDENTITY = GroupElement.diagonal([1, 1, 1, 1])


def hermitian_product(w: Vector31, z: Vector31) -> GaussRat:
    """``<w, z> = z^* J w``."""
    return z[0].conj() * w[3] + z[1].conj() * w[1] + z[2].conj() * w[2] + z[3].conj() * w[0]


def is_member(g: GroupElement) -> bool:
    """True iff ``g`` is in U(3,1; Z[i]): integral and ``g^* J g = J``."""
    return g.is_integral() and g.is_j_unitary()


def stabilizes_infinity(g: GroupElement) -> bool:
    return g[3, 0] == 0
