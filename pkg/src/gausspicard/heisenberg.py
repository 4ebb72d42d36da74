"""Heisenberg group C^2 x R, horospherical coordinates and the basic isometries.

Sign convention: the group law is

    (xi, nu) * (z, u) = (xi + z, nu + u + 2 Im(z^* xi)),

which is the convention under which the translation matrix ``N(tau, t)``
acts on the boundary as left multiplication by ``(tau, t)``.  The test suite
locks this agreement in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_arith import GaussRat, as_gauss_rat
from .form import GroupElement, Vector31

__all__ = [
    "HeisPoint",
    "HoroPoint",
    "HeisTranslationParams",
    "MapsToInfinity",
    "INFINITY",
    "heis_mul",
    "heis_inverse",
    "herm2",
    "psi",
    "translation",
    "rotation",
    "dilation",
    "inversion",
    "boundary_action",
]


Pair = tuple[GaussRat, GaussRat]


def _pair(xi: Sequence) -> Pair:
    a, b = xi
    return as_gauss_rat(a), as_gauss_rat(b)


def herm2(xi: Sequence[GaussRat], z: Sequence[GaussRat]) -> GaussRat:
    """The positive definite form ``<<xi, z>> = z^* xi`` on C^2."""
    return z[0].conj() * xi[0] + z[1].conj() * xi[1]


def norm2(xi: Sequence[GaussRat]) -> Fraction:
    return xi[0].abs2() + xi[1].abs2()


@dataclass(frozen=True)
class HeisPoint:
    xi: Pair
    nu: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "xi", _pair(self.xi))
        object.__setattr__(self, "nu", Fraction(self.nu))

    def to_json(self) -> dict:
        from .exact_arith import rat_to_json

        return {"xi": [x.to_json() for x in self.xi], "nu": rat_to_json(self.nu)}

    @classmethod
    def from_json(cls, data) -> HeisPoint:
        from .exact_arith import rat_from_json

        if not isinstance(data, dict) or set(data) != {"xi", "nu"}:
            raise ValueError('HeisPoint JSON needs exactly "xi" and "nu"')
        xi = data["xi"]
        if not isinstance(xi, list) or len(xi) != 2:
            raise ValueError("xi must be a list of two Gaussian rationals")
        return cls((GaussRat.from_json(xi[0]), GaussRat.from_json(xi[1])), rat_from_json(data["nu"]))


@dataclass(frozen=True)
class HoroPoint:
    xi: Pair
    nu: Fraction = Fraction(0)
    u: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "xi", _pair(self.xi))
        object.__setattr__(self, "nu", Fraction(self.nu))
        object.__setattr__(self, "u", Fraction(self.u))
        if self.u < 0:
            raise ValueError("horospherical height u must be >= 0")

    @property
    def on_boundary(self) -> bool:
        return self.u == 0


@dataclass(frozen=True)
class HeisTranslationParams:
    tau: Pair
    t: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "tau", _pair(self.tau))
        object.__setattr__(self, "t", Fraction(self.t))


class MapsToInfinity(ValueError):
    """The image of a boundary point is the point at infinity."""


INFINITY = "infinity"


def heis_mul(p: HeisPoint, q: HeisPoint) -> HeisPoint:
    twist = 2 * herm2(p.xi, q.xi).imag
    return HeisPoint((p.xi[0] + q.xi[0], p.xi[1] + q.xi[1]), p.nu + q.nu + twist)


def heis_inverse(p: HeisPoint) -> HeisPoint:
    return HeisPoint((-p.xi[0], -p.xi[1]), -p.nu)


def psi(p) -> Vector31:
    """Standard lift of a point in horospherical coordinates to C^{3,1}.

    Accepts a HoroPoint, a HeisPoint (taken at height 0) or ``INFINITY``.
    """
    if isinstance(p, str) and p == INFINITY:
        return Vector31([1, 0, 0, 0])
    u = p.u if isinstance(p, HoroPoint) else Fraction(0)
    first = GaussRat.from_parts((-norm2(p.xi) - u) / 2, p.nu / 2)
    return Vector31([first, p.xi[0], p.xi[1], 1])


def translation(tau, t=0) -> GroupElement:
    """Heisenberg translation ``N(tau, t)``.

    ``tau`` may be a HeisTranslationParams, or a pair with ``t`` given
    separately.  The result is integral only when ``(-|tau|^2 + i t)/2``
    lies in Z[i].
    """
    if isinstance(tau, HeisTranslationParams):
        tau, t = tau.tau, tau.t
    a, b = _pair(tau)
    t = Fraction(t)
    corner = GaussRat.from_parts(-(a.abs2() + b.abs2()) / 2, t / 2)
    return GroupElement(
        [
            [1, -a.conj(), -b.conj(), corner],
            [0, 1, 0, a],
            [0, 0, 1, b],
            [0, 0, 0, 1],
        ]
    )


def rotation(u: Sequence[Sequence]) -> GroupElement:
    """Heisenberg rotation ``M_U = diag(1, U, 1)`` for a 2x2 unitary ``U``."""
    (p, q), (r, s) = [[as_gauss_rat(x) for x in row] for row in u]
    # U^* U = I
    if not (
        p.abs2() + r.abs2() == 1
        and q.abs2() + s.abs2() == 1
        and p.conj() * q + r.conj() * s == 0
    ):
        raise ValueError("rotation block is not unitary")
    return GroupElement([[1, 0, 0, 0], [0, p, q, 0], [0, r, s, 0], [0, 0, 0, 1]])


def dilation(r) -> GroupElement:
    r = Fraction(r)
    if r <= 0:
        raise ValueError("dilation factor must be positive")
    return GroupElement.diagonal([r, 1, 1, 1 / r])


_R = GroupElement([[0, 0, 0, 1], [0, -1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]])


def inversion() -> GroupElement:
    return _R


def boundary_action(g: GroupElement, p: HeisPoint) -> HeisPoint:
    """Image of a boundary point under ``g``, read off from ``g psi(p)``."""
    v = g.apply(psi(p))
    if v[3] == 0:
        raise MapsToInfinity(f"{g!r} sends {p} to infinity")
    inv = v[3].inverse()
    w = [x * inv for x in v]
    xi = (w[1], w[2])
    if w[0].real != -norm2(xi) / 2:
        raise ValueError("image vector is not null; is the matrix J-unitary?")
    return HeisPoint(xi, 2 * w[0].imag)
