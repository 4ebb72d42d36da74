"""Langlands decomposition of elements fixing infinity.

Every element ``P`` with ``P[4,1] = 0`` factors as

    P = lam * N(tau, t) * A_r * M_U

where ``lam`` is a scalar of modulus one.  Integral stabilizer elements have
``P[1,1]`` a unit of Z[i], so ``lam`` is that unit and ``r = 1``; the scalar
is kept explicitly because this library works with U(3,1), not PU(3,1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact_arith import GaussRat, rat_from_json, rat_sqrt, rat_to_json
from .form import GroupElement
from .heisenberg import dilation, rotation, translation

__all__ = ["LanglandsParams", "NotInStabilizer", "decompose", "recompose"]


class NotInStabilizer(ValueError):
    pass


@dataclass(frozen=True)
class LanglandsParams:
    tau: tuple[GaussRat, GaussRat]
    t: Fraction
    r: Fraction
    U: tuple[tuple[GaussRat, GaussRat], tuple[GaussRat, GaussRat]]
    scalar_unit: GaussRat = field(default_factory=lambda: GaussRat(1))

    def to_json(self) -> dict:
        return {
            "tau": [x.to_json() for x in self.tau],
            "t": rat_to_json(self.t),
            "r": rat_to_json(self.r),
            "U": {"rows": [[x.to_json() for x in row] for row in self.U]},
            "scalar_unit": self.scalar_unit.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> LanglandsParams:
        rows = data["U"]["rows"]
        return cls(
            tau=tuple(GaussRat.from_json(x) for x in data["tau"]),
            t=rat_from_json(data["t"]),
            r=rat_from_json(data["r"]),
            U=tuple(tuple(GaussRat.from_json(x) for x in row) for row in rows),
            scalar_unit=GaussRat.from_json(data.get("scalar_unit", 1)),
        )


def recompose(params: LanglandsParams) -> GroupElement:
    """``lam * N(tau, t) * A_r * M_U``."""
    g = translation(params.tau, params.t) @ dilation(params.r) @ rotation(params.U)
    if params.scalar_unit != 1:
        g = g.scale(params.scalar_unit)
    return g


def decompose(p: GroupElement, *, verify: bool = True) -> LanglandsParams:
    """Read the Langlands parameters off a matrix fixing infinity.

    Raises NotInStabilizer if ``p[4,1] != 0`` or if the matrix does not have
    the triangular shape forced by J-unitarity.  Raises ValueError when
    ``|p[1,1]|`` is irrational, since the dilation factor is kept rational.
    ``verify=False`` skips the form check and the recomposition check; only
    pass it for matrices already known to be J-unitary.
    """
    if p[3, 0] != 0:
        raise NotInStabilizer("entry (4,1) is nonzero; element does not fix infinity")
    if verify and not p.is_j_unitary():
        raise NotInStabilizer("matrix does not preserve the Hermitian form")
    if p.is_integral():
        fast = _decompose_integral(p)
        if fast is not None:
            if verify and recompose(fast) != p:
                raise NotInStabilizer("matrix is not of the form lam * N * A * M")
            return fast
    a = p[0, 0]
    r = rat_sqrt(a.abs2())
    if r is None:
        raise ValueError(f"|P11|^2 = {a.abs2()} is not a rational square; dilation would be irrational")
    lam = a * GaussRat(Fraction(1) / r)
    q = p.scale(lam.inverse()) if lam != 1 else p
    # q = N A M = [[r, -tau^* U, (-|tau|^2 + i t)/2r], [0, U, tau/r], [0, 0, 1/r]]
    U = ((q[1, 1], q[1, 2]), (q[2, 1], q[2, 2]))
    tau = (q[1, 3] * r, q[2, 3] * r)
    corner = q[0, 3] * (2 * r)
    t = corner.imag
    params = LanglandsParams(tau=tau, t=t, r=r, U=U, scalar_unit=lam)
    if verify and recompose(params) != p:
        raise NotInStabilizer("matrix is not of the form lam * N * A * M")
    return params


def _decompose_integral(p: GroupElement) -> LanglandsParams | None:
    """Integer-only path for integral matrices whose (1,1) entry is a unit."""
    ar, ai = p.entry_parts(0, 0)
    if ar * ar + ai * ai != 1:
        return None
    # dividing by the unit lam = ar + ai*i is multiplying by its conjugate

    def q(i, j):
        x, y = p.entry_parts(i, j)
        return GaussRat._raw(x * ar + y * ai, y * ar - x * ai, 1)

    return LanglandsParams(
        tau=(q(1, 3), q(2, 3)),
        t=Fraction(2 * q(0, 3).imag),
        r=Fraction(1),
        U=((q(1, 1), q(1, 2)), (q(2, 1), q(2, 2))),
        scalar_unit=GaussRat._raw(ar, ai, 1),
    )
