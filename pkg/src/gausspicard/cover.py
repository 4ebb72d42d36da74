"""Spinal spheres and an exact covering certificate for the region Sigma.

A point ``(xi, t)`` of the Heisenberg group lies strictly inside the spinal
sphere with centre ``(c, t0)`` and Cygan radius ``r`` when

    A^2 + B^2 < r^4,   A = |xi_1 - c_1|^2 + |xi_2 - c_2|^2,
                       B = t - t0 + 2 Im(xi_1 conj(c_1) + xi_2 conj(c_2)).

``A`` is convex and ``B`` affine in the five real coordinates, so ``A^2 + B^2``
is convex and its maximum over a polytope is attained at a vertex.  The
verifier bisects polytopes until every piece has all of its vertices
strictly inside one sphere.  Everything is exact rational arithmetic.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact_arith import GaussRat, rat_sqrt, rat_to_json
from .form import GroupElement
from .generators import T2
from .heisenberg import HeisPoint, inversion, translation

__all__ = [
    "SpinalSphere",
    "Region",
    "Leaf",
    "CoverCertificate",
    "StabilizesInfinity",
    "isometric_sphere",
    "sphere_value",
    "region_max_bound",
    "verify_covering",
    "sigma_pieces",
    "base_pieces",
    "covering_spheres",
    "conjugated_inversion",
    "DELTA",
]

Vertex = tuple[Fraction, Fraction]
Polygon = tuple[Vertex, ...]

_h = Fraction(1, 2)
_0 = Fraction(0)
_1 = Fraction(1)


class StabilizesInfinity(ValueError):
    """The element fixes infinity and has no isometric sphere."""


@dataclass(frozen=True)
class SpinalSphere:
    """Spinal sphere with centre ``(xi0, t0)``; ``radius4`` is the Cygan radius to the fourth."""

    xi0: tuple[GaussRat, GaussRat]
    t0: Fraction
    radius4: Fraction
    name: str = ""

    @property
    def radius_sq(self) -> Fraction:
        """Squared Cygan radius ``2/|a41|``; exact when ``|a41|`` is rational."""
        r2 = rat_sqrt(self.radius4)
        if r2 is None:
            raise ValueError(f"squared radius sqrt({self.radius4}) is irrational")
        return r2

    @property
    def _parts(self):
        (a, b) = self.xi0
        return a.real, a.imag, b.real, b.imag

    def contains(self, p: HeisPoint) -> bool:
        return sphere_value(p, self) < self.radius4

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "center": {"xi": [x.to_json() for x in self.xi0], "t": rat_to_json(self.t0)},
            "radius4": rat_to_json(self.radius4),
        }


def isometric_sphere(g: GroupElement, name: str = "") -> SpinalSphere:
    """Spinal sphere bounding the isometric sphere of ``g``.

    The centre is ``g^-1(infinity)``.  With ``g^-1 = J g^* J`` the vector
    ``g^-1 e_1`` is ``(conj a44, conj a42, conj a43, conj a41)``, which
    projectivises to ``xi0 = (conj a42, conj a43)/conj a41`` and
    ``t0 = 2 Im(conj a44 / conj a41)``; the radius satisfies
    ``r^2 = 2/|a41|``.
    """
    a41 = g[3, 0]
    if a41 == 0:
        raise StabilizesInfinity("entry (4,1) is zero; the element fixes infinity")
    inv = a41.conj().inverse()
    xi0 = (g[3, 1].conj() * inv, g[3, 2].conj() * inv)
    t0 = 2 * (g[3, 3].conj() * inv).imag
    return SpinalSphere(xi0, t0, 4 / a41.abs2(), name)


def _ab(sphere: SpinalSphere, xi: Sequence[GaussRat], t: Fraction) -> tuple[Fraction, Fraction]:
    c1, c2 = sphere.xi0
    a = (xi[0] - c1).abs2() + (xi[1] - c2).abs2()
    b = t - sphere.t0 + 2 * (xi[0] * c1.conj() + xi[1] * c2.conj()).imag
    return a, b


def sphere_value(p: HeisPoint, sphere: SpinalSphere) -> Fraction:
    """``A^2 + B^2`` at a boundary point; strictly inside iff below ``radius4``."""
    a, b = _ab(sphere, p.xi, p.nu)
    return a * a + b * b


# -- regions ----------------------------------------------------------------


def _shoelace(poly: Polygon) -> Fraction:
    n = len(poly)
    s = sum(poly[k][0] * poly[(k + 1) % n][1] - poly[(k + 1) % n][0] * poly[k][1] for k in range(n))
    return abs(s) / 2


def _mid(p: Vertex, q: Vertex) -> Vertex:
    return ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)


def _d2(p: Vertex, q: Vertex) -> Fraction:
    return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2


def _longest_edge(poly: Polygon) -> tuple[int, Fraction]:
    n = len(poly)
    best, best_len = 0, Fraction(-1)
    for k in range(n):
        d = _d2(poly[k], poly[(k + 1) % n])
        if d > best_len:
            best, best_len = k, d
    return best, best_len


def _bisect_polygon(poly: Polygon) -> tuple[Polygon, Polygon]:
    """Split a triangle through its longest edge's midpoint, or a parallelogram
    through the midpoints of its longest edge and the opposite edge."""
    k, _ = _longest_edge(poly)
    if len(poly) == 3:
        a, b, c = poly[k], poly[(k + 1) % 3], poly[(k + 2) % 3]
        m = _mid(a, b)
        return (a, m, c), (m, b, c)
    if len(poly) == 4:
        a, b, c, d = (poly[(k + j) % 4] for j in range(4))
        m1, m2 = _mid(a, b), _mid(c, d)
        return (a, m1, m2, d), (m1, b, c, m2)
    raise ValueError("only triangles and parallelograms are supported")


@dataclass(frozen=True)
class Region:
    """Product polytope ``poly1 x poly2 x [t_lo, t_hi]`` in (xi_1, xi_2, t)."""

    poly1: Polygon
    poly2: Polygon
    t_lo: Fraction
    t_hi: Fraction
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "poly1", tuple((Fraction(x), Fraction(y)) for x, y in self.poly1))
        object.__setattr__(self, "poly2", tuple((Fraction(x), Fraction(y)) for x, y in self.poly2))
        object.__setattr__(self, "t_lo", Fraction(self.t_lo))
        object.__setattr__(self, "t_hi", Fraction(self.t_hi))
        if self.t_lo > self.t_hi:
            raise ValueError("empty t-interval")

    def vertices(self) -> Iterable[HeisPoint]:
        for x1, y1 in self.poly1:
            for x2, y2 in self.poly2:
                for t in (self.t_lo, self.t_hi):
                    yield HeisPoint((GaussRat.from_parts(x1, y1), GaussRat.from_parts(x2, y2)), t)

    def volume(self) -> Fraction:
        return _shoelace(self.poly1) * _shoelace(self.poly2) * (self.t_hi - self.t_lo)

    def bisect(self) -> tuple[Region, Region]:
        """Halve the factor with the largest weighted extent.

        Polygon extents are doubled relative to the t-extent because the
        xi-coordinates enter ``B`` with coefficient ``2|c|``.
        """
        _, e1 = _longest_edge(self.poly1)
        _, e2 = _longest_edge(self.poly2)
        et = (self.t_hi - self.t_lo) ** 2
        if et >= 4 * e1 and et >= 4 * e2:
            mid = (self.t_lo + self.t_hi) / 2
            return (
                Region(self.poly1, self.poly2, self.t_lo, mid, self.label),
                Region(self.poly1, self.poly2, mid, self.t_hi, self.label),
            )
        if e1 >= e2:
            p, q = _bisect_polygon(self.poly1)
            return (
                Region(p, self.poly2, self.t_lo, self.t_hi, self.label),
                Region(q, self.poly2, self.t_lo, self.t_hi, self.label),
            )
        p, q = _bisect_polygon(self.poly2)
        return (
            Region(self.poly1, p, self.t_lo, self.t_hi, self.label),
            Region(self.poly1, q, self.t_lo, self.t_hi, self.label),
        )

    def sort_key(self):
        return (self.poly1, self.poly2, self.t_lo, self.t_hi)

    def to_json(self) -> dict:
        enc = lambda poly: [[rat_to_json(x), rat_to_json(y)] for x, y in poly]  # noqa: E731
        return {"xi1": enc(self.poly1), "xi2": enc(self.poly2), "t": [rat_to_json(self.t_lo), rat_to_json(self.t_hi)]}


def _partials(poly: Polygon, cx: Fraction, cy: Fraction) -> list[tuple[Fraction, Fraction]]:
    # per-vertex (|xi - c|^2, 2 Im(xi conj c))
    return [((x - cx) ** 2 + (y - cy) ** 2, 2 * (y * cx - x * cy)) for x, y in poly]


def region_max_bound(reg: Region, sphere: SpinalSphere, stop_at: Fraction | None = None) -> Fraction:
    """Exact maximum of ``A^2 + B^2`` over the polytope (a vertex maximum).

    With ``stop_at`` given, returns as soon as some vertex reaches it; the
    returned value is then only a lower bound on the maximum.
    """
    c1x, c1y, c2x, c2y = sphere._parts
    p1 = _partials(reg.poly1, c1x, c1y)
    p2 = _partials(reg.poly2, c2x, c2y)
    lo, hi = reg.t_lo - sphere.t0, reg.t_hi - sphere.t0
    best = None
    for a1, b1 in p1:
        for a2, b2 in p2:
            a = a1 + a2
            b = b1 + b2
            v = a * a + max((b + lo) ** 2, (b + hi) ** 2)
            if best is None or v > best:
                best = v
                if stop_at is not None and v >= stop_at:
                    return v
    return best


# -- the sets and spheres ------------------------------------------------------

DELTA: Polygon = ((_0, _0), (_1, _0), (_0, _1))

# base pieces of the triangle with vertices 0, 1, i, listed in cyclic order
S1_PIECE: Polygon = ((_0, _1), (_0, _h), (_h, _h))
S2_PIECE: Polygon = ((_0, _0), (_h, _0), (_h, _h), (_0, _h))
S3_PIECE: Polygon = ((_0, _0), (_1, _0), (_h, _h))


def base_pieces() -> dict[str, Polygon]:
    return {"S1": S1_PIECE, "S2": S2_PIECE, "S3": S3_PIECE}


def sigma_pieces() -> list[Region]:
    """Sigma_1 .. Sigma_9: Sigma_{3(a-1)+b} has xi_1 in piece a and xi_2 in piece b."""
    pieces = [S1_PIECE, S2_PIECE, S3_PIECE]
    out = []
    for a in range(3):
        for b in range(3):
            out.append(Region(pieces[a], pieces[b], -1, 1, label=f"Sigma{3 * a + b + 1}"))
    return out


def conjugated_inversion(tau, k: int = 0) -> GroupElement:
    """``T2^k N(tau,0) R N(tau,0)^-1 T2^-k``."""
    n = translation(tau, 0)
    g = n @ inversion() @ n.inverse()
    if k:
        g = T2**k @ g @ T2 ** (-k)
    return g


def _sphere_name(family: str, k: int) -> str:
    return family if k == 0 else f"{family}[t0={2 * k:+d}]"


# (family, translation vector, vertical shifts k; the sphere centre has t0 = 2k)
_SPHERE_FAMILIES = [
    ("S1", (1, 1), (0, 1)),
    ("S2", (1, 1j), (-1, 0, 1)),
    ("S3", (1j, 1j), (0, -1)),
    ("S4", (1j, 1), (-1, 0, 1)),
]


def _gauss(z) -> GaussRat:
    if isinstance(z, complex):
        return GaussRat.from_parts(int(z.real), int(z.imag))
    return GaussRat(z)


def covering_spheres(all_shifts: bool = False) -> list[SpinalSphere]:
    """S0 plus the translated families used to cover Sigma, derived from matrices.

    ``all_shifts`` uses k in {-1, 0, 1} for every family instead of the
    shifts listed for each family.
    """
    out = [isometric_sphere(inversion(), "S0")]
    for family, tau, ks in _SPHERE_FAMILIES:
        tau = tuple(_gauss(z) for z in tau)
        for k in sorted((-1, 0, 1) if all_shifts else ks):
            out.append(isometric_sphere(conjugated_inversion(tau, k), _sphere_name(family, k)))
    return out


# -- the verifier --------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    piece: str
    box: Region
    sphere: str
    margin: Fraction  # radius4 - bound, strictly positive
    depth: int

    def to_json(self) -> dict:
        return {"box": self.box.to_json(), "sphere": self.sphere, "margin": rat_to_json(self.margin), "depth": self.depth}


@dataclass
class CoverCertificate:
    leaves: list[Leaf] = field(default_factory=list)
    uncovered: list[tuple[str, Region]] = field(default_factory=list)
    max_depth: int = 0
    depth_used: int = 0
    pieces: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.uncovered

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)

    def leaves_for(self, piece: str) -> list[Leaf]:
        return [leaf for leaf in self.leaves if leaf.piece == piece]

    def piece_json(self, piece: str) -> dict:
        leaves = self.leaves_for(piece)
        unc = [r for p, r in self.uncovered if p == piece]
        return {
            "piece": piece,
            "complete": not unc,
            "depth": max((leaf.depth for leaf in leaves), default=0),
            "max_depth": self.max_depth,
            "leaf_count": len(leaves),
            "leaves": [leaf.to_json() for leaf in leaves],
            "uncovered": [r.to_json() for r in unc],
        }

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "max_depth": self.max_depth,
            "depth": self.depth_used,
            "leaf_count": self.leaf_count,
            "pieces": [self.piece_json(p) for p in self.pieces],
        }


def _cover_piece(piece: Region, spheres: Sequence[SpinalSphere], max_depth: int):
    leaves: list[Leaf] = []
    uncovered: list[Region] = []
    stack = [(piece, 0)]
    while stack:
        box, depth = stack.pop()
        found = None
        # cheapest first: rank spheres by the value at the first vertex
        for s in _ranked(box, spheres):
            bound = region_max_bound(box, s, stop_at=s.radius4)
            if bound < s.radius4:
                found = (s, s.radius4 - bound)
                break
        if found is not None:
            leaves.append(Leaf(piece.label, box, found[0].name, found[1], depth))
        elif depth >= max_depth:
            uncovered.append(box)
        else:
            a, b = box.bisect()
            stack.append((b, depth + 1))
            stack.append((a, depth + 1))
    leaves.sort(key=lambda leaf: leaf.box.sort_key())
    uncovered.sort(key=Region.sort_key)
    return leaves, uncovered


def _ranked(box: Region, spheres: Sequence[SpinalSphere]) -> list[SpinalSphere]:
    # rank by the value at the centroid, ties by list order
    cx1 = sum(x for x, _ in box.poly1) / len(box.poly1)
    cy1 = sum(y for _, y in box.poly1) / len(box.poly1)
    cx2 = sum(x for x, _ in box.poly2) / len(box.poly2)
    cy2 = sum(y for _, y in box.poly2) / len(box.poly2)
    p = HeisPoint((GaussRat.from_parts(cx1, cy1), GaussRat.from_parts(cx2, cy2)), (box.t_lo + box.t_hi) / 2)
    scored = [(sphere_value(p, s) / s.radius4, k, s) for k, s in enumerate(spheres)]
    scored.sort(key=lambda x: (x[0], x[1]))
    return [s for _, _, s in scored]


def verify_covering(
    pieces: Sequence[Region],
    spheres: Sequence[SpinalSphere],
    max_depth: int,
    jobs: int = 1,
) -> CoverCertificate:
    """Bisect each piece until every sub-box lies strictly inside one sphere.

    Sub-boxes still uncovered at ``max_depth`` are reported in
    ``uncovered``; the certificate is complete iff that list is empty.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    cert = CoverCertificate(max_depth=max_depth, pieces=[p.label for p in pieces])
    if jobs > 1 and len(pieces) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_cover_piece, pieces, [spheres] * len(pieces), [max_depth] * len(pieces)))
    else:
        results = [_cover_piece(p, spheres, max_depth) for p in pieces]
    for piece, (leaves, uncovered) in zip(pieces, results):
        cert.leaves.extend(leaves)
        cert.uncovered.extend((piece.label, r) for r in uncovered)
    cert.depth_used = max((leaf.depth for leaf in cert.leaves), default=0)
    return cert
