"""Exact arithmetic over Z[i], Q(i) and Q.

Rationals are plain :class:`fractions.Fraction` values (aliased as ``Rat``).
Gaussian integers and Gaussian rationals are small immutable classes; a
Gaussian rational is stored as ``(re + im*i) / den`` with ``den > 0`` and
``gcd(re, im, den) == 1`` so that equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Union

Rat = Fraction

__all__ = [
    "Rat",
    "GaussInt",
    "GaussRat",
    "UNITS",
    "gauss_mul",
    "norm",
    "is_unit",
    "as_gauss_rat",
    "rat_from_json",
    "rat_to_json",
    "rat_sqrt",
]


def _int_json(x: int) -> int | str:
    # Large integers are emitted as strings so JSON consumers with doubles
    # cannot silently round them.
    return x if -(2**53) < x < 2**53 else str(x)


class GaussInt:
    """An element ``re + im*i`` of Z[i]."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0) -> None:
        if not isinstance(re, int) or not isinstance(im, int):
            raise TypeError("GaussInt components must be int")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __reduce__(self):
        return (GaussInt, (self.re, self.im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussInt is immutable")

    def __repr__(self) -> str:
        return f"GaussInt({self.re}, {self.im})"

    def __str__(self) -> str:
        return _format_complex(self.re, self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussInt):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        if isinstance(other, (GaussRat, Fraction)):
            return GaussRat(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im, 1))

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __neg__(self) -> GaussInt:
        return GaussInt(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, int):
            return GaussInt(self.re + other, self.im)
        if isinstance(other, GaussInt):
            return GaussInt(self.re + other.re, self.im + other.im)
        if isinstance(other, (GaussRat, Fraction)):
            return GaussRat(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GaussInt(self.re * other, self.im * other)
        if isinstance(other, GaussInt):
            return gauss_mul(self, other)
        if isinstance(other, (GaussRat, Fraction)):
            return GaussRat(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        return GaussRat(self) / other

    def __rtruediv__(self, other):
        return as_gauss_rat(other) / GaussRat(self)

    def __pow__(self, n: int) -> GaussInt:
        if n < 0:
            raise ValueError("negative powers leave Z[i]; use GaussRat")
        out, base = GaussInt(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> GaussInt:
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1

    def to_json(self) -> list:
        return [_int_json(self.re), _int_json(self.im)]

    @classmethod
    def from_json(cls, data) -> GaussInt:
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            raise ValueError(f"expected [re, im], got {data!r}")
        return cls(_parse_int(data[0]), _parse_int(data[1]))


UNITS = (GaussInt(1), GaussInt(0, 1), GaussInt(-1), GaussInt(0, -1))


def gauss_mul(a: GaussInt, b: GaussInt) -> GaussInt:
    return GaussInt(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)


def norm(a: GaussInt) -> int:
    return a.norm()


def is_unit(a: GaussInt) -> bool:
    return a.norm() == 1


class GaussRat:
    """An element of Q(i) in canonical form ``(a + b*i) / d``."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, num: Union[int, GaussInt, Fraction, "GaussRat"] = 0, den: int = 1) -> None:
        if isinstance(num, GaussRat):
            a, b, d = num._a, num._b, num._d
        elif isinstance(num, GaussInt):
            a, b, d = num.re, num.im, 1
        elif isinstance(num, int):
            a, b, d = num, 0, 1
        elif isinstance(num, Rational):
            a, b, d = int(num.numerator), 0, int(num.denominator)
        else:
            raise TypeError(f"cannot build GaussRat from {type(num).__name__}")
        if not isinstance(den, int):
            raise TypeError("denominator must be int")
        if den == 0:
            raise ZeroDivisionError("GaussRat with zero denominator")
        d *= den
        self._set(a, b, d)

    def _set(self, a: int, b: int, d: int) -> None:
        if d == 1:
            object.__setattr__(self, "_a", a)
            object.__setattr__(self, "_b", b)
            object.__setattr__(self, "_d", 1)
            return
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_d", d)

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> GaussRat:
        obj = cls.__new__(cls)
        obj._set(a, b, d)
        return obj

    @classmethod
    def from_parts(cls, re, im=0) -> GaussRat:
        """Build ``re + im*i`` from two rationals."""
        re, im = Fraction(re), Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        return cls._raw(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def __reduce__(self):
        return (GaussRat._raw, (self._a, self._b, self._d))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @property
    def num(self) -> GaussInt:
        return GaussInt(self._a, self._b)

    @property
    def den(self) -> int:
        return self._d

    @property
    def real(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def imag(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_integral(self) -> bool:
        return self._d == 1

    def to_gauss_int(self) -> GaussInt:
        if self._d != 1:
            raise ValueError(f"{self} is not a Gaussian integer")
        return GaussInt(self._a, self._b)

    def __repr__(self) -> str:
        return f"GaussRat({_format_complex(self._a, self._b)}, {self._d})"

    def __str__(self) -> str:
        s = _format_complex(self._a, self._b)
        if self._d == 1:
            return s
        if self._a and self._b:
            s = f"({s})"
        return f"{s}/{self._d}"

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussRat):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, GaussInt, Fraction)):
            return self == GaussRat(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self) -> bool:
        return bool(self._a or self._b)

    def __neg__(self) -> GaussRat:
        return GaussRat._raw(-self._a, -self._b, self._d)

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self._d, o._d
        if d1 == d2:
            return GaussRat._raw(self._a + o._a, self._b + o._b, d1)
        return GaussRat._raw(self._a * d2 + o._a * d1, self._b * d2 + o._b * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat._raw(
            self._a * o._a - self._b * o._b,
            self._a * o._b + self._b * o._a,
            self._d * o._d,
        )

    __rmul__ = __mul__

    def inverse(self) -> GaussRat:
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        # 1/((a+bi)/d) = d(a-bi)/(a^2+b^2)
        return GaussRat._raw(self._d * self._a, -self._d * self._b, n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> GaussRat:
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = GaussRat(1)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> GaussRat:
        return GaussRat._raw(self._a, -self._b, self._d)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def to_json(self) -> dict:
        return {"num": [_int_json(self._a), _int_json(self._b)], "den": _int_json(self._d)}

    @classmethod
    def from_json(cls, data) -> GaussRat:
        """Accept ``{"num": [re, im], "den": q}``, a bare ``[re, im]`` or an integer."""
        if isinstance(data, dict):
            if set(data) != {"num", "den"}:
                raise ValueError(f"GaussRat object needs exactly 'num' and 'den', got {sorted(data)}")
            num = GaussInt.from_json(data["num"])
            den = _parse_int(data["den"])
            if den <= 0:
                raise ValueError(f"GaussRat denominator must be positive, got {den}")
            return cls(num, den)
        if isinstance(data, (list, tuple)):
            return cls(GaussInt.from_json(data))
        if isinstance(data, (int, str)) and not isinstance(data, bool):
            return cls(rat_from_json(data))
        raise ValueError(f"cannot parse GaussRat from {data!r}")


def _coerce(x) -> GaussRat | None:
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, int):
        return GaussRat._raw(x, 0, 1)
    if isinstance(x, GaussInt):
        return GaussRat._raw(x.re, x.im, 1)
    if isinstance(x, Fraction):
        return GaussRat._raw(x.numerator, 0, x.denominator)
    return None


def as_gauss_rat(x) -> GaussRat:
    o = _coerce(x)
    if o is None:
        raise TypeError(f"cannot convert {type(x).__name__} to GaussRat")
    return o


def _format_complex(a: int, b: int) -> str:
    if b == 0:
        return str(a)
    ib = "i" if abs(b) == 1 else f"{abs(b)}i"
    if a == 0:
        return ib if b > 0 else f"-{ib}"
    return f"{a}{'+' if b > 0 else '-'}{ib}"


def _parse_int(x) -> int:
    if isinstance(x, bool):
        raise ValueError("booleans are not integers here")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return int(x.strip())
    raise ValueError(f"expected an integer, got {x!r}")


def rat_to_json(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rat_from_json(data) -> Fraction:
    if isinstance(data, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(data, int):
        return Fraction(data)
    if isinstance(data, str):
        p, sep, q = data.strip().partition("/")
        den = int(q) if sep else 1
        if den <= 0:
            raise ValueError(f"rational {data!r} needs a positive denominator")
        return Fraction(int(p), den)
    raise ValueError(f"expected 'p/q' rational, got {data!r}")


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def rat_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    x = Fraction(x)
    p, q = _isqrt_exact(x.numerator), _isqrt_exact(x.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)
