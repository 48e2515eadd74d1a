"""Exact rationals, quadratic extensions and Hilbert symbols over Q."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import factorint


_ZERO = Fraction(0)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(x, p: int) -> int:
    x = as_fraction(x)
    if x == 0:
        raise ValueError("valuation of 0")
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def unit_part(x, p: int) -> Fraction:
    x = as_fraction(x)
    return x / Fraction(p) ** vp(x, p)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def squarefree_decomposition(m: int) -> tuple[int, int]:
    """Write m = k^2 * m0 with m0 squarefree; returns (k, m0)."""
    if m == 0:
        raise ValueError("m must be nonzero")
    sign = -1 if m < 0 else 1
    k, m0 = 1, sign
    for q, e in factorint(abs(m)).items():
        k *= q ** (e // 2)
        if e % 2:
            m0 *= q
    return k, m0


def is_rational_square(x) -> bool:
    x = as_fraction(x)
    if x < 0:
        return False
    if x == 0:
        return True
    return _isqrt_exact(x.numerator) is not None and _isqrt_exact(x.denominator) is not None


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def rational_sqrt(x) -> Fraction:
    x = as_fraction(x)
    if not is_rational_square(x):
        raise ValueError(f"{x} is not a rational square")
    return Fraction(_isqrt_exact(x.numerator), _isqrt_exact(x.denominator))


# ---------------------------------------------------------------------------
# Quadratic extension Q(sqrt m)


@dataclass(frozen=True)
class QuadExt:
    """The number a + b*sqrt(m). With m == 1 the value is rational and b is 0."""

    a: Fraction
    b: Fraction = Fraction(0)
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))
        if self.m == 1 and self.b != 0:
            object.__setattr__(self, "a", self.a + self.b)
            object.__setattr__(self, "b", Fraction(0))

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, m: int) -> "QuadExt":
        # a, b already Fractions and (m, b) consistent; skips __post_init__
        out = object.__new__(cls)
        object.__setattr__(out, "a", a)
        object.__setattr__(out, "b", b)
        object.__setattr__(out, "m", m)
        return out

    @classmethod
    def lift(cls, x, m: int) -> "QuadExt":
        if isinstance(x, QuadExt):
            if x.m != m and x.b != 0:
                raise ValueError("mixing different quadratic fields")
            return cls(x.a, x.b, m)
        return cls(as_fraction(x), Fraction(0), m)

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.m != self.m:
                if other.b == 0:
                    return QuadExt(other.a, 0, self.m)
                if self.b == 0:
                    return other  # caller swaps roles through __radd__ etc
                raise ValueError("mixing different quadratic fields")
            return other
        return QuadExt._raw(as_fraction(other), _ZERO, self.m)

    def _field(self, other: "QuadExt") -> int:
        return self.m if self.b != 0 or other.b == 0 else other.m

    def __add__(self, other):
        o = self._coerce(other)
        m = self._field(o)
        if m == 1:
            return QuadExt._raw(self.a + o.a, _ZERO, 1)
        return QuadExt(self.a + o.a, self.b + o.b, m)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt._raw(-self.a, -self.b, self.m)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        m = self._field(o)
        if not self.b and not o.b:
            return QuadExt._raw(self.a * o.a, _ZERO, m)
        return QuadExt(self.a * o.a + m * self.b * o.b, self.a * o.b + self.b * o.a, m)

    __rmul__ = __mul__

    def conj(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.m)

    def norm(self) -> Fraction:
        return self.a * self.a - self.m * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt m)")
        return QuadExt(self.a / n, -self.b / n, self.m)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return QuadExt(as_fraction(other), 0, self.m) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(1, 0, self.m)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        if self.b == 0 and o.b == 0:
            return self.a == o.a
        return self.m == o.m and self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.m if self.b else 1))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b != 0:
            raise ArithmeticError(f"{self} has a nonzero sqrt({self.m}) component")
        return self.a

    def to_float(self) -> float:
        return float(self.a) + float(self.b) * (self.m ** 0.5 if self.m > 0 else float("nan"))

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.m})"


# ---------------------------------------------------------------------------
# Places, square classes, Hilbert symbols


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: p == 0 encodes the real place."""

    p: int = 0

    def __post_init__(self):
        if self.p < 0 or self.p == 1:
            raise ValueError(f"invalid place {self.p}")

    @classmethod
    def real(cls) -> "Place":
        return cls(0)

    @property
    def is_real(self) -> bool:
        return self.p == 0

    def __str__(self):
        return "real" if self.is_real else str(self.p)

    @classmethod
    def parse(cls, text: str) -> "Place":
        text = text.strip().lower()
        if text in ("real", "inf", "infinity", "oo"):
            return cls.real()
        p = int(text)
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls(p)


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


REAL = Place.real()


class SquareClass(enum.Enum):
    SQUARE = "square"
    UNRAMIFIED_NONSQUARE = "unramified non-square"
    UNIFORMIZER = "uniformizer class"
    OTHER = "other non-square"


def square_class(x, v: Place) -> SquareClass:
    x = as_fraction(x)
    if x == 0:
        raise ValueError("square class of 0")
    if v.is_real:
        return SquareClass.SQUARE if x > 0 else SquareClass.OTHER
    p = v.p
    k = vp(x, p)
    if k % 2:
        return SquareClass.UNIFORMIZER
    u = unit_part(x, p)
    if p == 2:
        r = (u.numerator * u.denominator) % 8
        if r == 1:
            return SquareClass.SQUARE
        if r == 5:
            return SquareClass.UNRAMIFIED_NONSQUARE
        return SquareClass.OTHER
    if legendre(u.numerator * u.denominator, p) == 1:
        return SquareClass.SQUARE
    return SquareClass.UNRAMIFIED_NONSQUARE


def is_local_square(x, v: Place) -> bool:
    return square_class(x, v) is SquareClass.SQUARE


def hilbert_symbol(a, b, v: Place) -> int:
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol with a zero argument")
    if v.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = v.p
    alpha, beta = vp(a, p), vp(b, p)
    u, w = unit_part(a, p), unit_part(b, p)
    # n/d is congruent to n*d modulo 8 and modulo p for odd d
    uu = u.numerator * u.denominator
    ww = w.numerator * w.denominator
    if p == 2:
        eps = lambda z: ((z % 8) - 1) // 2 % 2
        omega = lambda z: (((z % 8) ** 2 - 1) // 8) % 2
        e = eps(uu) * eps(ww) + alpha * omega(ww) + beta * omega(uu)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
    if beta % 2:
        sign *= legendre(uu, p)
    if alpha % 2:
        sign *= legendre(ww, p)
    return sign


def relevant_primes(*xs) -> list[int]:
    """Primes dividing 2 and the numerators/denominators of the arguments."""
    primes = {2}
    for x in xs:
        x = as_fraction(x)
        for n in (x.numerator, x.denominator):
            if n not in (0, 1, -1):
                primes.update(factorint(abs(n)))
    return sorted(primes)


def hilbert_product_check(a, b) -> int:
    out = hilbert_symbol(a, b, REAL)
    for p in relevant_primes(a, b):
        out *= hilbert_symbol(a, b, Place(p))
    return out
