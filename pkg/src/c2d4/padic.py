"""Finite-precision arithmetic in Q_{p^f}(sqrt p) for odd p.

Every semistable genus-2 curve over Q_p has its roots in an extension with
ramification degree at most 2 and cyclic residue extension, so the fields
L_f = Q_{p^f}(pi), pi^2 = p, with f a power of two are enough.  Elements of
the unramified part are stored with a capped relative precision; valuations
are exact (in (1/2)Z) as long as the element is distinguishable from zero.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from sympy import Poly, symbols

from .arith import as_fraction, vp_int

INF = 1 << 60


_NONRESIDUES: dict = {}


class PrecisionError(ArithmeticError):
    """Raised when a value cannot be separated from zero at the working precision."""


class NotSquare(ArithmeticError):
    """The element has no square root in the current field (extend the residue field)."""


class RamificationError(ArithmeticError):
    """A square root would need ramification index 4."""


# ---------------------------------------------------------------------------
# unramified field data


@lru_cache(maxsize=None)
@lru_cache(maxsize=None)
def _irreducible_modulus(p: int, f: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree f over F_p."""
    if f == 1:
        return (0, 1)
    x = symbols("x")
    for tail in product(range(1, p), *[range(p)] * (f - 1)):
        coeffs = list(tail) + [1]  # low to high
        poly = Poly(list(reversed(coeffs)), x, modulus=p)
        if poly.is_irreducible:
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible polynomial of degree {f} mod {p}")


class Field:
    """Q_{p^f}(pi) with pi^2 = p at relative precision N."""

    def __init__(self, p: int, f: int, N: int):
        if p == 2:
            raise ValueError("the p-adic root machinery is for odd p only")
        self.p, self.f, self.N = p, f, N
        self.g = _irreducible_modulus(p, f)
        self.q = p**f
        self._frob_x = None

    def __repr__(self):
        return f"Field(p={self.p}, f={self.f}, N={self.N})"

    # raw vector helpers (coefficients low to high, length f)
    def _reduce(self, c: list[int], mod: int) -> list[int]:
        f, g = self.f, self.g
        for k in range(len(c) - 1, f - 1, -1):
            t = c[k]
            if t:
                base = k - f
                for i in range(f):
                    if g[i]:
                        c[base + i] -= t * g[i]
        return [x % mod for x in c[:f]]

    def _mul(self, a, b, mod: int) -> list[int]:
        f = self.f
        if f == 1:
            return [(a[0] * b[0]) % mod]
        c = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    c[i + j] += ai * bj
        return self._reduce(c, mod)

    def _pow_mod_p(self, a, e: int) -> list[int]:
        p = self.p
        out = [1] + [0] * (self.f - 1)
        base = [x % p for x in a]
        while e:
            if e & 1:
                out = self._mul(out, base, p)
            base = self._mul(base, base, p)
            e >>= 1
        return out

    def _inv_unit(self, a, prec: int) -> list[int]:
        p = self.p
        if self.f == 1:
            return [pow(a[0], -1, p**prec)]
        y = self._pow_mod_p(a, self.q - 2)
        k = 1
        while k < prec:
            k = min(2 * k, prec)
            mod = p**k
            ay = self._mul(a, y, mod)
            two_minus = [(-x) % mod for x in ay]
            two_minus[0] = (two_minus[0] + 2) % mod
            y = self._mul(y, two_minus, mod)
        return y

    def _is_residue_square(self, a) -> bool:
        r = self._pow_mod_p(a, (self.q - 1) // 2)
        return r[0] == 1 and not any(r[1:])

    def _nonresidue(self) -> list[int]:
        key = (self.p, self.f, tuple(self.g))
        z = _NONRESIDUES.get(key)
        if z is None:
            # grow a box of coordinates so that large p never forces a walk through all of F_p
            B = 2
            while z is None:
                for cand in product(range(min(B, self.p)), repeat=self.f):
                    if max(cand) == min(B, self.p) - 1 and not self._is_residue_square(list(cand)):
                        z = list(cand)
                        break
                B += 1
            _NONRESIDUES[key] = z
        return list(z)

    def _sqrt_mod_p(self, a) -> list[int]:
        """Tonelli-Shanks in F_q; a must be a nonzero square."""
        p, q, f = self.p, self.q, self.f
        a = [x % p for x in a]
        one = [1] + [0] * (f - 1)
        s, t = 0, q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = self._nonresidue()
        mm, c = s, self._pow_mod_p(z, t)
        tt = self._pow_mod_p(a, t)
        r = self._pow_mod_p(a, (t + 1) // 2)
        while tt != one:
            i, t2 = 0, tt
            while t2 != one:
                t2 = self._mul(t2, t2, p)
                i += 1
            b = c
            for _ in range(mm - i - 1):
                b = self._mul(b, b, p)
            mm = i
            c = self._mul(b, b, p)
            tt = self._mul(tt, c, p)
            r = self._mul(r, b, p)
        return r

    # element constructors
    def zero(self, absprec: int = INF) -> "Unr":
        return Unr(self, absprec, None, 0)

    def one(self) -> "Unr":
        return Unr(self, 0, [1] + [0] * (self.f - 1), self.N)

    def from_rational(self, x) -> "Unr":
        x = as_fraction(x)
        if x == 0:
            return self.zero()
        p, N = self.p, self.N
        a, b = x.numerator, x.denominator
        v = 0
        if a % p == 0:
            k = vp_int(a, p)
            a //= p**k
            v += k
        if b % p == 0:
            k = vp_int(b, p)
            b //= p**k
            v -= k
        mod = p**N
        u = (a * pow(b, -1, mod)) % mod
        return Unr(self, v, [u] + [0] * (self.f - 1), N)

    def gen(self) -> "Unr":
        """The generator x of Q_{p^f} over Q_p."""
        if self.f == 1:
            raise ValueError("trivial residue extension has no generator")
        return Unr(self, 0, [0, 1] + [0] * (self.f - 2), self.N)

    def frobenius_image_of_gen(self) -> "Unr":
        """The root of the modulus congruent to x^p (Newton lifting)."""
        if self._frob_x is None:
            g = self.g
            x = self.gen()
            y = x ** self.p
            for _ in range(self.N.bit_length() + 2):
                val = self.zero()
                der = self.zero()
                for i in range(len(g) - 1, -1, -1):
                    der = der * y + val
                    val = val * y + self.from_rational(g[i])
                if val.is_zero_at_precision():
                    break
                y = y - val / der
            self._frob_x = y
        return self._frob_x


class Unr:
    """Element p^v * (sum vec[i] x^i) of Q_{p^f}, vec known modulo p^rel."""

    __slots__ = ("F", "v", "vec", "rel")

    def __init__(self, F: Field, v: int, vec, rel: int):
        self.F, self.v, self.vec, self.rel = F, v, vec, rel

    # --- basic predicates
    @property
    def is_zero(self) -> bool:
        return self.vec is None

    def is_zero_at_precision(self) -> bool:
        return self.vec is None

    @property
    def absprec(self) -> int:
        return self.v if self.vec is None else self.v + self.rel

    def valuation(self) -> int:
        if self.vec is None:
            raise PrecisionError("valuation of an element indistinguishable from 0")
        return self.v

    # --- arithmetic
    def _normalize(self, v: int, vec, rel: int) -> "Unr":
        p = self.F.p
        if rel <= 0:
            return Unr(self.F, v, None, 0)
        mod = p**rel
        vec = [x % mod for x in vec]
        if not any(vec):
            return Unr(self.F, v + rel, None, 0)
        k = 0
        while all(x % p == 0 for x in vec):
            vec = [x // p for x in vec]
            k += 1
        return Unr(self.F, v + k, vec, rel - k)

    def __add__(self, other: "Unr") -> "Unr":
        if not isinstance(other, Unr):
            other = self.F.from_rational(other)
        if self.vec is None and other.vec is None:
            return Unr(self.F, min(self.v, other.v), None, 0)
        if self.vec is None:
            return other._truncate(self.v)
        if other.vec is None:
            return self._truncate(other.v)
        p = self.F.p
        m = min(self.v, other.v)
        A = min(self.absprec, other.absprec)
        sa, so = p ** (self.v - m), p ** (other.v - m)
        vec = [x * sa + y * so for x, y in zip(self.vec, other.vec)]
        return self._normalize(m, vec, A - m)

    __radd__ = __add__

    def _truncate(self, absprec: int) -> "Unr":
        if self.vec is None:
            return Unr(self.F, min(self.v, absprec), None, 0)
        if self.absprec <= absprec:
            return self
        return self._normalize(self.v, self.vec, absprec - self.v)

    def __neg__(self) -> "Unr":
        if self.vec is None:
            return self
        mod = self.F.p**self.rel
        return Unr(self.F, self.v, [(-x) % mod for x in self.vec], self.rel)

    def __sub__(self, other) -> "Unr":
        if not isinstance(other, Unr):
            other = self.F.from_rational(other)
        return self + (-other)

    def __rsub__(self, other) -> "Unr":
        return (-self) + other

    def __mul__(self, other) -> "Unr":
        if not isinstance(other, Unr):
            other = self.F.from_rational(other)
        if self.vec is None or other.vec is None:
            if self.vec is None and other.vec is None:
                return Unr(self.F, self.v + other.v, None, 0)
            a, z = (other, self) if self.vec is None else (self, other)
            return Unr(self.F, z.v + a.v if z.v < INF else INF, None, 0)
        rel = min(self.rel, other.rel)
        vec = self.F._mul(self.vec, other.vec, self.F.p**rel)
        return Unr(self.F, self.v + other.v, vec, rel)

    __rmul__ = __mul__

    def inverse(self) -> "Unr":
        if self.vec is None:
            raise PrecisionError("inverse of an element indistinguishable from 0")
        return Unr(self.F, -self.v, self.F._inv_unit(self.vec, self.rel), self.rel)

    def __truediv__(self, other) -> "Unr":
        if not isinstance(other, Unr):
            other = self.F.from_rational(other)
        return self * other.inverse()

    def __pow__(self, e: int) -> "Unr":
        if e < 0:
            return self.inverse() ** (-e)
        out = self.F.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, k: int) -> "Unr":
        """Multiply by p^k."""
        return Unr(self.F, self.v + k if self.vec is not None or self.v < INF else INF, self.vec, self.rel)

    # --- residue data
    def residue_of_unit(self) -> tuple[int, ...]:
        if self.vec is None:
            raise PrecisionError("residue of an element indistinguishable from 0")
        p = self.F.p
        return tuple(x % p for x in self.vec)

    def frobenius(self) -> "Unr":
        if self.vec is None or self.F.f == 1:
            return self
        y = self.F.frobenius_image_of_gen()
        acc = self.F.zero()
        for c in reversed(self.vec):
            acc = acc * y + self.F.from_rational(c)
        acc = acc._truncate(self.rel)
        return Unr(self.F, self.v + acc.v, acc.vec, acc.rel) if acc.vec is not None else acc.scale(self.v)

    def in_base(self) -> bool:
        """True if the element lies in Q_p (up to precision)."""
        return self.vec is None or not any(self.vec[1:])

    def sqrt(self) -> "Unr":
        if self.vec is None:
            raise PrecisionError("square root of an element indistinguishable from 0")
        if self.v % 2:
            raise NotSquare("odd valuation in the unramified part")
        F = self.F
        if not F._is_residue_square(self.vec):
            raise NotSquare("residue is not a square")
        r0 = F._sqrt_mod_p(self.vec)
        p = F.p
        neg = [(-x) % p for x in r0]
        if _canon_key(neg) < _canon_key(r0):
            r0 = neg
        # Newton on y -> (y + u/y)/2 with u the unit part
        u = Unr(F, 0, self.vec, self.rel)
        y = Unr(F, 0, r0, 1)
        k = 1
        half = F.from_rational(Fraction(1, 2))
        while k < self.rel:
            k = min(2 * k, self.rel)
            y = Unr(F, 0, y.vec, k)
            uk = u._truncate(k)
            y = (y + uk / y) * half
            y = y._truncate(k)
            if y.vec is None or y.v != 0:
                raise PrecisionError("square root lift degenerated")
            y = Unr(F, 0, y.vec, k)
        return Unr(F, self.v // 2, y.vec, self.rel)

    def __repr__(self):
        if self.vec is None:
            return f"O(p^{self.v})" if self.v < INF else "0"
        return f"p^{self.v}*{self.vec}+O(p^{self.absprec})"


def _canon_key(vec) -> tuple:
    return tuple(reversed(vec))


class Padic:
    """Element A + B*pi of Q_{p^f}(pi), pi^2 = p."""

    __slots__ = ("F", "A", "B")

    def __init__(self, F: Field, A: Unr, B: Unr):
        self.F, self.A, self.B = F, A, B

    @classmethod
    def of(cls, F: Field, x) -> "Padic":
        if isinstance(x, Padic):
            return x
        if isinstance(x, Unr):
            return cls(F, x, F.zero())
        return cls(F, F.from_rational(x), F.zero())

    @classmethod
    def pi(cls, F: Field) -> "Padic":
        return cls(F, F.zero(), F.one())

    def _c(self, other) -> "Padic":
        return other if isinstance(other, Padic) else Padic.of(self.F, other)

    def __add__(self, other):
        o = self._c(other)
        return Padic(self.F, self.A + o.A, self.B + o.B)

    __radd__ = __add__

    def __neg__(self):
        return Padic(self.F, -self.A, -self.B)

    def __sub__(self, other):
        o = self._c(other)
        return Padic(self.F, self.A - o.A, self.B - o.B)

    def __rsub__(self, other):
        return self._c(other) - self

    def __mul__(self, other):
        o = self._c(other)
        A = self.A * o.A + (self.B * o.B).scale(1)
        B = self.A * o.B + self.B * o.A
        return Padic(self.F, A, B)

    __rmul__ = __mul__

    def norm_to_unr(self) -> Unr:
        return self.A * self.A - (self.B * self.B).scale(1)

    def conj_pi(self) -> "Padic":
        """The inertia action pi -> -pi."""
        return Padic(self.F, self.A, -self.B)

    def frobenius(self) -> "Padic":
        return Padic(self.F, self.A.frobenius(), self.B.frobenius())

    def inverse(self) -> "Padic":
        n = self.norm_to_unr()
        ninv = n.inverse()
        return Padic(self.F, self.A * ninv, -(self.B * ninv))

    def __truediv__(self, other):
        return self * self._c(other).inverse()

    def __rtruediv__(self, other):
        return self._c(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Padic.of(self.F, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def valuation(self) -> Fraction:
        a_known = self.A.vec is not None
        b_known = self.B.vec is not None
        va = Fraction(self.A.v)
        vb = Fraction(self.B.v) + Fraction(1, 2)
        if a_known and b_known:
            return min(va, vb)
        if a_known:
            if va < vb:
                return va
            raise PrecisionError("cannot separate valuation from precision bound")
        if b_known:
            if vb < va:
                return vb
            raise PrecisionError("cannot separate valuation from precision bound")
        raise PrecisionError("valuation of an element indistinguishable from 0")

    def is_zero_at_precision(self) -> bool:
        try:
            self.valuation()
        except PrecisionError:
            return True
        return False

    def absprec(self) -> Fraction:
        return min(Fraction(self.A.absprec), Fraction(self.B.absprec) + Fraction(1, 2))

    def in_unramified(self) -> bool:
        return self.B.vec is None

    def in_base_field(self) -> bool:
        return self.in_unramified() and self.A.in_base()

    def sqrt(self) -> "Padic":
        F = self.F
        b_zero = self.B.vec is None or (
            self.A.vec is not None and Fraction(self.B.v) + Fraction(1, 2) >= self.A.absprec
        )
        if b_zero:
            A = self.A
            if A.vec is None:
                raise PrecisionError("square root of an element indistinguishable from 0")
            if A.v % 2 == 0:
                return _canonical(Padic(F, A.sqrt(), F.zero()))
            return _canonical(Padic(F, F.zero(), A.scale(-1).sqrt()))
        n = self.norm_to_unr()
        if n.vec is None:
            raise PrecisionError("norm indistinguishable from 0")
        if n.v % 2:
            raise RamificationError("square root needs ramification index 4")
        root_n = n.sqrt()
        half = F.from_rational(Fraction(1, 2))
        for cand in ((self.A + root_n) * half, (self.A - root_n) * half):
            if cand.vec is None or cand.v % 2:
                continue
            try:
                X = cand.sqrt()
            except NotSquare:
                continue
            Y = self.B * half / X
            return _canonical(Padic(F, X, Y))
        raise NotSquare("element is not a square in this field")

    def residue_key(self) -> tuple:
        v = self.valuation()
        part = self.A if Fraction(self.A.v) == v and self.A.vec is not None else self.B
        return _canon_key(part.residue_of_unit())

    def to_rational(self, absprec: int) -> Fraction:
        """A rational number congruent to this Q_p-element modulo p^absprec."""
        if not self.in_base_field():
            raise ValueError("element is not in Q_p")
        A = self.A
        if A.vec is None:
            return Fraction(0)
        p = self.F.p
        digits = absprec - A.v
        if digits <= 0:
            return Fraction(0)
        if digits > A.rel:
            raise PrecisionError("not enough precision for the requested approximation")
        u = A.vec[0] % p**digits
        return Fraction(u) * Fraction(p) ** A.v

    def __repr__(self):
        return f"({self.A!r}) + ({self.B!r})*pi"


def _canonical(x: Padic) -> Padic:
    """Of the two square roots, pick the one with the smaller residue key."""
    neg = -x
    return neg if neg.residue_key() < x.residue_key() else x


def padic_sqrt(u: Padic) -> Padic:
    return u.sqrt()


def valuation(x: Padic) -> Fraction:
    return x.valuation()
