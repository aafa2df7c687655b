"""Exact coefficient rings.

``CycRat`` is Q(zeta_N) = Q[x]/(Phi_N(x)) with rational coefficients in the
power basis 1, x, ..., x^(phi(N)-1).  ``PadicCyc`` is the finite quotient
Z[zeta_N]/p^M, stored the same way with integer coefficients in [0, p^M).
Both are immutable and hashable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
import cmath
from math import gcd

Rational = (int, Fraction)


class ParameterError(ValueError):
    """Incompatible levels, primes or precisions, or an out-of-range argument."""


class NotPIntegralError(ArithmeticError):
    pass


class PrecisionError(ArithmeticError):
    pass


def _poly_divexact(num, den):
    """Exact quotient of integer polynomials (ascending coefficients), den monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("polynomial division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ParameterError("cyclotomic index must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse reductions of x^j modulo Phi_n for 0 <= j < 2n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(2 * n):
        rows.append(tuple((i, c) for i, c in enumerate(cur) if c))
        # multiply by x and reduce with the monic relation
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _reduce(prod, n, zero):
    table = _power_table(n)
    out = [zero] * totient(n)
    for j, c in enumerate(prod):
        if c:
            for i, t in table[j]:
                out[i] += t * c
    return out


def _mul_poly(a, b, zero):
    prod = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    return prod


def invert_mod(u: int, p: int, M: int) -> int:
    """Inverse of ``u`` modulo ``p**M``."""
    if u % p == 0:
        raise NotPIntegralError(f"{u} is a non-unit modulo {p}")
    return pow(u, -1, p**M)


def rational_mod(c, p: int, M: int) -> int:
    """Image of a p-integral rational in Z/p^M."""
    c = Fraction(c)
    if c.denominator % p == 0:
        raise NotPIntegralError(f"{c} is not p-integral for p={p}")
    mod = p**M
    return c.numerator * pow(c.denominator, -1, mod) % mod


def valuation(n: int, p: int) -> int | float:
    """p-adic valuation of an integer (``inf`` for 0)."""
    if n == 0:
        return float("inf")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class CycRat:
    """Element of Q(zeta_N)."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs):
        if N < 1:
            raise ParameterError("level must be positive")
        coeffs = [Fraction(c) for c in coeffs]
        d = totient(N)
        if len(coeffs) > d:
            coeffs = _reduce(coeffs, N, Fraction(0))
        self.N = N
        self.coeffs = tuple(coeffs) + (Fraction(0),) * (d - len(coeffs))

    @classmethod
    def zeta(cls, N: int, j: int = 1) -> CycRat:
        vec = [0] * totient(N)
        for i, t in _power_table(N)[j % N]:
            vec[i] = t
        return cls(N, vec)

    @classmethod
    def from_rational(cls, N: int, c) -> CycRat:
        return cls(N, [c])

    def _coerce(self, other):
        if isinstance(other, CycRat):
            if other.N != self.N:
                raise ParameterError(f"level mismatch: {self.N} vs {other.N}")
            return other
        if isinstance(other, Rational):
            return CycRat.from_rational(self.N, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycRat(self.N, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycRat(self.N, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycRat(self.N, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return CycRat(self.N, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = _mul_poly(self.coeffs, o.coeffs, Fraction(0))
        return CycRat(self.N, _reduce(prod, self.N, Fraction(0)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CycRat({self.N}, {[str(c) for c in self.coeffs]})"

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def sigma(self, p: int) -> CycRat:
        """The ring map zeta_N -> zeta_N^p."""
        if gcd(p, self.N) != 1:
            raise ParameterError(f"p={p} must be prime to N={self.N}")
        table = _power_table(self.N)
        out = [Fraction(0)] * totient(self.N)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, t in table[(j * p) % self.N]:
                    out[i] += t * c
        return CycRat(self.N, out)

    def to_complex(self) -> complex:
        """Image under zeta_N -> exp(2 pi i / N)."""
        z = cmath.exp(2j * cmath.pi / self.N)
        return sum(float(c) * z**j for j, c in enumerate(self.coeffs))


class PadicCyc:
    """Element of Z[zeta_N]/p^M."""

    __slots__ = ("N", "p", "M", "coeffs")

    def __init__(self, N: int, p: int, M: int, coeffs):
        if M < 0:
            raise ParameterError("precision must be non-negative")
        if p % 2 == 0 or N % p == 0:
            raise ParameterError(f"need p odd and prime to N, got p={p}, N={N}")
        mod = p**M
        coeffs = list(coeffs)
        d = totient(N)
        if len(coeffs) > d:
            coeffs = _reduce(coeffs, N, 0)
        self.N, self.p, self.M = N, p, M
        self.coeffs = tuple(c % mod for c in coeffs) + (0,) * (d - len(coeffs))

    @classmethod
    def zero(cls, N, p, M):
        return cls(N, p, M, [])

    @classmethod
    def one(cls, N, p, M):
        return cls(N, p, M, [1])

    @classmethod
    def zeta(cls, N, p, M, j=1):
        return embed_padic(CycRat.zeta(N, j), p, M)

    @property
    def modulus(self) -> int:
        return self.p**self.M

    def _coerce(self, other):
        if isinstance(other, PadicCyc):
            if (other.N, other.p) != (self.N, self.p):
                raise ParameterError(
                    f"ring mismatch: (N={self.N}, p={self.p}) vs (N={other.N}, p={other.p})"
                )
            return other
        if isinstance(other, Rational):
            return PadicCyc(self.N, self.p, self.M, [rational_mod(other, self.p, self.M)])
        if isinstance(other, CycRat):
            return embed_padic(other, self.p, self.M)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PadicCyc(self.N, self.p, min(self.M, o.M),
                        [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return PadicCyc(self.N, self.p, self.M, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PadicCyc(self.N, self.p, min(self.M, o.M),
                        [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return PadicCyc(self.N, self.p, self.M, [a * other for a in self.coeffs])
        if isinstance(other, Fraction):
            return self * rational_mod(other, self.p, self.M)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = _mul_poly(self.coeffs, o.coeffs, 0)
        return PadicCyc(self.N, self.p, min(self.M, o.M), _reduce(prod, self.N, 0))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = min(self.M, o.M)
        mod = self.p**m
        return all((a - b) % mod == 0 for a, b in zip(self.coeffs, o.coeffs))

    def __hash__(self):
        return hash((self.N, self.p, self.M, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"PadicCyc(N={self.N}, p={self.p}, M={self.M}, {list(self.coeffs)})"

    def reduce(self, M: int) -> PadicCyc:
        if M > self.M:
            raise PrecisionError(f"cannot raise precision from {self.M} to {M}")
        return PadicCyc(self.N, self.p, M, self.coeffs)

    def valuation(self) -> int:
        """Minimum coefficient valuation, capped at the precision."""
        return min(min(valuation(c, self.p), self.M) for c in self.coeffs)

    def divide_by_p(self, n: int) -> PadicCyc:
        """Exact division by p^n; the result loses n digits of precision."""
        if n == 0:
            return self
        if self.valuation() < n:
            raise PrecisionError(f"{self!r} is not divisible by {self.p}^{n}")
        pn = self.p**n
        return PadicCyc(self.N, self.p, self.M - n, [c // pn for c in self.coeffs])

    def sigma(self, p: int | None = None) -> PadicCyc:
        if p is not None and p != self.p:
            raise ParameterError("sigma on PadicCyc uses the ring's own prime")
        table = _power_table(self.N)
        out = [0] * totient(self.N)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, t in table[(j * self.p) % self.N]:
                    out[i] += t * c
        return PadicCyc(self.N, self.p, self.M, out)


def embed_padic(a, p: int, M: int, N: int | None = None) -> PadicCyc:
    """Coefficientwise image of a p-integral element of Q(zeta_N) in Z[zeta_N]/p^M."""
    if isinstance(a, PadicCyc):
        if a.p != p:
            raise ParameterError("cannot change the prime of a p-adic element")
        return a.reduce(M)
    if isinstance(a, Rational):
        if N is None:
            raise ParameterError("level required to embed a bare rational")
        a = CycRat.from_rational(N, a)
    return PadicCyc(a.N, p, M, [rational_mod(c, p, M) for c in a.coeffs])


def sigma(a, p: int):
    """Arithmetic Frobenius zeta_N -> zeta_N^p; identity on rationals."""
    if isinstance(a, Rational):
        return a
    return a.sigma(p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def ring_zero(sample):
    """Zero of the ring ``sample`` lives in."""
    if isinstance(sample, CycRat):
        return CycRat(sample.N, [])
    if isinstance(sample, PadicCyc):
        return PadicCyc(sample.N, sample.p, sample.M, [])
    return Fraction(0)

