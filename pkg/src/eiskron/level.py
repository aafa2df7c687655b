"""Functions on (Z/N)^2, the GL_2(Z/N) action and the finite Fourier transforms."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Callable

from .arith import (CycRat, PadicCyc, ParameterError, Rational, _power_table, embed_padic, ring_zero,
                    sigma, totient)


class GL2ModN:
    """Invertible 2x2 matrix over Z/N acting on column vectors."""

    __slots__ = ("a", "b", "c", "d", "N")

    def __init__(self, a: int, b: int, c: int, d: int, N: int):
        if N < 1:
            raise ParameterError("level must be positive")
        self.a, self.b, self.c, self.d, self.N = a % N, b % N, c % N, d % N, N
        if gcd(self.det(), N) != 1:
            raise ParameterError(f"determinant {self.det()} is not invertible mod {N}")

    @classmethod
    def identity(cls, N: int) -> GL2ModN:
        return cls(1, 0, 0, 1, N)

    @classmethod
    def parse(cls, text: str, N: int) -> GL2ModN:
        """Parse ``"a,b;c,d"``."""
        try:
            rows = [r.split(",") for r in text.split(";")]
            (a, b), (c, d) = [[int(x) for x in r] for r in rows]
        except ValueError as exc:
            raise ParameterError(f"bad matrix {text!r}; expected 'a,b;c,d'") from exc
        return cls(a, b, c, d, N)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.N

    def inverse(self) -> GL2ModN:
        e = pow(self.det(), -1, self.N)
        return GL2ModN(e * self.d, -e * self.b, -e * self.c, e * self.a, self.N)

    def __mul__(self, other: GL2ModN) -> GL2ModN:
        if other.N != self.N:
            raise ParameterError("level mismatch")
        return GL2ModN(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.N,
        )

    def apply(self, x: tuple[int, int]) -> tuple[int, int]:
        u, v = x
        return ((self.a * u + self.b * v) % self.N, (self.c * u + self.d * v) % self.N)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        return isinstance(other, GL2ModN) and (self.entries(), self.N) == (other.entries(), other.N)

    def __hash__(self):
        return hash((self.entries(), self.N))

    def __repr__(self):
        return f"GL2ModN([[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.N})"

    def __str__(self):
        return f"{self.a},{self.b};{self.c},{self.d}"


def sample_gl2(N: int, count: int, seed: int = 0) -> list[GL2ModN]:
    """Deterministic list of distinct matrices: id, S, T, then random ones."""
    out = [GL2ModN.identity(N), GL2ModN(0, -1, 1, 0, N), GL2ModN(1, 1, 0, 1, N)]
    rng = random.Random(seed)
    while len(out) < count:
        a, b, c, d = (rng.randrange(N) for _ in range(4))
        if gcd(a * d - b * c, N) == 1:
            g = GL2ModN(a, b, c, d, N)
            if g not in out:
                out.append(g)
    return out[:count]


class LevelFunction:
    """A total table of values indexed by (Z/N)^2.

    Values are rationals (``Fraction``), ``CycRat`` or ``PadicCyc``.
    """

    __slots__ = ("N", "values")

    def __init__(self, N: int, values):
        if N < 1:
            raise ParameterError("level must be positive")
        values = tuple(Fraction(v) if isinstance(v, Rational) else v for v in values)
        if len(values) != N * N:
            raise ParameterError(f"expected {N * N} values, got {len(values)}")
        self.N = N
        self.values = values

    @classmethod
    def from_callable(cls, N: int, fn: Callable[[int, int], object]) -> LevelFunction:
        return cls(N, [fn(a, b) for a in range(N) for b in range(N)])

    @classmethod
    def zero(cls, N: int) -> LevelFunction:
        return cls(N, [0] * (N * N))

    @classmethod
    def delta(cls, N: int, a: int, b: int) -> LevelFunction:
        a, b = a % N, b % N
        return cls.from_callable(N, lambda u, v: int((u, v) == (a, b)))

    @classmethod
    def from_dict(cls, N: int, table: dict) -> LevelFunction:
        return cls.from_callable(N, lambda u, v: table.get((u, v), 0))

    @classmethod
    def random(cls, N: int, rng: random.Random, lo: int = -5, hi: int = 5) -> LevelFunction:
        return cls(N, [rng.randint(lo, hi) for _ in range(N * N)])

    def __call__(self, a: int, b: int):
        return self.values[(a % self.N) * self.N + (b % self.N)]

    def items(self):
        for a in range(self.N):
            for b in range(self.N):
                yield (a, b), self.values[a * self.N + b]

    def map(self, fn) -> LevelFunction:
        return LevelFunction(self.N, [fn(v) for v in self.values])

    def _check(self, other):
        if not isinstance(other, LevelFunction):
            return NotImplemented
        if other.N != self.N:
            raise ParameterError(f"level mismatch: {self.N} vs {other.N}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return LevelFunction(self.N, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        other = self._check(other)
        return LevelFunction(self.N, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return self.map(lambda v: -v)

    def __mul__(self, scalar):
        return self.map(lambda v: v * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LevelFunction) or other.N != self.N:
            return NotImplemented
        return all(a == b for a, b in zip(self.values, other.values))

    def __hash__(self):
        return hash((self.N, self.values))

    def __repr__(self):
        nz = {k: str(v) for k, v in self.items() if v}
        return f"LevelFunction(N={self.N}, {nz})"

    def is_padic(self) -> bool:
        return any(isinstance(v, PadicCyc) for v in self.values)

    def is_rational(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values)

    def to_cyc(self) -> LevelFunction:
        """Same table with every value viewed in Q(zeta_N)."""
        return self.map(lambda v: CycRat.from_rational(self.N, v) if isinstance(v, Fraction) else v)

    def embed(self, p: int, M: int) -> LevelFunction:
        return self.map(lambda v: embed_padic(v, p, M, self.N))

    def scale_second(self, s: int) -> LevelFunction:
        """(u, v) -> f(u, s v)."""
        return LevelFunction.from_callable(self.N, lambda u, v: self(u, s * v))

    def sigma(self, p: int) -> LevelFunction:
        return self.map(lambda v: sigma(v, p))


def transpose(phi: LevelFunction) -> LevelFunction:
    return LevelFunction.from_callable(phi.N, lambda m, n: phi(n, m))


def act_gl2(g: GL2ModN, phi: LevelFunction) -> LevelFunction:
    """(g phi)(x) = phi(g^-1 x)."""
    if g.N != phi.N:
        raise ParameterError(f"matrix level {g.N} differs from function level {phi.N}")
    ginv = g.inverse()
    return LevelFunction.from_callable(phi.N, lambda a, b: phi(*ginv.apply((a, b))))


def _char_sum(N, terms):
    """Sum of value * zeta_N^exponent over (value, exponent) pairs, in Q(zeta_N)."""
    # collect by exponent first, so each zeta power is multiplied in once
    by_exp = {}
    for v, e in terms:
        if v:
            e %= N
            by_exp[e] = by_exp[e] + v if e in by_exp else v
    table = _power_table(N)
    vec = [Fraction(0)] * totient(N)
    for e, v in by_exp.items():
        if isinstance(v, Rational):
            for i, t in table[e]:
                vec[i] += t * v
        elif isinstance(v, CycRat):
            # v zeta^e = sum_j v_j x^(j+e), and j + e < 2N is in the table
            for j, c in enumerate(v.coeffs):
                if c:
                    for i, t in table[j + e]:
                        vec[i] += t * c
        else:
            raise ParameterError("Fourier transforms need rational or cyclotomic values")
    return CycRat(N, vec)


def p1(phi: LevelFunction) -> LevelFunction:
    """P1 phi(m, n) = sum_v phi(v, n) zeta_N^(m v)."""
    N = phi.N
    return LevelFunction.from_callable(
        N, lambda m, n: _char_sum(N, ((phi(v, n), m * v) for v in range(N)))
    )


def p2(phi: LevelFunction) -> LevelFunction:
    """P2 phi(m, n) = sum_v phi(m, v) zeta_N^(n v)."""
    N = phi.N
    return LevelFunction.from_callable(
        N, lambda m, n: _char_sum(N, ((phi(m, v), n * v) for v in range(N)))
    )


def symplectic_hat(phi: LevelFunction) -> LevelFunction:
    """(1/N) sum_{u,v} phi(u, v) zeta_N^(u n - m v)."""
    N = phi.N
    inv = Fraction(1, N)
    return LevelFunction.from_callable(
        N,
        lambda m, n: _char_sum(
            N, ((phi(u, v), u * n - m * v) for u in range(N) for v in range(N))
        ) * inv,
    )


def katz_function(phi: LevelFunction, g: GL2ModN) -> LevelFunction:
    """P1 of the symplectic transform of g phi: the function feeding Katz's series."""
    return p1(symplectic_hat(act_gl2(g, phi)))


def evaluate_complex(phi: LevelFunction) -> list[list[complex]]:
    """N x N table of complex values under zeta_N -> exp(2 pi i / N)."""
    def conv(v):
        if isinstance(v, CycRat):
            return v.to_complex()
        return complex(v)

    return [[conv(phi(a, b)) for b in range(phi.N)] for a in range(phi.N)]


def ring_zero_of(phi: LevelFunction):
    return ring_zero(phi.values[0])
