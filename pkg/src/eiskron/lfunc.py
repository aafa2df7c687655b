"""Bernoulli polynomials, L-values of periodic functions and the horospherical map.

The L-series of a function phi on (Z/N)^2 is read along the second coordinate,
L(phi, s) = sum_{m >= 1} phi(0, m) m^-s.  With this reading the Bernoulli-sum and
L-value forms of the horospherical map coincide for every phi.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .arith import CycRat, ParameterError, ring_zero
from .level import GL2ModN, LevelFunction, act_gl2, p1, p2


@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """B_0, ..., B_n with B_1 = -1/2."""
    out = [Fraction(1)]
    for m in range(1, n + 1):
        out.append(-sum(comb(m + 1, j) * out[j] for j in range(m)) / (m + 1))
    return tuple(out)


class BernoulliPoly:
    """B_k(x) with exact coefficients, ascending powers of x."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs):
        self.degree = degree
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"BernoulliPoly({self.degree}, {[str(c) for c in self.coeffs]})"


@lru_cache(maxsize=None)
def bernoulli_poly(k: int) -> BernoulliPoly:
    if k < 0:
        raise ParameterError("Bernoulli polynomial degree must be >= 0")
    B = bernoulli_numbers(k)
    return BernoulliPoly(k, [comb(k, i) * B[k - i] for i in range(k + 1)])


class PeriodicFunction:
    """A function on Z/N given by its table of values."""

    __slots__ = ("N", "values")

    def __init__(self, N: int, values):
        values = tuple(Fraction(v) if isinstance(v, int) else v for v in values)
        if len(values) != N:
            raise ParameterError(f"expected {N} values, got {len(values)}")
        self.N = N
        self.values = values

    def __call__(self, m: int):
        return self.values[m % self.N]

    def __repr__(self):
        return f"PeriodicFunction({self.N}, {[str(v) for v in self.values]})"


def l_series_function(phi: LevelFunction) -> PeriodicFunction:
    """The periodic function m -> phi(0, m) whose Dirichlet series is L(phi, s)."""
    return PeriodicFunction(phi.N, [phi(0, m) for m in range(phi.N)])


def l_value_neg(f: PeriodicFunction, k: int):
    """L(f, -k) = -(N^k/(k+1)) sum_{a=1}^{N} f(a) B_{k+1}(a/N).

    The residues run over 1..N (Hurwitz parameters in (0, 1]); for k >= 1 this is
    the same as using 0..N-1.
    """
    if k < 0:
        raise ParameterError("only non-positive integers are supported")
    N = f.N
    B = bernoulli_poly(k + 1)
    acc = ring_zero(f.values[0])
    for a in range(1, N + 1):
        v = f(a)
        if v:
            acc = acc + v * B(Fraction(a, N))
    return acc * Fraction(-(N**k), k + 1)


def _as_complex(v) -> complex:
    if isinstance(v, CycRat):
        return v.to_complex()
    return complex(v)


def l_value_complex(f: PeriodicFunction, k: int, bound: int = 10**6) -> complex:
    """sum_{m >= 1} f(m)/m^k by direct summation to ``bound`` plus an
    Euler-Maclaurin tail along each residue class.

    The neglected tail remainder is below N^5 k^5 bound^(-k-5), far under any
    tolerance used here.
    """
    if k < 2:
        raise ParameterError("L-series is not absolutely convergent for k < 2")
    N = f.N
    vals = np.array([_as_complex(f(a)) for a in range(N)])
    m = np.arange(1, bound + 1, dtype=np.float64)
    head = np.sum(vals[np.arange(1, bound + 1) % N] / m**k)
    tail = 0j
    for a in range(N):
        m0 = bound + 1 + ((a - bound - 1) % N)
        x = float(m0)
        s = (x ** (1 - k) / (N * (k - 1))
             + x ** (-k) / 2
             + k * N * x ** (-k - 1) / 12
             - k * (k + 1) * (k + 2) * N**3 * x ** (-k - 3) / 720)
        tail += vals[a] * s
    return complex(head + tail)


def functional_equation_factor(N: int, k: int) -> complex:
    """(-1)^k 2 N^k (k-1)! / (2 pi i)^k."""
    return (-1) ** k * 2 * N**k * math.factorial(k - 1) / (2j * math.pi) ** k


def functional_equation_sides(phi: LevelFunction, k: int, bound: int = 10**6) -> tuple[complex, complex]:
    """(L(P2 phi, 1-k), factor * L(phi, k)), the first exactly then embedded in C."""
    lhs = l_value_neg(l_series_function(p2(phi)), k - 1)
    rhs = functional_equation_factor(phi.N, k) * l_value_complex(l_series_function(phi), k, bound)
    return _as_complex(lhs), rhs


def functional_equation_two_sided(phi: LevelFunction, k: int, bound: int = 10**6) -> tuple[complex, complex]:
    """(L(P2 phi, 1-k), N^k (k-1)!/(2 pi i)^k ((-1)^k L(h, k) + L(h(-.), k))) with h = phi(0, .).

    This form holds for every phi; it reduces to ``functional_equation_sides``
    exactly when h(-m) = (-1)^k h(m).
    """
    N = phi.N
    h = l_series_function(phi)
    h_neg = PeriodicFunction(N, [h(-m) for m in range(N)])
    lhs = l_value_neg(l_series_function(p2(phi)), k - 1)
    c = N**k * math.factorial(k - 1) / (2j * math.pi) ** k
    rhs = c * ((-1) ** k * l_value_complex(h, k, bound) + l_value_complex(h_neg, k, bound))
    return _as_complex(lhs), rhs


class HorosphericalMismatch(AssertionError):
    """The two expressions of the horospherical map disagree."""


def horospherical_bernoulli(phi: LevelFunction, k: int, g: GL2ModN) -> Fraction:
    """(N^k/(k!(k+2))) sum_t phi(g^-1 t) B_{k+2}(t_2/N), t_2/N taken in [0, 1)."""
    N = phi.N
    ginv = g.inverse()
    B = bernoulli_poly(k + 2)
    acc = Fraction(0)
    for t1 in range(N):
        for t2 in range(N):
            v = phi(*ginv.apply((t1, t2)))
            if v:
                acc += v * B(Fraction(t2, N))
    return acc * Fraction(N**k, factorial(k) * (k + 2))


def horospherical_lvalue(phi: LevelFunction, k: int, g: GL2ModN):
    """-(1/(N k!)) L(P1(g phi), -k-1), an element of Q(zeta_N)."""
    N = phi.N
    L = l_value_neg(l_series_function(p1(act_gl2(g, phi))), k + 1)
    return L * Fraction(-1, N * factorial(k))


def horospherical(phi: LevelFunction, k: int, g: GL2ModN) -> Fraction:
    """rho^k(phi)(g), computed by both expressions which must agree exactly."""
    if k < 0:
        raise ParameterError("k must be >= 0")
    if not phi.is_rational():
        raise ParameterError("the horospherical map is defined on rational-valued functions")
    first = horospherical_bernoulli(phi, k, g)
    second = horospherical_lvalue(phi, k, g)
    if not (isinstance(second, CycRat) and second.is_rational() and second.rational() == first):
        raise HorosphericalMismatch(f"Bernoulli form {first} != L-value form {second!r}")
    return first


def residue_de_rham(phi: LevelFunction, k: int, g: GL2ModN) -> Fraction:
    """-(1/N^(k-1)) rho^k(phi)(g)."""
    return -Fraction(phi.N) ** (1 - k) * horospherical(phi, k, g)


def to_complex(v) -> complex:
    return _as_complex(v)

