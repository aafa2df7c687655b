"""The two-variable Eisenstein measure on Z_p x (Z/N)^2, through its q-expansion moments.

For the weight parameter k the measure is known only by what it does to test
data: integrating y^r f(u, v) gives the p-stabilized Katz series
2 Phi^(p)_{k+1,r,f} = 2 (Phi_{k+1,r,f} - p^r Frob Phi_{k+1,r,f(u,pv)}).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Callable

from .arith import PadicCyc, ParameterError, invert_mod, is_prime, valuation
from .eisenstein import HALF, QUARTER, divisor_series, katz_phi
from .level import LevelFunction
from .lfunc import PeriodicFunction, l_value_neg
from .qexp import QExpansion, frob_q


def check_prime_level(p: int, N: int):
    if N < 3:
        raise ParameterError(f"level must be >= 3, got {N}")
    if p == 2 or not is_prime(p):
        raise ParameterError(f"p must be an odd prime, got {p}")
    if N % p == 0:
        raise ParameterError(f"p={p} divides N={N}")


def signed_power(y: int, r: int, p: int, M: int) -> int:
    """y^r modulo p^M; r < 0 needs y prime to p."""
    if r >= 0:
        return pow(y, r, p**M)
    return pow(invert_mod(y, p, M), -r, p**M)


def unit_filtered_series(F: LevelFunction, d_exp: int, r: int, Q: int, p: int, M: int) -> QExpansion:
    """(1/2) sum_{d d' = n, p does not divide d'} (d^e d'^r F(d, d') - (-d)^e (-d')^r F(-d, -d')).

    ``F`` must be PadicCyc-valued.  No range check on (d_exp, r): the formula
    makes sense for any exponents once p-divisible d' are dropped.
    """
    mod = p**M

    def weight(y):
        if y % p == 0:
            return 0
        return signed_power(y % mod, r, p, M)

    coeffs = divisor_series(F, d_exp, weight, Q, PadicCyc.zero(F.N, p, M))
    return QExpansion([c * HALF for c in coeffs])


def falling_factorial_coeffs(r: int) -> list[int]:
    """Integers s(r, m) with y (y-1) ... (y-r+1) = sum_m s(r, m) y^m."""
    poly = [1]
    for j in range(r):
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= j * c
        poly = nxt
    return poly


@dataclass(frozen=True)
class IntegralityRecord:
    r: int
    passed: bool
    min_valuation: int
    first_failing_q_power: int | None


@dataclass(frozen=True)
class EisensteinMeasure:
    """mu_N^{k+1} with working q-precision ``q_prec`` and p-adic precision ``p_prec``."""

    p: int
    N: int
    k: int
    q_prec: int
    p_prec: int

    def __post_init__(self):
        check_prime_level(self.p, self.N)
        if self.k <= 0:
            raise ParameterError("k must be a positive integer")
        if self.p <= self.k + 2:
            raise ParameterError(f"need p > k + 2, got p={self.p}, k={self.k}")
        if self.q_prec < 1 or self.p_prec < 1:
            raise ParameterError("precisions must be >= 1")

    def _padic(self, f: LevelFunction) -> LevelFunction:
        if f.N != self.N:
            raise ParameterError(f"function level {f.N} differs from measure level {self.N}")
        return f.embed(self.p, self.p_prec)

    def moment(self, r: int, f: LevelFunction) -> QExpansion:
        """int y^r f(u, v) d mu = 2 (Phi_{k+1,r,f} - p^r Frob Phi_{k+1,r,f(u,pv)})."""
        if r < 0:
            raise ParameterError("moments are indexed by r >= 0")
        if f.N != self.N:
            raise ParameterError(f"function level {f.N} differs from measure level {self.N}")
        p, Q, w = self.p, self.q_prec, self.k + 1
        if not f.is_padic():
            # exact route: both Katz series over Q(zeta_N), constant terms included
            stab = katz_phi(w, r, f, Q) - frob_q(katz_phi(w, r, f.scale_second(p), Q), p) * p**r
            return (stab * 2).embed(p, self.p_prec, self.N)
        F = self._padic(f)
        Fp = F.scale_second(p)
        first = QExpansion(divisor_series(F, w, lambda y: y**r, Q))
        second = QExpansion(divisor_series(Fp, w, lambda y: y**r, Q))
        series = first - frob_q(second, p) * p**r
        if r == 0:
            # Bernoulli denominators may contain p (when p - 1 divides k + 2), so
            # the two constant terms are combined before the L-value is taken
            sign = (-1) ** w
            diff = PeriodicFunction(self.N, [
                (F(m, 0) - F(-m, 0) * sign) - (Fp(m, 0) - Fp(-m, 0) * sign) for m in range(self.N)
            ])
            const = l_value_neg(diff, w) * QUARTER if any(diff.values) else diff.values[0]
            series = QExpansion((const * 2,) + series.coeffs[1:])
        return series

    def integrate(self, psi: Callable[[int], object], f: LevelFunction,
                  normalized: bool = False) -> QExpansion:
        """q-expansion of int psi(y) f(u, v) d mu (doubled unless ``normalized``)."""
        p, Q, w = self.p, self.q_prec, self.k + 1
        F = self._padic(f)
        Fp = F.scale_second(p)
        first = QExpansion(divisor_series(F, w, psi, Q))
        second = QExpansion(divisor_series(Fp, w, lambda y: psi(p * y), Q))
        series = first - frob_q(second, p)
        return series * HALF if normalized else series

    def unit_moment(self, r: int, f: LevelFunction) -> QExpansion:
        """Phi^(p)_{k+1,r,f}, i.e. half the integral of y^r f over Z_p^x x (Z/N)^2."""
        return unit_filtered_series(self._padic(f), self.k + 1, r, self.q_prec, self.p, self.p_prec)

    def integrality_check(self, r_max: int, f: LevelFunction) -> list[IntegralityRecord]:
        """For each r <= r_max, check that sum_m c(m, r) * moment(m) is p-integral,
        where binom(y, r) = sum_m c(m, r) y^m.

        Evaluated as r! binom(y, r) = sum_m s(r, m) y^m with integer s, requiring
        valuation >= v_p(r!) on every q-coefficient.
        """
        if valuation(factorial(r_max), self.p) >= self.p_prec:
            raise ParameterError(
                f"p-adic precision {self.p_prec} cannot resolve v_p({r_max}!); raise p_prec"
            )
        moments = [self.moment(m, f) for m in range(r_max + 1)]
        out = []
        for r in range(r_max + 1):
            s = falling_factorial_coeffs(r)
            acc = moments[0] * 0
            for m, c in enumerate(s):
                if c:
                    acc = acc + moments[m] * c
            shift = valuation(factorial(r), self.p)
            vals = [c.valuation() for c in acc]
            worst = min(vals) - shift
            failing = next((n for n, v in enumerate(vals) if v < shift), None)
            out.append(IntegralityRecord(r, failing is None, worst, failing))
        return out


def divisible_by_p(p: int) -> Callable[[int], int]:
    """Indicator of p Z_p on integers."""
    return lambda y: 1 if y % p == 0 else 0

