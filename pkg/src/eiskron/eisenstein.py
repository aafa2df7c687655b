"""q-expansions of Katz's forms and of the holomorphic Eisenstein series E_{k+2,0,phi}.

All series are returned at their own normalization (not doubled): the n-th
coefficient of Phi_{k,r,f} is

    (1/2) sum_{d d' = n} ( d^k d'^r f(d, d') - (-d)^k (-d')^r f(-d, -d') )

and for r = 0 the constant term is (1/4) L(-k, f(m, 0) - (-1)^k f(-m, 0)).
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .arith import ParameterError, ring_zero
from .level import GL2ModN, LevelFunction, act_gl2, evaluate_complex, katz_function, p1, symplectic_hat
from .lfunc import PeriodicFunction, l_value_neg
from .qexp import QExpansion

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def divisor_series(f: LevelFunction, d_exp: int, weight, Q: int, zero=None) -> list:
    """Coefficients 0..Q of sum_{d d' = n} d^e w(d') f(d, d') - (-d)^e w(-d') f(-d, -d').

    ``weight`` maps a signed integer d' to a scalar or ring element; a zero
    weight drops the term.  The constant coefficient is left at zero.
    """
    if zero is None:
        zero = ring_zero(f.values[0])
    out = [zero] * (Q + 1)
    for d in range(1, Q + 1):
        de = d**d_exp
        sde = (-d) ** d_exp
        for dp in range(1, Q // d + 1):
            wp, wm = weight(dp), weight(-dp)
            acc = out[d * dp]
            if wp:
                v = f(d, dp)
                if v:
                    acc = acc + v * (de * wp)
            if wm:
                v = f(-d, -dp)
                if v:
                    acc = acc - v * (sde * wm)
            out[d * dp] = acc
    return out


def _check_katz_range(k: int, r: int):
    if not ((r == 0 and k >= 2) or (r >= 1 and k >= 1)):
        raise ParameterError(f"Katz series needs r = 0, k >= 2 or r, k >= 1; got k={k}, r={r}")


def katz_constant(k: int, f: LevelFunction):
    """(1/4) L(-k, m -> f(m, 0) - (-1)^k f(-m, 0))."""
    N = f.N
    sign = (-1) ** k
    h = PeriodicFunction(N, [f(m, 0) - f(-m, 0) * sign for m in range(N)])
    return l_value_neg(h, k) * QUARTER


def katz_phi(k: int, r: int, f: LevelFunction, Q: int) -> QExpansion:
    """Phi_{k,r,f} to q-precision Q."""
    _check_katz_range(k, r)
    coeffs = divisor_series(f, k, lambda dp: dp**r, Q)
    coeffs = [c * HALF for c in coeffs]
    if r == 0:
        coeffs[0] = katz_constant(k, f)
    return QExpansion(coeffs)


def eis_classical(k: int, phi: LevelFunction, g: GL2ModN, Q: int) -> QExpansion:
    """E_{k+2,0,phi} on the component g, over Q(zeta_N).

    Built from the transform P1(g phi) read as (d', d); the Katz route
    ``katz_phi(k+1, 0, P1(hat(g phi)))`` gives the same series.
    """
    if k < 1:
        raise ParameterError("E_{k+2,0,phi} needs k >= 1")
    N = phi.N
    P = p1(act_gl2(g, phi))
    sign = (-1) ** (k + 1)
    h = PeriodicFunction(N, [P(0, m) - P(0, -m) * sign for m in range(N)])
    swapped = LevelFunction.from_callable(N, lambda a, b: P(b, a))
    coeffs = divisor_series(swapped, k + 1, lambda dp: 1, Q)
    coeffs = [c * HALF for c in coeffs]
    coeffs[0] = l_value_neg(h, k + 1) * QUARTER
    return QExpansion(coeffs)


def eis_via_katz(k: int, phi: LevelFunction, g: GL2ModN, Q: int) -> QExpansion:
    return katz_phi(k + 1, 0, katz_function(phi, g), Q)


def _tail(x, K, N):
    """Euler-Maclaurin value of sum_{j >= 0} (x + N j)^-K."""
    return (x ** (1 - K) / (N * (K - 1)) + x ** (-K) / 2
            + K * N * x ** (-K - 1) / 12
            - K * (K + 1) * (K + 2) * N**3 * x ** (-K - 3) / 720)


def lattice_class_sums(N: int, K: int, tau: complex, cutoff: int = 2000,
                       tail_correction: bool = True, chunk: int = 256) -> np.ndarray:
    """S[a, b] = sum over (m, n) != 0 with m = a, n = b mod N of (m + n tau)^-K.

    The box |m|, |n| <= cutoff is summed directly.  With ``tail_correction``
    the m-tails beyond the box are added by Euler-Maclaurin along each residue
    class; the n-tail is exponentially small in cutoff * Im(tau).
    """
    if K < 3:
        raise ParameterError("lattice sum needs weight >= 3")
    if cutoff < 1:
        raise ParameterError("cutoff must be positive")
    S = np.zeros((N, N), dtype=complex)
    ms = np.arange(-cutoff, cutoff + 1)
    mres = ms % N
    for start in range(-cutoff, cutoff + 1, chunk):
        ns = np.arange(start, min(start + chunk, cutoff + 1))
        z = ms[None, :] + ns[:, None] * tau
        zero = (ns[:, None] == 0) & (ms[None, :] == 0)
        z = np.where(zero, 1.0, z)
        terms = np.where(zero, 0.0, z ** (-K))
        nres = ns % N
        for b in range(N):
            rows = terms[nres == b]
            if rows.size:
                for a in range(N):
                    S[a, b] += rows[:, mres == a].sum()
        if tail_correction:
            for a in range(N):
                m_hi = cutoff + 1 + ((a - cutoff - 1) % N)
                m_lo = -cutoff - 1 - ((-cutoff - 1 - a) % N)
                hi = _tail(m_hi + ns * tau, K, N)
                lo = (-1) ** K * _tail(-m_lo - ns * tau, K, N)
                vals = hi + lo
                for b in range(N):
                    S[a, b] += vals[nres == b].sum()
    return S


def lattice_prefactor(N: int, K: int) -> complex:
    """(-1)^K N^K (K-1)! / (2 (2 pi i)^K)."""
    return (-1) ** K * N**K * math.factorial(K - 1) / (2 * (2j * math.pi) ** K)


def eis_lattice_complex(k: int, phi: LevelFunction, g: GL2ModN, tau: complex,
                        cutoff: int = 2000, tail_correction: bool = True,
                        class_sums: np.ndarray | None = None) -> complex:
    """E_{k+2,0,phi}(tau, g) from its defining lattice sum over hat(g phi)."""
    if k < 1:
        raise ParameterError("lattice oracle needs k >= 1")
    if tau.imag <= 0:
        raise ParameterError("tau must lie in the upper half plane")
    N, K = phi.N, k + 2
    if class_sums is None:
        class_sums = lattice_class_sums(N, K, tau, cutoff, tail_correction)
    w = np.array(evaluate_complex(symplectic_hat(act_gl2(g, phi))))
    return complex(lattice_prefactor(N, K) * np.sum(w * class_sums))


def cusp_parameter(tau: complex, N: int) -> complex:
    """q = exp(2 pi i tau / N)."""
    return complex(np.exp(2j * np.pi * tau / N))
