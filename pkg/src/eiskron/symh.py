"""Sections of Sym^k H in the unit-root basis, the connection, Frobenius and the
explicit solution alpha of nabla(alpha) = (1 - Phi) Eis_dR.

A section is the tuple (c_0, ..., c_k) of q-expansions, c_n being the
coefficient of w^n u^(k-n) (w, u the duals of the canonical differential and
the unit-root vector).  One-forms carry the same tuple, tensored with the
Kodaira-Spencer form dual to q d/dq.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .arith import PadicCyc, ParameterError
from .eisenstein import eis_classical
from .level import GL2ModN, LevelFunction
from .measure import check_prime_level
from .padic_eis import eisenstein_kronecker
from .qexp import QExpansion, phi_star, theta


@dataclass(frozen=True)
class _SymTuple:
    k: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.k + 1:
            raise ParameterError(f"expected {self.k + 1} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    def _like(self, coeffs):
        return type(self)(self.k, tuple(coeffs))

    def __add__(self, other):
        return self._like(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return self._like(a - b for a, b in zip(self.coeffs, other.coeffs))

    def scale(self, c):
        return self._like(a * c for a in self.coeffs)

    def embed(self, p: int, M: int, N: int | None = None):
        return self._like(c.embed(p, M, N) for c in self.coeffs)

    def is_padic(self) -> bool:
        return isinstance(self.coeffs[0][0], PadicCyc)

    def replace(self, n: int, series: QExpansion):
        coeffs = list(self.coeffs)
        coeffs[n] = series
        return self._like(coeffs)


class SymSection(_SymTuple):
    pass


@dataclass(frozen=True)
class SymOneForm(_SymTuple):
    # ratio between this coordinate choice and 2/(N^(k+1) k!) E dq/q ^ dz_1 ^ ... ^ dz_k
    normalization: Fraction | None = field(default=None, compare=False)

    def _like(self, coeffs):
        return SymOneForm(self.k, tuple(coeffs), self.normalization)


def zero_section(k: int, sample: QExpansion) -> SymSection:
    z = sample * 0
    return SymSection(k, (z,) * (k + 1))


def nabla(s: SymSection) -> SymOneForm:
    """Slot n of the result: (k - n + 1) c_{n-1} + theta(c_n)."""
    k = s.k
    out = []
    for n, c in enumerate(s.coeffs):
        t = theta(c)
        if n > 0:
            t = t + s.coeffs[n - 1] * (k - n + 1)
        out.append(t)
    return SymOneForm(k, tuple(out))


def _divide_p_power(c, p: int, n: int):
    if isinstance(c, PadicCyc):
        return c.divide_by_p(n)
    return c * Fraction(1, p**n)


def frobenius_oneform(w: SymOneForm, p: int) -> SymOneForm:
    """Slot n of the result: p^-n phi*(c_n).

    Over Z[zeta_N]/p^M the division costs n digits of precision and raises
    ``PrecisionError`` when phi*(c_n) is not divisible by p^n.
    """
    out = []
    for n, c in enumerate(w.coeffs):
        fc = phi_star(c, p)
        out.append(fc.map(lambda x: _divide_p_power(x, p, n)) if n else fc)
    return w._like(out)


def eis_dr_oneform(k: int, phi: LevelFunction, g: GL2ModN, q_prec: int) -> SymOneForm:
    """(1/k!) E_{k+2,0,phi} in the u^k slot, exact over Q(zeta_N).

    Kept exact because the constant term of E can have p in its denominator
    (when p - 1 divides k + 2); (1 - Phi) of the form is always p-integral.
    """
    E = eis_classical(k, phi, g, q_prec) * Fraction(1, factorial(k))
    zero = E * 0
    return SymOneForm(k, (E,) + (zero,) * k, Fraction(2, phi.N ** (k + 1)))


def alpha_eis(k: int, phi: LevelFunction, g: GL2ModN, p: int, q_prec: int, p_prec: int) -> SymSection:
    """sum_n ((-1)^n/(k-n)!) E^(p)_{k+1-n,-1-n,phi} w^n u^(k-n)."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    check_prime_level(p, phi.N)
    if p <= k + 2:
        raise ParameterError(f"need p > k + 2, got p={p}, k={k}")
    coeffs = []
    for n in range(k + 1):
        E = eisenstein_kronecker(k - n, -1 - n, phi, g, p, q_prec, p_prec)
        coeffs.append(E * Fraction((-1) ** n, factorial(k - n)))
    return SymSection(k, tuple(coeffs))


@dataclass(frozen=True)
class Residual:
    slot: int
    q_power: int
    valuation: int


@dataclass(frozen=True)
class SyntomicReport:
    passed: bool
    residuals: tuple[Residual, ...]
    p_prec: int | None
    q_prec: int

    @property
    def first(self) -> Residual | None:
        return self.residuals[0] if self.residuals else None


def _valuation(c) -> int | None:
    return c.valuation() if isinstance(c, PadicCyc) else None


def verify_syntomic_pair(alpha: SymSection, xi: SymOneForm, p: int) -> SyntomicReport:
    """Residuals of nabla(alpha) - (1 - Phi) xi, slot by slot and power by power."""
    if alpha.k != xi.k:
        raise ParameterError("alpha and xi have different symmetric powers")
    lhs = nabla(alpha)
    rhs = xi - frobenius_oneform(xi, p)
    if lhs.is_padic() and not rhs.is_padic():
        M = lhs.coeffs[0][0].M
        rhs = rhs.embed(p, M, lhs.coeffs[0][0].N)
    elif rhs.is_padic() and not lhs.is_padic():
        M = rhs.coeffs[0][0].M
        lhs = lhs.embed(p, M, rhs.coeffs[0][0].N)
    residuals = []
    q_prec = min(min(c.q_prec for c in lhs.coeffs), min(c.q_prec for c in rhs.coeffs))
    for n, (a, b) in enumerate(zip(lhs.coeffs, rhs.coeffs)):
        diff = a - b
        for i in range(q_prec + 1):
            if diff[i]:
                residuals.append(Residual(n, i, _valuation(diff[i])))
    precs = [c[0].M for c in lhs.coeffs + rhs.coeffs if isinstance(c[0], PadicCyc)]
    return SyntomicReport(not residuals, tuple(residuals), min(precs) if precs else None, q_prec)


@dataclass(frozen=True)
class KernelProbeReport:
    horizontal: bool
    shape_ok: bool
    passed: bool
    steps: tuple[str, ...]


def _is_constant(c: QExpansion) -> bool:
    return not any(c.coeffs[1:])


def horizontal_kernel_probe(k: int, candidate: SymSection) -> KernelProbeReport:
    """Check that a horizontal section has c_0 = ... = c_{k-1} = 0 and c_k constant.

    The steps follow the recursion theta(c_0) = 0, theta(c_n) = -(k-n+1) c_{n-1}:
    each c_{n-1} is constant, and theta(c_n) has no constant term, so c_{n-1} = 0.
    """
    if candidate.k != k:
        raise ParameterError("candidate has the wrong symmetric power")
    steps = []
    out = nabla(candidate)
    bad = [n for n, c in enumerate(out.coeffs) if c]
    if bad:
        steps.append(f"not in kernel: nabla has nonzero slots {bad}")
        return KernelProbeReport(False, False, False, tuple(steps))
    c = candidate.coeffs
    shape_ok = _is_constant(c[0])
    steps.append(f"theta(c_0) = 0 -> c_0 constant: {shape_ok}")
    for n in range(1, k + 1):
        # theta(c_n) has zero constant term, so (k-n+1) c_{n-1}(0) = 0
        prev_zero = not c[n - 1]
        const_n = _is_constant(c[n])
        steps.append(f"slot {n}: c_{n - 1} = 0: {prev_zero}; c_{n} constant: {const_n}")
        shape_ok = shape_ok and prev_zero and const_n
    return KernelProbeReport(True, shape_ok, shape_ok, tuple(steps))
