"""p-adic Eisenstein-Kronecker series E^(p)_{k+2,r,phi} for every integer r."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import ParameterError
from .eisenstein import eis_classical
from .level import GL2ModN, LevelFunction, act_gl2, katz_function, p1
from .measure import EisensteinMeasure, check_prime_level, unit_filtered_series
from .qexp import QExpansion, phi_star, theta


@dataclass(frozen=True)
class PadicEisSpec:
    k: int
    r: int
    phi: LevelFunction
    g: GL2ModN
    p: int
    q_prec: int
    p_prec: int

    def __post_init__(self):
        if self.phi.N != self.g.N:
            raise ParameterError("phi and g have different levels")
        # EisensteinMeasure validates p, N, k and the precisions
        self.measure()

    @property
    def N(self) -> int:
        return self.phi.N

    def measure(self) -> EisensteinMeasure:
        return EisensteinMeasure(self.p, self.N, self.k, self.q_prec, self.p_prec)

    def shifted(self) -> PadicEisSpec:
        """Parameters of E^(p)_{k+3,r+1,phi}."""
        return PadicEisSpec(self.k + 1, self.r + 1, self.phi, self.g, self.p, self.q_prec, self.p_prec)


def eis_p(spec: PadicEisSpec) -> QExpansion:
    """E^(p)_{k+2,r,phi}(g) = Phi^(p)_{k+1,r,P1(hat(g phi))}."""
    return spec.measure().unit_moment(spec.r, katz_function(spec.phi, spec.g))


def eisenstein_kronecker(d_exp: int, r: int, phi: LevelFunction, g: GL2ModN,
                         p: int, q_prec: int, p_prec: int) -> QExpansion:
    """E^(p)_{d_exp+1, r, phi}(g) as a unit-filtered divisor sum, with no range gate
    on the exponents (d_exp = 0 is used by the top slot of alpha)."""
    check_prime_level(p, phi.N)
    F = katz_function(phi, g).embed(p, p_prec)
    return unit_filtered_series(F, d_exp, r, q_prec, p, p_prec)


@dataclass(frozen=True)
class ThetaShiftReport:
    passed: bool
    first_mismatch: int | None


def check_theta_shift(spec: PadicEisSpec) -> ThetaShiftReport:
    """(q d/dq) E^(p)_{k+2,r,phi} == E^(p)_{k+3,r+1,phi} on truncations."""
    lhs = theta(eis_p(spec))
    rhs = eis_p(spec.shifted())
    bad = lhs.first_difference(rhs)
    return ThetaShiftReport(bad is None, bad)


@dataclass(frozen=True)
class OneMinusPhiReport:
    passed: bool
    series_ok: bool
    sigma_shift_ok: bool
    first_mismatch: int | None


def sigma_shift_holds(f: LevelFunction, p: int) -> bool:
    """sigma(P1 f)(m, n) == P1 f(p m, n) for all (m, n); f rational-valued."""
    P = p1(f)
    return all(P(m, n).sigma(p) == P(p * m, n) for m in range(f.N) for n in range(f.N))


def check_one_minus_phistar(k: int, phi: LevelFunction, g: GL2ModN, p: int,
                            q_prec: int, p_prec: int) -> OneMinusPhiReport:
    """E^(p)_{k+2,0,phi} == (1 - phi*) E_{k+2,0,phi}, plus the sigma shift of P1(g phi).

    Only p odd and prime to N are required here; (1 - phi*) is applied over
    Q(zeta_N), where the constant terms cancel exactly, and the result is then
    reduced mod p^M.
    """
    if k < 1:
        raise ParameterError("k must be >= 1")
    check_prime_level(p, phi.N)
    lhs = eisenstein_kronecker(k + 1, 0, phi, g, p, q_prec, p_prec)
    E = eis_classical(k, phi, g, q_prec)
    rhs = (E - phi_star(E, p)).embed(p, p_prec, phi.N)
    bad = lhs.first_difference(rhs)
    shift_ok = sigma_shift_holds(act_gl2(g, phi), p)
    return OneMinusPhiReport(bad is None and shift_ok, bad is None, shift_ok, bad)
