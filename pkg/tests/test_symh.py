import random
from fractions import Fraction

import pytest

from eiskron.arith import PadicCyc, ParameterError, PrecisionError
from eiskron.level import GL2ModN, LevelFunction, sample_gl2
from eiskron.padic_eis import eisenstein_kronecker
from eiskron.qexp import QExpansion, theta
from eiskron.symh import (SymOneForm, SymSection, alpha_eis, eis_dr_oneform, frobenius_oneform,
                          horizontal_kernel_probe, nabla, verify_syntomic_pair, zero_section)

Q = 12


def q(*coeffs):
    return QExpansion(list(coeffs) + [0] * (Q + 1 - len(coeffs)))


def test_nabla_formula():
    s = SymSection(2, (q(1, 2), q(0, 0, 3), q(5, 1)))
    out = nabla(s)
    assert out.coeffs[0] == theta(s.coeffs[0])
    assert out.coeffs[1] == s.coeffs[0] * 2 + theta(s.coeffs[1])
    assert out.coeffs[2] == s.coeffs[1] + theta(s.coeffs[2])


def test_section_shape_is_checked():
    with pytest.raises(ParameterError):
        SymSection(2, (q(1), q(1)))


def test_frobenius_divides_slot_n_by_p_to_the_n():
    p, N, M = 5, 3, 4
    one = PadicCyc.one(N, p, M)
    w = SymOneForm(1, (QExpansion([one, one]), QExpansion([one * p, one * 2])))
    out = frobenius_oneform(w, p)
    assert out.coeffs[1][0] == one and out.coeffs[1][0].M == M - 1
    with pytest.raises(PrecisionError):
        frobenius_oneform(SymOneForm(1, (w.coeffs[0], w.coeffs[0])), p)
    exact = frobenius_oneform(SymOneForm(1, (q(1), q(3))), p)
    assert exact.coeffs[1][0] == Fraction(3, 5)


def test_eis_dr_oneform_layout():
    phi = LevelFunction.delta(3, 1, 2)
    xi = eis_dr_oneform(2, phi, GL2ModN.identity(3), 10)
    assert xi.normalization == Fraction(2, 27)
    assert not xi.coeffs[1] and not xi.coeffs[2]


def test_alpha_top_slot_and_bottom_slot():
    p, N, k, M = 7, 4, 2, 5
    phi = LevelFunction.random(N, random.Random(0))
    g = GL2ModN.identity(N)
    alpha = alpha_eis(k, phi, g, p, Q, M)
    assert alpha.coeffs[0] == eisenstein_kronecker(k, -1, phi, g, p, Q, M) * Fraction(1, 2)
    assert alpha.coeffs[k] == eisenstein_kronecker(0, -1 - k, phi, g, p, Q, M) * (-1) ** k
    with pytest.raises(ParameterError):
        alpha_eis(5, phi, g, p, Q, M)


@pytest.mark.parametrize("k,p,N", [(1, 5, 3), (2, 5, 4), (3, 7, 5), (2, 13, 4)])
def test_main_identity(k, p, N):
    rng = random.Random(k * p * N)
    phi = LevelFunction.random(N, rng)
    for g in sample_gl2(N, 2, seed=k):
        rep = verify_syntomic_pair(alpha_eis(k, phi, g, p, 25, 5), eis_dr_oneform(k, phi, g, 25), p)
        assert rep.passed and rep.p_prec == 5


def test_wrong_form_is_rejected():
    p, N, k = 7, 3, 1
    phi = LevelFunction.random(N, random.Random(1))
    g = GL2ModN.identity(N)
    xi = eis_dr_oneform(k, phi, g, 20)
    rep = verify_syntomic_pair(alpha_eis(k, phi, g, p, 20, 5), xi.scale(Fraction(2)), p)
    assert not rep.passed and rep.first.slot == 0


def test_zero_pair_passes():
    p, N, M = 7, 3, 4
    zero = QExpansion.zero(PadicCyc.zero(N, p, M), Q)
    assert verify_syntomic_pair(zero_section(2, zero), SymOneForm(2, (zero,) * 3), p).passed


def test_kernel_probe_accepts_constants():
    c = QExpansion.monomial(Fraction(7, 3), 0, Q)
    rep = horizontal_kernel_probe(3, SymSection(3, (c * 0,) * 3 + (c,)))
    assert rep.passed and len(rep.steps) == 4


def test_kernel_probe_rejects_moving_sections():
    s = SymSection(1, (q(0), q(0, 1)))
    rep = horizontal_kernel_probe(1, s)
    assert not rep.horizontal and not rep.passed


def test_kernel_probe_flags_padic_ghosts():
    # p^(M-1) q^p in the top slot is horizontal mod p^M but not a constant
    p, N, M = 5, 3, 3
    ghost = QExpansion.monomial(PadicCyc.one(N, p, M) * p ** (M - 1), p, Q)
    rep = horizontal_kernel_probe(1, SymSection(1, (ghost * 0, ghost)))
    assert rep.horizontal and not rep.shape_ok
