from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eiskron.arith import CycRat, PadicCyc, ParameterError
from eiskron.qexp import QExpansion, frob_q, phi_star, sigma_coeffs, theta

Q = 10
series = st.lists(st.integers(-20, 20), min_size=Q + 1, max_size=Q + 1).map(QExpansion)


@settings(max_examples=50, deadline=None)
@given(series, series, series)
def test_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a


@settings(max_examples=50, deadline=None)
@given(series, series)
def test_theta_is_a_derivation(a, b):
    assert theta(a * b) == theta(a) * b + a * theta(b)


@settings(max_examples=50, deadline=None)
@given(series, series, st.sampled_from([2, 3, 5]))
def test_frobenius_is_multiplicative(a, b, p):
    assert frob_q(a * b, p) == frob_q(a, p) * frob_q(b, p)
    # theta F(q^p) = p F'(q^p)
    assert theta(frob_q(a, p)) == frob_q(theta(a), p) * p


def test_equality_at_common_precision():
    a = QExpansion([1, 2, 3])
    b = QExpansion([1, 2, 3, 99])
    assert a == b
    assert a.first_difference(QExpansion([1, 5, 3])) == 1
    assert QExpansion([0, 0]) == QExpansion.zero(Fraction(0), 4)
    assert not QExpansion([0, 0, 0])
    with pytest.raises(ParameterError):
        QExpansion([1])


def test_monomial_and_truncate():
    m = QExpansion.monomial(Fraction(3), 2, 5)
    assert m.coeffs == (0, 0, 3, 0, 0, 0)
    assert m.truncate(1).q_prec == 1


def test_phi_star_combines_sigma_and_frobenius():
    N, p = 5, 3
    z = CycRat.zeta(N)
    a = QExpansion([z, z * z, 1, z])
    out = phi_star(a, p)
    assert out[0] == CycRat.zeta(N, p) and out[3] == CycRat.zeta(N, 2 * p)
    assert out[1] == 0 and out[2] == 0
    assert sigma_coeffs(a, p)[1] == CycRat.zeta(N, 2 * p)


def test_padic_series_keep_lowest_precision():
    a = QExpansion([PadicCyc(4, 5, 3, [1, 2]), PadicCyc(4, 5, 3, [0, 1])])
    b = QExpansion([PadicCyc(4, 5, 2, [1, 0]), PadicCyc(4, 5, 2, [0, 0])])
    assert (a + b)[0].M == 2
    assert phi_star(a, 5)[0] == PadicCyc(4, 5, 3, [1, 2]).sigma()


def test_evaluate():
    a = QExpansion([1, 2, 0, 1])
    assert abs(a.evaluate(0.5) - (1 + 1 + 0.125)) < 1e-15
    z = QExpansion([CycRat.zeta(4), 0])
    assert abs(z.evaluate(0.3) - 1j) < 1e-12
