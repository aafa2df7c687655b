"""Truncated q-expansions a_0 + a_1 q + ... + a_Q q^Q.

Two expansions are equal when their coefficients agree up to the smaller
q-precision (and, for p-adic coefficients, at the smaller p-adic precision).
"""

from __future__ import annotations

from fractions import Fraction

from .arith import CycRat, ParameterError, Rational, embed_padic, ring_zero, sigma


class QExpansion:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(Fraction(c) if isinstance(c, Rational) else c for c in coeffs)
        if len(coeffs) < 2:
            raise ParameterError("q-precision must be at least 1")
        self.coeffs = coeffs

    @classmethod
    def zero(cls, sample, q_prec: int) -> QExpansion:
        z = ring_zero(sample)
        return cls([z] * (q_prec + 1))

    @classmethod
    def monomial(cls, c, n: int, q_prec: int) -> QExpansion:
        z = ring_zero(c)
        return cls([c if i == n else z for i in range(q_prec + 1)])

    @property
    def q_prec(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, q_prec: int) -> QExpansion:
        return QExpansion(self.coeffs[: q_prec + 1])

    def _pair(self, other):
        if not isinstance(other, QExpansion):
            return None
        n = min(len(self), len(other))
        return zip(self.coeffs[:n], other.coeffs[:n])

    def __add__(self, other):
        pairs = self._pair(other)
        if pairs is None:
            return NotImplemented
        return QExpansion([a + b for a, b in pairs])

    def __sub__(self, other):
        pairs = self._pair(other)
        if pairs is None:
            return NotImplemented
        return QExpansion([a - b for a, b in pairs])

    def __neg__(self):
        return QExpansion([-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, QExpansion):
            return QExpansion([a * other for a in self.coeffs])
        Q = min(self.q_prec, other.q_prec)
        a, b = self.coeffs, other.coeffs
        z = ring_zero(a[0])
        out = [z] * (Q + 1)
        for i in range(Q + 1):
            if a[i]:
                for j in range(Q + 1 - i):
                    if b[j]:
                        out[i + j] = out[i + j] + a[i] * b[j]
        return QExpansion(out)

    def __rmul__(self, other):
        return QExpansion([other * a for a in self.coeffs])

    def __eq__(self, other):
        pairs = self._pair(other)
        if pairs is None:
            return NotImplemented
        return all(a == b for a, b in pairs)

    __hash__ = None

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = [f"({c})*q^{n}" for n, c in enumerate(self.coeffs) if c]
        return f"QExpansion[{self.q_prec}](" + (" + ".join(terms) or "0") + ")"

    def map(self, fn) -> QExpansion:
        return QExpansion([fn(c) for c in self.coeffs])

    def embed(self, p: int, M: int, N: int | None = None) -> QExpansion:
        return self.map(lambda c: embed_padic(c, p, M, N))

    def first_difference(self, other) -> int | None:
        """Smallest q-power where the two expansions differ, or ``None``."""
        for n, (a, b) in enumerate(self._pair(other)):
            if a != b:
                return n
        return None

    def evaluate(self, q: complex) -> complex:
        """Numerical value at a complex q, with zeta_N -> exp(2 pi i / N)."""
        acc = 0j
        for c in reversed(self.coeffs):
            v = c.to_complex() if isinstance(c, CycRat) else complex(c)
            acc = acc * q + v
        return acc


def qexp_mul(a: QExpansion, b: QExpansion) -> QExpansion:
    return a * b


def theta(a: QExpansion) -> QExpansion:
    """q d/dq."""
    return QExpansion([n * c for n, c in enumerate(a.coeffs)])


def frob_q(a: QExpansion, p: int) -> QExpansion:
    """F(q) -> F(q^p) at the same q-precision."""
    z = ring_zero(a[0])
    out = [z] * len(a)
    for n in range(0, a.q_prec // p + 1):
        out[p * n] = a[n]
    return QExpansion(out)


def sigma_coeffs(a: QExpansion, p: int) -> QExpansion:
    return a.map(lambda c: sigma(c, p))


def phi_star(a: QExpansion, p: int) -> QExpansion:
    """Frob on q combined with zeta_N -> zeta_N^p on coefficients."""
    return frob_q(sigma_coeffs(a, p), p)

