import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qeuler.qcalc import gauss_binom, negbinom_weight, qint, qint_neg, qint_split, qpochhammer


def test_qint_values():
    assert qint(3, F(1, 2)) == F(7, 4)
    assert qint(0, F(1, 3)) == 0
    assert qint(-1, F(1, 2)) == -2
    assert qint_neg(2, F(2)) == -1


def test_qint_rejects_one():
    with pytest.raises(ZeroDivisionError):
        qint(2, F(1))


def test_qpochhammer():
    assert qpochhammer(F(2), F(3), 2) == 5
    assert qpochhammer(F(-1), F(1, 2), 2) == 3
    assert qpochhammer(F(5), F(1, 2), 0) == 1


def test_gauss_binom():
    assert gauss_binom(4, 2, F(2)) == 35
    assert gauss_binom(3, 5, F(1, 2)) == 0
    assert abs(gauss_binom(4, 2, 1 - 1e-12) - 6) < 1e-9


def test_negbinom_weight():
    assert negbinom_weight(3, 3) == 10
    assert negbinom_weight(0, 4) == 1


qs = st.fractions(min_value=F(1, 7), max_value=F(5, 2), max_denominator=9).filter(lambda q: q != 1)


@given(st.integers(0, 9), st.integers(1, 5), st.integers(0, 4), qs)
def test_qint_split(m, d, u, q):
    assert qint_split(d, m, u, q) == qint(d * m + u, q)


@given(st.integers(0, 8), st.integers(0, 8), qs)
def test_gauss_pascal(n, k, q):
    if 1 <= k <= n:
        assert gauss_binom(n + 1, k, q) == gauss_binom(n, k - 1, q) + q**k * gauss_binom(n, k, q)
    assert gauss_binom(n, 0, q) == 1


@given(st.integers(0, 8), st.integers(0, 8))
def test_gauss_binom_is_classical_at_one(n, k):
    if k <= n:
        # the q-binomial is a polynomial in q with value C(n, k) at q = 1
        assert abs(gauss_binom(n, k, 1 + 1e-9) - math.comb(n, k)) < 1e-4 * math.comb(n, k) + 1e-9
