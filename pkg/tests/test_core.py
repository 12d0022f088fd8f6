import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qeuler.characters import char_enumerate, char_quadratic, char_trivial
from qeuler.core import (
    QEulerParams,
    moment_lhs,
    moment_rhs,
    qe_h1,
    qe_hk,
    qe_k1,
    qe_kk,
    qe_order_k,
    thm4_first_rhs,
    verify_thm4_first,
    verify_thm4_second,
)
from qeuler.qcalc import qint, qpochhammer

ONE = char_trivial(1)
HALF = F(1, 2)


def P(**kw):
    kw.setdefault("n", 0)
    kw.setdefault("chi", ONE)
    kw.setdefault("q", HALF)
    return QEulerParams(**kw)


def test_params_validation():
    with pytest.raises(ValueError):
        P(q=F(1))
    with pytest.raises(ValueError):
        P(n=-1)
    with pytest.raises(ValueError):
        P(k=0)
    assert P(q=2).q == F(2)


def test_k1_values():
    assert qe_k1(P(n=1)) == F(-2, 3)
    assert qe_k1(P(n=0)) == 1


@pytest.mark.parametrize("q", [F(1, 3), F(1, 2), F(2, 3), F(5, 4)])
def test_k1_sign_closed_form(q):
    value = qe_k1(P(n=1, q=q))
    assert value == -1 / (1 + q)
    assert value.to_rational() < 0


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("q", [F(1, 2), F(2, 3)])
def test_n0_normalization(k, q):
    assert qe_order_k(P(n=0, k=k, q=q)) == 1
    for h in range(4):
        expected = F(2) ** k / qpochhammer(-(q ** (h - k)), q, k)
        assert qe_hk(P(n=0, k=k, h=h, q=q)) == expected


def test_order_k_regression():
    assert qe_order_k(P(n=2, k=2)) == F(4, 225)


def test_hk_k1_normalization():
    for h in range(4):
        assert qe_hk(P(n=0, h=h)) == 2 / (1 + HALF ** (h - 1))


def test_moment_examples():
    assert moment_lhs(0, P(k=2)) == F(4, 15)
    for x in range(3):
        for q in (HALF, F(2, 3)):
            assert moment_lhs(1, P(q=q, x=x)) == q**x


def test_thm4_second_example():
    chk = verify_thm4_second(P(n=0, h=2))
    assert chk.lhs == F(8, 5)
    assert chk.verdict == "pass"


def test_k1_is_a_q_sum():
    """qe_k1 for d = 1 equals the Abel sum 2 sum_m (-1)^m [x+m]_q^n, done exactly
    through the geometric expansion of [x+m]^n."""
    q = F(1, 3)
    for n in range(5):
        for x in range(3):
            expected = sum(math.comb(n, l) * (-1) ** l * q ** (l * x) * 2 / (1 + q**l)
                           for l in range(n + 1)) / (1 - q) ** n
            assert qe_k1(P(n=n, x=x, q=q)) == expected


def test_k1_small_case_by_hand():
    # n = 2, x = 1: [1+m]^2 expanded, Abel sum of (-1)^m q^{lm} is 1/(1+q^l)
    q = HALF
    expected = (1 - 4 * q / (1 + q) + 2 * q**2 / (1 + q**2)) / (1 - q) ** 2
    assert qe_k1(P(n=2, x=1)) == expected
    assert qint(2, q) == 1 + q


def test_float_path_agrees():
    chi = char_enumerate(5)[1]
    exact = qe_hk(P(n=3, k=2, h=1, chi=chi, x=1))
    approx = qe_hk(P(n=3, k=2, h=1, chi=chi, x=1, q=0.5))
    assert abs(complex(exact) - approx) < 1e-10


def test_complex_character_stays_exact():
    chi = char_enumerate(5)[1]
    value = qe_order_k(P(n=2, k=2, chi=chi))
    assert not value.is_rational()
    assert value.m == 4


def test_tuple_guard():
    with pytest.raises(ValueError):
        qe_order_k(P(n=1, k=6, chi=char_trivial(99)))


def test_h1_readings_differ():
    chi = char_quadratic(3)
    derived = qe_h1(P(n=2, h=2, chi=chi))
    printed = qe_h1(P(n=2, h=2, chi=chi), reading="as_printed")
    assert derived == qe_hk(P(n=2, h=2, chi=chi))
    assert derived != printed
    with pytest.raises(ValueError):
        qe_h1(P(n=1), reading="other")


def test_thm4_first_needs_k2():
    with pytest.raises(ValueError):
        thm4_first_rhs(P(n=1, k=1, h=1), "as_printed")


def test_thm4_first_d1_all_readings_hold():
    for n in range(3):
        for h in range(4):
            checks = verify_thm4_first(P(n=n, k=2, h=h, x=1))
            assert all(c.verdict == "pass" for c in checks.values())


def test_thm4_first_derived_reading_d3():
    chi = char_quadratic(3)
    for n in range(3):
        for h in range(4):
            for k in (2, 3):
                chk = verify_thm4_first(P(n=n, k=k, h=h, chi=chi), "shifted_weighted")
                assert chk.verdict == "pass"


chars = st.sampled_from([ONE, char_quadratic(3), char_enumerate(5)[1], char_enumerate(5)[2]])
qs = st.sampled_from([F(1, 2), F(2, 3), F(1, 5), F(3, 2)])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.integers(1, 3), st.integers(0, 3), chars, st.integers(0, 2), qs)
def test_thm4_second_property(n, k, h, chi, x, q):
    assert not verify_thm4_second(P(n=n, k=k, h=h, chi=chi, x=x, q=q)).residual


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.integers(1, 3), chars, st.integers(0, 2), qs)
def test_moment_property(m, k, chi, x, q):
    p = P(k=k, chi=chi, x=x, q=q)
    assert moment_lhs(m, p) == moment_rhs(m, p)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(1, 3), chars, st.integers(0, 2), qs)
def test_specializations_property(n, k, chi, x, q):
    base = P(n=n, chi=chi, x=x, q=q)
    assert qe_order_k(base) == qe_k1(base)
    assert qe_hk(base.with_(k=k, h=k)) == qe_kk(base.with_(k=k, h=k))
    assert qe_hk(base.with_(h=k)) == qe_h1(base.with_(h=k))
