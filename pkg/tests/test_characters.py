import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qeuler.characters import (
    DirichletChar,
    char_by_name,
    char_enumerate,
    char_from_json,
    char_quadratic,
    char_trivial,
)
from qeuler.exactnum import Cyc


def test_trivial_zeros_off_units():
    chi = char_trivial(9)
    assert chi(3) == 0 and chi(6) == 0
    assert chi(2) == 1


def test_quadratic_residues():
    chi = char_quadratic(7)
    assert all(chi(a) == 1 for a in (1, 2, 4))
    assert all(chi(a) == -1 for a in (3, 5, 6))
    assert char_quadratic(3)(-1) == -1


@pytest.mark.parametrize("d, count", [(1, 1), (3, 2), (5, 4), (9, 6), (15, 8)])
def test_enumeration_count(d, count):
    chars = char_enumerate(d)
    assert len(chars) == count
    assert chars[0].is_trivial
    assert len({c.label for c in chars}) == count


@pytest.mark.parametrize("d", [3, 5, 7, 9, 15])
def test_orthogonality(d):
    chars = char_enumerate(d)
    for i, a in enumerate(chars):
        for j, b in enumerate(chars):
            total = sum(complex(a(n)) * complex(b(n)).conjugate() for n in range(d))
            expected = sum(1 for n in range(d) if math.gcd(n, d) == 1) if i == j else 0
            assert abs(total - expected) < 1e-9


def test_even_modulus_rejected():
    with pytest.raises(ValueError):
        char_trivial(4)


def test_non_multiplicative_rejected():
    one, minus = Cyc.rational(1), Cyc.rational(-1)
    with pytest.raises(ValueError):
        DirichletChar(5, (Cyc.rational(0), one, minus, minus, minus))


def test_real_flag_and_int_values():
    assert char_quadratic(5).is_real
    assert char_quadratic(5).int_values() == [0, 1, -1, -1, 1]
    complex_chi = next(c for c in char_enumerate(5) if not c.is_real)
    with pytest.raises(ValueError):
        complex_chi.int_values()


def test_by_name_and_json():
    chi = char_by_name(5, "1")
    assert char_from_json(chi.to_json()) == chi
    assert char_by_name(3, "quadratic") == char_quadratic(3)
    with pytest.raises(ValueError):
        char_by_name(3, "7")


@given(st.sampled_from([3, 5, 7, 9, 15, 21]), st.integers(-50, 50), st.integers(-50, 50))
def test_complete_multiplicativity(d, a, b):
    for chi in char_enumerate(d):
        assert chi(a * b) == chi(a) * chi(b)
        assert chi(a + d) == chi(a)
