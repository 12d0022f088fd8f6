"""Classical (q = 1) generalized Euler numbers and polynomials of order k.

Values are read off exact truncated power series of the generating function

    (2 * sum_{l<d} (-1)^l chi(l) e^{lt} / (e^{dt} + 1))^k * e^{xt},

which makes this module an oracle independent of every q-formula.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .characters import DirichletChar
from .exactnum import Cyc

__all__ = [
    "PowerSeries",
    "DEFAULT_TRUNCATION",
    "series_exp_poly",
    "euler_kernel",
    "euler_generalized",
    "euler_generalized_order_k",
]

DEFAULT_TRUNCATION = 16


class PowerSeries:
    """Truncated power series sum_{n<=T} c_n t^n with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        self.coeffs = tuple(coeffs)

    @property
    def T(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def _check(self, other: "PowerSeries"):
        if other.T != self.T:
            raise ValueError("truncation orders differ")

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        return PowerSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c) -> "PowerSeries":
        return PowerSeries([a * c for a in self.coeffs])

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        T = self.T
        out = []
        for n in range(T + 1):
            acc = 0
            for i in range(n + 1):
                a = self.coeffs[i]
                b = other.coeffs[n - i]
                if a and b:
                    acc = a * b + acc
            out.append(acc)
        return PowerSeries(out)

    def __truediv__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        b0 = other.coeffs[0]
        if not isinstance(b0, (int, Fraction)) or b0 == 0:
            raise ZeroDivisionError("divisor needs a nonzero rational constant term")
        inv = Fraction(1) / b0
        out = []
        for n in range(self.T + 1):
            acc = self.coeffs[n]
            for i in range(1, n + 1):
                b = other.coeffs[i]
                if b and out[n - i]:
                    acc = acc - out[n - i] * b
            out.append(acc * inv)
        return PowerSeries(out)

    def __pow__(self, k: int) -> "PowerSeries":
        if k < 0:
            raise ValueError("negative power")
        result = PowerSeries([Fraction(1)] + [Fraction(0)] * self.T)
        for _ in range(k):
            result = result * self
        return result

    def __repr__(self):
        return f"PowerSeries({list(self.coeffs)!r})"


def series_exp_poly(c, T: int) -> PowerSeries:
    """Truncation of e^{ct}: coefficients c^n / n!."""
    if T < 0:
        raise ValueError("T must be non-negative")
    c = Fraction(c)
    return PowerSeries([c**n / math.factorial(n) for n in range(T + 1)])


def euler_kernel(chi: DirichletChar, T: int) -> PowerSeries:
    """2 * sum_{l<d} (-1)^l chi(l) e^{lt} / (e^{dt} + 1), truncated at T."""
    d = chi.d
    num = PowerSeries([Fraction(0)] * (T + 1))
    for l in range(d):
        v = chi(l)
        if v:
            num = num + series_exp_poly(l, T).scale(v * (2 * (-1) ** l))
    den = series_exp_poly(d, T) + PowerSeries([Fraction(1)] + [Fraction(0)] * T)
    return num / den


def euler_generalized(n: int, chi: DirichletChar, x: int = 0, T: int = DEFAULT_TRUNCATION):
    """E_{n,chi}(x) as an exact Cyc (or Fraction for d = 1 arithmetic)."""
    return euler_generalized_order_k(n, 1, chi, x, T)


def euler_generalized_order_k(n: int, k: int, chi: DirichletChar, x: int = 0,
                              T: int = DEFAULT_TRUNCATION):
    """E^{(k)}_{n,chi}(x): n! times the t^n coefficient of kernel^k * e^{xt}."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n > T:
        raise ValueError(f"n={n} exceeds truncation T={T}")
    series = (euler_kernel(chi, T) ** k) * series_exp_poly(x, T)
    value = series[n] * math.factorial(n)
    return value if isinstance(value, Cyc) else Cyc.rational(value)
