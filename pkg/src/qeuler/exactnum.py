"""Exact scalars: rationals and elements of cyclotomic fields Q(zeta_m).

Rationals are :class:`fractions.Fraction`. Cyclotomic elements are stored as
coefficient vectors in the power basis ``1, z, ..., z^(phi(m)-1)`` reduced
modulo the m-th cyclotomic polynomial, so two elements with the same conductor
are equal iff their coefficient tuples are equal.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

Rat = Fraction

__all__ = [
    "Rat",
    "Cyc",
    "parse_rat",
    "format_rat",
    "cyclotomic_poly",
    "cyc_mul",
    "embed_complex",
    "to_json",
    "from_json",
]


def parse_rat(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` (or an integer string) into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"rational expected as 'p/q', got {text!r}")
    return Fraction(text)


def format_rat(r: Rational | int) -> str:
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


# -- integer polynomials, little-endian coefficient lists ---------------------

def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # den is monic; remainder must vanish
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the m-th cyclotomic polynomial.

    Built recursively as ``(x^m - 1) / prod(Phi_d for proper divisors d | m)``.

    >>> cyclotomic_poly(12)
    (1, 0, -1, 0, 1)
    """
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    den = [1]
    for d in range(1, m):
        if m % d == 0:
            den = _poly_mul(den, cyclotomic_poly(d))
    return tuple(_poly_divexact(num, den))


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds z^e reduced mod Phi_m, for 0 <= e < max(m, 2*phi(m) - 1)."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(max(m, 2 * deg - 1)):
        rows.append(tuple(cur))
        # multiply by z
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


def _reduce(m: int, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    deg = len(cyclotomic_poly(m)) - 1
    if len(coeffs) <= deg:
        out = list(coeffs) + [Fraction(0)] * (deg - len(coeffs))
        return tuple(Fraction(c) for c in out)
    table = _power_table(m)
    if len(coeffs) > len(table):
        # fold exponents using z^m = 1 first
        folded = [Fraction(0)] * m
        for e, c in enumerate(coeffs):
            folded[e % m] += c
        coeffs = folded
    out = [Fraction(0)] * deg
    for e, c in enumerate(coeffs):
        if c:
            for j, t in enumerate(table[e]):
                if t:
                    out[j] += c * t
    return tuple(out)


class Cyc:
    """Element of Q(zeta_m), immutable.

    Arithmetic with ``int``/``Fraction`` is supported directly; mixing two
    conductors lifts both operands to the lcm conductor.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable[Rational | int] = ()):
        if m < 1:
            raise ValueError("conductor must be positive")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", _reduce(m, [Fraction(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("Cyc is immutable")

    @classmethod
    def rational(cls, r: Rational | int, m: int = 1) -> "Cyc":
        return cls(m, [r])

    @classmethod
    def zeta(cls, m: int, power: int = 1) -> "Cyc":
        """The root of unity exp(2*pi*i*power/m)."""
        row = _power_table(m)[power % m]
        return cls(m, row)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def lift(self, M: int) -> "Cyc":
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"cannot lift conductor {self.m} to {M}")
        step = M // self.m
        expanded = [Fraction(0)] * ((self.degree - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            expanded[i * step] = c
        return Cyc(M, expanded)

    def _coerce(self, other) -> tuple["Cyc", "Cyc"] | None:
        if isinstance(other, Cyc):
            if other.m == self.m:
                return self, other
            M = math.lcm(self.m, other.m)
            return self.lift(M), other.lift(M)
        if isinstance(other, (int, Fraction)):
            return self, Cyc(self.m, [other])
        return None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.m, (self.coeffs[0] + other,) + self.coeffs[1:])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyc(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.m, [c * other for c in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.degree == 1:
            return Cyc(a.m, [a.coeffs[0] * b.coeffs[0]])
        prod = [Fraction(0)] * (2 * a.degree - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyc(a.m, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Cyc(self.m, [c / other for c in self.coeffs])
        if isinstance(other, Cyc) and other.is_rational():
            return self / other.coeffs[0]
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers of Cyc are not supported")
        result = Cyc(self.m, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    __hash__ = None

    def __bool__(self):
        return any(self.coeffs)

    def __complex__(self):
        return embed_complex(self)

    def __repr__(self):
        body = ", ".join(format_rat(c) for c in self.coeffs)
        return f"Cyc({self.m}, [{body}])"


def cyc_mul(a: Cyc, b: Cyc) -> Cyc:
    return a * b


def embed_complex(a: Cyc | Rational | int) -> complex:
    """Evaluate at zeta_m = exp(2*pi*i/m) in double precision."""
    if not isinstance(a, Cyc):
        return complex(float(a))
    z = cmath.exp(2j * math.pi / a.m)
    total = 0j
    w = 1 + 0j
    for c in a.coeffs:
        if c:
            total += float(c) * w
        w *= z
    return total


def to_json(value) -> str | dict:
    """Serialize a scalar: rationals as ``"p/q"``, others as ``{"m", "coeffs"}``."""
    if isinstance(value, Cyc):
        if value.is_rational():
            return format_rat(value.coeffs[0])
        return {"m": value.m, "coeffs": [format_rat(c) for c in value.coeffs]}
    if isinstance(value, (int, Fraction)):
        return format_rat(value)
    if isinstance(value, complex):
        return {"re": repr(value.real), "im": repr(value.imag)}
    return repr(float(value))


def from_json(obj) -> Fraction | Cyc:
    if isinstance(obj, dict):
        return Cyc(int(obj["m"]), [parse_rat(c) for c in obj["coeffs"]])
    return parse_rat(obj)
