"""Dirichlet characters modulo an odd integer, stored as exact value tables."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .exactnum import Cyc, from_json, to_json

__all__ = [
    "DirichletChar",
    "char_trivial",
    "char_quadratic",
    "char_enumerate",
    "char_eval",
    "char_from_json",
    "char_by_name",
    "MAX_MODULUS",
]

MAX_MODULUS = 99
MAX_PRIME_POWER_FACTORS = 3


def _factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _is_prime(n: int) -> bool:
    return n >= 2 and _factor(n) == [(n, 1)]


def _totient(n: int) -> int:
    result = n
    for p, _ in _factor(n):
        result = result // p * (p - 1)
    return result


def _primitive_root(n: int) -> int:
    """Smallest generator of (Z/n)^* for n an odd prime power."""
    phi = _totient(n)
    primes = [p for p, _ in _factor(phi)]
    for g in range(2, n):
        if math.gcd(g, n) == 1 and all(pow(g, phi // r, n) != 1 for r in primes):
            return g
    raise ValueError(f"no primitive root mod {n}")


@dataclass(frozen=True, eq=False)
class DirichletChar:
    """A character mod ``d`` given by its value table ``values[a] = chi(a)``."""

    d: int
    values: tuple[Cyc, ...]
    label: str = field(default="")
    order: int = field(init=False)

    def __post_init__(self):
        d = self.d
        if d < 1 or d % 2 == 0:
            raise ValueError(f"modulus must be an odd positive integer, got {d}")
        if len(self.values) != d:
            raise ValueError("value table must have length d")
        vals = tuple(v if isinstance(v, Cyc) else Cyc.rational(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        for a, v in enumerate(vals):
            unit = math.gcd(a, d) == 1
            if unit == (not v):
                raise ValueError(f"chi({a}) must vanish exactly off the units mod {d}")
        if d > 1 and vals[1] != 1:
            raise ValueError("chi(1) must be 1")
        for a in range(d):
            for b in range(a, d):
                if vals[a * b % d] != vals[a] * vals[b]:
                    raise ValueError(f"not multiplicative at ({a}, {b})")
        phi = _totient(d)
        order = None
        for r in range(1, phi + 1):
            if phi % r == 0 and all(vals[a] ** r == 1 for a in range(d) if math.gcd(a, d) == 1):
                order = r
                break
        if order is None:
            raise ValueError("values are not roots of unity of order dividing phi(d)")
        object.__setattr__(self, "order", order)
        if not self.label:
            object.__setattr__(self, "label", f"{d}:custom")

    @property
    def is_real(self) -> bool:
        return all(v.is_rational() for v in self.values)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def __call__(self, n: int) -> Cyc:
        return self.values[n % self.d]

    def int_values(self) -> list[int]:
        """Values as integers; only defined for real characters."""
        if not self.is_real:
            raise ValueError(f"character {self.label} is not real-valued")
        return [int(v.to_rational()) for v in self.values]

    def complex_values(self) -> list[complex]:
        return [complex(v) for v in self.values]

    def to_json(self) -> dict:
        return {"d": self.d, "label": self.label, "values": [to_json(v) for v in self.values]}

    def __eq__(self, other):
        if not isinstance(other, DirichletChar):
            return NotImplemented
        return self.d == other.d and all(a == b for a, b in zip(self.values, other.values))

    def __hash__(self):
        return hash((self.d, tuple((round(z.real, 9), round(z.imag, 9)) for z in self.complex_values())))

    def __repr__(self):
        return f"DirichletChar(d={self.d}, label={self.label!r}, order={self.order})"


def char_trivial(d: int) -> DirichletChar:
    if d < 1 or d % 2 == 0:
        raise ValueError(f"modulus must be an odd positive integer, got {d}")
    vals = [Cyc.rational(1 if math.gcd(a, d) == 1 else 0) for a in range(d)]
    return DirichletChar(d, tuple(vals), label=f"{d}:trivial")


def char_quadratic(d: int) -> DirichletChar:
    """Legendre symbol mod an odd prime."""
    if d % 2 == 0 or not _is_prime(d):
        raise ValueError(f"quadratic character needs an odd prime, got {d}")
    squares = {a * a % d for a in range(1, d)}
    vals = [Cyc.rational(0)] + [Cyc.rational(1 if a in squares else -1) for a in range(1, d)]
    return DirichletChar(d, tuple(vals), label=f"{d}:quadratic")


def char_enumerate(d: int) -> list[DirichletChar]:
    """All phi(d) characters mod d; index 0 is the trivial one."""
    if d < 1 or d % 2 == 0:
        raise ValueError(f"modulus must be an odd positive integer, got {d}")
    if d > MAX_MODULUS:
        raise ValueError(f"modulus {d} exceeds the enumeration bound {MAX_MODULUS}")
    if d == 1:
        return [char_trivial(1)]
    parts = _factor(d)
    if len(parts) > MAX_PRIME_POWER_FACTORS:
        raise ValueError(f"modulus {d} has too many prime-power factors")

    comps = []
    for p, e in parts:
        pe = p**e
        phi = pe // p * (p - 1)
        g = _primitive_root(pe)
        log = {}
        x = 1
        for i in range(phi):
            log[x] = i
            x = x * g % pe
        comps.append((pe, phi, log))
    L = math.lcm(*(phi for _, phi, _ in comps))

    chars = []
    for idx, js in enumerate(itertools.product(*(range(phi) for _, phi, _ in comps))):
        order = math.lcm(*(phi // math.gcd(phi, j) for (_, phi, _), j in zip(comps, js)))
        vals = []
        for a in range(d):
            if math.gcd(a, d) != 1:
                vals.append(Cyc.rational(0))
                continue
            e = sum(j * log[a % pe] * (L // phi) for (pe, phi, log), j in zip(comps, js)) % L
            vals.append(Cyc.zeta(order, e * order // L))
        label = f"{d}:trivial" if idx == 0 else f"{d}:{idx}"
        chars.append(DirichletChar(d, tuple(vals), label=label))
    return chars


def char_eval(chi: DirichletChar, n: int) -> Cyc:
    return chi.values[n % chi.d]


def char_from_json(obj: dict) -> DirichletChar:
    vals = tuple(from_json(v) for v in obj["values"])
    vals = tuple(v if isinstance(v, Cyc) else Cyc.rational(v) for v in vals)
    return DirichletChar(int(obj["d"]), vals, label=obj.get("label", ""))


def char_by_name(d: int, name: str) -> DirichletChar:
    """Resolve ``trivial``, ``quadratic`` or an enumeration index."""
    if name == "trivial":
        return char_trivial(d)
    if name == "quadratic":
        return char_quadratic(d)
    try:
        idx = int(name)
    except ValueError:
        raise ValueError(f"unknown character {name!r}") from None
    chars = char_enumerate(d)
    if not 0 <= idx < len(chars):
        raise ValueError(f"character index {idx} out of range for d={d}")
    return chars[idx]
