"""Closed forms for the q-extended generalized Euler polynomials.

Exact evaluation takes a rational ``q`` (a ``Fraction``) and returns a
:class:`~qeuler.exactnum.Cyc`; passing a float ``q`` evaluates the same finite
sums in complex floating point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .characters import DirichletChar, char_trivial
from .exactnum import Cyc, to_json
from .qcalc import qpochhammer

__all__ = [
    "QEulerParams",
    "IdentityCheck",
    "digit_weights",
    "qe_k1",
    "qe_order_k",
    "qe_hk",
    "qe_kk",
    "qe_h1",
    "moment_lhs",
    "moment_rhs",
    "THM4_FIRST_VARIANTS",
    "thm4_first_rhs",
    "verify_thm4_first",
    "verify_thm4_second",
    "verify_moment",
]

MAX_TUPLES = 10**6


@dataclass(frozen=True)
class QEulerParams:
    """Selects one value E^{(h,k)}_{n,chi,q}(x)."""

    n: int
    chi: DirichletChar
    q: Fraction | float
    x: int = 0
    k: int = 1
    h: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.k < 1:
            raise ValueError("k must be positive")
        if isinstance(self.q, int) and not isinstance(self.q, bool):
            object.__setattr__(self, "q", Fraction(self.q))
        if self.q == 1:
            raise ValueError("q = 1 is excluded; use the classical module for the limit")
        if self.q <= 0:
            raise ValueError("q must be positive")

    @property
    def d(self) -> int:
        return self.chi.d

    @property
    def exact(self) -> bool:
        return isinstance(self.q, Fraction)

    def with_(self, **changes) -> "QEulerParams":
        return replace(self, **changes)

    def to_json(self) -> dict:
        q = to_json(self.q) if self.exact else repr(self.q)
        return {"n": self.n, "h": self.h, "k": self.k, "d": self.d, "chi": self.chi.label,
                "x": self.x, "q": q}


@dataclass(frozen=True)
class IdentityCheck:
    identity: str
    params: dict
    lhs: object
    rhs: object
    residual: object
    verdict: str

    def to_json(self) -> dict:
        return {"identity": self.identity, "params": self.params, "lhs": to_json(self.lhs),
                "rhs": to_json(self.rhs), "residual": to_json(self.residual),
                "verdict": self.verdict}


def _one(exact: bool):
    return Cyc.rational(1) if exact else 1 + 0j


def _finish(value, exact: bool):
    if exact:
        return value if isinstance(value, Cyc) else Cyc.rational(value)
    return complex(value)


def _guard_tuples(d: int, k: int):
    if d**k > MAX_TUPLES:
        raise ValueError(f"d^k = {d**k} exceeds the tuple budget {MAX_TUPLES}")


def digit_weights(chi: DirichletChar, exps: tuple[int, ...], q) -> tuple[tuple[int, object], ...]:
    """Group the k-fold digit sum by A = a_1 + ... + a_k.

    Returns pairs (A, W_A) with
    W_A = sum over digit tuples with sum A of prod_j chi(a_j) (-1)^{a_j} q^{e_j a_j}.
    """
    # 0.5 == Fraction(1, 2) as cache keys, so exactness has to be part of the key
    return _digit_weights(chi, tuple(exps), q, isinstance(q, Fraction))


@lru_cache(maxsize=4096)
def _digit_weights(chi: DirichletChar, exps: tuple[int, ...], q, exact: bool):
    d = chi.d
    _guard_tuples(d, len(exps))
    vals = chi.values if exact else chi.complex_values()
    weights = {0: _one(exact)}
    for e in exps:
        row = []
        for a in range(d):
            v = vals[a]
            row.append(v * ((-1) ** a * q ** (e * a)) if v else None)
        nxt: dict[int, object] = {}
        for A, w in weights.items():
            for a, u in enumerate(row):
                if u is not None:
                    nxt[A + a] = nxt[A + a] + w * u if A + a in nxt else w * u
        weights = nxt
    return tuple(sorted(weights.items()))


def qe_k1(params: QEulerParams):
    """E_{n,chi,q}(x) from the finite double sum over residues a and l."""
    n, q, x, chi, d = params.n, params.q, params.x, params.chi, params.d
    exact = params.exact
    vals = chi.values if exact else chi.complex_values()
    total = 0
    for a in range(d):
        if not vals[a]:
            continue
        inner = 0
        for l in range(n + 1):
            inner += math.comb(n, l) * (-1) ** l * q ** (l * (a + x)) / (1 + q ** (l * d))
        total = vals[a] * ((-1) ** a * inner) + total
    return _finish(total * 2 / (1 - q) ** n, exact)


def _closed_sum(params: QEulerParams, exps, denominators):
    n, q, x = params.n, params.q, params.x
    coef = [math.comb(n, l) * (-1) ** l * q ** (l * x) / denominators[l] for l in range(n + 1)]
    total = 0
    for A, w in digit_weights(params.chi, tuple(exps), q):
        qa = q**A
        s = 0
        p = 1
        for c in coef:
            s += c * p
            p *= qa
        total = w * s + total
    return total * 2 ** len(exps) / (1 - q) ** n


def qe_order_k(params: QEulerParams):
    """E^{(k)}_{n,chi,q}(x): closed form with (1 + q^{ld})^k denominators."""
    k, d, q = params.k, params.d, params.q
    dens = [(1 + q ** (l * d)) ** k for l in range(params.n + 1)]
    return _finish(_closed_sum(params, [0] * k, dens), params.exact)


def qe_hk(params: QEulerParams):
    """E^{(h,k)}_{n,chi,q}(x): weights q^{(h-j) a_j}, q-Pochhammer denominators."""
    h, k, d, q = params.h, params.k, params.d, params.q
    dens = [qpochhammer(-(q ** (d * (h - k + l))), q**d, k) for l in range(params.n + 1)]
    return _finish(_closed_sum(params, [h - j for j in range(1, k + 1)], dens), params.exact)


def qe_kk(params: QEulerParams):
    """The h = k specialization, summed directly over all digit tuples."""
    n, k, d, q, x = params.n, params.k, params.d, params.q, params.x
    _guard_tuples(d, k)
    exact = params.exact
    vals = params.chi.values if exact else params.chi.complex_values()
    dens = [qpochhammer(-(q ** (l * d)), q**d, k) for l in range(n + 1)]
    total = 0
    for digits in itertools.product(range(d), repeat=k):
        w = _one(exact)
        for a in digits:
            w = w * vals[a]
        if not w:
            continue
        A = sum(digits)
        weight = (-1) ** A * q ** sum((k - j) * a for j, a in enumerate(digits, start=1))
        inner = 0
        for l in range(n + 1):
            inner += math.comb(n, l) * (-1) ** l * q ** (l * (A + x)) / dens[l]
        total = w * (weight * inner) + total
    return _finish(total * 2**k / (1 - q) ** n, exact)


def qe_h1(params: QEulerParams, reading: str = "derived"):
    """E^{(h,1)}_{n,chi,q}(x).

    ``reading="derived"`` sums l over 0..n with denominators 1 + q^{d(h-1+l)}
    and digit weights q^{(h-1)a}; ``"as_printed"`` uses l in 0..d-1,
    denominators 1 + q^{ld} and no digit weight.
    """
    n, h, d, q, x = params.n, params.h, params.d, params.q, params.x
    exact = params.exact
    vals = params.chi.values if exact else params.chi.complex_values()
    if reading == "derived":
        ls = range(n + 1)
        def den(l): return 1 + q ** (d * (h - 1 + l))
        def wa(a): return q ** ((h - 1) * a)
    elif reading == "as_printed":
        ls = range(d)
        def den(l): return 1 + q ** (l * d)
        def wa(a): return 1
    else:
        raise ValueError(f"unknown reading {reading!r}")
    total = 0
    for a in range(d):
        if not vals[a]:
            continue
        inner = 0
        for l in ls:
            inner += math.comb(n, l) * (-1) ** l * q ** (l * (x + a)) / den(l)
        total = vals[a] * ((-1) ** a * wa(a) * inner) + total
    return _finish(total * 2 / (1 - q) ** n, exact)


def moment_lhs(m: int, params: QEulerParams):
    """Left side of the moment identity: a finite digit sum over a q-Pochhammer."""
    k, d, q, x = params.k, params.d, params.q, params.x
    den = qpochhammer(-(q ** (d * (m - k))), q**d, k)
    total = 0
    for _, w in digit_weights(params.chi, tuple(m - j for j in range(1, k + 1)), q):
        total = w + total
    return _finish(total * (2**k * q ** (m * x)) / den, params.exact)


def moment_rhs(m: int, params: QEulerParams):
    """sum_l C(m, l) (q - 1)^l E^{(0,k)}_{l,chi,q}(x)."""
    q = params.q
    total = 0
    for l in range(m + 1):
        total = qe_hk(params.with_(n=l, h=0)) * (math.comb(m, l) * (q - 1) ** l) + total
    return _finish(total, params.exact)


def _residual_verdict(residual, exact: bool, tol: float = 1e-9) -> str:
    if exact:
        return "pass" if not residual else "fail"
    return "pass" if abs(residual) <= tol else "fail"


def verify_moment(m: int, params: QEulerParams) -> IdentityCheck:
    lhs = moment_lhs(m, params)
    rhs = moment_rhs(m, params)
    res = lhs - rhs
    info = dict(params.to_json(), m=m)
    info.pop("n")
    info.pop("h")
    return IdentityCheck("thm3", info, lhs, rhs, res, _residual_verdict(res, params.exact))


def verify_thm4_second(params: QEulerParams) -> IdentityCheck:
    """q^x E^{(h+1,k)}_n(x) - (q - 1) E^{(h,k)}_{n+1}(x) - E^{(h,k)}_n(x)."""
    q, x = params.q, params.x
    lhs = qe_hk(params.with_(h=params.h + 1)) * q**x
    rhs = qe_hk(params.with_(n=params.n + 1)) * (q - 1) + qe_hk(params)
    res = lhs - rhs
    return IdentityCheck("thm4_second", params.to_json(), lhs, rhs, res,
                         _residual_verdict(res, params.exact))


THM4_FIRST_VARIANTS = ("as_printed", "shifted_arg", "shifted_weighted")


def thm4_first_rhs(params: QEulerParams, variant: str):
    """Right side of the first recurrence under one reading.

    as_printed
        2 sum_l chi(l)(-1)^l E^{(h-1,k-1)}_{n,q}(x), the lower-order value
        untwisted and independent of l.
    shifted_arg
        2 sum_l chi(l)(-1)^l E^{(h-1,k-1)}_{n,chi,q}(x + l).
    shifted_weighted
        2 sum_l chi(l)(-1)^l q^{(h-1)l} E^{(h-1,k-1)}_{n,chi,q}(x + l), which is
        what integrating out the first variable produces.
    """
    if params.k < 2:
        raise ValueError("the first recurrence needs k >= 2")
    chi, d, q, h = params.chi, params.d, params.q, params.h
    exact = params.exact
    vals = chi.values if exact else chi.complex_values()
    lower = params.with_(h=h - 1, k=params.k - 1)
    total = 0
    if variant == "as_printed":
        plain = qe_hk(lower.with_(chi=char_trivial(1)))
        for l in range(d):
            if vals[l]:
                total = vals[l] * (-1) ** l * plain + total
    elif variant in ("shifted_arg", "shifted_weighted"):
        for l in range(d):
            if not vals[l]:
                continue
            weight = (-1) ** l
            if variant == "shifted_weighted":
                weight = weight * q ** ((h - 1) * l)
            total = qe_hk(lower.with_(x=params.x + l)) * vals[l] * weight + total
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return _finish(total * 2, exact)


def verify_thm4_first(params: QEulerParams, variant: str | None = None):
    """Residuals of q^{d(h-1)} E(x + d) + E(x) against each RHS reading.

    Returns a dict variant -> IdentityCheck (or a single check when
    ``variant`` is given).
    """
    d, q, h = params.d, params.q, params.h
    lhs = qe_hk(params.with_(x=params.x + d)) * q ** (d * (h - 1)) + qe_hk(params)
    variants = THM4_FIRST_VARIANTS if variant is None else (variant,)
    out = {}
    for v in variants:
        rhs = thm4_first_rhs(params, v)
        res = lhs - rhs
        info = dict(params.to_json(), variant=v)
        out[v] = IdentityCheck("thm4_first", info, lhs, rhs, res,
                               _residual_verdict(res, params.exact))
    return out if variant is None else out[variant]
