"""Truncated fermionic p-adic integrals.

The integral of f over Z_p against the measure mu(j + p^N Z_p) = (-1)^j is
the limit of the alternating sums  sum_{j < p^N} (-1)^j f(j).  Over
X = lim Z/dp^N the same sum runs to d p^N and may carry a character.  Sums are
exact integers reduced mod p^M; everything here is restricted to real
characters, so no p-adic roots of unity are needed.

The structured multivariate integrands

    prod_i q^{c_i j_i} * g(x + j_1 + ... + j_k),   g in {y^n, [y]_q^n, q^{m y}}

reduce to k convolutions of one-dimensional weight vectors followed by a dot
product with a table of g, which is what makes (d p^N)^k ~ 10^7 cheap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import _kernels
from .characters import DirichletChar, _is_prime, char_trivial
from .exactnum import Cyc

__all__ = [
    "DEFAULT_BUDGET",
    "PadicContext",
    "PadicValue",
    "PadicError",
    "BudgetExceeded",
    "Integrand",
    "padic_valuation",
    "padic_reduce",
    "fermionic_sum",
    "fermionic_sum_X",
    "fermionic_sum_multi",
    "fermionic_sum_poly",
    "fermionic_structured",
    "shift_identity_check",
    "integrand_oracle",
    "run_experiment",
]

DEFAULT_BUDGET = 10**7


class PadicError(ValueError):
    pass


class BudgetExceeded(PadicError):
    pass


@dataclass(frozen=True)
class PadicContext:
    p: int
    M: int
    N: int

    def __post_init__(self):
        if self.p < 3 or not _is_prime(self.p):
            raise PadicError(f"p must be an odd prime, got {self.p}")
        if not 1 <= self.M <= self.N:
            raise PadicError(f"need 1 <= M <= N, got M={self.M}, N={self.N}")

    @property
    def modulus(self) -> int:
        return self.p**self.M

    def at_level(self, N: int) -> "PadicContext":
        return PadicContext(self.p, min(self.M, N), N)


@dataclass(frozen=True)
class PadicValue:
    """A residue mod p^M together with the measured precision of the sum.

    ``valuation_floor`` is min(M, v_p(S_N - S_{N-1})): the agreement of the
    last two truncation levels, used as the estimate of v_p(error).
    """

    residue: int
    valuation_floor: int
    p: int = field(default=3, compare=False)
    M: int = field(default=1, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.p**self.M)

    def matches(self, other: "PadicValue | int", M: int | None = None) -> bool:
        M = self.M if M is None else M
        r = other.residue if isinstance(other, PadicValue) else other
        return (self.residue - r) % self.p**M == 0

    def to_json(self) -> dict:
        return {"residue": self.residue, "valuation_floor": self.valuation_floor,
                "p": self.p, "M": self.M}


def padic_valuation(r, p: int) -> float:
    r = Fraction(r)
    if r == 0:
        return math.inf
    v = 0
    num, den = r.numerator, r.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _as_fraction(r) -> Fraction:
    if isinstance(r, Cyc):
        if not r.is_rational():
            raise PadicError("only rational values can be reduced p-adically")
        return r.to_rational()
    return Fraction(r)


def _reduce_mod(r, p: int, mod: int) -> int:
    r = _as_fraction(r)
    if r.denominator % p == 0:
        raise PadicError(f"{r} is not {p}-integral")
    return r.numerator * pow(r.denominator, -1, mod) % mod


def padic_reduce(r, ctx: PadicContext) -> PadicValue:
    """r mod p^M for a p-integral rational r (an exact value, so the floor is M)."""
    return PadicValue(_reduce_mod(r, ctx.p, ctx.modulus), ctx.M, ctx.p, ctx.M)


def _real_table(chi: DirichletChar, p: int) -> list[int]:
    if not chi.is_real:
        raise PadicError("p-adic sums need a real character")
    if chi.d % p == 0:
        raise PadicError(f"p={p} divides the conductor d={chi.d}")
    return chi.int_values()


def _with_floor(level_sum: Callable[[int], int], ctx: PadicContext) -> PadicValue:
    mod = ctx.modulus
    top = level_sum(ctx.N) % mod
    if ctx.N > 1:
        diff = (top - level_sum(ctx.N - 1)) % mod
        floor = ctx.M if diff == 0 else min(ctx.M, int(padic_valuation(diff, ctx.p)))
    else:
        floor = 0
    return PadicValue(top, floor, ctx.p, ctx.M)


def _check_budget(size: int, budget: int):
    if size > budget:
        raise BudgetExceeded(f"{size} terms exceed the budget of {budget}")


# -- generic (callable) sums: the brute-force oracle --------------------------

def fermionic_sum(f: Callable[[int], object], ctx: PadicContext, budget: int = DEFAULT_BUDGET) -> PadicValue:
    """sum_{j < p^N} (-1)^j f(j) mod p^M."""
    return fermionic_sum_X(f, char_trivial(1), ctx, budget=budget)


def fermionic_sum_X(f: Callable[[int], object], chi: DirichletChar, ctx: PadicContext,
                    budget: int = DEFAULT_BUDGET) -> PadicValue:
    """sum_{j < d p^N} (-1)^j chi(j) f(j) mod p^M, with d the modulus of chi."""
    tab = _real_table(chi, ctx.p)
    d, p, mod = chi.d, ctx.p, ctx.modulus
    _check_budget(d * p**ctx.N, budget)

    def level(N):
        total = 0
        for j in range(d * p**N):
            c = tab[j % d]
            if c:
                v = _reduce_mod(f(j), p, mod)
                total += v if (c > 0) == (j % 2 == 0) else -v
        return total

    return _with_floor(level, ctx)


def fermionic_sum_multi(k: int, f: Callable[..., object], chi: DirichletChar, ctx: PadicContext,
                        budget: int = DEFAULT_BUDGET) -> PadicValue:
    """k-fold sum of (-1)^{sum j} prod chi(j_i) f(j_1, ..., j_k) over [0, d p^N)^k.

    An :class:`Integrand` goes through the convolution path; any other
    callable is summed term by term.
    """
    if k < 1:
        raise PadicError("k must be positive")
    if isinstance(f, Integrand):
        if f.k != k:
            raise PadicError(f"integrand has {f.k} variables, expected {k}")
        return fermionic_structured(f, chi, ctx, budget)
    tab = _real_table(chi, ctx.p)
    d, p, mod = chi.d, ctx.p, ctx.modulus
    _check_budget((d * p**ctx.N) ** k, budget)

    def level(N):
        L = d * p**N
        signs = [(-1) ** j * tab[j % d] for j in range(L)]
        support = [j for j in range(L) if signs[j]]
        total = 0
        for js in itertools.product(support, repeat=k):
            sign = math.prod(signs[j] for j in js)
            total += sign * _reduce_mod(f(*js), p, mod)
        return total

    return _with_floor(level, ctx)


def fermionic_sum_poly(coeffs, ctx: PadicContext, chi: DirichletChar | None = None,
                       budget: int = DEFAULT_BUDGET) -> PadicValue:
    """Single integral of the polynomial sum_e coeffs[e] y^e (p-integral coefficients)."""
    chi = chi or char_trivial(1)
    tab = _real_table(chi, ctx.p)
    d, p, mod = chi.d, ctx.p, ctx.modulus
    _check_budget(d * p**ctx.N, budget)
    cf = [_reduce_mod(c, p, mod) for c in coeffs] or [0]

    def level(N):
        L = d * p**N
        w = _kernels.alt_char_weights(L, tab, 1, mod)
        return _kernels.dot_mod(w, _kernels.poly_table(cf, 0, L, mod), mod)

    return _with_floor(level, ctx)


# -- structured multivariate integrands -----------------------------------------

@dataclass(frozen=True)
class Integrand:
    """prod_i q^{exps[i] j_i} * g(x + sum j) with g chosen by ``kind``:

    ``"power"``: y^n,  ``"qbracket"``: [y]_q^n,  ``"qpower"``: q^{n y}.
    """

    kind: str
    n: int
    x: int = 0
    exps: tuple[int, ...] = (0,)
    q: int = 1

    def __post_init__(self):
        if self.kind not in ("power", "qbracket", "qpower"):
            raise PadicError(f"unknown integrand kind {self.kind!r}")
        if self.n < 0 or self.x < 0:
            raise PadicError("n and x must be non-negative")
        object.__setattr__(self, "exps", tuple(int(c) for c in self.exps))
        if not self.exps:
            raise PadicError("exps must have one entry per variable")

    @property
    def k(self) -> int:
        return len(self.exps)

    def __call__(self, *js) -> Fraction:
        y = self.x + sum(js)
        q = Fraction(self.q)
        weight = math.prod((q ** (c * j) for c, j in zip(self.exps, js)), start=Fraction(1))
        if self.kind == "power":
            g = Fraction(y) ** self.n
        elif self.kind == "qbracket":
            g = ((q**y - 1) / (q - 1)) ** self.n
        else:
            g = q ** (self.n * y)
        return weight * g

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "x": self.x, "exps": list(self.exps), "q": self.q}


def _g_table(f: Integrand, length: int, ctx: PadicContext) -> np.ndarray:
    p, mod = ctx.p, ctx.modulus
    if f.kind == "power":
        return _kernels.pow_table(_kernels.poly_table([0, 1], f.x, length, mod), f.n, mod)
    q = f.q
    if f.kind == "qpower":
        base = pow(q, f.n, mod)
        return _kernels.qpow_table(base, pow(base, f.x, mod), length, mod)
    if q == 1 or (q - 1) % p:
        raise PadicError("q-brackets need q = 1 (mod p), q != 1")
    pv = p ** int(padic_valuation(q - 1, p))
    unit_inv = pow((q - 1) // pv, -1, mod)
    big = mod * pv
    table = _kernels.qbracket_table(q % big, pow(q, f.x, big), length, pv, unit_inv, big, mod)
    return _kernels.pow_table(table, f.n, mod)


def fermionic_structured(f: Integrand, chi: DirichletChar, ctx: PadicContext,
                         budget: int = DEFAULT_BUDGET) -> PadicValue:
    """k-fold integral over X^k of prod chi(j_i) times the structured integrand ``f``."""
    tab = _real_table(chi, ctx.p)
    d, p, mod = chi.d, ctx.p, ctx.modulus
    if (f.kind != "power" or any(f.exps)) and (f.q - 1) % p:
        raise PadicError("q must be congruent to 1 mod p")
    _check_budget((d * p**ctx.N) ** f.k, budget)

    def level(N):
        L = d * p**N
        acc = None
        for c in f.exps:
            w = _kernels.alt_char_weights(L, tab, pow(f.q, c, mod), mod)
            acc = w if acc is None else _kernels.conv_mod(acc, w, mod)
        return _kernels.dot_mod(acc, _g_table(f, len(acc), ctx), mod)

    return _with_floor(level, ctx)


def integrand_oracle(f: Integrand, chi: DirichletChar):
    """Exact closed-form value of the integral of ``f`` (None when there is none).

    power, no q-weights: the generalized Euler number E^{(k)}_{n,chi}(x);
    qbracket, no q-weights: E^{(k)}_{n,chi,q}(x);
    qbracket with exps h-1, ..., h-k: E^{(h,k)}_{n,chi,q}(x);
    qpower with exps -1, ..., -k: the q-Pochhammer digit sum of the moment identity.
    """
    from .classical import euler_generalized_order_k
    from .core import QEulerParams, moment_lhs, qe_hk, qe_order_k

    k = f.k
    if f.kind == "power":
        if any(f.exps):
            return None
        return euler_generalized_order_k(f.n, k, chi, f.x)
    if f.q == 1:
        return None
    if f.kind == "qbracket":
        if not any(f.exps):
            return qe_order_k(QEulerParams(n=f.n, k=k, chi=chi, q=Fraction(f.q), x=f.x))
        h = f.exps[0] + 1
        if f.exps != tuple(h - j for j in range(1, k + 1)):
            return None
        return qe_hk(QEulerParams(n=f.n, k=k, h=h, chi=chi, q=Fraction(f.q), x=f.x))
    if f.exps != tuple(-j for j in range(1, k + 1)):
        return None
    return moment_lhs(f.n, QEulerParams(n=0, k=k, chi=chi, q=Fraction(f.q), x=f.x))


# -- shift identity ------------------------------------------------------------------------

def shift_identity_check(f: Callable[[int], object], n_shift: int, ctx: PadicContext) -> dict:
    """I(f_n) + (-1)^{n-1} I(f) = 2 sum_{l<n} (-1)^{n-1-l} f(l), f_n(x) = f(x + n).

    Both truncated integrals are summed exactly at level N; the residual is
    (-1)^n sum_{i<n} (-1)^i (f(i) - f(i + p^N)), whose valuation grows with N
    for polynomials.
    """
    if n_shift < 1:
        raise PadicError("n_shift must be positive")
    P = ctx.p**ctx.N
    n = n_shift
    i_shift = sum((Fraction((-1) ** j) * Fraction(f(j + n)) for j in range(P)), Fraction(0))
    i_plain = sum((Fraction((-1) ** j) * Fraction(f(j)) for j in range(P)), Fraction(0))
    lhs = i_shift + (-1) ** (n - 1) * i_plain
    rhs = 2 * sum((Fraction((-1) ** (n - 1 - l)) * Fraction(f(l)) for l in range(n)), Fraction(0))
    residual = lhs - rhs
    v = padic_valuation(residual, ctx.p)
    return {
        "identity": "eq3_shift",
        "p": ctx.p,
        "M": ctx.M,
        "N": ctx.N,
        "n_shift": n,
        "lhs": _reduce_mod(lhs, ctx.p, ctx.modulus),
        "rhs": _reduce_mod(rhs, ctx.p, ctx.modulus),
        "residual_valuation": None if v == math.inf else int(v),
        # an exactly vanishing residual is reported as the truncation level
        "valuation_floor": ctx.N if v == math.inf else int(v),
        "holds": v >= ctx.M,
    }


# -- experiment descriptors ---------------------------------------------------------

def run_experiment(desc: dict, budget: int = DEFAULT_BUDGET) -> dict:
    """Run {p, M, N, d, chi, k, integrand, q} and compare with the closed form.

    ``integrand`` is {"kind", "n", "x", "exps"}; exps defaults to k zeros.
    """
    from .characters import char_by_name

    ctx = PadicContext(int(desc["p"]), int(desc["M"]), int(desc["N"]))
    d = int(desc.get("d", 1))
    chi = char_by_name(d, str(desc.get("chi", "trivial")))
    k = int(desc.get("k", 1))
    spec = dict(desc["integrand"])
    q = int(desc.get("q", 1 + ctx.p))
    exps = tuple(spec.get("exps", [0] * k))
    if len(exps) != k:
        raise PadicError("integrand exps must have k entries")
    f = Integrand(spec["kind"], int(spec["n"]), int(spec.get("x", 0)), exps, q)
    value = fermionic_structured(f, chi, ctx, budget)
    exact = integrand_oracle(f, chi)
    oracle = None if exact is None else padic_reduce(exact, ctx).residue
    return {
        "p": ctx.p, "M": ctx.M, "N": ctx.N, "d": d, "chi": chi.label, "k": k, "q": q,
        "integrand": f.to_json(),
        "residue": value.residue,
        "valuation_floor": value.valuation_floor,
        "oracle": oracle,
        "match": None if oracle is None else value.matches(oracle),
    }
