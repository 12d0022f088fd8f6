"""Series representations and their regularized evaluation.

The m-series attached to the closed forms diverge at the boundary (the
negative-binomial weights at z = 1), or, for h < k, grow geometrically. They
are evaluated as functions of an Abel parameter t:

* ``t = 1`` directly, summed in whole periods of the sign/character pattern,
  when the series converges;
* Abel limit: partial sums at t < 1 (``AbelConfig.t_grid``) followed by
  polynomial (Neville) extrapolation in ``s = 1 - t`` to ``s = 0``;
* exact rational continuation when t = 1 lies outside the disc of convergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .core import QEulerParams, digit_weights
from .exactnum import Cyc, embed_complex
from .qcalc import qint, qpochhammer

__all__ = [
    "AbelConfig",
    "ExtrapolationError",
    "neville_at_zero",
    "abel_limit",
    "rational_limit",
    "qe_k1_series",
    "qe_order_k_series",
    "qe_hk_series",
    "eq22_series",
    "eq11_compressed_series",
    "negbinom_generating_check",
    "qbinom_generating_check",
    "scalar_abel",
]


def _default_grid() -> tuple[float, ...]:
    # Chebyshev nodes for s = 1 - t on [0.05, 0.5]; the Abel functions here
    # are analytic for |s| < 2, and t closer to 1 costs digits to cancellation
    a, b, N = 0.05, 0.5, 16
    s = [(a + b) / 2 + (b - a) / 2 * math.cos(math.pi * (2 * i + 1) / (2 * N)) for i in range(N)]
    return tuple(sorted(1.0 - v for v in s))


@dataclass(frozen=True)
class AbelConfig:
    """How the divergent constant part of a boundary series is summed.

    ``method="exact"`` uses the closed form of the Abel value of a periodic
    mean-zero sequence times the weights; ``"extrapolate"`` evaluates the
    series on ``t_grid`` and extrapolates to t = 1.
    """

    t_grid: tuple[float, ...] = field(default_factory=_default_grid)
    method: str = "exact"
    tail_bound: float = 1e-17
    extrapolation_order: int | None = None  # None: use every grid point
    max_terms: int = 2_000_000
    rel_error_limit: float = 1e-5

    def __post_init__(self):
        grid = tuple(float(t) for t in self.t_grid)
        if not grid or any(not 0.0 < t < 1.0 for t in grid):
            raise ValueError("t_grid values must lie in (0, 1)")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("t_grid must be strictly increasing")
        object.__setattr__(self, "t_grid", grid)
        if self.method not in ("exact", "extrapolate"):
            raise ValueError("method must be 'exact' or 'extrapolate'")


class ExtrapolationError(ArithmeticError):
    pass


def neville_at_zero(s, f):
    """Value at 0 of the interpolating polynomial through (s_i, f_i), plus the
    difference to the estimate that drops the first (farthest) point."""
    s = [float(v) for v in s]
    f = [complex(v) for v in f]
    n = len(s)
    table = list(f)
    prev = table[-1]
    for level in range(1, n):
        for i in range(n - level):
            j = i + level
            table[i] = (s[j] * table[i] - s[i] * table[i + 1]) / (s[j] - s[i])
        if level == n - 2:
            prev = table[1]
    best = table[0]
    return best, abs(best - prev) if n > 1 else math.inf


def _log_binom_bound(m: float, k: int) -> float:
    # log C(m+k-1, k-1), continuous in m
    return math.lgamma(m + k) - math.lgamma(m + 1) - math.lgamma(k)


def _nterms(ratio: float, k: int, period: int, tol: float, max_terms: int) -> int:
    """Smallest multiple of ``period`` past which C(m+k-1,k-1) ratio^m < tol."""
    if ratio >= 1.0:
        raise ExtrapolationError("series does not converge for this t")
    if ratio == 0.0:
        return period
    log_r = math.log(ratio)
    log_tol = math.log(tol)
    m = 1.0
    while _log_binom_bound(m, k) + m * log_r > log_tol or m * -log_r < k:
        m *= 1.5
        if m > max_terms:
            raise ExtrapolationError(f"more than {max_terms} terms needed")
    m = int(math.ceil(m))
    return (m + period - 1) // period * period


def _kernel_sum(offsets, weights, *, step, q, n, k, gq, w, t, coeffs, nterms, subtract_limit=False):
    offsets = np.asarray(offsets, dtype=np.float64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    weights = np.asarray(weights, dtype=np.complex128)
    total = 0j
    for unit, c in ((1.0, coeffs.real), (1j, coeffs.imag)):
        if np.any(c):
            sums = _kernels.bracket_series(offsets, step, q, n, k, gq, w, t, np.ascontiguousarray(c),
                                           nterms, subtract_limit)
            total += unit * complex(np.dot(weights, sums))
    return total


def _series_values(offsets, weights, *, step, q, n, k, gq, w, t, coeffs, cfg: AbelConfig):
    """sum_A weight_A * sum_m c[m % P] G_m (t w)^m [A + step m]_q^n."""
    tw = t * w
    if tw < 1.0:
        ratio = tw
    elif tw == 1.0 and k == 1:
        # only the q^{step m} part of the bracket decays; the rest is
        # handled by the period mean inside the kernel
        ratio = q**step
    else:
        raise ExtrapolationError("series diverges at this t; use the Abel limit")
    tol = cfg.tail_bound * max(1e-300, 1.0 - ratio)
    nterms = _nterms(ratio, k, len(coeffs), tol, cfg.max_terms)
    return _kernel_sum(offsets, weights, step=step, q=q, n=n, k=k, gq=gq, w=w, t=t,
                       coeffs=coeffs, nterms=nterms)


def _bernoulli_poly(n: int, x: Fraction) -> Fraction:
    import sympy

    v = sympy.bernoulli(n, sympy.Rational(x.numerator, x.denominator))
    return Fraction(int(v.p), int(v.q))


def _binom_poly(k: int) -> list[Fraction]:
    # coefficients in m of C(m+k-1, k-1)
    poly = [Fraction(1)]
    for i in range(1, k):
        poly = [Fraction(0)] + poly
        for e in range(len(poly) - 1):
            poly[e] += i * poly[e + 1]
        poly = [c / i for c in poly]
    return poly


def _abel_periodic_poly(c, poly):
    """Abel value of sum_{m>=0} c[m % P] p(m) for mean-zero periodic c.

    Splitting m = r + P i (r = 1..P) turns each class into a Hurwitz zeta
    value zeta(-j, r/P) = -B_{j+1}(r/P)/(j+1); the poles cancel because the
    period sums to zero.
    """
    P = len(c)
    total = c[0] * poly[0]
    for j, pj in enumerate(poly):
        if not pj:
            continue
        for r in range(1, P + 1):
            cr = c[r % P]
            if cr:
                zeta = -_bernoulli_poly(j + 1, Fraction(r, P)) / (j + 1)
                total = cr * (pj * P**j * zeta) + total
    return total


def scalar_abel(c, k: int, Q: Fraction | None = None):
    """Exact Abel value of sum_m c[m % P] G_m with G_m = C(m+k-1, m), or the
    Gaussian binomial [m+k-1 choose m]_Q when Q is given."""
    if sum(c, Fraction(0)) != 0:
        raise ValueError("periodic coefficients must have zero mean")
    if Q is None:
        return _abel_periodic_poly(c, _binom_poly(k))
    # G_m = prod_{i<k} (1 - Q^i X) / (1 - Q^i) with X = Q^m
    beta = [Fraction(1)]
    for i in range(1, k):
        qi = Q**i
        beta = [(a - qi * b) / (1 - qi) for a, b in zip(beta + [0], [0] + beta)]
    P = len(c)
    total = _abel_periodic_poly(c, [beta[0]])
    for j in range(1, len(beta)):
        Qj = Q**j
        geo = sum((c[r] * Qj**r for r in range(P)), Fraction(0))
        total = geo * (beta[j] / (1 - Qj**P)) + total
    return total


def _boundary_value(offsets, weights, *, step, q, n, k, gq, w, coeffs, cfg: AbelConfig,
                    exact_coeffs=None, exact_gq=None):
    """Abel value at t = 1 of the weighted bracket series.

    When the weights G_m do not decay, [y]_q^n is split as (1-q)^(-n) plus a
    remainder of order q^y. The remainder series converges at t = 1 and is
    summed directly; what is left is the scalar series sum_m c_m G_m, whose
    Abel value does not involve the bracket.
    """
    kw = dict(step=step, q=q, n=n, k=k, gq=gq, w=w, coeffs=coeffs, cfg=cfg)
    if w < 1.0 or k == 1:
        return _series_values(offsets, weights, t=1.0, **kw)
    ratio = q**step
    nterms = _nterms(ratio, k, len(coeffs), cfg.tail_bound * (1.0 - ratio), cfg.max_terms)
    rest = _kernel_sum(offsets, weights, step=step, q=q, n=n, k=k, gq=gq, w=w, t=1.0,
                       coeffs=coeffs, nterms=nterms, subtract_limit=True)
    if cfg.method == "exact" and exact_coeffs is not None:
        const = embed_complex(scalar_abel(exact_coeffs, k, exact_gq))
    else:
        scalar = dict(kw, n=0)
        const = abel_limit(lambda t: _series_values([0.0], [1.0], t=t, **scalar), cfg)
    return rest + const * (1.0 - q) ** -n * complex(np.sum(np.asarray(weights, dtype=np.complex128)))


def abel_limit(fn, cfg: AbelConfig, scale: float = 1.0):
    """Extrapolate fn(t) to t = 1 from the configured grid.

    Raises ExtrapolationError when the last two extrapolants disagree by more
    than ``cfg.rel_error_limit * scale``.
    """
    grid = cfg.t_grid
    if cfg.extrapolation_order is not None:
        grid = grid[-(cfg.extrapolation_order + 1):]
    values = [fn(t) for t in grid]
    value, err = neville_at_zero([1.0 - t for t in grid], values)
    if err > cfg.rel_error_limit * max(1.0, scale):
        raise ExtrapolationError(f"Abel extrapolation did not settle (spread {err:.3g})")
    return value


def _real_if_possible(z: complex, weights) -> float | complex:
    if all(complex(wt).imag == 0 for wt in weights):
        return z.real
    return z


# -- exact rational continuation ------------------------------------------------

def rational_limit(coeff, max_degree: int, extra: int = 4) -> Fraction:
    """Value at t = 1 of the rational function whose Taylor coefficients are
    ``coeff(0), coeff(1), ...`` (exact Fractions).

    The denominator is the shortest linear recurrence of the coefficients
    (Berlekamp-Massey); it is accepted once ``extra`` terms past 2L have been
    consumed without a discrepancy.
    """
    seq: list[Fraction] = []
    C, B = [Fraction(1)], [Fraction(1)]
    L, shift, b = 0, 1, Fraction(1)
    quiet = 0
    while not (quiet >= extra and len(seq) >= 2 * L + extra):
        if len(seq) > 2 * max_degree + extra:
            raise ExtrapolationError(f"no rational fit with denominator degree <= {max_degree}")
        i = len(seq)
        seq.append(Fraction(coeff(i)))
        disc = sum((C[j] * seq[i - j] for j in range(L + 1)), Fraction(0))
        if disc == 0:
            shift += 1
            quiet += 1
            continue
        quiet = 0
        T = list(C)
        coef = disc / b
        C = C + [Fraction(0)] * max(0, len(B) + shift - len(C))
        for j, bj in enumerate(B):
            C[j + shift] -= coef * bj
        if 2 * L <= i:
            L, B, b, shift = i + 1 - L, T, disc, 1
        else:
            shift += 1
    C = C[: L + 1]
    num = [sum(C[j] * seq[i - j] for j in range(min(i, L) + 1)) for i in range(L)]
    den1 = sum(C)
    if den1 == 0:
        raise ExtrapolationError("continuation has a pole at t = 1")
    return sum(num, Fraction(0)) / den1


# -- series routes ------------------------------------------------------------

def _float_q(params: QEulerParams) -> float:
    q = float(params.q)
    if not 0.0 < q < 1.0:
        raise ValueError("series routes need 0 < q < 1")
    return q


def _complex_weights(params: QEulerParams, exps):
    q = Fraction(params.q)
    pairs = digit_weights(params.chi, tuple(exps), q)
    return [A for A, _ in pairs], [embed_complex(w) for _, w in pairs]


def qe_k1_series(params: QEulerParams, block: int | None = None, terms: int | None = None):
    """2 sum_m chi(m) (-1)^m [m + x]_q^n summed in blocks of 2d terms.

    After ``terms`` blocks the partial sums of the final block are averaged;
    a block carries a whole period of chi(m)(-1)^m, which has mean zero, so
    this is the Abel value of the constant part plus a geometric tail.
    """
    q = _float_q(params)
    d, n = params.d, params.n
    block = 2 * d if block is None else block
    if block <= 0 or block % (2 * d):
        raise ValueError("block must be a positive multiple of 2d")
    if terms is None:
        terms = max(1, math.ceil(math.log(1e-18) / math.log(q) / block) + 1)
    coeffs = [complex(params.chi(m)) * (-1) ** m for m in range(block)]
    offsets = np.array([float(params.x)])
    total = 0j
    for unit, c in ((1.0, np.real(coeffs)), (1j, np.imag(coeffs))):
        if np.any(c):
            s = _kernels.bracket_series(offsets, 1, q, n, 1, 1.0, 1.0, 1.0, np.ascontiguousarray(c),
                                        block * terms)
            total += unit * s[0]
    return _real_if_possible(2 * total, params.chi.complex_values())


def qe_order_k_series(params: QEulerParams, abel: AbelConfig | None = None):
    """2^k sum_a (chi, sign) sum_m C(m+k-1, m) (-1)^m [x + sum a + m d]_q^n."""
    abel = abel or AbelConfig()
    q = _float_q(params)
    k, d, n, x = params.k, params.d, params.n, params.x
    As, ws = _complex_weights(params, [0] * k)
    offsets = [x + A for A in As]
    kw = dict(step=d, q=q, n=n, k=k, gq=1.0, w=1.0, coeffs=[1.0, -1.0], cfg=abel)
    value = _boundary_value(offsets, ws, exact_coeffs=[Fraction(1), Fraction(-1)], **kw)
    return _real_if_possible(value * 2**k, ws)


def _hk_exact(params: QEulerParams, gauss_base: Fraction, As, ws_exact):
    q = Fraction(params.q)
    h, k, d, n, x = params.h, params.k, params.d, params.n, params.x
    mw = -(q ** (d * (h - k)))
    scaled: list[Fraction] = []  # [m+k-1 choose m]_base (-w)^m

    def weight(m):
        while len(scaled) <= m:
            j = len(scaled)
            if j == 0:
                scaled.append(Fraction(1))
            else:
                ratio = (1 - gauss_base ** (j + k - 1)) / (1 - gauss_base**j)
                scaled.append(scaled[-1] * ratio * mw)
        return scaled[m]

    total = 0
    for A, wt in zip(As, ws_exact):
        u = x + A

        def coeff(m, u=u):
            return weight(m) * qint(u + d * m, q) ** n

        total = wt * rational_limit(coeff, max((n + 1) * k, k + d * n) + 1) + total
    return total * 2**k


def qe_hk_series(params: QEulerParams, abel: AbelConfig | None = None, gauss_base: str = "q^d",
                 exact: bool = False):
    """Gaussian-binomial m-series for E^{(h,k)}_{n,chi,q}(x).

    ``gauss_base`` selects the Gaussian binomial base: ``"q^d"`` (what the
    q-binomial theorem produces) or ``"q"`` (the alternative subscript).
    The bracket [m + (x + sum a)/d]_{q^d} scaled by [d]_q is [x + sum a + dm]_q.
    For h >= k the series is Abel-summed; for h < k the disc of convergence
    excludes t = 1 and the exact rational continuation is used.
    """
    abel = abel or AbelConfig()
    q = _float_q(params)
    h, k, d, n, x = params.h, params.k, params.d, params.n, params.x
    if gauss_base not in ("q^d", "q"):
        raise ValueError("gauss_base must be 'q^d' or 'q'")
    exps = [h - j for j in range(1, k + 1)]
    pairs = digit_weights(params.chi, tuple(exps), Fraction(params.q))
    As = [A for A, _ in pairs]
    ws_exact = [w for _, w in pairs]
    ws = [embed_complex(w) for w in ws_exact]
    if h < k or exact:
        base = Fraction(params.q) ** d if gauss_base == "q^d" else Fraction(params.q)
        value = _hk_exact(params, base, As, ws_exact)
        if exact:
            return value if isinstance(value, Cyc) else Cyc.rational(value)
        return _real_if_possible(embed_complex(value), ws)
    gq = q**d if gauss_base == "q^d" else q
    offsets = [x + A for A in As]
    kw = dict(step=d, q=q, n=n, k=k, gq=gq, w=q ** (d * (h - k)), coeffs=[1.0, -1.0], cfg=abel)
    gq_exact = Fraction(params.q) ** d if gauss_base == "q^d" else Fraction(params.q)
    value = _boundary_value(offsets, ws, exact_coeffs=[Fraction(1), Fraction(-1)],
                            exact_gq=gq_exact, **kw)
    return _real_if_possible(value * 2**k, ws)


def eq22_series(params: QEulerParams):
    """2 sum_m chi(m) q^{(h-1)m} (-1)^m [m + x]_q^n, the k = 1 weighted series.

    Summed at t = 1 in blocks of 2d when q^{h-1} <= 1; for h < 1 it is
    continued exactly, one residue class of m mod d at a time.
    """
    q = _float_q(params)
    h, d, n, x = params.h, params.d, params.n, params.x
    vals = params.chi.complex_values()
    if h >= 1:
        coeffs = [vals[m % d] * (-1) ** m for m in range(2 * d)]
        cfg = AbelConfig()
        total = _series_values([float(x)], [1.0], step=1, q=q, n=n, k=1, gq=1.0,
                               w=q ** (h - 1), t=1.0, coeffs=coeffs, cfg=cfg)
        return _real_if_possible(2 * total, vals)
    qe = Fraction(params.q)
    total = 0
    for r in range(d):
        v = params.chi(r)
        if not v:
            continue

        def coeff(j, r=r):
            m = r + d * j
            return (-1) ** m * qe ** ((h - 1) * m) * qint(m + x, qe) ** n

        total = v * rational_limit(coeff, n + 2) + total
    return _real_if_possible(2 * embed_complex(total), vals)


def eq11_compressed_series(params: QEulerParams, abel: AbelConfig | None = None):
    """The (k-1)-fold digit sum with chi(m) moved inside the m-series:

    2^k sum_{a_1..a_{k-1}} (chi, sign) sum_m C(m+k-1, m)(-1)^m chi(m) [x + sum a + m]_q^n.
    """
    abel = abel or AbelConfig()
    q = _float_q(params)
    k, d, n, x = params.k, params.d, params.n, params.x
    As, ws = _complex_weights(params, [0] * (k - 1))
    offsets = [x + A for A in As]
    vals = params.chi.complex_values()
    coeffs = [vals[m % d] * (-1) ** m for m in range(2 * d)]
    exact = [params.chi(m) * (-1) ** m for m in range(2 * d)]
    kw = dict(step=1, q=q, n=n, k=k, gq=1.0, w=1.0, coeffs=coeffs, cfg=abel)
    value = _boundary_value(offsets, ws, exact_coeffs=exact, **kw)
    return _real_if_possible(value * 2**k, ws + vals)


def negbinom_generating_check(z: float, k: int, t: float = 1.0, tol: float = 1e-18) -> float:
    """|sum_m C(m+k-1, m)(-t z)^m - (1 + t z)^(-k)| for |t z| < 1."""
    nterms = _nterms(abs(t * z), k, 1, tol, 10**7)
    m = np.arange(nterms, dtype=np.float64)
    logc = np.array([_log_binom_bound(v, k) for v in m])
    terms = np.exp(logc + m * math.log(abs(t * z))) * np.where(m % 2 == 0, 1.0, -1.0) * np.sign(t * z) ** m
    return abs(math.fsum(terms) - (1.0 + t * z) ** -k)


def qbinom_generating_check(s: float, Q: float, k: int, tol: float = 1e-18) -> float:
    """|sum_m [m+k-1 choose m]_Q (-s)^m - 1 / (-s : Q)_k| for 0 < s < 1."""
    nterms = _nterms(abs(s), k, 1, tol, 10**7)
    total = []
    G = 1.0
    for m in range(nterms):
        if m:
            G *= (1.0 - Q ** (m + k - 1)) / (1.0 - Q**m)
        total.append(G * (-s) ** m)
    return abs(math.fsum(total) - 1.0 / qpochhammer(-s, Q, k))
