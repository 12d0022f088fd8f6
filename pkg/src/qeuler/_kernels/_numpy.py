"""Pure-numpy implementations of the hot loops."""

from __future__ import annotations

import math

import numpy as np

_I63 = 2**63 - 1


def bracket_series(A, step, q, n, k, gq, w, t, c, nterms, subtract_limit=False):
    """Per-offset partial sums of  sum_m c[m % P] G_m (t w)^m [A + step m]_q^n.

    With ``subtract_limit`` the bracket power is replaced by
    [y]_q^n - (1 - q)^(-n), evaluated without cancellation for q^y < 1.

    ``G_m`` is C(m+k-1, m), or its Gaussian analogue in base ``gq`` when
    ``gq != 1``. The returned value is the mean of the last ``P`` partial sums
    (``P = len(c)``), which is the Abel value for a period-P, mean-zero sign
    pattern. Summation uses exactly rounded ``math.fsum``.
    """
    A = np.asarray(A, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    m = np.arange(nterms, dtype=np.float64)
    # every factor is formed directly from m; recurrences drift by O(m) ulps
    G = np.ones(nterms)
    for i in range(1, k):
        if gq == 1.0:
            G = G * (m + i) / i
        else:
            G = G * (1.0 - gq ** (m + i)) / (1.0 - gq**i)
    geo = (t * w) ** m
    cm = c[np.arange(nterms) % len(c)]
    base = cm * G * geo
    out = np.empty(len(A))
    for i, a in enumerate(A):
        u = q ** (a + step * m)
        if subtract_limit:
            lim = (1.0 - q) ** -n
            with np.errstate(divide="ignore", invalid="ignore"):
                acc = lim * np.expm1(n * np.log1p(-u))
            plain = ((1.0 - u) / (1.0 - q)) ** n - lim
            fac = np.where(u < 1.0, acc, plain)
        else:
            fac = ((1.0 - u) / (1.0 - q)) ** n
        terms = base * fac
        P = min(len(c), nterms)
        head = math.fsum(terms[: nterms - P])
        tail = terms[nterms - P:]
        # partial sums S_{N-P}, ..., S_{N-1}; their mean
        out[i] = head + math.fsum(tail * np.arange(P, 0, -1)) / P
    return out


def _check_mod(mod):
    if mod >= 3_000_000_000:
        raise OverflowError("modulus too large for int64 kernels")


def powmod_vec(base, exps, mod):
    _check_mod(mod)
    exps = np.asarray(exps, dtype=np.int64).copy()
    result = np.ones(exps.shape, dtype=np.int64)
    b = np.int64(base % mod)
    while exps.any():
        odd = (exps & 1).astype(bool)
        result[odd] = result[odd] * b % mod
        b = b * b % mod
        exps >>= 1
    return result % mod


def alt_char_weights(L, chi_tab, base, mod):
    """w_j = (-1)^j chi(j mod d) base^j mod ``mod`` for 0 <= j < L."""
    j = np.arange(L, dtype=np.int64)
    chi_tab = np.asarray(chi_tab, dtype=np.int64)
    sign = 1 - 2 * (j & 1)
    w = sign * chi_tab[j % len(chi_tab)] % mod
    return w * powmod_vec(base, j, mod) % mod


def conv_mod(a, b, mod):
    _check_mod(mod)
    a = np.asarray(a, dtype=np.int64) % mod
    b = np.asarray(b, dtype=np.int64) % mod
    if min(len(a), len(b)) * (mod - 1) ** 2 < _I63:
        return np.convolve(a, b) % mod
    # split one operand into 15-bit limbs
    if mod >= 2**30 or min(len(a), len(b)) >= 2**17:
        raise OverflowError("convolution too large for int64 limbs")
    lo = a & 0x7FFF
    hi = a >> 15
    return (np.convolve(hi, b) % mod * (2**15) + np.convolve(lo, b)) % mod


def dot_mod(a, b, mod):
    a = np.asarray(a, dtype=np.int64) % mod
    b = np.asarray(b, dtype=np.int64) % mod
    total = 0
    # chunked so partial sums stay below 2**63
    chunk = max(1, _I63 // max(1, (mod - 1) ** 2))
    for s in range(0, len(a), chunk):
        total = (total + int(np.dot(a[s:s + chunk], b[s:s + chunk]) % mod)) % mod
    return total


def pow_table(table, n, mod):
    table = np.asarray(table, dtype=np.int64) % mod
    out = np.ones_like(table)
    for _ in range(n):
        out = out * table % mod
    return out


def poly_table(coeffs, y0, length, mod):
    """Polynomial (little-endian coefficients mod ``mod``) at y0, ..., y0+length-1."""
    y = (np.arange(length, dtype=np.int64) + y0) % mod
    out = np.zeros(length, dtype=np.int64)
    for cf in reversed(list(coeffs)):
        out = (out * y + cf) % mod
    return out


def qpow_table(base, start, length, mod):
    """start * base^i mod ``mod`` for 0 <= i < length."""
    return np.int64(start % mod) * powmod_vec(base, np.arange(length), mod) % mod


def qbracket_table(q_big, start_big, length, pv, unit_inv, big, mod):
    """[y0 + i]_q mod ``mod`` where q - 1 = pv * unit.

    ``q_big``/``start_big`` are q and q^{y0} reduced mod ``big = mod * pv``.
    (q^y - 1) is divisible by pv, so the exact quotient is taken before the
    unit inverse is applied.
    """
    qy = qpow_table(q_big, start_big, length, big)
    num = (qy - 1) % big
    return (num // pv) % mod * unit_inv % mod
