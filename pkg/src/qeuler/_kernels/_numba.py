"""numba-compiled kernels; signatures and results match ``_numpy``."""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from . import _numpy


@njit(cache=True)
def _bracket_series(A, step, q, n, k, gq, w, t, c, nterms, subtract_limit):
    P = c.shape[0]
    lim = (1.0 - q) ** -n
    out = np.empty(A.shape[0])
    tw = t * w
    first = nterms - min(P, nterms)
    gpow = np.empty(k)
    for j in range(k):
        gpow[j] = gq**j
    for i in range(A.shape[0]):
        a = A[i]
        # Neumaier compensated summation; the last P partial sums are averaged
        s = 0.0
        comp = 0.0
        avg = 0.0
        for m in range(nterms):
            G = 1.0
            if gq == 1.0:
                for j in range(1, k):
                    G = G * (m + j) / j
            else:
                Qm = gq**m
                for j in range(1, k):
                    G = G * (1.0 - Qm * gpow[j]) / (1.0 - gpow[j])
            u = q ** (a + step * m)
            if subtract_limit:
                if u < 1.0:
                    fac = lim * math.expm1(n * math.log1p(-u))
                else:
                    fac = ((1.0 - u) / (1.0 - q)) ** n - lim
            else:
                fac = ((1.0 - u) / (1.0 - q)) ** n
            term = c[m % P] * G * tw**m * fac
            tmp = s + term
            if abs(s) >= abs(term):
                comp += (s - tmp) + term
            else:
                comp += (term - tmp) + s
            s = tmp
            if m >= first:
                avg += s + comp
        out[i] = avg / (nterms - first)
    return out


def bracket_series(A, step, q, n, k, gq, w, t, c, nterms, subtract_limit=False):
    return _bracket_series(np.asarray(A, dtype=np.float64), int(step), float(q), int(n),
                           int(k), float(gq), float(w), float(t),
                           np.asarray(c, dtype=np.float64), int(nterms), bool(subtract_limit))


@njit(cache=True)
def _alt_char_weights(L, chi_tab, base, mod):
    out = np.empty(L, dtype=np.int64)
    d = chi_tab.shape[0]
    pw = 1
    b = base % mod
    for j in range(L):
        v = chi_tab[j % d] * pw % mod
        if j & 1:
            v = (mod - v) % mod
        out[j] = v % mod
        pw = pw * b % mod
    return out


def alt_char_weights(L, chi_tab, base, mod):
    _numpy._check_mod(mod)
    return _alt_char_weights(int(L), np.asarray(chi_tab, dtype=np.int64) % mod, int(base), int(mod))


@njit(cache=True)
def _conv_mod(a, b, mod, rows):
    # each row adds at most (mod-1)^2 to an entry; reduce every ``rows`` rows
    out = np.zeros(a.shape[0] + b.shape[0] - 1, dtype=np.int64)
    pending = 0
    for i in range(a.shape[0]):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(b.shape[0]):
            out[i + j] += ai * b[j]
        pending += 1
        if pending == rows:
            for r in range(out.shape[0]):
                out[r] %= mod
            pending = 0
    for r in range(out.shape[0]):
        out[r] %= mod
    return out


def conv_mod(a, b, mod):
    _numpy._check_mod(mod)
    rows = max(1, (2**63 - 1 - mod) // max(1, (mod - 1) ** 2))
    return _conv_mod(np.asarray(a, dtype=np.int64) % mod, np.asarray(b, dtype=np.int64) % mod, int(mod),
                     int(rows))


@njit(cache=True)
def _dot_mod(a, b, mod):
    s = 0
    for i in range(a.shape[0]):
        s = (s + a[i] * b[i]) % mod
    return s


def dot_mod(a, b, mod):
    _numpy._check_mod(mod)
    return int(_dot_mod(np.asarray(a, dtype=np.int64) % mod, np.asarray(b, dtype=np.int64) % mod, int(mod)))


@njit(cache=True)
def _pow_table(table, n, mod):
    out = np.empty_like(table)
    for i in range(table.shape[0]):
        v = 1
        for _ in range(n):
            v = v * table[i] % mod
        out[i] = v
    return out


def pow_table(table, n, mod):
    _numpy._check_mod(mod)
    return _pow_table(np.asarray(table, dtype=np.int64) % mod, int(n), int(mod))


@njit(cache=True)
def _poly_table(coeffs, y0, length, mod):
    out = np.empty(length, dtype=np.int64)
    for i in range(length):
        y = (y0 + i) % mod
        v = 0
        for j in range(coeffs.shape[0] - 1, -1, -1):
            v = (v * y + coeffs[j]) % mod
        out[i] = v
    return out


def poly_table(coeffs, y0, length, mod):
    _numpy._check_mod(mod)
    cf = np.asarray([int(c) % mod for c in coeffs], dtype=np.int64)
    return _poly_table(cf, int(y0) % mod, int(length), int(mod))


@njit(cache=True)
def _qpow_table(base, start, length, mod):
    out = np.empty(length, dtype=np.int64)
    v = start % mod
    for i in range(length):
        out[i] = v
        v = v * base % mod
    return out


def qpow_table(base, start, length, mod):
    _numpy._check_mod(mod)
    return _qpow_table(int(base) % mod, int(start) % mod, int(length), int(mod))


@njit(cache=True)
def _qbracket_table(q_big, start_big, length, pv, unit_inv, big, mod):
    out = np.empty(length, dtype=np.int64)
    v = start_big % big
    for i in range(length):
        num = (v - 1) % big
        out[i] = (num // pv) % mod * unit_inv % mod
        v = v * q_big % big
    return out


def qbracket_table(q_big, start_big, length, pv, unit_inv, big, mod):
    _numpy._check_mod(big)
    return _qbracket_table(int(q_big) % big, int(start_big) % big, int(length), int(pv),
                           int(unit_inv) % mod, int(big), int(mod))
