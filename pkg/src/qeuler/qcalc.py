"""q-analogue primitives.

Every function is generic over the scalar type: ``Fraction`` for exact work,
``float`` for limit experiments, and ``Cyc`` where an argument allows it
(the ``a`` slot of the q-Pochhammer symbol).
"""

from __future__ import annotations

import math

__all__ = [
    "qint",
    "qint_neg",
    "qint_split",
    "qpochhammer",
    "gauss_binom",
    "negbinom_weight",
]


def _is_one(q) -> bool:
    return q == 1


def qint(x: int, q):
    """[x]_q = (1 - q^x) / (1 - q)."""
    if _is_one(q):
        raise ZeroDivisionError("[x]_q needs q != 1")
    if x < 0 and q == 0:
        raise ZeroDivisionError("negative x needs q != 0")
    if x >= 0:
        # geometric sum; exact and cheap for small x
        total = 0 * q
        term = 1 + 0 * q
        for _ in range(x):
            total = total + term
            term = term * q
        return total
    return (1 - q**x) / (1 - q)


def qint_neg(x: int, q):
    """[x]_{-q} = (1 - (-q)^x) / (1 + q)."""
    if q == -1:
        raise ZeroDivisionError("[x]_{-q} needs q != -1")
    return (1 - (-q) ** x) / (1 + q)


def qint_split(d: int, m: int, u: int, q):
    """[d*m + u]_q computed as [d]_q * [m + u/d]_{q^d}.

    The fractional bracket is expanded as (1 - (q^d)^m q^u) / (1 - q^d), so no
    fractional exponent ever appears.
    """
    Q = q**d
    if _is_one(Q):
        raise ZeroDivisionError("q^d must differ from 1")
    return qint(d, q) * (1 - Q**m * q**u) / (1 - Q)


def qpochhammer(a, q, k: int):
    """(a : q)_k = (1 - a)(1 - a q) ... (1 - a q^(k-1)); empty product for k=0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    result = 1
    aq = a
    for _ in range(k):
        result = (1 - aq) * result
        aq = aq * q
    return result


def gauss_binom(n: int, k: int, q):
    """Gaussian binomial coefficient via the q-integer product quotient."""
    if k < 0 or n < 0:
        raise ValueError("n, k must be non-negative")
    if k > n:
        return 0 * q
    if _is_one(q):
        raise ZeroDivisionError("division form needs q != 1")
    num = 1 + 0 * q
    den = 1 + 0 * q
    for i in range(k):
        num = num * qint(n - i, q)
        den = den * qint(i + 1, q)
    return num / den


def negbinom_weight(m: int, k: int) -> int:
    """C(m + k - 1, m), the coefficient of (-z)^m in (1 + z)^(-k)."""
    if m < 0 or k < 1:
        raise ValueError("need m >= 0 and k >= 1")
    return math.comb(m + k - 1, m)
