"""q-extended generalized Euler numbers: exact closed forms, series
representations, truncated fermionic p-adic integrals and a verification
harness for the identities relating them."""

from .characters import DirichletChar, char_by_name, char_enumerate, char_quadratic, char_trivial
from .classical import euler_generalized, euler_generalized_order_k
from .core import (
    QEulerParams,
    moment_lhs,
    moment_rhs,
    qe_h1,
    qe_hk,
    qe_k1,
    qe_kk,
    qe_order_k,
)
from .exactnum import Cyc, Rat, format_rat, parse_rat

__version__ = "0.1.0"

__all__ = [
    "Cyc",
    "Rat",
    "parse_rat",
    "format_rat",
    "DirichletChar",
    "char_trivial",
    "char_quadratic",
    "char_enumerate",
    "char_by_name",
    "euler_generalized",
    "euler_generalized_order_k",
    "QEulerParams",
    "qe_k1",
    "qe_order_k",
    "qe_hk",
    "qe_kk",
    "qe_h1",
    "moment_lhs",
    "moment_rhs",
]
