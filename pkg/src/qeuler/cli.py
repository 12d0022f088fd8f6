"""Command-line front end.

    qeuler compute --which order_k --n 2 --k 2 --d 1 --q 1/2
    qeuler table --which k1 --n 0..4 --q 1/2
    qeuler verify --identity thm3 --grid default
    qeuler padic --exp witt --p 3 --N 4 --M 3 --n 1

Exit codes: 0 success, 2 invalid parameters, 3 an asserted identity failed.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import sys
from fractions import Fraction

import click

from . import core
from .characters import char_by_name
from .classical import euler_generalized_order_k
from .exactnum import Cyc, format_rat, parse_rat, to_json
from .fermionic import DEFAULT_BUDGET, PadicContext, PadicError, run_experiment, shift_identity_check
from .verify import IDENTITIES, exit_code, load_grid, run_identity

__all__ = ["main"]

WHICH = ("k1", "order_k", "hk", "h1", "classical", "moment_lhs", "moment_rhs")
CSV_HEADER = ("n", "h", "k", "d", "x", "q", "value")
MAX_GRID = 10**5


class ParamError(click.ClickException):
    exit_code = 2


def _scalar(value) -> str:
    if isinstance(value, Cyc):
        if value.is_rational():
            return format_rat(value.to_rational())
        return json.dumps(to_json(value), separators=(",", ":"))
    return format_rat(value)


def _rational(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParamError(f"invalid rational {text!r}: {exc}") from None


def _int_list(text: str) -> list[int]:
    """``"0..4"``, ``"1,3,5"`` or ``""`` (empty)."""
    out: list[int] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _evaluate(which: str, n: int, k: int, h: int, d: int, x: int, q: Fraction | None, chi: str, m: int):
    character = char_by_name(d, chi)
    if which == "classical":
        return euler_generalized_order_k(n, k, character, x)
    if q is None:
        raise ValueError("--q is required")
    P = core.QEulerParams(n=n, k=k, h=h, chi=character, q=q, x=x)
    if which == "k1":
        if k != 1:
            raise ValueError("k1 needs k = 1")
        return core.qe_k1(P)
    if which == "order_k":
        return core.qe_order_k(P)
    if which == "hk":
        return core.qe_hk(P)
    if which == "h1":
        if k != 1:
            raise ValueError("h1 needs k = 1")
        return core.qe_h1(P)
    if which == "moment_lhs":
        return core.moment_lhs(m, P)
    return core.moment_rhs(m, P)


@click.group()
def main():
    """Exact q-extended generalized Euler numbers and their identities."""


@main.command()
@click.option("--which", type=click.Choice(WHICH), default="order_k", show_default=True)
@click.option("--n", "n", type=int, default=0, show_default=True)
@click.option("--k", "k", type=int, default=1, show_default=True)
@click.option("--h", "h", type=int, default=0, show_default=True)
@click.option("--d", "d", type=int, default=1, show_default=True)
@click.option("--x", "x", type=int, default=0, show_default=True)
@click.option("--q", "q", default=None, help="rational as p/q")
@click.option("--chi", default="trivial", show_default=True, help="trivial, quadratic or an index")
@click.option("--m", "m", type=int, default=0, show_default=True, help="moment order")
def compute(which, n, k, h, d, x, q, chi, m):
    """Print one value as "p/q" (or cyclotomic JSON)."""
    qv = _rational(q) if q is not None else None
    try:
        value = _evaluate(which, n, k, h, d, x, qv, chi, m)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParamError(str(exc)) from None
    click.echo(_scalar(value))


@main.command()
@click.option("--which", type=click.Choice(WHICH), default="order_k", show_default=True)
@click.option("--n", "n", default="0", show_default=True, help='list or range, e.g. "0..4"')
@click.option("--k", "k", default="1", show_default=True)
@click.option("--h", "h", default="0", show_default=True)
@click.option("--d", "d", default="1", show_default=True)
@click.option("--x", "x", default="0", show_default=True)
@click.option("--q", "q", default="1/2", show_default=True, help="comma-separated rationals")
@click.option("--chi", default="trivial", show_default=True)
@click.option("--m", "m", type=int, default=0, show_default=True)
@click.option("--output", type=click.Choice(("csv", "json")), default="csv", show_default=True)
def table(which, n, k, h, d, x, q, chi, m, output):
    """Rows n,h,k,d,x,q,value over a grid, in nested grid order."""
    try:
        axes = [_int_list(n), _int_list(h), _int_list(k), _int_list(d), _int_list(x)]
    except ValueError as exc:
        raise ParamError(f"invalid integer list: {exc}") from None
    qs = [_rational(s) for s in filter(None, (p.strip() for p in q.split(",")))]
    size = len(qs)
    for axis in axes:
        size *= len(axis)
    if size > MAX_GRID:
        raise ParamError(f"grid has {size} points; the limit is {MAX_GRID}")
    rows = []
    for nn, hh, kk, dd, xx, qq in itertools.product(*axes, qs):
        try:
            value = _evaluate(which, nn, kk, hh, dd, xx, qq, chi, m)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParamError(str(exc)) from None
        rows.append((nn, hh, kk, dd, xx, format_rat(qq), _scalar(value)))
    if output == "json":
        click.echo(json.dumps([dict(zip(CSV_HEADER, r)) for r in rows], indent=2))
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    click.echo(buf.getvalue(), nl=False)


@main.command()
@click.option("--identity", type=click.Choice(IDENTITIES), required=True)
@click.option("--grid", "grid_name", default="default", show_default=True)
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
              help="TOML grid file replacing the bundled one")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
              help="write the JSON report here instead of stdout")
def verify(identity, grid_name, config, out):
    """Run an identity over a grid and emit the JSON report."""
    try:
        grid = load_grid(grid_name, identity, config)
        report = run_identity(identity, grid)
    except (ValueError, KeyError) as exc:
        raise ParamError(str(exc)) from None
    text = json.dumps(report, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    for v in report["verdicts"]:
        if "holds" in v:
            state = "holds" if v["holds"] else f"fails at {v['failures']}/{v['points']}"
            tag = "" if v["asserted"] else " (adjudicated)"
            click.echo(f"{identity}: {v['name']} {state}{tag}", err=True)
        else:
            click.echo(f"{identity}: holding readings {', '.join(v['holding']) or 'none'}", err=True)
    sys.exit(exit_code(report))


def _parse_f(text: str):
    import sympy
    from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

    y = sympy.Symbol("x")
    try:
        expr = parse_expr(text, local_dict={"x": y},
                          transformations=standard_transformations + (convert_xor,))
    except (SyntaxError, TypeError, sympy.SympifyError) as exc:
        raise ParamError(f"cannot parse --f {text!r}: {exc}") from None
    if expr.free_symbols - {y}:
        raise ParamError("--f may only use the variable x")
    if expr.is_polynomial(y):
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(sympy.Poly(expr, y).all_coeffs())]
        return lambda v: sum((c * v**e for e, c in enumerate(coeffs)), Fraction(0))

    def f(v):
        r = sympy.nsimplify(expr.subs(y, v))
        if not r.is_Rational:
            raise ParamError(f"--f is not rational at x={v}")
        return Fraction(int(r.p), int(r.q))

    return f


@main.command()
@click.option("--exp", "exp", type=click.Choice(("witt", "qwitt", "hk", "eq18", "shift")), required=True)
@click.option("--p", "p", type=int, required=True)
@click.option("--N", "N", type=int, required=True, help="truncation level")
@click.option("--M", "M", type=int, default=None, help="working precision (default N-1)")
@click.option("--n", "n", type=int, default=1, show_default=True, help="degree (or m for eq18)")
@click.option("--k", "k", type=int, default=1, show_default=True)
@click.option("--h", "h", type=int, default=0, show_default=True)
@click.option("--d", "d", type=int, default=1, show_default=True)
@click.option("--x", "x", type=int, default=0, show_default=True)
@click.option("--chi", default="trivial", show_default=True)
@click.option("--q", "q", type=int, default=None, help="integer q = 1 mod p (default 1+p)")
@click.option("--f", "f", default=None, help='polynomial in x for --exp shift, e.g. "x^2"')
@click.option("--shift", "shift", type=int, default=1, show_default=True)
@click.option("--budget", type=int, default=DEFAULT_BUDGET, show_default=True)
def padic(exp, p, N, M, n, k, h, d, x, chi, q, f, shift, budget):
    """Truncated fermionic integrals against their closed forms."""
    try:
        ctx = PadicContext(p, max(1, N - 1) if M is None else M, N)
        if exp == "shift":
            if f is None:
                raise ParamError("--exp shift needs --f")
            click.echo(json.dumps(shift_identity_check(_parse_f(f), shift, ctx), indent=2))
            return
        kinds = {"witt": ("power", (0,) * k),
                 "qwitt": ("qbracket", (0,) * k),
                 "hk": ("qbracket", tuple(h - j for j in range(1, k + 1))),
                 "eq18": ("qpower", tuple(-j for j in range(1, k + 1)))}
        kind, exps = kinds[exp]
        desc = {"p": p, "M": ctx.M, "N": N, "d": d, "chi": chi, "k": k,
                "q": 1 + p if q is None else q,
                "integrand": {"kind": kind, "n": n, "x": x, "exps": list(exps)}}
        report = run_experiment(desc, budget=budget)
    except (PadicError, ValueError) as exc:
        raise ParamError(str(exc)) from None
    click.echo(json.dumps(report, indent=2))


if __name__ == "__main__":  # pragma: no cover
    main()
