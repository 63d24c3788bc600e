"""Shared fixtures and independent oracles for the test suite.

The operator oracles here deliberately avoid the library's Laurent
machinery: they expand f((z + 1/z)/2) as a raw exponent -> coefficient
dict, apply the z-shifts straight from the operator definitions, and
divide out the denominator by exact long division on dicts. Agreement
with apply_Dq / apply_Sq is then a genuine two-route check rather than
the library testing itself.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from awcalc import build_family, make_qcontext, params_from_sigmas, parse_rational

# (v, sigmas) of the standard test families
QHERMITE = ("1/2", "0,0,0,0")
SET_B = ("1/2", "11/30,-2/15,-1/30,0")
SET_C = ("1/3", "47/60,3/40,-1/20,-1/120")  # roots 1/2, 1/3, -1/4, 1/5
PARAM_SETS = (QHERMITE, SET_B, SET_C)


@lru_cache(maxsize=None)
def cached_family(vtext: str, sigtext: str, N: int):
    ctx = make_qcontext(parse_rational(vtext))
    sigmas = tuple(parse_rational(s) for s in sigtext.split(","))
    return build_family(ctx, params_from_sigmas(*sigmas), N)


def breve(p) -> dict[int, Fraction]:
    """f((z + 1/z)/2) as a dict z-exponent -> coefficient; Horner."""
    acc: dict[int, Fraction] = {}
    for c in reversed(p.coeffs):
        nxt: dict[int, Fraction] = {}
        for e, val in acc.items():
            nxt[e + 1] = nxt.get(e + 1, Fraction(0)) + val / 2
            nxt[e - 1] = nxt.get(e - 1, Fraction(0)) + val / 2
        nxt[0] = nxt.get(0, Fraction(0)) + c
        acc = {e: v for e, v in nxt.items() if v != 0}
    return acc


def _shift(d: dict, v: Fraction, sign: int) -> dict:
    """Substitute z -> z * v^sign."""
    return {e: val * v ** (sign * e) for e, val in d.items()}


def _sub(d1: dict, d2: dict) -> dict:
    out = dict(d1)
    for e, val in d2.items():
        out[e] = out.get(e, Fraction(0)) - val
    return {e: v for e, v in out.items() if v != 0}


def _add(d1: dict, d2: dict) -> dict:
    out = dict(d1)
    for e, val in d2.items():
        out[e] = out.get(e, Fraction(0)) + val
    return {e: v for e, v in out.items() if v != 0}


def _divide_z_minus_zinv(d: dict) -> dict:
    """Exact division by (z - 1/z), by long division from the top exponent.

    The quotient of an antisymmetric input lives on exponents in
    (-top, top), so falling below -top means the division is not exact.
    """
    out: dict[int, Fraction] = {}
    work = dict(d)
    live = [e for e, v in work.items() if v != 0]
    if not live:
        return out
    floor = -max(live)
    while True:
        live = [e for e, v in work.items() if v != 0]
        if not live:
            return out
        e = max(live)
        assert e > floor, "division by (z - 1/z) not exact"
        val = work[e]
        out[e - 1] = out.get(e - 1, Fraction(0)) + val
        work[e] = Fraction(0)
        work[e - 2] = work.get(e - 2, Fraction(0)) + val


def dq_oracle(ctx, p) -> dict[int, Fraction]:
    """(f-breve(vz) - f-breve(z/v)) / ((v - 1/v)(z - 1/z)/2), as a dict."""
    b = breve(p)
    num = _sub(_shift(b, ctx.v, +1), _shift(b, ctx.v, -1))
    quot = _divide_z_minus_zinv(num)
    scalar = (ctx.v - 1 / ctx.v) / 2
    return {e: val / scalar for e, val in quot.items() if val != 0}


def sq_oracle(ctx, p) -> dict[int, Fraction]:
    """(f-breve(vz) + f-breve(z/v)) / 2, as a dict."""
    b = breve(p)
    tot = _add(_shift(b, ctx.v, +1), _shift(b, ctx.v, -1))
    return {e: val / 2 for e, val in tot.items() if val != 0}
