"""The divided-difference operator D and the averaging operator S.

Both act on polynomials in x through the substitution x = (z + 1/z)/2.
Writing f-breve for the symmetric Laurent form of f and shifting z by
v = q^(1/2),

    (D f)-breve (z) = (f-breve(vz) - f-breve(z/v)) / (e(vz) - e(z/v)),
    (S f)-breve (z) = (f-breve(vz) + f-breve(z/v)) / 2,

with e(z) = (z + 1/z)/2. On the basis element z^j + z^(-j) these come out
in closed form: S is diagonal with multiplier alpha_j, and D maps it to
2*gamma_j*(z^(j-1) + z^(j-3) + ... + z^(1-j)), dropping the degree by one.
That is what apply_Dq and apply_Sq implement; the defining quotient above
is re-derived independently in the test suite and checked against them.

D lowers degree by exactly one and scales the leading coefficient by
gamma_n; S preserves degree and scales it by alpha_n.

The four structural identities these operators satisfy (product rules and
the two second-order compositions) are bundled here as named checks, since
the whole verification engine downstream rests on them:

    product_D:  D(fg) = Df Sg + Sf Dg
    product_S:  S(fg) = U2 Df Dg + Sf Sg
    S_squared:  S^2 f = alpha U2 D^2 f + U1 SD f + f
    DS_commute: DS f  = alpha SD f + U1 D^2 f

where U1(x) = (alpha^2 - 1) x and U2(x) = (alpha^2 - 1)(x^2 - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError
from .qpoly import LaurentSym, PolyX, from_laurent, to_laurent
from .scalars import QContext, Rational, alpha_k, gamma

IDENTITIES = ("product_D", "product_S", "S_squared", "DS_commute")


def apply_Dq(ctx: QContext, p: PolyX) -> PolyX:
    """Divided-difference operator; degree n goes to n - 1.

    >>> from awcalc.scalars import make_qcontext
    >>> ctx = make_qcontext(Fraction(1, 2))
    >>> apply_Dq(ctx, PolyX.monomial(2))        # D x^2 = 2*alpha*x
    PolyX(5/2*x)
    """
    lp = to_laurent(p)
    if lp.top <= 0:
        return PolyX.zero()
    out = [Fraction(0)] * lp.top
    for j in range(1, lp.top + 1):
        cj = lp.c[j]
        if cj == 0:
            continue
        w = 2 * cj * gamma(ctx, j)
        m = j - 1
        while m >= 0:
            out[m] += w
            m -= 2
    return from_laurent(LaurentSym(tuple(out)))


def apply_Sq(ctx: QContext, p: PolyX) -> PolyX:
    """Averaging operator; diagonal in the Laurent basis, multiplier alpha_j.

    >>> from awcalc.scalars import make_qcontext
    >>> ctx = make_qcontext(Fraction(1, 2))
    >>> apply_Sq(ctx, PolyX.monomial(2))
    PolyX(-9/16 + 17/8*x^2)
    """
    lp = to_laurent(p)
    scaled = tuple(alpha_k(ctx, j) * lp.c[j] for j in range(lp.top + 1))
    return from_laurent(LaurentSym(scaled))


def apply_Dq_power(ctx: QContext, p: PolyX, k: int) -> PolyX:
    """k-fold application of D."""
    if k < 0:
        raise UsageError(f"operator power must be >= 0, got {k}")
    out = p
    for _ in range(k):
        out = apply_Dq(ctx, out)
    return out


def structural_polys(ctx: QContext) -> tuple[PolyX, PolyX]:
    """The companion polynomials U1 = (alpha^2 - 1) x and
    U2 = (alpha^2 - 1)(x^2 - 1) appearing in every composition rule."""
    s = ctx.alpha * ctx.alpha - 1
    u1 = PolyX((Fraction(0), s))
    u2 = PolyX((-s, Fraction(0), s))
    return u1, u2


@dataclass(frozen=True)
class OperatorCheckResult:
    """Outcome of one verification.

    For residual-style checks `passed` holds exactly when `residual` is the
    zero polynomial and `witness` is None. Value-style checks (resultants,
    nonvanishing scalars) put the deciding scalar in `witness` instead.
    """

    name: str
    passed: bool
    residual: PolyX | None = None
    witness: Rational | None = None


def _residual_result(name: str, residual: PolyX) -> OperatorCheckResult:
    return OperatorCheckResult(name=name, passed=not residual, residual=residual)


def verify_identity(
    ctx: QContext, which: str, f: PolyX, g: PolyX | None = None
) -> OperatorCheckResult:
    """Check one of the four structural identities on concrete input.

    product_D and product_S need both f and g; the composition identities
    use f alone. The returned residual is left-hand side minus right-hand
    side, exactly.
    """
    u1, u2 = structural_polys(ctx)
    if which in ("product_D", "product_S"):
        if g is None:
            raise UsageError(f"identity {which} needs a second polynomial")
        df, dg = apply_Dq(ctx, f), apply_Dq(ctx, g)
        sf, sg = apply_Sq(ctx, f), apply_Sq(ctx, g)
        if which == "product_D":
            residual = apply_Dq(ctx, f * g) - (df * sg + sf * dg)
        else:
            residual = apply_Sq(ctx, f * g) - (u2 * df * dg + sf * sg)
        return _residual_result(which, residual)
    if which == "S_squared":
        ssf = apply_Sq(ctx, apply_Sq(ctx, f))
        ddf = apply_Dq(ctx, apply_Dq(ctx, f))
        sdf = apply_Sq(ctx, apply_Dq(ctx, f))
        residual = ssf - (ctx.alpha * u2 * ddf + u1 * sdf + f)
        return _residual_result(which, residual)
    if which == "DS_commute":
        dsf = apply_Dq(ctx, apply_Sq(ctx, f))
        sdf = apply_Sq(ctx, apply_Dq(ctx, f))
        ddf = apply_Dq(ctx, apply_Dq(ctx, f))
        residual = dsf - (ctx.alpha * sdf + u1 * ddf)
        return _residual_result(which, residual)
    raise UsageError(f"unknown identity {which!r}; known: {IDENTITIES}")


def verify_k_fold_rule(ctx: QContext, f: PolyX, k: int) -> OperatorCheckResult:
    """The k-fold image of x*f:

        D^k(x f) = gamma_k SD^(k-1) f + alpha_k x D^k f.

    k = 1 is the plain product rule applied to x*f; induction on k rides on
    DS_commute, which is why this is checked for a range of k.
    """
    if k < 1:
        raise UsageError(f"k-fold rule needs k >= 1, got {k}")
    lhs = apply_Dq_power(ctx, PolyX.x() * f, k)
    rhs = gamma(ctx, k) * apply_Sq(ctx, apply_Dq_power(ctx, f, k - 1)) \
        + alpha_k(ctx, k) * PolyX.x() * apply_Dq_power(ctx, f, k)
    return _residual_result(f"kfold_k{k}", lhs - rhs)
