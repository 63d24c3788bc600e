"""Dense exact polynomials in x and their symmetric Laurent form.

PolyX is an immutable polynomial over Q with coefficients stored
constant-first. The divided-difference calculus downstream never evaluates
anything numerically: polynomials are compared coefficient by coefficient.

The second half of the module handles the substitution x = (z + 1/z)/2.
Under it a degree-n polynomial becomes a symmetric Laurent polynomial

    c_0 + sum_{j=1..n} c_j (z^j + z^(-j)),

and LaurentSym stores exactly the tuple (c_0, c_1, ..., c_n). The map is a
linear bijection (triangular with diagonal 2^(-j)), so to_laurent and
from_laurent are exact inverses. Operators that are awkward in x are
diagonal or near-diagonal in this basis, which is why it exists.

resultant() decides whether two polynomials share a root without ever
leaving Q: it clears denominators and runs a fraction-free determinant on
the Sylvester matrix.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, InternalError, UsageError
from .scalars import Rational, format_rational, parse_rational

_NEG_INF = float("-inf")


def _as_rational(value) -> Rational:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise UsageError(f"expected a rational coefficient, got {value!r}")


@dataclass(frozen=True)
class PolyX:
    """Polynomial in x over Q, coefficients constant-first, trailing zeros
    trimmed so equal polynomials compare equal.

    >>> p = PolyX.from_coeffs([1, 0, -2])    # 1 - 2x^2
    >>> p.degree
    2
    >>> p(Fraction(1, 2))
    Fraction(1, 2)
    >>> (p * PolyX.x()).coeffs
    (Fraction(0, 1), Fraction(1, 1), Fraction(0, 1), Fraction(-2, 1))
    """

    coeffs: tuple[Rational, ...]

    def __post_init__(self) -> None:
        cs = tuple(_as_rational(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "PolyX":
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls) -> "PolyX":
        return cls(())

    @classmethod
    def one(cls) -> "PolyX":
        return cls((Fraction(1),))

    @classmethod
    def x(cls) -> "PolyX":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def constant(cls, c) -> "PolyX":
        return cls((_as_rational(c),))

    @classmethod
    def monomial(cls, n: int, c=1) -> "PolyX":
        """c * x^n."""
        if n < 0:
            raise UsageError(f"monomial degree must be >= 0, got {n}")
        return cls((Fraction(0),) * n + (_as_rational(c),))

    @property
    def degree(self):
        """Degree as an int; float('-inf') for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else _NEG_INF

    @property
    def leading(self) -> Rational:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, n: int) -> Rational:
        """Coefficient of x^n (0 beyond the stored range)."""
        if n < 0:
            raise UsageError(f"coefficient index must be >= 0, got {n}")
        return self.coeffs[n] if n < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "PolyX") -> "PolyX":
        if not isinstance(other, PolyX):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        mixed = [a[i] + b[i] for i in range(len(b))]
        return PolyX(tuple(mixed) + a[len(b):])

    def __neg__(self) -> "PolyX":
        return PolyX(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "PolyX") -> "PolyX":
        if not isinstance(other, PolyX):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PolyX):
            if not self.coeffs or not other.coeffs:
                return PolyX.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return PolyX(tuple(out))
        if isinstance(other, (int, Fraction)):
            c = _as_rational(other)
            return PolyX(tuple(c * a for a in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        c = _as_rational(scalar)
        if c == 0:
            raise DomainError("division of a polynomial by zero")
        return self * (Fraction(1) / c)

    def __pow__(self, n: int) -> "PolyX":
        if not isinstance(n, int) or n < 0:
            raise UsageError(f"polynomial power must be an int >= 0, got {n}")
        out = PolyX.one()
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x) -> Rational:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self) -> list[str]:
        """Constant-first list of strict rational strings."""
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, items: Sequence[str]) -> "PolyX":
        if not isinstance(items, (list, tuple)):
            raise UsageError(f"polynomial JSON must be a list, got {items!r}")
        return cls(tuple(parse_rational(s) for s in items))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "PolyX(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(format_rational(c))
            elif i == 1:
                parts.append(f"{format_rational(c)}*x")
            else:
                parts.append(f"{format_rational(c)}*x^{i}")
        return "PolyX(" + " + ".join(parts) + ")"


def random_poly(rng: random.Random, max_degree: int) -> PolyX:
    """Small random polynomial for identity trials. Coefficients are
    modest fractions; the leading one may come out zero, so the actual
    degree can be below the draw. Deterministic for a seeded rng."""
    degree = rng.randint(0, max_degree)
    coeffs = [
        Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        for _ in range(degree + 1)
    ]
    return PolyX(tuple(coeffs))


@dataclass(frozen=True)
class LaurentSym:
    """Symmetric Laurent polynomial c_0 + sum_{j>=1} c_j (z^j + z^(-j)),
    stored as the tuple (c_0, c_1, ...), trailing zeros trimmed."""

    c: tuple[Rational, ...]

    def __post_init__(self) -> None:
        cs = tuple(_as_rational(v) for v in self.c)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "c", cs)

    @classmethod
    def zero(cls) -> "LaurentSym":
        return cls(())

    @classmethod
    def constant(cls, value) -> "LaurentSym":
        return cls((_as_rational(value),))

    @property
    def top(self) -> int:
        """Largest j with c_j != 0; -1 for zero."""
        return len(self.c) - 1

    def coeff(self, j: int) -> Rational:
        j = abs(j)
        return self.c[j] if j < len(self.c) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.c)

    def __add__(self, other: "LaurentSym") -> "LaurentSym":
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        mixed = [a[i] + b[i] for i in range(len(b))]
        return LaurentSym(tuple(mixed) + a[len(b):])

    def __neg__(self) -> "LaurentSym":
        return LaurentSym(tuple(-v for v in self.c))

    def __sub__(self, other: "LaurentSym") -> "LaurentSym":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = _as_rational(other)
            return LaurentSym(tuple(s * v for v in self.c))
        if not isinstance(other, LaurentSym):
            return NotImplemented
        if not self.c or not other.c:
            return LaurentSym.zero()
        # Expand both to full exponent vectors over -m..m, convolve, fold
        # back. Index i of `full` holds the coefficient of z^(i - m).
        na, nb = self.top, other.top
        a = [Fraction(0)] * (2 * na + 1)
        for j in range(na + 1):
            a[na + j] = self.c[j]
            a[na - j] = self.c[j]
        b = [Fraction(0)] * (2 * nb + 1)
        for j in range(nb + 1):
            b[nb + j] = other.c[j]
            b[nb - j] = other.c[j]
        full = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, va in enumerate(a):
            if va == 0:
                continue
            for j, vb in enumerate(b):
                full[i + j] += va * vb
        m = na + nb
        return LaurentSym(tuple(full[m + j] for j in range(m + 1)))

    __rmul__ = __mul__


# x as a Laurent object: (z + 1/z)/2 has c_0 = 0, c_1 = 1/2.
_X_LAURENT = LaurentSym((Fraction(0), Fraction(1, 2)))


def to_laurent(p: PolyX) -> LaurentSym:
    """Substitute x = (z + 1/z)/2; Horner in the Laurent ring.

    >>> to_laurent(PolyX.from_coeffs([0, 0, 1])).c     # x^2
    (Fraction(1, 2), Fraction(0, 1), Fraction(1, 4))
    """
    acc = LaurentSym.zero()
    for coeff in reversed(p.coeffs):
        acc = acc * _X_LAURENT + LaurentSym.constant(coeff)
    return acc


def from_laurent(lp: LaurentSym) -> PolyX:
    """Invert to_laurent by peeling the top Laurent coefficient.

    x^j contributes 2^(-j) at level j and nothing higher, so the x^j
    coefficient of the preimage is c_j * 2^j; subtract and recurse down.
    """
    work = lp
    out = PolyX.zero()
    while work.top >= 1:
        j = work.top
        a = work.c[j] * (2 ** j)
        out = out + PolyX.monomial(j, a)
        work = work - to_laurent(PolyX.monomial(j, a))
        if work.top >= j:
            raise InternalError("Laurent back-substitution did not reduce")
    if work:
        out = out + PolyX.constant(work.c[0])
    return out


def _lcm_denominator(p: PolyX) -> int:
    d = 1
    for c in p.coeffs:
        d = d * c.denominator // math.gcd(d, c.denominator)
    return d


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact integer determinant."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(p: PolyX, r: PolyX) -> Rational:
    """Resultant of p and r; zero exactly when they share a root over the
    algebraic closure.

    Sylvester layout: deg(p) shifted rows of r's descending coefficients,
    then deg(r) shifted rows of p's. Constants are handled by the usual
    convention value^(degree of the other); two constants give 1.

    >>> resultant(PolyX.x(), PolyX.from_coeffs([-1, 1]))
    Fraction(1, 1)
    >>> resultant(PolyX.from_coeffs([0, Fraction(5, 2)]),
    ...           PolyX.from_coeffs([Fraction(-3, 4), 0, Fraction(17, 8)]))
    Fraction(-75, 16)
    """
    if not p or not r:
        raise DomainError("resultant of the zero polynomial is undefined")
    dp, dr = p.degree, r.degree
    if dp == 0:
        return p.coeffs[0] ** dr
    if dr == 0:
        return r.coeffs[0] ** dp
    mp = _lcm_denominator(p)
    mr = _lcm_denominator(r)
    pint = [int(c * mp) for c in reversed(p.coeffs)]
    rint = [int(c * mr) for c in reversed(r.coeffs)]
    size = dp + dr
    rows: list[list[int]] = []
    for shift in range(dp):
        rows.append([0] * shift + rint + [0] * (size - shift - len(rint)))
    for shift in range(dr):
        rows.append([0] * shift + pint + [0] * (size - shift - len(pint)))
    det = _bareiss_det(rows)
    return Fraction(det, mr ** dp * mp ** dr)
