"""Exact arithmetic in the variables q and x.

This module provides the coefficient rings everything else is built on:

  QPoly    polynomials in q over exact rationals (dense, no trailing zeros)
  QRat     reduced rational functions in q (monic denominator, content in
           the numerator, so equality is structural)
  XPoly    polynomials in x with QRat coefficients
  QSeries  truncated power series in q with rational coefficients
  BivarPoly / NewtonPolygon  bivariate (q, x) exponent support and its hull

plus cyclotomic polynomials, q-integers, cyclotomic trial-division
factoring and the substitutions q -> 1/q, q -> value, q -> power series.

All values are immutable after construction.  There is no floating-point
mode anywhere.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a genuine pole."""


class ExactDivisionError(ArithmeticError):
    """A division that was required to be exact left a remainder."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


# ---------------------------------------------------------------------------
# Polynomials in q over Q


class QPoly:
    """Dense univariate polynomial in q with Fraction coefficients.

    Trailing zero coefficients are never stored; the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(c) -> QPoly:
        return QPoly((_as_fraction(c),))

    @staticmethod
    def q_power(k: int) -> QPoly:
        if k < 0:
            raise ValueError("q_power exponent must be nonnegative")
        return QPoly((0,) * k + (1,))

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == QPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return QPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = QPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> QPoly:
        c = _as_fraction(c)
        if c == 0:
            return QPoly()
        return QPoly(tuple(cc * c for cc in self.coeffs))

    def shift(self, k: int) -> QPoly:
        """Multiply by q^k."""
        if self.is_zero():
            return self
        return QPoly((Fraction(0),) * k + self.coeffs)

    def __divmod__(self, other: QPoly):
        if not isinstance(other, QPoly):
            other = QPoly.const(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.coeffs
        dd = len(d) - 1
        lead = d[-1]
        quot = [Fraction(0)] * max(0, len(r) - dd)
        while len(r) - 1 >= dd and r:
            c = r[-1] / lead
            shift = len(r) - 1 - dd
            quot[shift] = c
            for i, dc in enumerate(d):
                r[shift + i] -= c * dc
            while r and r[-1] == 0:
                r.pop()
        return QPoly(quot), QPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: QPoly) -> QPoly:
        quot, rem = divmod(self, other)
        if not rem.is_zero():
            raise ExactDivisionError(f"{self} is not divisible by {other}")
        return quot

    def monic(self) -> QPoly:
        if self.is_zero():
            return self
        lc = self.leading
        return self if lc == 1 else self.scale(Fraction(1) / lc)

    def evaluate(self, v) -> Fraction:
        v = _as_fraction(v)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def derivative(self) -> QPoly:
        return QPoly(tuple(c * (i + 1) for i, c in enumerate(self.coeffs[1:])))

    def primitive_int(self) -> tuple[Fraction, tuple[int, ...]]:
        """Write self = content * p with p primitive over Z, positive leading."""
        if self.is_zero():
            return Fraction(0), ()
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = math.gcd(g, abs(c))
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), tuple(c // g for c in ints)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if e == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            elif abs(c).denominator == 1:
                body = f"{abs(c)}{mono}"
            else:
                body = f"({abs(c)}){mono}"
            sign = " - " if c < 0 else (" + " if parts else "")
            if c < 0 and not parts:
                sign = "-"
            parts.append(sign + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"QPoly({self})"


QPOLY_ZERO = QPoly()
QPOLY_ONE = QPoly((1,))
Q = QPoly((0, 1))


def _prem(a: list[int], b: list[int]) -> list[int]:
    # pseudo-remainder over Z: repeatedly a <- lc(b)*a - lc(a)*q^shift*b
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for i, c in enumerate(b):
            r[shift + i] -= lr * c
        while r and r[-1] == 0:
            r.pop()
    return r


def _primitive(a: list[int]) -> list[int]:
    g = 0
    for c in a:
        g = math.gcd(g, abs(c))
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def qpoly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Greatest common divisor, returned primitive over Z with positive lead.

    Uses a primitive pseudo-remainder sequence on integer coefficients so that
    intermediate coefficient growth stays controlled.
    """
    if a.is_zero():
        return QPoly(b.primitive_int()[1])
    if b.is_zero():
        return QPoly(a.primitive_int()[1])
    pa = list(a.primitive_int()[1])
    pb = list(b.primitive_int()[1])
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        pa, pb = pb, _primitive(_prem(pa, pb))
    return QPoly(pa)


def qpoly_lcm(a: QPoly, b: QPoly) -> QPoly:
    if a.is_zero() or b.is_zero():
        return QPoly()
    g = qpoly_gcd(a, b)
    out = a * b.exact_div(g)
    return out.monic()


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and q-integers

_CYCLOTOMIC: dict[int, QPoly] = {}
_CYCLOTOMIC_LOCK = threading.Lock()


def cyclotomic(d: int) -> QPoly:
    """The d-th cyclotomic polynomial in q, by exact division (memoized)."""
    if d < 1:
        raise ValueError("cyclotomic index must be >= 1")
    phi = _CYCLOTOMIC.get(d)
    if phi is not None:
        return phi
    num = QPoly.q_power(d) - 1
    for e in range(1, d):
        if d % e == 0:
            num = num.exact_div(cyclotomic(e))
    with _CYCLOTOMIC_LOCK:
        _CYCLOTOMIC.setdefault(d, num)
    return _CYCLOTOMIC[d]


def q_int_poly(n: int) -> QPoly:
    """[n]_q = 1 + q + ... + q^(n-1) as a polynomial, for n >= 0."""
    if n < 0:
        raise ValueError("q_int_poly needs n >= 0")
    return QPoly((1,) * n)


def factor_cyclotomic(p: QPoly, bound: int | None = None):
    """Split off cyclotomic factors by ascending trial division.

    Returns (unit, factors, remainder) with p = unit * prod Phi_d^m * remainder,
    the remainder monic with no cyclotomic factor of index <= bound
    (default 2*deg(p) + 2).
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if bound is None:
        bound = 2 * p.degree + 2
    factors: dict[int, int] = {}
    rem = p
    for d in range(1, bound + 1):
        if rem.degree == 0:
            break
        phi = cyclotomic(d)
        if phi.degree > rem.degree:
            continue
        while True:
            quot, r = divmod(rem, phi)
            if not r.is_zero():
                break
            rem = quot
            factors[d] = factors.get(d, 0) + 1
            if rem.degree < phi.degree:
                break
    unit = rem.leading
    return unit, factors, rem.monic()


# ---------------------------------------------------------------------------
# Rational functions in q


class QRat:
    """Reduced rational function in q.

    Invariants: the denominator is nonzero and monic, gcd(num, den) is
    constant, and any rational content sits in the numerator.  Equality is
    therefore a structural comparison.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = as_qpoly(num)
        den = as_qpoly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = QPOLY_ZERO
            self.den = QPOLY_ONE
            return
        g = qpoly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.leading
        if lc != 1:
            inv = Fraction(1) / lc
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    @staticmethod
    def _raw(num: QPoly, den: QPoly) -> QRat:
        # internal: caller guarantees reduced with monic denominator
        r = object.__new__(QRat)
        r.num = num
        r.den = den
        return r

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == QPOLY_ONE

    def __eq__(self, other) -> bool:
        o = as_qrat_or_none(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    # -- field operations ----------------------------------------------------

    def __add__(self, other):
        o = as_qrat_or_none(other)
        if o is None:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        g = qpoly_gcd(self.den, o.den)
        if g.degree == 0:
            num = self.num * o.den + o.num * self.den
            den = self.den * o.den
            return QRat._raw(num, den) if num else QRAT_ZERO
        d1 = self.den.exact_div(g)
        d2 = o.den.exact_div(g)
        num = self.num * d2 + o.num * d1
        if num.is_zero():
            return QRAT_ZERO
        den = d1 * o.den
        h = qpoly_gcd(num, g)
        if h.degree > 0:
            num = num.exact_div(h)
            den = den.exact_div(h)
        lc = den.leading
        if lc != 1:
            inv = Fraction(1) / lc
            num = num.scale(inv)
            den = den.scale(inv)
        return QRat._raw(num, den)

    __radd__ = __add__

    def __neg__(self) -> QRat:
        return QRat._raw(-self.num, self.den)

    def __sub__(self, other):
        o = as_qrat_or_none(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = as_qrat_or_none(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = as_qrat_or_none(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return QRAT_ZERO
        g1 = qpoly_gcd(self.num, o.den)
        g2 = qpoly_gcd(o.num, self.den)
        n1 = self.num.exact_div(g1) if g1.degree > 0 else self.num
        d2 = o.den.exact_div(g1) if g1.degree > 0 else o.den
        n2 = o.num.exact_div(g2) if g2.degree > 0 else o.num
        d1 = self.den.exact_div(g2) if g2.degree > 0 else self.den
        num = n1 * n2
        den = d1 * d2
        lc = den.leading
        if lc != 1:
            inv = Fraction(1) / lc
            num = num.scale(inv)
            den = den.scale(inv)
        return QRat._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> QRat:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return QRat(self.den, self.num)

    def __truediv__(self, other):
        o = as_qrat_or_none(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division of rational functions by zero")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = as_qrat_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> QRat:
        if n < 0:
            return self.inverse() ** (-n)
        result = QRAT_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- substitutions --------------------------------------------------------

    def evaluate(self, v) -> Fraction:
        """Value at q = v; raises PoleError at a genuine pole."""
        v = _as_fraction(v)
        dv = self.den.evaluate(v)
        if dv == 0:
            raise PoleError(f"pole at q = {v}")
        return self.num.evaluate(v) / dv

    def reciprocal_q(self) -> QRat:
        """Substitute q -> 1/q, clearing negative powers by a q^k rescale."""
        k = max(self.num.degree, self.den.degree, 0)
        rn = QPoly(tuple(self.num.coeff(k - i) for i in range(k + 1)))
        rd = QPoly(tuple(self.den.coeff(k - i) for i in range(k + 1)))
        return QRat(rn, rd)

    def series(self, order: int) -> QSeries:
        """Power-series expansion at q = 0 to the given order."""
        if self.is_zero():
            return QSeries((), order)
        if self.den.coeff(0) == 0:
            raise PoleError("pole at q = 0: no power-series expansion")
        d0 = self.den.coeff(0)
        out = []
        for k in range(order + 1):
            acc = self.num.coeff(k)
            for i in range(1, k + 1):
                di = self.den.coeff(i)
                if di:
                    acc -= di * out[k - i]
            out.append(acc / d0)
        return QSeries(out, order)

    def __str__(self) -> str:
        if self.den == QPOLY_ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"QRat({self})"


QRAT_ZERO = QRat._raw(QPOLY_ZERO, QPOLY_ONE)
QRAT_ONE = QRat._raw(QPOLY_ONE, QPOLY_ONE)
QRAT_Q = QRat._raw(Q, QPOLY_ONE)


def as_qpoly(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return QPoly.const(x)
    raise TypeError(f"cannot interpret {x!r} as a polynomial in q")


def as_qrat_or_none(x):
    if isinstance(x, QRat):
        return x
    if isinstance(x, (int, Fraction)):
        return QRat._raw(QPoly.const(x), QPOLY_ONE) if x else QRAT_ZERO
    if isinstance(x, QPoly):
        return QRat._raw(x, QPOLY_ONE)
    return None


def as_qrat(x) -> QRat:
    r = as_qrat_or_none(x)
    if r is None:
        raise TypeError(f"cannot interpret {x!r} as a rational function in q")
    return r


def qrat_sum(values: Iterable[QRat]) -> QRat:
    """Sum over a common denominator (one reduction instead of one per add)."""
    vals = [v for v in values if not v.is_zero()]
    if not vals:
        return QRAT_ZERO
    if len(vals) == 1:
        return vals[0]
    den = vals[0].den
    for v in vals[1:]:
        den = qpoly_lcm(den, v.den)
    num = QPoly()
    for v in vals:
        num = num + v.num * den.exact_div(v.den)
    return QRat(num, den)


def q_integer(n: int) -> QRat:
    """The q-integer (q^n - 1)/(q - 1), defined for every integer n."""
    if n >= 0:
        return QRat(q_int_poly(n))
    m = -n
    return QRat(-q_int_poly(m), QPoly.q_power(m))


def subst_q(f: QRat, target) -> "QRat | Fraction | QSeries":
    """Substitute for q: 'reciprocal', an exact rational value, or ('series', M)."""
    if target == "reciprocal":
        return f.reciprocal_q()
    if isinstance(target, tuple) and len(target) == 2 and target[0] == "series":
        return f.series(target[1])
    return f.evaluate(target)


# ---------------------------------------------------------------------------
# Truncated power series in q


class QSeries:
    """Power series in q truncated at a fixed order (inclusive)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        cs = [_as_fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("series order must be >= 0")
        cs = cs[: order + 1]
        cs.extend(Fraction(0) for _ in range(order + 1 - len(cs)))
        self.order = order
        self.coeffs = tuple(cs)

    def _coerce(self, other):
        if isinstance(other, QSeries):
            if other.order != self.order:
                raise ValueError("series truncation orders differ")
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries((other,), self.order)
        if isinstance(other, QPoly):
            return QSeries(other.coeffs, self.order)
        return None

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSeries([a + b for a, b in zip(self.coeffs, o.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([c * other for c in self.coeffs], self.order)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(self.order + 1 - i):
                    b = o.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return QSeries(out, self.order)

    __rmul__ = __mul__

    def __str__(self):
        p = QPoly(self.coeffs)
        return f"{p} + O(q^{self.order + 1})"

    def __repr__(self):
        return f"QSeries({self})"


# ---------------------------------------------------------------------------
# Polynomials in x over QRat


def _as_xcoeff(c) -> QRat:
    if isinstance(c, QRat):
        return c
    return as_qrat(c)


class XPoly:
    """Polynomial in x whose coefficients are reduced rational functions in q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_xcoeff(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c) -> XPoly:
        return XPoly((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, j: int) -> QRat:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return QRAT_ZERO

    @property
    def leading(self) -> QRat:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, XPoly):
            return other
        if isinstance(other, (int, Fraction, QPoly, QRat)):
            return XPoly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return XPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return XPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QPoly, QRat)):
            return self.scale(other)
        if not isinstance(other, XPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return XPoly()
        out = [QRAT_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca.is_zero():
                for j, cb in enumerate(b):
                    if not cb.is_zero():
                        out[i + j] = out[i + j] + ca * cb
        return XPoly(out)

    __rmul__ = __mul__

    def scale(self, c) -> XPoly:
        c = _as_xcoeff(c)
        if c.is_zero():
            return XPoly()
        return XPoly(tuple(cc * c for cc in self.coeffs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QPoly, QRat)):
            return self.scale(_as_xcoeff(other).inverse())
        return NotImplemented

    def __pow__(self, n: int) -> XPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = XPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: XPoly):
        if not isinstance(other, XPoly):
            other = XPoly((other,))
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.coeffs
        dd = len(d) - 1
        lead_inv = d[-1].inverse()
        quot = [QRAT_ZERO] * max(0, len(r) - dd)
        while r and len(r) - 1 >= dd:
            c = r[-1] * lead_inv
            shift = len(r) - 1 - dd
            quot[shift] = c
            for i, dc in enumerate(d):
                r[shift + i] = r[shift + i] - c * dc
            while r and r[-1].is_zero():
                r.pop()
        return XPoly(quot), XPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: XPoly) -> XPoly:
        quot, rem = divmod(self, other)
        if not rem.is_zero():
            raise ExactDivisionError(f"{self} is not divisible by {other}")
        return quot

    def evaluate(self, v) -> QRat:
        v = _as_xcoeff(v)
        acc = QRAT_ZERO
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def subst_x_linear(self, a, b) -> XPoly:
        """Substitute x -> a + b*x."""
        lin = XPoly((a, b))
        acc = XPoly()
        for c in reversed(self.coeffs):
            acc = acc * lin + XPoly((c,))
        return acc

    def derivative(self) -> XPoly:
        return XPoly(tuple(c * (j + 1) for j, c in enumerate(self.coeffs[1:])))

    def map_coeffs(self, fn) -> XPoly:
        return XPoly(tuple(fn(c) for c in self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c)
            if j == 0:
                parts.append(cs)
                continue
            mono = "x" if j == 1 else f"x^{j}"
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            elif c.is_polynomial() and len([cc for cc in c.num.coeffs if cc]) == 1 and "/" not in cs and "+" not in cs and " - " not in cs:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"XPoly({self})"


XPOLY_ZERO = XPoly()
XPOLY_ONE = XPoly((1,))
XPOLY_X = XPoly((0, 1))


def one_plus_qx() -> XPoly:
    """The polynomial 1 + q*x."""
    return XPoly((QRAT_ONE, QRAT_Q))


def xpoly_sum(values: Iterable[XPoly]) -> XPoly:
    """Sum of x-polynomials with per-slot common-denominator accumulation."""
    cols: list[list[QRat]] = []
    for v in values:
        for j, c in enumerate(v.coeffs):
            while len(cols) <= j:
                cols.append([])
            if not c.is_zero():
                cols[j].append(c)
    return XPoly([qrat_sum(col) for col in cols])


# ---------------------------------------------------------------------------
# Bivariate numerators and Newton polygons


class BivarPoly:
    """Bivariate polynomial in (q, x) stored as exponent-pair -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], Fraction] | None = None):
        self.terms = {k: _as_fraction(v) for k, v in (terms or {}).items() if v != 0}

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.terms)

    @property
    def degree_q(self) -> int:
        return max((e for e, _ in self.terms), default=-1)

    @property
    def degree_x(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def x_slice(self, j: int) -> QPoly:
        """The coefficient of x^j as a polynomial in q."""
        if self.is_zero():
            return QPoly()
        out = [Fraction(0)] * (self.degree_q + 1)
        for (e, jj), c in self.terms.items():
            if jj == j:
                out[e] = c
        return QPoly(out)

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for j in range(self.degree_x, -1, -1):
            row = self.x_slice(j)
            if row.is_zero():
                continue
            if j == 0:
                parts.append(str(row))
            else:
                mono = "x" if j == 1 else f"x^{j}"
                rs = str(row)
                parts.append(f"({rs})*{mono}" if (" " in rs or "/" in rs) else f"{rs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"BivarPoly({self})"


def xpoly_fraction(f: XPoly) -> tuple[BivarPoly, QPoly]:
    """Write f as numerator/denominator with a monic lcm denominator in q."""
    den = QPOLY_ONE
    for c in f.coeffs:
        if not c.is_zero():
            den = qpoly_lcm(den, c.den)
    terms: dict[tuple[int, int], Fraction] = {}
    for j, c in enumerate(f.coeffs):
        if c.is_zero():
            continue
        row = c.num * den.exact_div(c.den)
        for e, v in enumerate(row.coeffs):
            if v:
                terms[(e, j)] = v
    return BivarPoly(terms), den


def convex_hull_chains(points: Sequence[tuple[int, int]]):
    """Monotone-chain hull; returns (lower, upper) chains sharing endpoints.

    The lower chain runs left to right along the bottom of the hull, the
    upper chain right to left along the top.  Collinear interior points are
    dropped, so consecutive chain points are genuine hull vertices.
    """
    pts = sorted(set(points))
    if not pts:
        raise ValueError("hull of an empty point set")
    if len(pts) == 1:
        return [pts[0]], [pts[0]]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[int, int]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[int, int]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower, upper


@dataclass(frozen=True)
class NewtonPolygon:
    """Convex hull of (q-degree, x-degree) exponent pairs, counterclockwise."""

    vertices: tuple[tuple[int, int], ...]

    @staticmethod
    def of_points(points: Sequence[tuple[int, int]]) -> NewtonPolygon:
        lower, upper = convex_hull_chains(points)
        if len(lower) == 1:
            return NewtonPolygon((lower[0],))
        verts = lower[:-1] + upper[:-1]
        # a pure segment appears doubled: keep each endpoint once
        if len(verts) == 2 and verts[0] == verts[1]:
            verts = [verts[0]]
        return NewtonPolygon(tuple(verts))


def newton_polygon(p: BivarPoly) -> NewtonPolygon:
    """Newton polygon of a nonzero bivariate polynomial."""
    if p.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    return NewtonPolygon.of_points(p.support())
