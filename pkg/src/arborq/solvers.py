"""Solvers and closed forms for the named tree series.

Everything here is driven by per-tree recursions obtained by extracting the
degree-n homogeneous component of the defining functional equations; the
left side always contributes (q^n - 1) times the unknown coefficient, the
right side only smaller trees (leaf prunings and root branches).  The tests
re-derive each recursion by evaluating both sides of the original equation
with the tree-series primitives, so the derivations themselves are guarded.

The per-tree solvers are demand-driven and memoized: asking for one
coefficient only computes the trees reachable from it by leaf pruning and
root-branch extraction, never a full enumeration by size.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .algebra import (
    PoleError,
    Q,
    QPOLY_ONE,
    QPoly,
    QRAT_ONE,
    QRAT_Q,
    QRAT_ZERO,
    QRat,
    QSeries,
    XPOLY_ONE,
    XPoly,
    one_plus_qx,
    q_int_poly,
    q_integer,
    qrat_sum,
    xpoly_fraction,
    xpoly_sum,
)
from . import trees as tr
from .series import TreeSeries


def pmap(fn, items, workers: int = 1) -> list:
    """Map preserving input order; with workers > 1 a thread pool is used.
    Results must not depend on scheduling (all functions here are pure)."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# The main two-variable series ("pawn" in the CLI)

_PAWN: dict[int, XPoly] = {}


def pawn_coeff(t: int) -> XPoly:
    """Coefficient of the tree t, a polynomial in x of degree #t over Q(q)."""
    cached = _PAWN.get(t)
    if cached is not None:
        return cached
    n = tr.size(t)
    if n == 1:
        val = one_plus_qx()
    else:
        terms = []
        for (rest, removed), count in tr.prune_leaf_subsets(t, proper_only=True).items():
            c = -count if removed % 2 else count
            terms.append(pawn_coeff(rest) * c)
        prod = XPOLY_ONE
        for c in tr.children(t):
            prod = prod * pawn_coeff(c)
        qn = QPoly.q_power(n)
        terms.append(prod * XPoly((qn, qn * QPoly((-1, 1)))))
        val = xpoly_sum(terms).scale(QRat(1, qn - 1))
    _PAWN[t] = val
    return val


def solve_pawn(order: int, workers: int = 1) -> TreeSeries:
    """The unique solution of the defining equation, to the given order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs: dict[int, XPoly] = {}
    for n in range(1, order + 1):
        ids = tr.enumerate_trees(n)
        for t, v in zip(ids, pmap(pawn_coeff, ids, workers)):
            coeffs[t] = v
    return TreeSeries(order, "xpoly", coeffs)


def pawn_fraction(t: int):
    """(numerator in q and x, monic denominator in q) of the coefficient of t."""
    return xpoly_fraction(pawn_coeff(t))


_PAWN_AT: dict[tuple[QRat, int], QRat] = {}


def specialized_pawn_coeff(x0: QRat, t: int) -> QRat:
    """Re-solve the recursion with x pre-substituted by x0 (same shape)."""
    key = (x0, t)
    cached = _PAWN_AT.get(key)
    if cached is not None:
        return cached
    n = tr.size(t)
    if n == 1:
        val = QRAT_ONE + QRAT_Q * x0
    else:
        terms = []
        for (rest, removed), count in tr.prune_leaf_subsets(t, proper_only=True).items():
            c = -count if removed % 2 else count
            terms.append(specialized_pawn_coeff(x0, rest) * c)
        prod = QRAT_ONE
        for c in tr.children(t):
            prod = prod * specialized_pawn_coeff(x0, c)
        qn = QPoly.q_power(n)
        terms.append(prod * QRat(qn) * (QRAT_ONE + QRat(QPoly((-1, 1))) * x0))
        val = qrat_sum(terms) / QRat(qn - 1)
    _PAWN_AT[key] = val
    return val


def solve_pawn_specialized(x0: QRat, order: int) -> TreeSeries:
    coeffs = {}
    for n in range(1, order + 1):
        for t in tr.enumerate_trees(n):
            coeffs[t] = specialized_pawn_coeff(x0, t)
    return TreeSeries(order, "qrat", coeffs)


def eval_pawn_at_qint(series: TreeSeries, n: int) -> TreeSeries:
    """Substitute x -> [n]_q in every coefficient (n may be negative)."""
    x0 = q_integer(n)
    return series.map_coeffs(lambda _t, f: f.evaluate(x0), ring="qrat")


def series_E(order: int) -> TreeSeries:
    """All-ones series: one structure per tree."""
    coeffs = {}
    for n in range(1, order + 1):
        for t in tr.enumerate_trees(n):
            coeffs[t] = QRAT_ONE
    return TreeSeries(order, "qrat", coeffs)


# ---------------------------------------------------------------------------
# Coloring polynomials

_COLOR: dict[tuple[int, int, str], QPoly] = {}


def coloring_poly(t: int, n: int, mode: str = "weak") -> QPoly:
    """Generating polynomial sum q^(sum of colors) over colorings of t by
    {0..n} that decrease (weakly or strictly) away from the root."""
    if mode not in ("weak", "strict"):
        raise ValueError(f"unknown coloring mode {mode!r}")
    if n < 0:
        return QPoly()
    key = (t, n, mode)
    cached = _COLOR.get(key)
    if cached is not None:
        return cached
    kids = tr.children(t)
    total = QPoly()
    for j in range(n + 1):
        sub = j if mode == "weak" else j - 1
        prod = QPOLY_ONE
        for c in kids:
            prod = prod * coloring_poly(c, sub, mode)
            if prod.is_zero():
                break
        if not prod.is_zero():
            total = total + prod.shift(j)
    _COLOR[key] = total
    return total


def coloring_series(order: int, n: int, mode: str = "weak") -> TreeSeries:
    coeffs = {}
    for m in range(1, order + 1):
        for t in tr.enumerate_trees(m):
            coeffs[t] = QRat(coloring_poly(t, n, mode))
    return TreeSeries(order, "qrat", coeffs)


def fbar_type(t: int) -> int:
    """Root type in {0, 1}: the weak 1-coloring polynomial evaluated at q=-1,
    which satisfies type(B+(T_1..T_k)) = 1 - prod type(T_i)."""
    prod = 1
    for c in tr.children(t):
        prod *= fbar_type(c)
        if prod == 0:
            break
    return 1 - prod


# ---------------------------------------------------------------------------
# Closed forms for linear trees and corollas

def pawn_linear(n: int) -> XPoly:
    """(1+qx) * prod_{i=2..n} ([i]_q + q^i x)/[i]_q."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = one_plus_qx()
    for i in range(2, n + 1):
        out = out * XPoly((q_int_poly(i), QPoly.q_power(i))).scale(QRat(1, q_int_poly(i)))
    return out


_COROLLA: list[XPoly] = []


def pawn_corolla(n: int) -> XPoly:
    """Corolla coefficients by the recursion extracted from their exponential
    generating identity:
      (q^(n+1)-1) c_n = sum_{k<n} (-1)^(n-k) C(n,k) c_k
                        + q^(n+1) (1+(q-1)x) (1+qx)^n,   c_0 = 1+qx.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    while len(_COROLLA) <= n:
        m = len(_COROLLA)
        if m == 0:
            _COROLLA.append(one_plus_qx())
            continue
        terms = []
        for k in range(m):
            c = math.comb(m, k)
            if (m - k) % 2:
                c = -c
            terms.append(_COROLLA[k] * c)
        qm = QPoly.q_power(m + 1)
        terms.append((one_plus_qx() ** m) * XPoly((qm, qm * QPoly((-1, 1)))))
        _COROLLA.append(xpoly_sum(terms).scale(QRat(1, qm - 1)))
    return _COROLLA[n]


# ---------------------------------------------------------------------------
# The inverse-flavored series and its variant

_OMEGA: dict[int, QRat] = {}


def omega_coeff(t: int) -> QRat:
    """Coefficient in the series whose corolla coefficients are the
    Bernoulli-Carlitz numbers; per-tree recursion
      (q^n - 1) w_T = [root has one child] w_{T'}
                      - sum_{nonempty leaf subsets S} q^(n-|S|) w_{T minus S}.
    """
    cached = _OMEGA.get(t)
    if cached is not None:
        return cached
    n = tr.size(t)
    if n == 1:
        val = QRAT_ONE
    else:
        terms = []
        kids = tr.children(t)
        if len(kids) == 1:
            terms.append(omega_coeff(kids[0]))
        for (rest, removed), count in tr.prune_leaf_subsets(t, proper_only=True).items():
            terms.append(omega_coeff(rest) * QRat(QPoly.q_power(n - removed).scale(-count)))
        val = qrat_sum(terms) / QRat(QPoly.q_power(n) - 1)
    _OMEGA[t] = val
    return val


_OMEGA_BAR: dict[int, QRat] = {}


def omega_bar_coeff(t: int) -> QRat:
    """Variant obtained by q -> 1/q plus suspension by -1/q; solved directly by
      (q^n - 1) w_T = sum_{nonempty leaf subsets S} (-1)^|S| w_{T minus S}
                      + [root has one child] q^(n-1) w_{T'}.
    """
    cached = _OMEGA_BAR.get(t)
    if cached is not None:
        return cached
    n = tr.size(t)
    if n == 1:
        val = QRAT_ONE
    else:
        terms = []
        for (rest, removed), count in tr.prune_leaf_subsets(t, proper_only=True).items():
            c = -count if removed % 2 else count
            terms.append(omega_bar_coeff(rest) * c)
        kids = tr.children(t)
        if len(kids) == 1:
            terms.append(omega_bar_coeff(kids[0]) * QRat(QPoly.q_power(n - 1)))
        val = qrat_sum(terms) / QRat(QPoly.q_power(n) - 1)
    _OMEGA_BAR[t] = val
    return val


def omega_bar_via_transform(t: int) -> QRat:
    """Same coefficient through the other route: substitute q -> 1/q in the
    base series and apply the suspension by -1/q."""
    m = tr.size(t)
    return omega_coeff(t).reciprocal_q() * QRat(QPoly.const(-1), Q) ** (m - 1)


def solve_omega(order: int, workers: int = 1) -> TreeSeries:
    coeffs = {}
    for n in range(1, order + 1):
        ids = tr.enumerate_trees(n)
        for t, v in zip(ids, pmap(omega_coeff, ids, workers)):
            coeffs[t] = v
    return TreeSeries(order, "qrat", coeffs)


def solve_omega_bar(order: int, workers: int = 1) -> TreeSeries:
    coeffs = {}
    for n in range(1, order + 1):
        ids = tr.enumerate_trees(n)
        for t, v in zip(ids, pmap(omega_bar_coeff, ids, workers)):
            coeffs[t] = v
    return TreeSeries(order, "qrat", coeffs)


MINUS_ONE_OVER_Q = QRat(QPoly.const(-1), Q)


def limit_minus_one_over_q(series: TreeSeries) -> TreeSeries:
    """Divide every coefficient by (1+qx) exactly, then evaluate at x = -1/q."""
    def lim(_t, f: XPoly) -> QRat:
        return f.exact_div(one_plus_qx()).evaluate(MINUS_ONE_OVER_Q)

    return series.map_coeffs(lim, ring="qrat")


def pawn_x_infinity(order: int) -> TreeSeries:
    """Keep only the top x-degree term of each coefficient (degree = #T);
    the values are the inverse q-factorials of the trees."""
    pawn = solve_pawn(order)
    return pawn.map_coeffs(lambda t, f: f.coeff(tr.size(t)), ring="qrat")


def pawn_one_minus_q_inverse(k: int, series_order: int) -> QSeries:
    """Corolla coefficient at x = 1/(1-q), expanded as a power series in q.
    Equals the truncation of sum_{j>=1} q^(j-1) [j]_q^k."""
    x0 = QRat(QPOLY_ONE, QPoly((1, -1)))
    return pawn_corolla(k).evaluate(x0).series(series_order)


def colorings_sum_series(k: int, series_order: int) -> QSeries:
    """Independent truncation of sum_{j>=1} q^(j-1) [j]_q^k."""
    total = [Fraction(0)] * (series_order + 1)
    for j in range(1, series_order + 2):
        term = (q_int_poly(j) ** k).shift(j - 1)
        for e, c in enumerate(term.coeffs[: series_order + 1]):
            total[e] += c
    return QSeries(total, series_order)


def colorings_limit_series(order: int, series_order: int) -> TreeSeries:
    """The whole series at x = 1/(1-q), with each coefficient expanded as a
    truncated q-series; the coefficient of a tree is the generating series of
    all its weakly decreasing colorings."""
    x0 = QRat(QPOLY_ONE, QPoly((1, -1)))
    coeffs = {}
    for n in range(1, order + 1):
        for t in tr.enumerate_trees(n):
            coeffs[t] = specialized_pawn_coeff(x0, t).series(series_order)
    return TreeSeries(order, "qseries", coeffs)


# ---------------------------------------------------------------------------
# Bernoulli-Carlitz numbers and the umbral form

_CARLITZ: list[QRat] = []


def bernoulli_carlitz(k: int) -> QRat:
    """q-analog Bernoulli numbers: b_0 = 1 and
      (q^(n+1) - 1) b_n = [n == 1] - q * sum_{j<n} C(n,j) q^j b_j."""
    if k < 0:
        raise ValueError("index must be >= 0")
    while len(_CARLITZ) <= k:
        n = len(_CARLITZ)
        if n == 0:
            _CARLITZ.append(QRAT_ONE)
            continue
        terms = [QRAT_ONE if n == 1 else QRAT_ZERO]
        for j in range(n):
            terms.append(_CARLITZ[j] * QRat(QPoly.q_power(j + 1).scale(-math.comb(n, j))))
        _CARLITZ.append(qrat_sum(terms) / QRat(QPoly.q_power(n + 1) - 1))
    return _CARLITZ[k]


def psi_umbral(p: XPoly) -> QRat:
    """Linear form sending x^n to the n-th Bernoulli-Carlitz number."""
    return qrat_sum(c * bernoulli_carlitz(j) for j, c in enumerate(p.coeffs))


# ---------------------------------------------------------------------------
# The divided-difference operator and its inverse

_DELTA_DEN = XPoly((1, QPoly((-1, 1))))  # 1 + (q-1) x


def hahn_delta(f: XPoly) -> XPoly:
    """(f(1+qx) - f(x)) / (1+qx-x); drops the degree by one and is linear."""
    num = f.subst_x_linear(QRAT_ONE, QRAT_Q) - f
    return num.exact_div(_DELTA_DEN)


def hahn_inverse(g: XPoly) -> XPoly:
    """The unique f divisible by (1+qx) with hahn_delta(f) = g.

    The operator maps degree j to degree j-1 with leading factor [j]_q, so a
    triangular solve from the top determines f up to a constant; the constant
    is fixed by forcing the root at x = -1/q.
    """
    f = XPoly()
    residual = g
    for j in range(g.degree + 1, 0, -1):
        cj = residual.coeff(j - 1) / QRat(q_int_poly(j))
        if not cj.is_zero():
            f = f + XPoly((QRAT_ZERO,) * j + (cj,))
            residual = g - hahn_delta(f)
    return f - XPoly.const(f.evaluate(MINUS_ONE_OVER_Q))


# ---------------------------------------------------------------------------
# Limits

def pawn_q1_limit(order: int) -> TreeSeries:
    """Substitute q = 1 in every reduced coefficient.  A vanishing reduced
    denominator at q = 1 is an arithmetic bug and raises loudly."""
    pawn = solve_pawn(order)

    def at_one(t, f: XPoly) -> XPoly:
        try:
            return f.map_coeffs(lambda c: QRat(QPoly.const(c.evaluate(Fraction(1)))))
        except PoleError as exc:
            raise PoleError(
                f"residual pole at q=1 on tree {tr.encoding(t)}: {exc}"
            ) from exc

    return pawn.map_coeffs(at_one)
