"""Independent oracles and checkers.

The oracles here never touch the tree-series machinery: they enumerate raw
colorings / vertex subsets / permutations over the canonical labeled
representative, so agreement with the algebraic recursions is a genuine
cross-check.  Each named check returns a CheckReport; a failing report always
carries a serializable witness.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    QPOLY_ONE,
    QPoly,
    QRAT_ONE,
    QRAT_Q,
    QRat,
    XPOLY_ONE,
    XPoly,
    convex_hull_chains,
    cyclotomic,
    factor_cyclotomic,
    q_int_poly,
    q_integer,
    xpoly_fraction,
)
from . import solvers as sv
from . import trees as tr
from .series import (
    TreeSeries,
    diamond_crls,
    sharp,
    series_equal_reports,
    suspension,
    unit_vertex,
)

DEFAULT_COLORING_BOUND = 9
DEFAULT_INTERPOLATION_BOUND = 7

Q_TIMES_QM1 = QPoly((0, -1, 1))  # q(q-1)


@dataclass
class CheckReport:
    name: str
    params: dict = field(default_factory=dict)
    status: str = "pass"
    witness: dict | None = None
    seconds: float = 0.0

    def ok(self) -> bool:
        return self.status == "pass"

    def to_obj(self) -> dict:
        out = {
            "name": self.name,
            "params": self.params,
            "status": self.status,
            "seconds": round(self.seconds, 4),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _finish(report: CheckReport, t0: float) -> CheckReport:
    report.seconds = time.perf_counter() - t0
    return report


def _fail(report: CheckReport, **witness) -> CheckReport:
    report.status = "fail"
    report.witness = {k: str(v) for k, v in witness.items()}
    return report


# ---------------------------------------------------------------------------
# Oracles


def oracle_colorings(t: int, n: int, mode: str = "weak", bound: int = DEFAULT_COLORING_BOUND) -> QPoly:
    """Brute-force coloring polynomial: walk the canonical representative and
    enumerate every decreasing coloring by {0..n}, summing q^(sum of colors)."""
    if tr.size(t) > bound:
        raise ValueError(f"tree size {tr.size(t)} exceeds brute-force bound {bound}")
    if mode not in ("weak", "strict"):
        raise ValueError(f"unknown coloring mode {mode!r}")
    if n < 0:
        return QPoly()
    parents = tr.parent_array(t)
    nv = len(parents)
    counts = [0] * (n * nv + 1)
    colors = [0] * nv

    def walk(v: int, sigma: int):
        if v == nv:
            counts[sigma] += 1
            return
        top = n if v == 0 else (colors[parents[v]] - (0 if mode == "weak" else 1))
        for c in range(0, top + 1):
            colors[v] = c
            walk(v + 1, sigma + c)

    walk(0, 0)
    return QPoly(counts)


def oracle_interpolate_pawn(t: int, bound: int = DEFAULT_INTERPOLATION_BOUND) -> XPoly:
    """Recover the coefficient of t by Lagrange interpolation in x through the
    nodes ([m]_q, weak coloring value) for m = 0..#t, values from the raw
    coloring oracle."""
    n = tr.size(t)
    if n > bound:
        raise ValueError(f"tree size {n} exceeds interpolation bound {bound}")
    nodes = [q_integer(m) for m in range(n + 1)]
    values = [QRat(oracle_colorings(t, m, "weak", bound=bound + 1)) for m in range(n + 1)]
    total = XPoly()
    for m in range(n + 1):
        basis = XPOLY_ONE
        denom = QRAT_ONE
        for j in range(n + 1):
            if j == m:
                continue
            basis = basis * XPoly((-nodes[j], QRAT_ONE))
            denom = denom * (nodes[m] - nodes[j])
        total = total + basis.scale(values[m] / denom)
    return total


def random_series(order: int, seed: int, lo: int = -3, hi: int = 3) -> TreeSeries:
    """Seeded random series with small integer coefficients (rational ring)."""
    rng = random.Random(seed)
    coeffs = {}
    for n in range(1, order + 1):
        for t in tr.enumerate_trees(n):
            coeffs[t] = Fraction(rng.randint(lo, hi))
    return TreeSeries(order, "rational", coeffs)


def _all_trees_upto(order: int) -> list[int]:
    out = []
    for n in range(1, order + 1):
        out.extend(tr.enumerate_trees(n))
    return out


# ---------------------------------------------------------------------------
# Theorem checks


def _check_valeur_n_positif(report, max_order, n_range=(0, 4), **_):
    pawn = sv.solve_pawn(max_order)
    for n in range(n_range[0], n_range[1] + 1):
        got = sv.eval_pawn_at_qint(pawn, n)
        want = sv.coloring_series(max_order, n, "weak")
        bad = series_equal_reports(got, want)
        if bad:
            return _fail(report, n=n, tree=tr.encoding(bad[0]),
                         got=got.coeff(bad[0]), want=want.coeff(bad[0]))
    return report


def _check_valeur_n_negatif(report, max_order, n_range=(2, 4), **_):
    pawn = sv.solve_pawn(max_order)
    for n in range(n_range[0], n_range[1] + 1):
        ev = sv.eval_pawn_at_qint(pawn, -n)
        for t in _all_trees_upto(max_order):
            m = tr.size(t)
            got = ev.coeff(t).reciprocal_q()
            g = sv.coloring_poly(t, n - 2, "strict")
            want = QRat(g.shift(m).scale(1 if m % 2 == 0 else -1))
            if got != want:
                return _fail(report, n=n, tree=tr.encoding(t), got=got, want=want)
    return report


def _check_valeur_speciale(report, max_order, **_):
    got = sv.limit_minus_one_over_q(sv.solve_pawn(max_order))
    want = sv.solve_omega_bar(max_order)
    bad = series_equal_reports(got, want)
    if bad:
        return _fail(report, tree=tr.encoding(bad[0]),
                     got=got.coeff(bad[0]), want=want.coeff(bad[0]))
    return report


def _check_prop_gen(report, max_order, seeds=(11, 22, 33), **_):
    e_ones = sv.series_E(max_order).map_coeffs(lambda _t, _v: Fraction(1), ring="rational")
    minus_dot = unit_vertex(Fraction(-1), max_order, "rational")
    for seed in seeds:
        a = random_series(max_order, seed)
        got = diamond_crls(diamond_crls(a, e_ones), minus_dot)
        bad = series_equal_reports(got, a)
        if bad:
            return _fail(report, seed=seed, tree=tr.encoding(bad[0]),
                         got=got.coeff(bad[0]), want=a.coeff(bad[0]))
    # divisibility seen in the proof: coefficients of Crls<>(E, k dot) are
    # divisible by k+1 on every tree with a removable leaf (size >= 2; the
    # single vertex always carries 1, matching Crls<>(E, -dot) = dot)
    div_order = min(max_order, 7)
    e7 = sv.series_E(div_order).map_coeffs(lambda _t, _v: Fraction(1), ring="rational")
    for k in range(1, 6):
        s = diamond_crls(e7, unit_vertex(Fraction(k), div_order, "rational"))
        for t, v in s.items():
            if tr.size(t) >= 2 and (v.denominator != 1 or v.numerator % (k + 1)):
                return _fail(report, k=k, tree=tr.encoding(t), value=v)
    return report


def _check_action_delta(report, max_order, **_):
    for t in _all_trees_upto(max_order):
        prod = XPOLY_ONE
        for c in tr.children(t):
            prod = prod * sv.pawn_coeff(c)
        want = prod.subst_x_linear(QRAT_ONE, QRAT_Q).scale(QRAT_Q)
        got = sv.hahn_delta(sv.pawn_coeff(t))
        if got != want:
            return _fail(report, tree=tr.encoding(t), got=got, want=want)
    return report


def _check_ombral_iti(report, max_order, **_):
    for t in _all_trees_upto(max_order):
        prod = XPOLY_ONE
        for c in tr.children(t):
            prod = prod * sv.pawn_coeff(c)
        if sv.omega_bar_coeff(t) != sv.psi_umbral(prod):
            return _fail(report, tree=tr.encoding(t),
                         omega_bar=sv.omega_bar_coeff(t), umbral=sv.psi_umbral(prod))
    return report


def _check_ombral_nui(report, max_order, **_):
    for t in _all_trees_upto(max_order):
        prod = XPOLY_ONE
        for c in tr.children(t):
            prod = prod * sv.pawn_coeff(c)
        got = sv.psi_umbral(prod * XPoly((0, -1)))
        want = sv.omega_bar_coeff(tr.b_plus([t]))
        if got != want:
            return _fail(report, tree=tr.encoding(t), grafted=tr.encoding(tr.b_plus([t])),
                         got=got, want=want)
    return report


def _check_facteurs_connus(report, max_order, **_):
    for t in _all_trees_upto(max_order):
        prod = XPOLY_ONE
        for i in range(1, tr.height(t) + 1):
            prod = prod * XPoly((q_int_poly(i), QPoly.q_power(i)))
        _, rem = divmod(sv.pawn_coeff(t), prod)
        if not rem.is_zero():
            return _fail(report, tree=tr.encoding(t), remainder=rem)
    return report


def _check_x_infinity(report, max_order, **_):
    for t in _all_trees_upto(max_order):
        f = sv.pawn_coeff(t)
        n = tr.size(t)
        if f.degree != n:
            return _fail(report, tree=tr.encoding(t), degree=f.degree, size=n)
        if f.coeff(n) != tr.q_factorial(t).inverse():
            return _fail(report, tree=tr.encoding(t), leading=f.coeff(n),
                         inverse_q_factorial=tr.q_factorial(t).inverse())
    return report


def _check_q1_no_pole(report, max_order, **_):
    try:
        z = sv.pawn_q1_limit(max_order)
    except Exception as exc:  # a residual pole is a failure, not a crash
        return _fail(report, error=exc)
    if z.coeff(tr.leaf()) != XPoly((1, 1)):
        return _fail(report, degree_one_term=z.coeff(tr.leaf()))
    return report


def _check_fbar_vs_cover(report, max_order, **_):
    for t in _all_trees_upto(max_order):
        ftype = sv.fbar_type(t)
        cover = tr.min_vertex_covers_root(t)
        if (ftype == 1) != cover.root_in_some:
            return _fail(report, tree=tr.encoding(t), fbar=ftype, cover=cover)
        val = sv.coloring_poly(t, 1, "weak").evaluate(Fraction(-1))
        if val != ftype:
            return _fail(report, tree=tr.encoding(t), fbar=ftype, coloring_at_minus_one=val)
    return report


def _check_sharp_reformulation(report, max_order, **_):
    pawn = sv.solve_pawn(max_order)
    q_scalar = XPoly.const(QRAT_Q)
    scal = XPoly((QPoly.q_power(1), Q_TIMES_QM1))
    qsp = suspension(pawn, q_scalar).scale(q_scalar)
    lhs = sharp(unit_vertex(XPoly((-1,)), max_order, "xpoly"), pawn)
    rhs = sharp(qsp, unit_vertex(-scal, max_order, "xpoly"))
    bad = series_equal_reports(lhs, rhs)
    if bad:
        return _fail(report, tree=tr.encoding(bad[0]),
                     lhs=lhs.coeff(bad[0]), rhs=rhs.coeff(bad[0]))
    return report


def _check_associativity(report, max_order, seeds=(5, 6, 7), **_):
    # the nesting law satisfied by the counting semantics, and the
    # equivalent associativity of the # product
    for seed in seeds:
        a = random_series(max_order, seed)
        b = random_series(max_order, seed + 1000)
        c = random_series(max_order, seed + 2000)
        lhs = diamond_crls(diamond_crls(a, b), c)
        rhs = diamond_crls(a, c.add(diamond_crls(b, c)))
        bad = series_equal_reports(lhs, rhs)
        if bad:
            return _fail(report, law="nested insertion", seed=seed,
                         tree=tr.encoding(bad[0]),
                         lhs=lhs.coeff(bad[0]), rhs=rhs.coeff(bad[0]))
        lhs2 = sharp(sharp(a, b), c)
        rhs2 = sharp(a, sharp(b, c))
        bad = series_equal_reports(lhs2, rhs2)
        if bad:
            return _fail(report, law="sharp", seed=seed, tree=tr.encoding(bad[0]),
                         lhs=lhs2.coeff(bad[0]), rhs=rhs2.coeff(bad[0]))
    return report


def _check_suspension_formula(report, max_order, seeds=(9, 10), **_):
    for seed in seeds:
        b = random_series(max_order, seed)
        c = random_series(max_order, seed + 500)
        for alpha in (Fraction(2), Fraction(-1, 3)):
            lhs = suspension(diamond_crls(b, c), alpha)
            rhs = diamond_crls(suspension(b, alpha), suspension(c, alpha).scale(alpha))
            bad = series_equal_reports(lhs, rhs)
            if bad:
                return _fail(report, seed=seed, alpha=alpha, tree=tr.encoding(bad[0]),
                             lhs=lhs.coeff(bad[0]), rhs=rhs.coeff(bad[0]))
    return report


def _check_oracle_colorings(report, max_order, n_range=(0, 3),
                            bound=DEFAULT_COLORING_BOUND, workers=1, **_):
    top = min(max_order, bound)
    trees = _all_trees_upto(top)

    def one(t):
        for n in range(n_range[0], n_range[1] + 1):
            for mode in ("weak", "strict"):
                got = sv.coloring_poly(t, n, mode)
                want = oracle_colorings(t, n, mode, bound=bound)
                if got != want:
                    return (t, n, mode, got, want)
        return None

    for res in sv.pmap(one, trees, workers):
        if res is not None:
            t, n, mode, got, want = res
            return _fail(report, tree=tr.encoding(t), n=n, mode=mode,
                         recursion=got, oracle=want)
    return report


def _check_oracle_interpolation(report, max_order,
                                bound=DEFAULT_INTERPOLATION_BOUND, workers=1, **_):
    top = min(max_order, bound)
    trees = _all_trees_upto(top)

    def one(t):
        got = sv.pawn_coeff(t)
        want = oracle_interpolate_pawn(t, bound=bound)
        return None if got == want else (t, got, want)

    for res in sv.pmap(one, trees, workers):
        if res is not None:
            t, got, want = res
            return _fail(report, tree=tr.encoding(t), solver=got, interpolated=want)
    return report


THEOREM_DEFAULT_ORDER = {
    "valeur_n_positif": 6,
    "valeur_n_negatif": 6,
    "valeur_speciale": 6,
    "prop_gen": 6,
    "action_delta": 6,
    "ombral_iti": 7,
    "ombral_nui": 7,
    "facteurs_connus": 8,
    "x_infinity": 8,
    "q1_no_pole": 6,
    "fbar_vs_cover": 9,
    "sharp_reformulation": 5,
    "associativity": 5,
    "suspension_formula": 6,
    "oracle_colorings": 7,
    "oracle_interpolation": 7,
}

_THEOREM_FNS = {
    "valeur_n_positif": _check_valeur_n_positif,
    "valeur_n_negatif": _check_valeur_n_negatif,
    "valeur_speciale": _check_valeur_speciale,
    "prop_gen": _check_prop_gen,
    "action_delta": _check_action_delta,
    "ombral_iti": _check_ombral_iti,
    "ombral_nui": _check_ombral_nui,
    "facteurs_connus": _check_facteurs_connus,
    "x_infinity": _check_x_infinity,
    "q1_no_pole": _check_q1_no_pole,
    "fbar_vs_cover": _check_fbar_vs_cover,
    "sharp_reformulation": _check_sharp_reformulation,
    "associativity": _check_associativity,
    "suspension_formula": _check_suspension_formula,
    "oracle_colorings": _check_oracle_colorings,
    "oracle_interpolation": _check_oracle_interpolation,
}

THEOREM_NAMES = tuple(_THEOREM_FNS)


def check_theorem(name: str, max_order: int | None = None, **kwargs) -> CheckReport:
    """Run one named equality/divisibility sweep and report."""
    if name not in _THEOREM_FNS:
        raise ValueError(f"unknown check {name!r}; known: {', '.join(THEOREM_NAMES)}")
    if max_order is None:
        max_order = THEOREM_DEFAULT_ORDER[name]
    t0 = time.perf_counter()
    params = {"max_order": max_order}
    params.update({k: v for k, v in kwargs.items() if v is not None})
    report = CheckReport(name=name, params=params)
    fn = _THEOREM_FNS[name]
    report = fn(report, max_order, **{k: v for k, v in kwargs.items() if v is not None})
    return _finish(report, t0)


# ---------------------------------------------------------------------------
# Conjecture checkers


def check_corolla_denominator(max_n: int, progress=None) -> CheckReport:
    """Denominator of the n-corolla coefficient should be prod_{d=2..n+1} Phi_d."""
    t0 = time.perf_counter()
    report = CheckReport("corolla_denominator", {"max_n": max_n})
    for n in range(0, max_n + 1):
        if progress:
            progress(f"corolla {n}/{max_n}")
        _, den = xpoly_fraction(sv.pawn_corolla(n))
        unit, factors, remainder = factor_cyclotomic(den)
        want = {d: 1 for d in range(2, n + 2)}
        if unit != 1 or remainder != QPOLY_ONE or factors != want:
            return _finish(_fail(report, n=n, denominator=den, factors=factors,
                                 remainder=remainder), t0)
    return _finish(report, t0)


def newton_profile(t: int):
    """Expected left-boundary profile: (i, vertical extent) for i = 1..height."""
    st = tr.tree_stats(t)
    return [(i, st.height_histogram[i]) for i in range(1, st.height + 1)]


def check_newton(t: int) -> CheckReport:
    """Shape check of the numerator's Newton polygon: horizontal top and
    bottom edges at x-degrees #T and 0, a single slope-1 right edge, and a
    left boundary made of slope-1/i segments whose vertical extents are the
    height counts, bottom to top.  Offsets are taken from the hull itself."""
    t0 = time.perf_counter()
    report = CheckReport("newton", {"tree": tr.encoding(t)})
    num, _den = sv.pawn_fraction(t)
    pts = num.support()
    lower, upper = convex_hull_chains(pts)
    n = tr.size(t)
    xs = [x for (_q, x) in pts]
    hull = {"lower": lower, "upper": upper}
    if min(xs) != 0 or max(xs) != n:
        return _finish(_fail(report, reason="x-degree range", hull=hull,
                             x_min=min(xs), x_max=max(xs), size=n), t0)
    # bottom + right: an optional horizontal edge, then one slope-1 edge
    edges = list(zip(lower, lower[1:]))
    if edges and edges[0][1][1] == edges[0][0][1]:
        edges = edges[1:]
    if len(edges) != 1:
        return _finish(_fail(report, reason="right boundary is not a single edge",
                             hull=hull), t0)
    (aq, ax), (bq, bx) = edges[0]
    if not (ax == 0 and bx == n and (bq - aq) == (bx - ax)):
        return _finish(_fail(report, reason="right boundary slope", hull=hull), t0)
    # left + top, walked bottom to top
    walk = list(reversed(upper))
    if walk[0][1] != 0:
        return _finish(_fail(report, reason="left boundary does not start at x-degree 0",
                             hull=hull), t0)
    expected = newton_profile(t)
    pos = 0
    for i, extent in expected:
        if pos + 1 >= len(walk):
            return _finish(_fail(report, reason="left boundary too short", hull=hull), t0)
        (cq, cx), (dq, dx) = walk[pos], walk[pos + 1]
        if (dx - cx, dq - cq) != (extent, i * extent):
            return _finish(_fail(report, reason=f"left segment for slope 1/{i}",
                                 expected=(i * extent, extent),
                                 got=(dq - cq, dx - cx), hull=hull), t0)
        pos += 1
    rest = walk[pos:]
    if len(rest) > 2 or (len(rest) == 2 and rest[0][1] != rest[1][1]):
        return _finish(_fail(report, reason="top boundary not horizontal", hull=hull), t0)
    return _finish(report, t0)


def check_newton_sweep(max_size: int, progress=None) -> CheckReport:
    t0 = time.perf_counter()
    report = CheckReport("newton_sweep", {"max_size": max_size})
    for n in range(1, max_size + 1):
        if progress:
            progress(f"polygons for size {n}/{max_size} ({len(tr.enumerate_trees(n))} trees)")
        for t in tr.enumerate_trees(n):
            sub = check_newton(t)
            if not sub.ok():
                report.status = sub.status
                report.witness = sub.witness
                return _finish(report, t0)
    return _finish(report, t0)


def check_partition_conjecture(lam, k: int, order_cap: int = 12) -> CheckReport:
    """For odd k >= 3, the base-series coefficient of k copies of the
    partition-shaped tree grafted on a root should have a numerator divisible
    by Phi_{1 + max part}."""
    t0 = time.perf_counter()
    lam = tuple(lam)
    report = CheckReport("partition", {"lambda": list(lam), "k": k, "order_cap": order_cap})
    nverts = 1 + k * (1 + sum(lam))
    if nverts > order_cap:
        raise ValueError(f"tree has {nverts} vertices, above the cap {order_cap}")
    base = tr.partition_tree(lam)
    t = tr.b_plus([base] * k)
    coeff = sv.omega_coeff(t)
    phi = cyclotomic(1 + (max(lam) if lam else 0))
    _, rem = divmod(coeff.num, phi)
    if not rem.is_zero():
        return _finish(_fail(report, tree=tr.encoding(t), coefficient=coeff,
                             modulus=phi, remainder=rem), t0)
    return _finish(report, t0)


def run_suite(names, max_order: int | None = None, **kwargs) -> list[CheckReport]:
    return [check_theorem(name, max_order, **kwargs) for name in names]
