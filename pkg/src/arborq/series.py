"""Graded tree-indexed series and the operations on them.

A TreeSeries stores, up to a truncation order, one coefficient per tree
class in the convention  A = sum_T A_T * T / aut(T); the stored value for T
is A_T and absent keys mean zero.  Coefficients live in one of the
registered rings ("rational", "qrat", "xpoly", "qseries") and the ring plus
the truncation order must match before any binary operation; re-truncation
is always explicit.

The insertion product with outer corollas is computed from root-subtree
decompositions: the coefficient of T collects, over every root-containing
subtree T0 of T, the first series on T0 times the product of the second
series over the complement components.  Two fast paths cover the cases the
solvers hit constantly: first argument a multiple of the single vertex
(product over root branches) and second argument a multiple of the single
vertex (leaf pruning with a weight per removed leaf).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .algebra import QRAT_ONE, QRAT_ZERO, XPOLY_ONE, XPOLY_ZERO
from . import trees as tr

RING_ZERO: dict[str, Any] = {
    "rational": Fraction(0),
    "qrat": QRAT_ZERO,
    "xpoly": XPOLY_ZERO,
    "qseries": 0,
}

RING_ONE: dict[str, Any] = {
    "rational": Fraction(1),
    "qrat": QRAT_ONE,
    "xpoly": XPOLY_ONE,
    "qseries": 1,
}


def is_zero_coeff(v) -> bool:
    if hasattr(v, "is_zero"):
        return v.is_zero()
    return v == 0


@dataclass(frozen=True)
class TreeSeries:
    """Tree-indexed series truncated at a fixed order (by vertex count)."""

    order: int
    ring: str
    coeffs: dict[int, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.ring not in RING_ZERO:
            raise ValueError(f"unknown coefficient ring {self.ring!r}")
        if self.order < 1:
            raise ValueError("truncation order must be >= 1")
        clean = {}
        for t, v in self.coeffs.items():
            if tr.size(t) > self.order:
                raise ValueError("coefficient beyond the truncation order")
            if not is_zero_coeff(v):
                clean[t] = v
        object.__setattr__(self, "coeffs", clean)

    # -- access ---------------------------------------------------------------

    def coeff(self, t: int):
        return self.coeffs.get(t, RING_ZERO[self.ring])

    def support(self) -> list[int]:
        return sorted(self.coeffs, key=tr.tree_sort_key)

    def items(self):
        return [(t, self.coeffs[t]) for t in self.support()]

    def _check_compatible(self, other: TreeSeries):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    # -- linear structure -------------------------------------------------------

    def add(self, other: TreeSeries) -> TreeSeries:
        self._check_compatible(other)
        out = dict(self.coeffs)
        for t, v in other.coeffs.items():
            out[t] = out[t] + v if t in out else v
        return TreeSeries(self.order, self.ring, out)

    def neg(self) -> TreeSeries:
        return TreeSeries(self.order, self.ring, {t: -v for t, v in self.coeffs.items()})

    def sub(self, other: TreeSeries) -> TreeSeries:
        return self.add(other.neg())

    def scale(self, c) -> TreeSeries:
        return TreeSeries(self.order, self.ring, {t: v * c for t, v in self.coeffs.items()})

    def map_coeffs(self, fn: Callable[[int, Any], Any], ring: str | None = None) -> TreeSeries:
        return TreeSeries(
            self.order, ring or self.ring, {t: fn(t, v) for t, v in self.coeffs.items()}
        )

    def homogeneous(self, n: int) -> TreeSeries:
        return TreeSeries(
            self.order, self.ring, {t: v for t, v in self.coeffs.items() if tr.size(t) == n}
        )

    def truncate(self, order: int) -> TreeSeries:
        """Explicit re-truncation; only downward is meaningful."""
        if order > self.order:
            raise ValueError("cannot extend a series beyond the data it holds")
        return TreeSeries(
            order, self.ring, {t: v for t, v in self.coeffs.items() if tr.size(t) <= order}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TreeSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )


def zero_series(order: int, ring: str) -> TreeSeries:
    return TreeSeries(order, ring, {})


def unit_vertex(c, order: int, ring: str) -> TreeSeries:
    """The series c * (single vertex)."""
    return TreeSeries(order, ring, {tr.leaf(): c})


def suspension(a: TreeSeries, alpha) -> TreeSeries:
    """Rescale the degree-n homogeneous component by alpha^(n-1)."""
    one = RING_ONE[a.ring]
    powers = [one]
    for _ in range(a.order):
        powers.append(powers[-1] * alpha)
    return TreeSeries(
        a.order, a.ring, {t: v * powers[tr.size(t) - 1] for t, v in a.coeffs.items()}
    )


def _unit_multiple(s: TreeSeries):
    """If s is supported on the single vertex only, its coefficient there."""
    if not s.coeffs:
        return RING_ZERO[s.ring]
    if len(s.coeffs) == 1:
        ((t, v),) = s.coeffs.items()
        if t == tr.leaf():
            return v
    return None


def diamond_crls(a: TreeSeries, b: TreeSeries) -> TreeSeries:
    """Insertion with outer corollas: a goes in the root, b in the branches."""
    a._check_compatible(b)
    order, ring = a.order, a.ring
    zero, one = RING_ZERO[ring], RING_ONE[ring]

    out: dict[int, Any] = {}

    a_unit = _unit_multiple(a)
    b_unit = _unit_multiple(b)

    if a_unit is not None:
        # coefficient on B+(T_1..T_k) is a * prod_i b_{T_i}
        if is_zero_coeff(a_unit):
            return zero_series(order, ring)
        for n in range(1, order + 1):
            for t in tr.enumerate_trees(n):
                val = a_unit
                for c in tr.children(t):
                    bc = b.coeffs.get(c)
                    if bc is None:
                        val = None
                        break
                    val = val * bc
                if val is not None and not is_zero_coeff(val):
                    out[t] = val
        return TreeSeries(order, ring, out)

    if b_unit is not None:
        # leaf pruning with weight b_unit per removed leaf
        wpow = [one]
        for _ in range(order):
            wpow.append(wpow[-1] * b_unit)
        for n in range(1, order + 1):
            for t in tr.enumerate_trees(n):
                acc = zero
                for (rest, removed), count in tr.prune_leaf_subsets(t).items():
                    av = a.coeffs.get(rest)
                    if av is not None and not is_zero_coeff(wpow[removed]):
                        acc = acc + av * wpow[removed] * count
                if not is_zero_coeff(acc):
                    out[t] = acc
        return TreeSeries(order, ring, out)

    for n in range(1, order + 1):
        for t in tr.enumerate_trees(n):
            acc = zero
            for (kept, comps), count in tr.root_subtree_decompositions(t).items():
                av = a.coeffs.get(kept)
                if av is None:
                    continue
                val = av
                for c in comps:
                    bc = b.coeffs.get(c)
                    if bc is None:
                        val = None
                        break
                    val = val * bc
                if val is not None:
                    acc = acc + val * count
            if not is_zero_coeff(acc):
                out[t] = acc
    return TreeSeries(order, ring, out)


def graft_root_single(a: TreeSeries) -> TreeSeries:
    """Graft each tree of a onto a fresh root vertex: the coefficient of
    B+(T') is a_{T'}, and trees whose root has more than one child get zero.
    This is the only pre-Lie grafting instance the solvers need."""
    out: dict[int, Any] = {}
    for t, v in a.coeffs.items():
        if tr.size(t) + 1 <= a.order:
            out[tr.b_plus([t])] = v
    return TreeSeries(a.order, a.ring, out)


def sharp(a: TreeSeries, b: TreeSeries) -> TreeSeries:
    """The associative product  a # b = a + Crls-insertion of (b at the root,
    a in the branches)."""
    return a.add(diamond_crls(b, a))


def series_equal_reports(a: TreeSeries, b: TreeSeries) -> list[int]:
    """Trees on which two compatible series differ (for check witnesses)."""
    a._check_compatible(b)
    bad = []
    for t in set(a.coeffs) | set(b.coeffs):
        if a.coeff(t) != b.coeff(t):
            bad.append(t)
    return sorted(bad, key=tr.tree_sort_key)
