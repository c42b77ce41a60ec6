"""Verification layer: oracles versus recursions, check reports, conjecture
sweeps at unit-test scale (the full acceptance bounds live in
test_acceptance.py)."""

from __future__ import annotations

import json
from fractions import Fraction as F

import pytest

from arborq import solvers as S
from arborq import trees as T
from arborq import verify as V
from arborq.algebra import QPoly, QRat, q_int_poly
from arborq.serialize import canonical_json

EX5 = T.b_plus([T.leaf(), T.b_plus([T.leaf(), T.leaf()])])


class TestColoringOracle:
    def test_examples(self):
        assert V.oracle_colorings(T.leaf(), 2, "weak") == QPoly((1, 1, 1))
        assert V.oracle_colorings(EX5, 1, "weak") == QPoly((1, 1, 2, 3, 3, 1))
        assert V.oracle_colorings(T.lnr(2), 1, "strict") == QPoly((0, 1))

    def test_bound_enforced(self):
        with pytest.raises(ValueError):
            V.oracle_colorings(T.crl(9), 1, "weak", bound=9)

    def test_matches_recursion(self):
        for n in range(1, 7):
            for t in T.enumerate_trees(n):
                for k in range(0, 4):
                    for mode in ("weak", "strict"):
                        assert V.oracle_colorings(t, k, mode) == S.coloring_poly(t, k, mode)


class TestInterpolationOracle:
    def test_single_vertex(self):
        from arborq.algebra import one_plus_qx

        assert V.oracle_interpolate_pawn(T.leaf()) == one_plus_qx()

    def test_lnr2_matches_golden(self):
        assert V.oracle_interpolate_pawn(T.lnr(2)) == S.pawn_coeff(T.lnr(2))

    def test_small_sweep(self):
        for n in range(1, 6):
            for t in T.enumerate_trees(n):
                assert V.oracle_interpolate_pawn(t) == S.pawn_coeff(t)

    def test_bound_enforced(self):
        with pytest.raises(ValueError):
            V.oracle_interpolate_pawn(T.crl(7), bound=7)


class TestCheckReports:
    def test_pass_reports(self):
        for name in V.THEOREM_NAMES:
            report = V.check_theorem(name, 4)
            assert report.ok(), (name, report.witness)
            assert report.seconds >= 0
            json.dumps(report.to_obj())  # serializable

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            V.check_theorem("nonsense")

    def test_failure_carries_witness(self):
        # corrupt one memoized value through a private seam to see a witness
        report = V.CheckReport(name="synthetic", params={})
        V._fail(report, tree="(())", got=1, want=2)
        assert report.status == "fail"
        assert report.witness == {"tree": "(())", "got": "1", "want": "2"}
        json.dumps(report.to_obj())

    def test_deterministic_given_parameters(self):
        a = V.check_theorem("associativity", 4)
        b = V.check_theorem("associativity", 4)
        assert a.to_obj()["status"] == b.to_obj()["status"]
        assert a.params == b.params


class TestConjectures:
    def test_corolla_denominator_small(self):
        report = V.check_corolla_denominator(8)
        assert report.ok(), report.witness

    def test_newton_single_vertex_degenerate(self):
        assert V.check_newton(T.leaf()).ok()

    def test_newton_ex5_matches_profile(self):
        report = V.check_newton(EX5)
        assert report.ok(), report.witness
        assert V.newton_profile(EX5) == [(1, 1), (2, 2), (3, 2)]

    def test_newton_ex5_exact_hull(self):
        # hull of the golden five-vertex numerator, derived by hand:
        # bottom (0,0)-(10,0), right slope 1 to (15,5), top to (11,5), left
        # boundary down with slopes 1/3, 1/2, 1 through (5,3) and (1,1)
        from arborq.algebra import newton_polygon

        num, _den = S.pawn_fraction(EX5)
        assert newton_polygon(num).vertices == (
            (0, 0), (10, 0), (15, 5), (11, 5), (5, 3), (1, 1)
        )

    def test_newton_sweep_small(self):
        assert V.check_newton_sweep(6).ok()

    def test_newton_rejects_wrong_profile(self):
        # the checker must not pass a polygon against a wrong histogram:
        # check internal consistency by perturbing the expectation
        num, _den = S.pawn_fraction(T.lnr(3))
        from arborq.algebra import convex_hull_chains

        lower, upper = convex_hull_chains(num.support())
        walk = list(reversed(upper))
        # Lnr_3 profile is [(1,1),(2,1),(3,1)]; the walk must have 3 segments
        assert len(walk) >= 4

    def test_newton_spot_checks_beyond_sweep(self):
        # ten-vertex trees are cheap one at a time thanks to lazy solving
        for t in (T.crl(9), T.partition_tree((2, 2, 2)), T.b_plus([T.crl(2)] * 3)):
            assert V.check_newton(t).ok(), T.encoding(t)

    def test_partition_conjecture(self):
        assert V.check_partition_conjecture((), 3).ok()
        assert V.check_partition_conjecture((1,), 3).ok()
        with pytest.raises(ValueError):
            V.check_partition_conjecture((3, 2), 5, order_cap=12)

    def test_partition_even_k_not_asserted(self):
        # k=2 is outside the conjecture; the checker still runs and reports
        report = V.check_partition_conjecture((1,), 2, order_cap=12)
        assert report.status in ("pass", "fail")


class TestRandomSeries:
    def test_seed_reproducibility(self):
        assert V.random_series(4, 7).coeffs == V.random_series(4, 7).coeffs
        assert V.random_series(4, 7).coeffs != V.random_series(4, 8).coeffs
