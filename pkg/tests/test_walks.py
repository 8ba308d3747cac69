"""Enumeration: DP against the exhaustive oracle, frozen counts, invariants."""

import json
from fractions import Fraction

import mpmath
import pytest

from wedgewalks.errors import BudgetError
from wedgewalks.walks import (KINDS, WedgeModel, brute_force_counts,
                              brute_force_oracle, count_walks,
                              growth_estimate, growth_inequalities,
                              prepend_inequality, weighted_gf)

FROZEN = {
    "symmetric": [1, 1, 3, 5, 13, 27],
    "asymmetric": [1, 1, 2, 3, 7],
    "free": [1, 3, 7, 17, 41],
    "halfplane": [1, 2, 4, 9, 20],
}


class TestCounts:
    @pytest.mark.parametrize("kind,expected", FROZEN.items())
    def test_frozen_small_counts(self, kind, expected):
        table = count_walks(WedgeModel(kind, 1), len(expected) - 1)
        assert table.counts == expected

    @pytest.mark.parametrize("kind", KINDS)
    def test_dp_equals_oracle(self, kind):
        model = WedgeModel(kind, 1)
        n = 12
        assert count_walks(model, n).counts == brute_force_counts(model, n)

    @pytest.mark.parametrize("p", [2, 3])
    def test_dp_equals_oracle_wider_wedges(self, p):
        for kind in ("symmetric", "asymmetric"):
            model = WedgeModel(kind, p)
            assert count_walks(model, 10).counts == brute_force_counts(model, 10)

    def test_oracle_spot_values(self):
        assert brute_force_oracle(WedgeModel("symmetric", 1), 3) == 5
        assert brute_force_oracle(WedgeModel("asymmetric", 1), 2) == 2
        for kind in KINDS:
            assert brute_force_oracle(WedgeModel(kind, 1), 0) == 1

    def test_free_counts_match_closed_form(self):
        table = count_walks(WedgeModel("free", 1), 30)
        with mpmath.workdps(40):
            r = 1 + mpmath.sqrt(2)
            s = 1 - mpmath.sqrt(2)
            for n, c in enumerate(table.counts):
                closed = (r ** (n + 1) + s ** (n + 1)) / 2
                assert int(mpmath.nint(closed)) == c

    def test_monotone_and_sandwich(self, tables):
        c = tables("free", 60)
        v = tables("symmetric", 60)
        w = tables("asymmetric", 60)
        for n in range(60):
            assert c[n + 1] >= c[n] and v[n + 1] >= v[n] and w[n + 1] >= w[n]
            assert w[n] <= v[n] <= c[n]

    def test_wedge_containment(self):
        v1 = count_walks(WedgeModel("symmetric", 1), 40)
        v2 = count_walks(WedgeModel("symmetric", 2), 40)
        v3 = count_walks(WedgeModel("symmetric", 3), 40)
        assert all(v1[n] <= v2[n] <= v3[n] for n in range(41))

    def test_budget_errors(self):
        with pytest.raises(BudgetError):
            brute_force_oracle(WedgeModel("free", 1), 15)
        with pytest.raises(BudgetError):
            count_walks(WedgeModel("free", 1), 6000)

    def test_csv_export(self):
        table = count_walks(WedgeModel("symmetric", 1), 3)
        assert table.to_csv() == "length,count\n0,1\n1,1\n2,3\n3,5\n"

    def test_json_export_uses_strings(self):
        payload = json.loads(count_walks(WedgeModel("free", 1), 2).to_json())
        assert payload["counts"] == ["1", "3", "7"]


class TestBoundaryFamilies:
    def test_axis_return_counts(self):
        # quarter-plane walks ending on the axis: single vertex, E, EE, {EEE, NES}
        table = count_walks(WedgeModel("quarter_endline", 1), 3)
        assert table.counts == [1, 1, 1, 2]

    def test_flat_boundary_counts(self):
        table = count_walks(WedgeModel("boundary_flat", 1), 3)
        assert table.counts == [1, 1, 1, 1]

    def test_diag_boundary_counts(self):
        # shortest nonempty walk is NE; at length 4: NNEE and NENE
        table = count_walks(WedgeModel("boundary_diag", 1), 4)
        assert table.counts == [1, 0, 1, 0, 2]


class TestWeighted:
    def test_forced_geometry_entries(self):
        w = weighted_gf("symmetric", 1, 6)
        assert w.entries[(1, 1, 1)] == 1  # the single E step at (1, 0)
        h = weighted_gf("asymmetric", 1, 6)
        assert h.entries[(0, 0, 0)] == 1  # the single-vertex walk

    def test_length3_horizontal_enders(self):
        w = weighted_gf("symmetric", 1, 6)
        total = sum(c for (n, _i, _j), c in w.entries.items() if n == 3)
        assert total == 3  # EEE, ENE, ESE
        assert total == brute_force_oracle(WedgeModel("symmetric", 1), 3,
                                           ending="horizontal")

    @pytest.mark.parametrize("kind", ["symmetric", "asymmetric"])
    def test_collapse_matches_oracle(self, kind):
        w = weighted_gf(kind, 1, 12)
        counts = w.horizontal_counts()
        oracle = [brute_force_oracle(WedgeModel(kind, 1), n, ending="horizontal")
                  for n in range(13)]
        assert counts == oracle

    def test_exponent_bounds(self):
        w = weighted_gf("asymmetric", 2, 10)
        assert all(0 <= i <= 3 * n and 0 <= j <= 3 * n
                   for (n, i, j) in w.entries)

    def test_json_export(self):
        payload = json.loads(weighted_gf("asymmetric", 1, 4).to_json())
        assert payload["model"] == "asymmetric"
        assert [0, 0, 0, "1"] in payload["entries"]

    def test_budget(self):
        with pytest.raises(BudgetError):
            weighted_gf("symmetric", 1, 61)


class TestGrowth:
    def test_supermultiplicative_spot_value(self, tables):
        v = tables("symmetric", 10)
        assert v[2] * v[2] == 9 <= v[5] == 27

    @pytest.mark.parametrize("kind", ["symmetric", "asymmetric"])
    def test_supermultiplicative(self, kind):
        rep = growth_inequalities(kind, 1, 12, 12)
        assert rep["ok"], rep["first_violation"]

    def test_zero_length_edge(self, tables):
        v = tables("symmetric", 30)
        assert all(v[0] * v[m] <= v[m + 1] for m in range(30))

    def test_prepend_inequality(self, tables):
        rep = prepend_inequality(1, 4, 2)
        assert rep["ok"], rep["first_violation"]
        # the spot case: b_2^1 <= w_5
        b = tables("quarter_endline", 4)
        w = tables("asymmetric", 10)
        assert b[2] ** 1 <= w[5]

    def test_growth_estimate_free(self, tables):
        est = growth_estimate(tables("free", 20))
        n, ratio = est["ratios"][4]
        assert n == 4
        assert ratio.close_to(Fraction(99, 41), 1e-25)
        assert ratio.close_to(est["mu"], 1e-3)
        assert est["mu"].close_to("2.41421356237309504880", 1e-18)

    def test_growth_estimate_needs_data(self):
        with pytest.raises(ValueError):
            growth_estimate(count_walks(WedgeModel("free", 1), 5))
