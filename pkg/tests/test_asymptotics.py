"""Asymptotic constants, fits, and the polynomial zero audit."""

import mpmath
import pytest

from wedgewalks import asymptotics as asy
from wedgewalks.errors import BudgetError


class TestA0:
    def test_matches_reference_to_15_digits(self):
        rep = asy.constant_A0(30)
        with mpmath.workdps(40):
            assert abs(mpmath.mpf(rep.value)
                       - mpmath.mpf(asy.REFERENCES["A0"])) < 1e-16

    def test_stable_under_precision_doubling(self):
        lo = asy.constant_A0(30)
        hi = asy.constant_A0(60)
        with mpmath.workdps(80):
            assert abs(mpmath.mpf(lo.value) - mpmath.mpf(hi.value)) < 1e-28

    def test_diagnostics(self):
        rep = asy.constant_A0(30)
        assert rep.diagnostics["below_upper_bound_(1+sqrt2)/2"] is True
        with mpmath.workdps(40):
            assert mpmath.mpf(rep.diagnostics["Q_at_pole_matches_3_minus_2sqrt2"]) < 1e-30
            # approaching the pole from inside agrees to ~7 digits
            assert mpmath.mpf(rep.diagnostics["limit_approach_gap"]) < 1e-6

    def test_budget(self):
        with pytest.raises(BudgetError):
            asy.constant_A0(500)


class TestTheta:
    def test_value(self):
        rep = asy.constant_theta(30)
        with mpmath.workdps(40):
            assert abs(mpmath.mpf(rep.value)
                       - mpmath.mpf(asy.REFERENCES["theta"])) < 1e-13

    def test_first_term_and_tail(self):
        rep = asy.constant_theta(30)
        with mpmath.workdps(40):
            first = mpmath.mpf(rep.diagnostics["first_term"])
            assert abs(first - (mpmath.sqrt(2) - 1) / mpmath.sqrt(2)) < 1e-7
            assert mpmath.mpf(rep.diagnostics["tail_beyond_k2"]) < 1e-8

    def test_stable_under_precision_doubling(self):
        lo, hi = asy.constant_theta(30), asy.constant_theta(60)
        with mpmath.workdps(80):
            assert abs(mpmath.mpf(lo.value) - mpmath.mpf(hi.value)) < 1e-28


class TestA1A2:
    def test_three_significant_digits(self, tables):
        vt = tables("symmetric", 201)
        reps = {r.constant_name: r for r in asy.constants_A1A2(vt)}
        with mpmath.workdps(70):
            a1_err = abs(mpmath.mpf(reps["A1"].value)
                         - mpmath.mpf(asy.REFERENCES["A1"]))
            a2_err = abs(mpmath.mpf(reps["A2"].value)
                         - mpmath.mpf(asy.REFERENCES["A2"]))
        assert a1_err < 2e-3   # 3 significant digits of 3.714 need < 5e-3
        assert a2_err < 1e-4

    def test_needs_enough_counts(self):
        from wedgewalks.walks import WedgeModel, count_walks
        with pytest.raises(ValueError):
            asy.constants_A1A2(count_walks(WedgeModel("symmetric", 1), 30))


class TestEq37:
    def test_reproduces_stated_figures(self, tables):
        acc = asy.eq37_accuracy(tables("symmetric", 40))
        assert acc["ok"]
        raw = [row["relative_error"] for row in acc["rows"]]
        # raw errors sit just above the one-digit figures
        assert [row["within_literal"] for row in acc["rows"]] == [False] * 4
        assert [row["stated_figure"] for row in acc["rows"]] == [
            "0.07", "0.01", "0.002", "0.0006"]
        with mpmath.workdps(20):
            assert abs(mpmath.mpf(raw[0]) - mpmath.mpf("0.0774")) < 1e-3


class TestFits:
    def test_free_walk_validation(self, tables):
        res = asy.validate_fit_on_free(tables("free", 60))
        assert res["ok"]

    def test_B0_quick_window(self, tables):
        wt = tables("asymmetric", 120)
        rep = asy.constant_B0(wt, checkpoints=(30, 60, 120))
        with mpmath.workdps(30):
            ratio = mpmath.mpf(rep.diagnostics["ratio_at_120"])
            ref = mpmath.mpf(asy.REFERENCES["B0"])
            assert abs(ratio - ref) / ref < 0.05
        assert rep.diagnostics["gap_shrinking"]

    def test_halfplane_quick_window(self, tables):
        ht = tables("halfplane", 120)
        rep = asy.constant_halfplane(ht, checkpoints=(30, 60, 120))
        with mpmath.workdps(30):
            assert mpmath.mpf(rep.diagnostics["relative_gap_at_last"]) < 0.05
        closed = mpmath.mpf(rep.value)
        assert abs(closed - mpmath.mpf("1.4964892237632885")) < 1e-12

    def test_halfplane_small_length_ratio(self, tables):
        # 20 * sqrt(4) / mu^4 = 1.177...: below the limit and rising
        ht = tables("halfplane", 10)
        with mpmath.workdps(30):
            mu = 1 + mpmath.sqrt(2)
            r4 = ht[4] * 2 / mu**4
            assert abs(r4 - mpmath.mpf("1.17745")) < 1e-4
            assert r4 < asy.halfplane_reference(25)

    def test_remark_bounds_order(self):
        with mpmath.workdps(30):
            assert (mpmath.mpf(asy.REFERENCES["B0"])
                    < asy.halfplane_reference(25))

    def test_symmetric_root_at_400(self, tables):
        # slow convergence: the 400th root is within 1% of 1 + sqrt(2)
        vt = tables("symmetric", 400)
        with mpmath.workdps(30):
            mu = 1 + mpmath.sqrt(2)
            root = mpmath.root(mpmath.mpf(vt[400]), 400)
            assert abs(root - mu) / mu < 0.01

    def test_printed_constant_pair_inconsistency(self):
        # the two printed sqrt(n)-level constants miss the exact mu factor
        # by 3.0e-6; exact counts support the all-walks one (see ledger)
        with mpmath.workdps(40):
            h = mpmath.mpf(asy.REFERENCES["B0_horizontal"])
            k = mpmath.mpf(asy.REFERENCES["B0"])
            gap = abs(h * (1 + mpmath.sqrt(2)) - k)
            assert mpmath.mpf("2.9e-6") < gap < mpmath.mpf("3.1e-6")


@pytest.fixture(scope="module")
def reports():
    return {r.constant_name: r for r in asy.p_pieces_asymptotics(200)}


class TestPPieces:
    def test_radical_piece_ratio(self, reports):
        rep = reports["p1_ratio"]
        with mpmath.workdps(30):
            r200 = mpmath.mpf(rep.diagnostics["ratio_at_200"])
            r100 = mpmath.mpf(rep.diagnostics["ratio_at_100"])
        assert abs(r200 - 1) < 0.1
        assert abs(r200 - 1) < abs(r100 - 1)

    def test_cancellation_of_leading_constants(self, reports):
        rep = reports["p2_p3_cancellation"]
        with mpmath.workdps(30):
            assert mpmath.mpf(rep.diagnostics["p3_vs_theta"]) < 1e-4
            assert mpmath.mpf(rep.diagnostics["p2_vs_minus_theta"]) < 2e-3
            assert abs(mpmath.mpf(rep.diagnostics["sum_constant"])) < 2e-3

    def test_first_summand_formula(self, reports):
        rep = reports["p2_summand_k0"]
        with mpmath.workdps(30):
            assert mpmath.mpf(rep.diagnostics["relative_gap"]) < 0.02

    def test_higher_summands_reported_not_asserted(self, reports):
        # non-uniform error bounds: the k >= 1 gaps stay large at n = 200
        assert "relative_gap" in reports["p2_summand_k1"].diagnostics
        assert "relative_gap" in reports["p2_summand_k2"].diagnostics


@pytest.fixture(scope="module")
def audit():
    return asy.root_audit(10, 30)


class TestRootAudit:
    def test_clean(self, audit):
        assert audit.ok
        assert len(audit.results) == 24  # two families, k = -1..10

    def test_flagged_other_branch_point(self, audit):
        flagged = [r for r in audit.results if r["flagged"]]
        assert len(flagged) == 1
        entry = flagged[0]
        assert entry["family"] == "P" and entry["k"] == 0
        info = entry["flagged"][0]
        with mpmath.workdps(30):
            assert abs(mpmath.mpf(info["modulus"])
                       - (mpmath.sqrt(2) - 1)) < 1e-12
            # the principal branch does not reach -1 there
            assert mpmath.mpf(info["principal_branch_value_plus_1"]) > 0.5

    def test_direct_solve_case(self, audit):
        qm1 = next(r for r in audit.results
                   if r["family"] == "Q" and r["k"] == -1)
        with mpmath.workdps(30):
            assert abs(mpmath.mpf(qm1["min_modulus"]) - 1) < 1e-12
        # the cleared k = -1 polynomial is 1 - t^2: both roots reported
        assert len(qm1["roots"]) == 2

    def test_min_moduli_exceed_half(self, audit):
        for r in audit.results:
            if not r["flagged"]:
                assert float(mpmath.mpf(r["min_modulus"])) >= 0.5

    def test_budget(self):
        with pytest.raises(BudgetError):
            asy.root_audit(40)
