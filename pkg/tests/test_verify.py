"""Unit tests for the verification sweeps and their reporting plumbing."""

import json

import pytest

from tautcomb import (
    InvalidRange,
    RelativeShape,
    canonical_form,
    check_doubly_degenerate,
    check_worked_instance,
    enumerate_graphs,
    oracle_enumerate_graphs,
    reports_to_json,
    sweep_closed_sums,
    sweep_graph_oracle,
    sweep_hurwitz,
    sweep_invertible,
    sweep_kronecker,
    sweep_multiply_back,
    sweep_omega_dimension,
    sweep_pop_properties,
    sweep_relabel_invariance,
    sweep_sums_suite,
    sweep_transpose_scaling,
    sweep_triangular,
    verify_all,
)


class TestReports:
    def test_wall_time_excluded_by_default(self):
        report = check_worked_instance()
        data = report.to_json_dict()
        assert "wallTime" not in data
        assert "wallTime" in report.to_json_dict(include_wall_time=True)

    def test_report_fields(self):
        report = check_worked_instance()
        data = report.to_json_dict()
        assert data["suite"] == "worked-instance"
        assert data["pass"] is True
        assert data["witnesses"] == []
        assert isinstance(data["parameters"], dict)


class TestMatrixSweeps:
    def test_triangular_small(self):
        report = sweep_triangular(max_d=3)
        assert report.passed
        assert report.parameters["lemma"] == "6"

    def test_triangular_fault_detected(self):
        report = sweep_triangular(max_d=3, inject_fault=True)
        assert not report.passed
        assert report.witnesses
        witness = report.witnesses[0]
        assert {"row", "col", "value"} <= set(witness)

    def test_invertible_small(self):
        assert sweep_invertible(max_total=3).passed

    def test_transpose_scaling_small(self):
        assert sweep_transpose_scaling(max_total=3).passed

    def test_kronecker_small(self):
        report = sweep_kronecker(max_total=3)
        assert report.passed
        assert report.parameters["maxTotalDegree"] == 3


class TestScalarSweeps:
    def test_closed_sums(self):
        report = sweep_closed_sums(max_p=8, max_n=10)
        assert report.passed

    def test_per_suite_counts(self):
        report = sweep_sums_suite("gamma", 3)
        assert report.passed
        assert report.parameters["casesChecked"] == 3  # (2,2),(3,2),(3,3)

    def test_suite_names(self):
        for name in ("alpha", "beta", "betaprime", "gamma", "binom"):
            assert sweep_sums_suite(name, 4).passed

    def test_bad_suite_rejected(self):
        with pytest.raises(InvalidRange):
            sweep_sums_suite("delta", 5)
        with pytest.raises(InvalidRange):
            sweep_sums_suite("alpha", 1)

    def test_pop_properties(self):
        report = sweep_pop_properties(
            stability_max_d=4, lowering_max_d=4, order_max_d=4
        )
        assert report.passed


class TestGraphSweeps:
    def test_oracle_matches_enumeration(self):
        shapes = [
            RelativeShape((0,), (2,), ((),), (((2,),), ((1, 1),))),
            RelativeShape((1,), (1,), ((),), (((1,),),)),
            RelativeShape((0,), (2,), ((1,),), (((1, 1),),)),
        ]
        for shape in shapes:
            got = [canonical_form(g) for g in oracle_enumerate_graphs(shape)]
            expected = [canonical_form(g) for g in enumerate_graphs(shape)]
            assert got == expected

    def test_light_oracle_sweep(self):
        report = sweep_graph_oracle(heavy=False)
        assert report.passed
        assert report.parameters["shapes"] > 0

    def test_relabel_short(self):
        assert sweep_relabel_invariance(trials=25, seed=7).passed

    def test_relabel_deterministic_given_seed(self):
        a = sweep_relabel_invariance(trials=10, seed=3)
        b = sweep_relabel_invariance(trials=10, seed=3)
        assert a.to_json_dict() == b.to_json_dict()

    def test_doubly_degenerate(self):
        assert check_doubly_degenerate().passed

    def test_multiply_back(self):
        report = sweep_multiply_back()
        assert report.passed
        assert report.parameters["casesChecked"] > 0


class TestDimensionSweeps:
    def test_omega_short(self):
        assert sweep_omega_dimension(trials=50, seed=1).passed

    def test_hurwitz(self):
        report = sweep_hurwitz(max_genus=5, scan_m=20)
        assert report.passed


class TestVerifyAll:
    def test_all_suites_pass_small(self):
        reports, ok = verify_all(max_d=2)
        assert ok
        names = [r.suite for r in reports]
        assert names == sorted(names) or len(names) == 13  # fixed suite order
        assert len(names) == len(set(names)) == 13

    def test_jobs_do_not_change_content(self):
        sequential, ok1 = verify_all(max_d=2, jobs=1)
        parallel, ok2 = verify_all(max_d=2, jobs=3)
        assert ok1 and ok2
        as_json_1 = reports_to_json(sequential, ok1, {"maxD": 2, "seed": 0})
        as_json_2 = reports_to_json(parallel, ok2, {"maxD": 2, "seed": 0})
        assert as_json_1 == as_json_2

    def test_fault_injection_fails_overall(self):
        reports, ok = verify_all(max_d=2, inject_fault=True)
        assert not ok
        failing = [r.suite for r in reports if not r.passed]
        assert failing == ["triangular"]

    def test_json_shape(self):
        reports, ok = verify_all(max_d=2)
        text = reports_to_json(reports, ok, {"maxD": 2, "seed": 0})
        payload = json.loads(text)
        assert payload["pass"] is True
        assert payload["parameters"] == {"maxD": 2, "seed": 0}
        assert all("wallTime" not in r for r in payload["reports"])
        assert text.endswith("\n")
        # stable key order means byte-identical re-serialization
        assert text == reports_to_json(reports, ok, {"maxD": 2, "seed": 0})
