from fractions import Fraction

import pytest

from app.core.errors import BudgetExceededError, ShapeError
from app.schemas.search import BalancedSpace, SearchSpace
from app.services.search_oracle import SearchOracleService, default_tightness_grid


def test_exhaustive_single_vertex_classes_r2():
    report = SearchOracleService.exhaustive_bound_scan(SearchSpace(r=2, class_sizes=[1, 1, 1]))
    assert report.instances_checked == 8
    assert report.tight_instances == 4
    assert report.min_slack == 0
    assert report.violations == []
    assert report.oracle_disagreements == 0


def test_exhaustive_single_vertex_classes_r3():
    report = SearchOracleService.exhaustive_bound_scan(SearchSpace(r=3, class_sizes=[1, 1, 1, 1]))
    assert report.instances_checked == 16
    assert report.tight_instances == 5
    assert report.violations == []


def test_exhaustive_pairs_r2():
    report = SearchOracleService.exhaustive_bound_scan(SearchSpace(r=2, class_sizes=[2, 2, 2]), jobs=2)
    assert report.instances_checked == 4096
    assert report.violations == []
    assert report.oracle_disagreements == 0
    assert report.min_slack == 0


def test_budget_is_enforced():
    with pytest.raises(BudgetExceededError) as info:
        SearchOracleService.exhaustive_bound_scan(SearchSpace(r=2, class_sizes=[2, 2, 2]), budget=100)
    assert info.value.required_budget == 4096


def test_class_sizes_must_match_r():
    with pytest.raises(ShapeError):
        SearchOracleService.exhaustive_bound_scan(SearchSpace(r=2, class_sizes=[1, 1]))


def test_random_scan_with_no_trials_is_empty():
    report = SearchOracleService.random_bound_scan(SearchSpace(r=3, class_sizes=[3, 3, 3, 3], mode="random"))
    assert report.instances_checked == 0
    assert report.min_slack is None


def test_random_scan_weighted_r3():
    space = SearchSpace(r=3, class_sizes=[2, 2, 2, 2], mode="random", seed=7, trials=200, weighted=True)
    report = SearchOracleService.random_bound_scan(space)
    assert report.instances_checked == 200
    assert report.violations == []
    assert report.oracle_disagreements == 0
    assert report.min_slack >= 0


def test_random_scan_is_reproducible():
    space = SearchSpace(r=3, class_sizes=[3, 3, 3, 3], mode="random", seed=3, trials=100)
    first = SearchOracleService.random_bound_scan(space, jobs=1)
    second = SearchOracleService.random_bound_scan(space, jobs=2)
    assert first.model_dump_json() == second.model_dump_json()
    assert first.violations == []


def test_tightness_on_named_points():
    report = SearchOracleService.tightness_probe(3, [["9/10"] * 4])
    row = report.rows[0]
    assert row.clique_density == Fraction(3, 5)
    assert row.slack == 0

    report = SearchOracleService.tightness_probe(2, [["3/4"] * 3, ["1/2"] * 3])
    assert report.rows[0].clique_density == Fraction(1, 4)
    assert report.rows[1].skipped
    assert report.rows[1].note
    assert report.all_tight


def test_default_grid_r2_is_tight():
    grid = default_tightness_grid(2)
    assert len(grid) == 20
    report = SearchOracleService.tightness_probe(2)
    assert not any(row.skipped for row in report.rows)
    assert report.all_tight


def test_grid_r4():
    rho_grid = [[Fraction(4, 5)] * 5, [Fraction(9, 10)] * 5, [1] * 5]
    report = SearchOracleService.tightness_probe(4, rho_grid)
    assert report.all_tight
    assert report.rows[2].clique_density == 1


def test_default_grid_r3_is_tight():
    report = SearchOracleService.tightness_probe(3)
    assert len(report.rows) == 35
    assert not any(row.skipped for row in report.rows)
    assert report.all_tight


def test_default_grid_r4_is_tight():
    report = SearchOracleService.tightness_probe(4)
    assert len(report.rows) == 49
    assert not any(row.skipped for row in report.rows)
    assert report.all_tight


@pytest.mark.parametrize("r", [2, 3])
def test_threshold_property_scan(r):
    report = SearchOracleService.threshold_property_scan(BalancedSpace(r=r, class_size=3, seed=1, count=30))
    assert report.instances_checked == 30
    assert report.passed
    assert report.failure_count == 0
    assert len(report.witnesses_required) == r
    assert report.witnesses_found == report.witnesses_required
    if report.max_clique_free_edge_sum is not None:
        assert report.max_clique_free_edge_sum <= r - 1


def test_threshold_property_scan_does_not_depend_on_jobs():
    space = BalancedSpace(r=2, class_size=2, seed=7, count=20)
    serial = SearchOracleService.threshold_property_scan(space, jobs=1)
    parallel = SearchOracleService.threshold_property_scan(space, jobs=3)
    assert serial == parallel


def test_threshold_property_scan_of_nothing():
    report = SearchOracleService.threshold_property_scan(BalancedSpace(r=2, count=0))
    assert report.instances_checked == 0
    assert report.witnesses_required == [0, 0]
    assert report.passed
