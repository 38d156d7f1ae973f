from fractions import Fraction

import pytest
from hypothesis import given, note, settings
from hypothesis import strategies as st

from app.core.errors import InvalidSelectorError, OutOfRangeError, ShapeError
from app.models.hypergraph import PartiteHypergraph, SimpleHypergraph
from app.services.clique_counter import CliqueService
from app.services.degree_analysis import DegreeAnalysisService
from app.services.instance_generator import InstanceGeneratorService
from app.services.lift import LiftService

TRIANGLE = SimpleHypergraph.from_edges(2, 3, [(0, 1), (1, 2), (0, 2)])


def test_neighbourhood_of_a_pair():
    graph = PartiteHypergraph.unweighted(3, [1, 1, 1, 1], [[(0, 0), (1, 0), (2, 0)]])
    found = DegreeAnalysisService.neighbourhood(graph, [(0, 0), (1, 0)], [2])
    assert [[tuple(v) for v in h] for h in found] == [[(2, 0)]]
    assert DegreeAnalysisService.neighbourhood(graph, [(0, 0), (1, 0)], [3]) == []
    with pytest.raises(InvalidSelectorError):
        DegreeAnalysisService.neighbourhood(graph, [(0, 0), (1, 0)], [1])
    with pytest.raises(ShapeError):
        DegreeAnalysisService.neighbourhood(graph, [(0, 0)], [2])


def test_degree_profile():
    graph = PartiteHypergraph.complete(2, [2, 2, 2])
    profile = DegreeAnalysisService.degree_profile(graph, [(0, 1)])
    assert profile.partite_tuple == [(0, 1)]
    assert [(d.classes, d.degree) for d in profile.degrees_by_class_subset] == [([1], 2), ([2], 2)]
    assert profile.total_degree == 4
    assert profile.model_dump(by_alias=True)["tuple"] == [(0, 1)]


def test_balance_of_lifts_and_complete_graphs():
    assert DegreeAnalysisService.is_strictly_balanced(LiftService.decaen_lift(TRIANGLE)).balanced
    assert DegreeAnalysisService.is_strictly_balanced(PartiteHypergraph.complete(3, [2, 2, 2, 2])).balanced
    # degree-0 tuples count as balanced
    assert DegreeAnalysisService.is_strictly_balanced(PartiteHypergraph.unweighted(2, [2, 2, 2])).balanced


def test_complete_graph_with_unequal_classes_is_unbalanced():
    verdict = DegreeAnalysisService.is_strictly_balanced(PartiteHypergraph.complete(3, [2, 1, 2, 1]))
    assert not verdict.balanced
    assert verdict.violating_tuple == [(0, 0), (1, 0)]
    assert sorted(d.degree for d in verdict.violating_degrees) == [1, 2]


def test_complete_graph_minus_an_edge_is_unbalanced():
    complete = PartiteHypergraph.complete(2, [2, 2, 2])
    graph = PartiteHypergraph.unweighted(2, [2, 2, 2], [e for e in complete.edges if [tuple(v) for v in e] != [(0, 0), (1, 0)]])
    verdict = DegreeAnalysisService.is_strictly_balanced(graph, 1)
    assert not verdict.balanced
    assert verdict.violating_tuple == [(0, 0)]
    degrees = sorted(d.degree for d in verdict.violating_degrees)
    assert degrees == [1, 2]
    with pytest.raises(OutOfRangeError):
        DegreeAnalysisService.is_strictly_balanced(graph, 2)


def test_threshold_on_complete_graph(triangle):
    cert = DegreeAnalysisService.threshold_check(triangle)
    assert cert.margin == 1
    assert cert.threshold == 1
    assert cert.witness == [(0, 0), (1, 0), (2, 0)]
    assert not cert.theorem_violation


def test_threshold_on_lift_of_triangle():
    cert = DegreeAnalysisService.threshold_check(LiftService.decaen_lift(TRIANGLE))
    assert cert.max_sum == Fraction(4, 3)
    assert cert.margin == Fraction(1, 3)
    assert cert.balanced
    assert cert.witness is not None
    assert not cert.theorem_violation


def test_threshold_below_the_line_draws_no_conclusion():
    cert = DegreeAnalysisService.threshold_check(LiftService.decaen_lift(SimpleHypergraph.from_edges(2, 2, [(0, 1)])))
    assert cert.margin == 0
    assert cert.witness is None
    assert not cert.theorem_violation


def test_threshold_all_classes_and_edge_sums():
    cert = DegreeAnalysisService.threshold_check(PartiteHypergraph.complete(2, [2, 2, 2]), all_classes=True)
    assert sorted(cert.all_classes) == [0, 1, 2]
    assert all(s.s == 2 for s in cert.per_edge_sums)
    assert cert.max_edge_sum == 2


def test_threshold_argument_errors(triangle):
    with pytest.raises(OutOfRangeError):
        DegreeAnalysisService.threshold_check(triangle, k=2)
    weighted = PartiteHypergraph(2, [[Fraction(1, 2)], [1], [1]])
    with pytest.raises(ShapeError):
        DegreeAnalysisService.threshold_check(weighted)


def test_two_overlapping_edges_give_the_degenerate_near_clique():
    graph = PartiteHypergraph.unweighted(2, [1, 1, 1], [[(0, 0), (1, 0)], [(0, 0), (2, 0)]])
    assert CliqueService.count_near_cliques(graph, 1).clique_density == 1
    cert = DegreeAnalysisService.threshold_check(graph, k=1)
    assert cert.margin > 0
    assert cert.witness == [(0, 0), (1, 0), (2, 0)]


def test_codegree_profile():
    summary = DegreeAnalysisService.codegree_profile(PartiteHypergraph.complete(2, [2, 2, 2]))
    assert (summary.min, summary.max, summary.mean) == (4, 4, 4)

    summary = DegreeAnalysisService.codegree_profile(PartiteHypergraph.unweighted(2, [2, 2, 2]))
    assert (summary.min, summary.max, summary.mean) == (0, 0, 0)

    single = PartiteHypergraph.unweighted(2, [1, 1, 1], [[(0, 0), (1, 0)]])
    summary = DegreeAnalysisService.codegree_profile(single)
    assert (summary.tuples, summary.min, summary.max, summary.mean) == (3, 0, 1, Fraction(2, 3))


def test_edge_count_certificate_for_triangle():
    cert = DegreeAnalysisService.edge_count_certificate(TRIANGLE)
    assert cert.threshold_edges == Fraction(9, 4)
    assert cert.exceeds
    assert sorted(cert.witness_in_graph) == [0, 1, 2]
    assert cert.missing_in_graph == 0
    assert not cert.theorem_violation


@settings(max_examples=150, deadline=None)
@given(
    r=st.integers(2, 3),
    class_size=st.integers(1, 3),
    seed=st.integers(0, 10**6),
    k=st.integers(0, 2),
)
def test_balanced_instances_above_threshold_contain_near_cliques(r, class_size, seed, k):
    k = min(k, r - 1)
    graph = InstanceGeneratorService.balanced_instance_generator(r, class_size, seed)
    note(graph)
    cert = DegreeAnalysisService.threshold_check(graph, k)
    assert cert.balanced
    if cert.margin > 0:
        assert cert.witness is not None
    assert not cert.theorem_violation


@settings(max_examples=100, deadline=None)
@given(r=st.integers(2, 3), class_size=st.integers(1, 3), seed=st.integers(0, 10**6))
def test_clique_free_instances_keep_edge_sums_at_most_r_minus_one(r, class_size, seed):
    graph = InstanceGeneratorService.balanced_instance_generator(r, class_size, seed)
    if CliqueService.contains_clique(graph) is not None:
        return
    cert = DegreeAnalysisService.threshold_check(graph, all_classes=True)
    for sums in cert.all_classes.values():
        assert all(s.s <= r - 1 for s in sums)
