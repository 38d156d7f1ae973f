from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.errors import OutOfRangeError, ShapeError
from app.models.hypergraph import PartiteHypergraph
from app.services.clique_counter import CliqueService, weighted_count
from app.services.search_oracle import naive_clique_density

from conftest import weighted_instances


def test_single_transversal_clique(triangle):
    report = CliqueService.clique_density(triangle)
    assert report.clique_density == 1
    assert report.weighted_count == 1


def test_base_graph_clique_density(base_half):
    report = CliqueService.clique_density(base_half, with_witnesses=True)
    assert report.clique_density == Fraction(1, 4)
    # two of the eight transversals avoid all three missing edges
    assert len(report.witnesses) == 2


def test_report_serialises_clique_density_as_c(base_half):
    dumped = CliqueService.clique_density(base_half).model_dump(mode="json", by_alias=True)
    assert dumped["C"] == "1/4"
    assert dumped["witnesses"] is None


def test_contains_clique():
    assert CliqueService.contains_clique(PartiteHypergraph.unweighted(2, [2, 2, 2])) is None
    witness = CliqueService.contains_clique(PartiteHypergraph.complete(2, [2, 2, 2]))
    assert [tuple(v) for v in witness] == [(0, 0), (1, 0), (2, 0)]


def test_witness_truncation():
    report = CliqueService.clique_density(PartiteHypergraph.complete(2, [2, 2, 2]), with_witnesses=True, max_witnesses=3)
    assert report.witnesses == [[(0, 0), (1, 0), (2, 0)], [(0, 0), (1, 0), (2, 1)], [(0, 0), (1, 1), (2, 0)]]
    assert report.witnesses_truncated


def test_near_cliques_on_path(path_graph):
    assert CliqueService.count_near_cliques(path_graph, 0).clique_density == 0
    assert CliqueService.count_near_cliques(path_graph, 1).clique_density == 1


def test_near_cliques_with_every_edge_missing_allowed():
    empty = PartiteHypergraph(3, [[Fraction(1, 2), 1], [1], [2], [Fraction(1, 3)]])
    assert CliqueService.count_near_cliques(empty, 4).clique_density == 1


def test_near_cliques_k_out_of_range(triangle):
    with pytest.raises(OutOfRangeError):
        CliqueService.count_near_cliques(triangle, 4)


def test_clique_density_needs_r_plus_one_classes():
    with pytest.raises(ShapeError):
        CliqueService.clique_density(PartiteHypergraph.complete(2, [1, 1, 1, 1]))


def test_enumerate_transversal_edges(path_graph, triangle):
    edges = CliqueService.enumerate_transversal_edges(path_graph, [(0, 0), (1, 0), (2, 0)])
    assert [e.vertices for e in edges] == [[(0, 0), (1, 0)], [(0, 0), (2, 0)], [(1, 0), (2, 0)]]
    assert [e.present for e in edges] == [True, False, True]

    assert all(e.present for e in CliqueService.enumerate_transversal_edges(triangle, [(2, 0), (0, 0), (1, 0)]))
    empty = PartiteHypergraph.unweighted(2, [1, 1, 1])
    assert not any(e.present for e in CliqueService.enumerate_transversal_edges(empty, [(0, 0), (1, 0), (2, 0)]))

    with pytest.raises(ShapeError):
        CliqueService.enumerate_transversal_edges(triangle, [(0, 0), (1, 0)])


def test_transversal_edge_mass(path_graph, triangle):
    assert CliqueService.transversal_edge_mass(path_graph) == 2
    assert CliqueService.transversal_edge_mass(triangle) == 3


def test_parallel_scan_matches_serial():
    graph = PartiteHypergraph.complete(2, [3, 2, 2]).with_weights(
        [[Fraction(1, 2), 1, Fraction(1, 3)], [1, 2], [Fraction(3, 4), 1]]
    )
    serial = CliqueService.clique_density(graph, with_witnesses=True, jobs=1)
    parallel = CliqueService.clique_density(graph, with_witnesses=True, jobs=2)
    assert serial == parallel


@settings(max_examples=200, deadline=None)
@given(graph=weighted_instances(r=2, max_class_size=3), k=st.integers(0, 3))
def test_engine_agrees_with_naive_enumeration_r2(graph, k):
    total = graph.total_weight(range(graph.t))
    assert CliqueService.count_near_cliques(graph, k).clique_density == naive_clique_density(graph, k)
    assert weighted_count(graph, k) / total == naive_clique_density(graph, k)


@settings(max_examples=100, deadline=None)
@given(graph=weighted_instances(r=3, max_class_size=2), k=st.integers(0, 4))
def test_engine_agrees_with_naive_enumeration_r3(graph, k):
    assert CliqueService.count_near_cliques(graph, k).clique_density == naive_clique_density(graph, k)
