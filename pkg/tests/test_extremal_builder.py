from fractions import Fraction

import pytest

from app.core.errors import OutOfRangeError, OutOfRegimeError, ScaleError, ShapeError
from app.core.config import get_settings
from app.services.clique_counter import CliqueService
from app.services.density import DensityService
from app.services.extremal_builder import ExtremalBuilderService, permute_classes
from app.services.search_oracle import naive_clique_density
from app.models.hypergraph import PartiteHypergraph

Q = Fraction(3, 4)
TENTHS = Fraction(9, 10)


def test_r2_matches_the_base_builder():
    graph, recipe = ExtremalBuilderService.build_extremal(2, [Q, Q, Q])
    assert recipe.clique_density == Fraction(1, 4)
    assert recipe.blow_up_scales == []
    assert CliqueService.clique_density(graph).clique_density == Fraction(1, 4)


def test_nine_tenths_r3():
    graph, recipe = ExtremalBuilderService.build_extremal(3, [TENTHS] * 4)
    assert graph.class_sizes == (5, 2, 40, 1)
    assert len(graph.edges) == 72 + 180 + 9 + 360
    assert DensityService.density_vector(graph).rho == [TENTHS] * 4
    assert CliqueService.clique_density(graph).clique_density == Fraction(3, 5)
    assert recipe.exact
    assert recipe.blow_up_scales == [[1, 1, 5]]


def test_three_quarters_r3_is_clique_free():
    graph, recipe = ExtremalBuilderService.build_extremal(3, [Q] * 4)
    assert DensityService.density_vector(graph).rho == [Q] * 4
    assert CliqueService.contains_clique(graph) is None
    assert recipe.clique_density == 0


def test_four_fifths_r4_is_clique_free():
    rho = [Fraction(4, 5)] * 5
    graph, recipe = ExtremalBuilderService.build_extremal(4, rho)
    assert DensityService.density_vector(graph).rho == rho
    assert CliqueService.contains_clique(graph) is None
    assert recipe.base_weights.split == Fraction(5, 9)


def test_unsorted_targets_are_permuted_back():
    rho = [Q, 1, TENTHS]
    graph, recipe = ExtremalBuilderService.build_extremal(2, rho)
    assert recipe.permutation == [1, 2, 0]
    assert DensityService.density_vector(graph).rho == rho
    assert CliqueService.clique_density(graph).clique_density == sum(rho) - 2


def test_mixed_targets_r3_are_tight():
    rho = [1, TENTHS, Fraction(4, 5), TENTHS]
    graph, recipe = ExtremalBuilderService.build_extremal(3, rho)
    assert DensityService.density_vector(graph).rho == rho
    assert recipe.clique_density == sum(rho) - 3
    assert naive_clique_density(graph) == recipe.clique_density


def test_replay_recipe_rebuilds_the_graph():
    graph, recipe = ExtremalBuilderService.build_extremal(3, [TENTHS, Q, TENTHS, 1])
    assert ExtremalBuilderService.replay_recipe(recipe) == graph


def test_argument_errors():
    with pytest.raises(OutOfRegimeError):
        ExtremalBuilderService.build_extremal(3, [Q, Q, Q, Fraction(1, 2)])
    with pytest.raises(ShapeError):
        ExtremalBuilderService.build_extremal(3, [1, 1, 1])
    with pytest.raises(OutOfRangeError):
        ExtremalBuilderService.build_extremal(2, [1, 1, Fraction(5, 4)])


def test_scale_cap_reports_minimal_scales(monkeypatch):
    monkeypatch.setattr(get_settings(), "MAX_LEVEL_TRANSVERSALS", 100)
    with pytest.raises(ScaleError) as info:
        ExtremalBuilderService.build_extremal(3, [TENTHS] * 4)
    assert info.value.minimal_scale == [1, 1, 5]


def test_permute_classes():
    graph = PartiteHypergraph.unweighted(2, [1, 2, 3], [[(0, 0), (2, 2)]])
    moved = permute_classes(graph, [2, 0, 1])
    assert moved.class_sizes == (2, 3, 1)
    assert moved.has_edge([(2, 0), (1, 2)])


def test_uneven_target_keeps_classes_small():
    rho = [TENTHS, Fraction(4, 5), Fraction(4, 5), Fraction(4, 5)]
    graph, recipe = ExtremalBuilderService.build_extremal(3, rho)
    weights = recipe.base_weights
    assert (weights.p1, weights.p2, weights.p3, weights.split) == (
        Fraction(2, 5), Fraction(1, 2), Fraction(1, 5), Fraction(5, 12)
    )
    assert graph.class_sizes == (5, 2, 15, 1)
    assert recipe.exact
    assert recipe.clique_density == Fraction(3, 10)
