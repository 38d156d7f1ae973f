import os
import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app.models.hypergraph import PartiteHypergraph
from app.services.tripartite import TripartiteService

HALF = Fraction(1, 2)


@pytest.fixture
def triangle():
    """Complete 3-partite 2-graph on singleton classes."""
    return PartiteHypergraph.complete(2, [1, 1, 1])


@pytest.fixture
def path_graph():
    """Edges (a,b) and (b,c) only; the transversal misses (a,c)."""
    return PartiteHypergraph.unweighted(2, [1, 1, 1], [[(0, 0), (1, 0)], [(1, 0), (2, 0)]])


@pytest.fixture
def base_half():
    """Matching-complement base graph with p1 = p2 = p3 = 1/2."""
    return TripartiteService.build_matching_complement((HALF, HALF, HALF))


def unit_fractions(max_denominator: int = 4):
    """Rationals p/q with 1 <= p <= q <= max_denominator."""
    return st.integers(1, max_denominator).flatmap(
        lambda q: st.integers(1, q).map(lambda p: Fraction(p, q))
    )


def open_unit_fractions(max_denominator: int = 12):
    """Rationals strictly inside (0, 1)."""
    return st.integers(2, max_denominator).flatmap(
        lambda q: st.integers(1, q - 1).map(lambda p: Fraction(p, q))
    )


@st.composite
def weighted_instances(draw, r: int = 2, max_class_size: int = 2, max_denominator: int = 4):
    """Small weighted (r+1)-partite r-graphs with a random edge subset."""
    sizes = draw(st.lists(st.integers(1, max_class_size), min_size=r + 1, max_size=r + 1))
    classes = [[draw(unit_fractions(max_denominator)) for _ in range(size)] for size in sizes]
    skeleton = PartiteHypergraph.unweighted(r, sizes)
    possible = list(skeleton.partite_tuples(r))
    mask = draw(st.lists(st.booleans(), min_size=len(possible), max_size=len(possible)))
    edges = [e for e, keep in zip(possible, mask) if keep]
    return PartiteHypergraph(r, classes, edges)
