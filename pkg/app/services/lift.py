"""
Partite lift of a plain r-graph.

H has r+1 classes, each a copy of V(G). Every edge e of G, every choice of r of the
r+1 classes and every ordering of e's vertices gives one edge of H, so
|E(H)| = (r+1)·r!·|E(G)| and each ρ(i) equals r!·|E(G)|/n^r. The codegrees of H are
strictly balanced and H contains K_{r+1}^r exactly when G does.
"""

import itertools
import logging

from app.core.errors import LiftValidationError
from app.models.hypergraph import PartiteHypergraph, SimpleHypergraph

logger = logging.getLogger(__name__)


class LiftService:

    @staticmethod
    def decaen_lift(graph: SimpleHypergraph) -> PartiteHypergraph:
        """
        Unweighted (r+1)-partite lift of a plain r-graph on n vertices.

        Args:
            graph: the r-graph to lift; needs at least one vertex.

        Returns:
            The lift, with n vertices in each of its r+1 classes.

        Raises:
            LiftValidationError: if the graph has no vertices.
        """
        r, n = graph.r, graph.n
        if n == 0:
            raise LiftValidationError("cannot lift a graph without vertices")

        edges = []
        for e in graph.edges:
            for chosen in itertools.combinations(range(r + 1), r):
                for placement in itertools.permutations(e):
                    edges.append(list(zip(chosen, placement)))

        lifted = PartiteHypergraph.unweighted(r, [n] * (r + 1), edges)
        logger.info(f"[LIFT] r={r} n={n} |E(G)|={len(graph.edges)} -> |E(H)|={len(lifted.edges)}")
        return lifted
