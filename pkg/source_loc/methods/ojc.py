"""OJC - Jordan cover of the infected set by greedy k-center."""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from .linalg import node_array
from .prediction import Prediction
from ..core.errors import LocalizationError
from ..core.graph import UNREACHABLE, Graph, count_components, distance_matrix

logger = logging.getLogger(__name__)


def candidate_centers(g: Graph, infected_nodes: np.ndarray) -> np.ndarray:
    """Infected nodes together with their direct neighbors, ascending."""
    around = [g.neighbors_of(v) for v in infected_nodes]
    return np.unique(np.concatenate([infected_nodes, *around]))


def jordan_radius(g: Graph, infected, centers: Sequence[int]) -> int:
    """Largest distance from an infected node to its nearest center."""
    infected_nodes = node_array(g, infected)
    centers = node_array(g, centers)
    if centers.size == 0:
        raise LocalizationError("at least one center is required")
    if infected_nodes.size == 0:
        return 0
    nearest = distance_matrix(g, centers)[:, infected_nodes].min(axis=0)
    if (nearest == UNREACHABLE).any():
        raise LocalizationError("an infected node is unreachable from every center")
    return int(nearest.max())


def ojc(g: Graph, infected, k: Optional[int] = None) -> Tuple[Prediction, int]:
    """Greedy Jordan cover; ``k=None`` uses one center per infected component.

    The first center is the Jordan center of the candidates; each further
    center is the candidate that leaves the smallest covering radius. Ties
    prefer fewer unreachable infected nodes, then the lowest index. Centers
    may be uninfected neighbors of the infected set.
    """
    infected_nodes = node_array(g, infected)
    if infected_nodes.size == 0:
        raise LocalizationError("infected set is empty")
    if k is None:
        k = count_components(g, infected_nodes)
    if k < 1:
        raise LocalizationError("k must be at least 1")

    candidates = candidate_centers(g, infected_nodes)
    distances = distance_matrix(g, candidates)[:, infected_nodes]
    chosen = np.zeros(len(candidates), dtype=bool)
    nearest = np.full(len(infected_nodes), UNREACHABLE, dtype=np.int64)
    for _ in range(min(k, len(candidates))):
        covered = np.minimum(nearest[None, :], distances)
        radius = covered.max(axis=1)
        stranded = (covered == UNREACHABLE).sum(axis=1)
        order = np.lexsort((np.arange(len(candidates)), stranded, radius, chosen))
        best = int(order[0])
        chosen[best] = True
        nearest = covered[best]

    if (nearest == UNREACHABLE).any():
        raise LocalizationError(f"infected nodes cannot be covered by {k} center(s)")
    radius = int(nearest.max())
    centers = candidates[chosen]
    logger.debug("OJC chose %d center(s), radius %d", len(centers), radius)
    return Prediction.from_nodes(g.n, centers), radius
