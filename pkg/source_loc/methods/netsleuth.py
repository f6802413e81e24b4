"""NetSleuth - MDL-driven greedy seed selection.

Seeds are picked one at a time as the largest component of the smallest
eigenvector of the Laplacian restricted to the still-unclaimed infected
nodes. After each pick the total description length

    L(S) + λ · L(ripple | S)

is evaluated, and the seed count with the shortest description wins.
L(S) = log*(k) + log2 C(n, k). The ripple is replayed greedily from S: the
unclaimed infected node with most infected neighbors is infected next,
costing log2(frontier size) bits; an unreachable remainder costs +inf.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .linalg import laplacian_submatrix, node_array, smallest_eigvec
from .prediction import Prediction
from ..core.errors import LocalizationError
from ..core.graph import Graph
from ..utils.config import DEFAULT_LAMBDA_RIPPLE, DEFAULT_MAX_SEEDS, MAX_DENSE_INFECTED

logger = logging.getLogger(__name__)

# Normalizing constant of Rissanen's universal code for the integers.
LOG_STAR_CONSTANT = 2.865064
TIE_TOLERANCE = 1e-9


@dataclass
class MdlReport:
    """Seed order, description length after each seed, and the chosen count."""
    seeds_in_order: List[int] = field(default_factory=list)
    cost_curve: List[float] = field(default_factory=list)
    chosen_k: int = 0

    def to_dict(self, g: Optional[Graph] = None) -> dict:
        seeds = [g.label_of(v) for v in self.seeds_in_order] if g else list(self.seeds_in_order)
        return {
            "seeds_in_order": seeds,
            "cost_curve": [cost if math.isfinite(cost) else None for cost in self.cost_curve],
            "chosen_k": self.chosen_k,
        }


def log_star(k: int) -> float:
    """Universal code length of a positive integer in bits."""
    if k < 1:
        raise ValueError("log* is defined for positive integers")
    bits = math.log2(LOG_STAR_CONSTANT)
    term = math.log2(k)
    while term > 0:
        bits += term
        term = math.log2(term)
    return bits


def log2_binomial(n: int, k: int) -> float:
    return (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)) / math.log(2)


def seed_set_bits(n: int, k: int) -> float:
    return log_star(k) + log2_binomial(n, k)


def ripple_bits(g: Graph, infected_nodes: np.ndarray, seeds: List[int]) -> float:
    """Bits to describe the greedy ripple from ``seeds`` over the infected set."""
    position = np.full(g.n, -1, dtype=np.int64)
    position[infected_nodes] = np.arange(len(infected_nodes))
    claimed = np.zeros(len(infected_nodes), dtype=bool)
    pressure = np.zeros(len(infected_nodes), dtype=np.int64)

    def claim(node: int):
        claimed[position[node]] = True
        around = position[g.neighbors_of(node)]
        np.add.at(pressure, around[around >= 0], 1)

    for seed in seeds:
        claim(seed)

    bits = 0.0
    for _ in range(len(infected_nodes) - len(seeds)):
        frontier = ~claimed & (pressure > 0)
        size = int(frontier.sum())
        if size == 0:
            return math.inf
        bits += math.log2(size)
        # argmax returns the first maximum, i.e. the lowest node index
        chosen = int(np.argmax(np.where(frontier, pressure, -1)))
        claim(int(infected_nodes[chosen]))
    return bits


def _next_seed(g: Graph, unclaimed: np.ndarray) -> int:
    eigen = smallest_eigvec(laplacian_submatrix(g, unclaimed))
    top = eigen.vector.max()
    candidates = np.flatnonzero(eigen.vector >= top - TIE_TOLERANCE)
    return int(unclaimed[candidates[0]])


def netsleuth(g: Graph, infected, max_seeds: int = DEFAULT_MAX_SEEDS,
              lambda_ripple: float = DEFAULT_LAMBDA_RIPPLE) -> Tuple[MdlReport, Prediction]:
    infected_nodes = node_array(g, infected)
    if infected_nodes.size == 0:
        raise LocalizationError("infected set is empty")
    if max_seeds < 1:
        raise LocalizationError("max_seeds must be at least 1")
    if infected_nodes.size > MAX_DENSE_INFECTED:
        raise LocalizationError(f"NetSleuth refuses {infected_nodes.size} infected nodes "
                                f"(limit {MAX_DENSE_INFECTED})")

    report = MdlReport()
    unclaimed = infected_nodes
    while len(report.seeds_in_order) < max_seeds and unclaimed.size:
        seed = _next_seed(g, unclaimed)
        report.seeds_in_order.append(seed)
        unclaimed = unclaimed[unclaimed != seed]
        k = len(report.seeds_in_order)
        ripple = ripple_bits(g, infected_nodes, report.seeds_in_order)
        cost = seed_set_bits(g.n, k) + lambda_ripple * ripple if math.isfinite(ripple) else math.inf
        report.cost_curve.append(cost)
        logger.debug("NetSleuth k=%d seed=%d cost=%.3f bits", k, seed, cost)

    if not any(math.isfinite(cost) for cost in report.cost_curve):
        raise LocalizationError("infected set not coverable")
    report.chosen_k = int(np.argmin(report.cost_curve)) + 1
    prediction = Prediction.from_nodes(g.n, report.seeds_in_order[:report.chosen_k])
    return report, prediction
