"""Forward diffusion: Independent Cascade and Linear Threshold simulation.

Both simulators draw every random quantity from ``hash_pair(run_key, id)``:
IC flips one coin per undirected edge (edge live iff its uniform < p) and
infects everything reachable from the seeds through live edges; LT draws
one threshold per node and activates synchronously with neighbor weight
1/deg(v). Many runs are simulated at once by stacking them into one
block-diagonal graph.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Union

import numpy as np
from joblib import Parallel, delayed
from scipy.sparse import csr_matrix
from scipy.sparse import csgraph

from .errors import SimulationError
from .graph import Graph
from .hashing import (SEED_STREAM, hash_grid, hash_pair, hash_pair_array, run_key, run_keys,
                      uniform_array)
from ..utils.config import DEFAULT_IC_P, MAX_ENUMERATION_EDGES, MAX_HASH_CELLS, SIMULATION_CHUNK

logger = logging.getLogger(__name__)

SeedInput = Union[np.ndarray, Sequence[int]]


class DiffusionKind(Enum):
    IC = "IC"
    LT = "LT"


LT_WEIGHT_RULES = ("inverse-degree",)


@dataclass(frozen=True)
class DiffusionModel:
    """Diffusion model family and its parameters."""
    kind: DiffusionKind = DiffusionKind.IC
    ic_p: float = DEFAULT_IC_P
    lt_weight_rule: str = "inverse-degree"

    def __post_init__(self):
        if not 0.0 <= self.ic_p <= 1.0:
            raise SimulationError(f"IC probability must lie in [0, 1], got {self.ic_p}")
        if self.lt_weight_rule not in LT_WEIGHT_RULES:
            raise SimulationError(f"unknown LT weight rule {self.lt_weight_rule!r}")

    @classmethod
    def ic(cls, p: float = DEFAULT_IC_P) -> "DiffusionModel":
        return cls(DiffusionKind.IC, ic_p=p)

    @classmethod
    def lt(cls) -> "DiffusionModel":
        return cls(DiffusionKind.LT)

    @classmethod
    def from_name(cls, name: str, p: Optional[float] = None) -> "DiffusionModel":
        try:
            kind = DiffusionKind[name.strip().upper()]
        except KeyError:
            raise SimulationError(f"unknown diffusion model {name!r}; use IC or LT") from None
        if kind is DiffusionKind.IC:
            return cls.ic(DEFAULT_IC_P if p is None else p)
        return cls.lt()

    def describe(self) -> str:
        if self.kind is DiffusionKind.IC:
            return f"IC(p={self.ic_p:g})"
        return f"LT({self.lt_weight_rule})"


@dataclass(frozen=True, eq=False)
class SeedDiffusionPair:
    """One simulated or observed cascade: seed and infected indicator vectors."""
    seeds: np.ndarray
    infected: np.ndarray
    model: DiffusionModel = field(default_factory=DiffusionModel)
    run_key: int = 0

    def __post_init__(self):
        if self.seeds.shape != self.infected.shape:
            raise SimulationError("seed and infected vectors differ in length")
        if not self.seeds.any():
            raise SimulationError("a seed-diffusion pair needs at least one seed")
        if (self.seeds & ~self.infected).any():
            raise SimulationError("every seed must be infected")

    @property
    def seed_nodes(self) -> np.ndarray:
        return np.flatnonzero(self.seeds)

    @property
    def infected_nodes(self) -> np.ndarray:
        return np.flatnonzero(self.infected)


def as_seed_vector(g: Graph, seeds: SeedInput) -> np.ndarray:
    """Accept a boolean indicator of length n or an iterable of node indices."""
    array = np.asarray(seeds)
    if array.dtype == bool:
        if array.shape != (g.n,):
            raise SimulationError(f"seed indicator must have length {g.n}")
        vector = array.copy()
    else:
        indices = array.astype(np.int64).ravel()
        if indices.size and (indices.min() < 0 or indices.max() >= g.n):
            raise SimulationError(f"seed index out of range [0, {g.n})")
        vector = np.zeros(g.n, dtype=bool)
        vector[indices] = True
    if not vector.any():
        raise SimulationError("seed set is empty")
    return vector


def _reachable_batch(g: Graph, seed_matrix: np.ndarray, live: np.ndarray) -> np.ndarray:
    """Nodes reachable from the seeds through live edges, one row per run.

    ``live`` is a (runs, m) boolean matrix. Runs are stacked into one
    block-diagonal graph so a single component labelling answers all of them.
    """
    runs, n = seed_matrix.shape
    run_index, edge_index = np.nonzero(live)
    offset = run_index.astype(np.int64) * n
    endpoints = g.edge_endpoints[edge_index]
    rows = endpoints[:, 0] + offset
    cols = endpoints[:, 1] + offset
    block = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(runs * n, runs * n))
    count, labels = csgraph.connected_components(block, directed=False)
    hit = np.zeros(count, dtype=bool)
    hit[labels[np.flatnonzero(seed_matrix.ravel())]] = True
    return hit[labels].reshape(runs, n)


def _ic_batch(g: Graph, seed_matrix: np.ndarray, p: float, keys: np.ndarray) -> np.ndarray:
    if p == 0.0 or g.m == 0:
        return seed_matrix.copy()
    coins = uniform_array(hash_grid(keys, np.arange(g.m, dtype=np.uint64)))
    return _reachable_batch(g, seed_matrix, coins < p)


def _lt_batch(g: Graph, seed_matrix: np.ndarray, keys: np.ndarray) -> np.ndarray:
    thresholds = uniform_array(hash_grid(keys, np.arange(g.n, dtype=np.uint64)))
    degrees = g.degrees.astype(np.float64)
    reachable = degrees > 0
    safe_degrees = np.where(reachable, degrees, 1.0)
    adjacency = g.adjacency
    active = seed_matrix.copy()
    while True:
        counts = np.asarray(adjacency @ active.T.astype(np.float64)).T
        weight = counts / safe_degrees
        updated = active | ((weight >= thresholds) & reachable)
        if np.array_equal(updated, active):
            return active
        active = updated


def _simulate_batch(g: Graph, seed_matrix: np.ndarray, model: DiffusionModel,
                    keys: np.ndarray) -> np.ndarray:
    if model.kind is DiffusionKind.IC:
        return _ic_batch(g, seed_matrix, model.ic_p, keys)
    return _lt_batch(g, seed_matrix, keys)


def runs_per_chunk(g: Graph, chunk_size: int) -> int:
    """Runs per batch, capped so one batch holds at most MAX_HASH_CELLS hash values."""
    return max(1, min(chunk_size, MAX_HASH_CELLS // max(g.m, g.n, 1)))


def _check_p(p: float):
    if not 0.0 <= p <= 1.0:
        raise SimulationError(f"IC probability must lie in [0, 1], got {p}")


def simulate_ic(g: Graph, seeds: SeedInput, p: float, key: int) -> np.ndarray:
    """Infected indicator of one IC run with per-edge coins from ``key``."""
    _check_p(p)
    seed_vector = as_seed_vector(g, seeds)
    keys = np.array([key], dtype=np.uint64)
    return _ic_batch(g, seed_vector[None, :], p, keys)[0]


def simulate_lt(g: Graph, seeds: SeedInput, key: int) -> np.ndarray:
    """Infected indicator of one LT run with per-node thresholds from ``key``."""
    seed_vector = as_seed_vector(g, seeds)
    keys = np.array([key], dtype=np.uint64)
    return _lt_batch(g, seed_vector[None, :], keys)[0]


def simulate(g: Graph, seeds: SeedInput, model: DiffusionModel, key: int) -> np.ndarray:
    if model.kind is DiffusionKind.IC:
        return simulate_ic(g, seeds, model.ic_p, key)
    return simulate_lt(g, seeds, key)


def sample_seeds(g: Graph, key: int, count: int) -> np.ndarray:
    """``count`` distinct nodes chosen uniformly: the smallest salted node hashes."""
    hashes = hash_pair_array(hash_pair(key, SEED_STREAM), np.arange(g.n, dtype=np.uint64))
    chosen = np.argsort(hashes, kind="stable")[:count]
    seeds = np.zeros(g.n, dtype=bool)
    seeds[chosen] = True
    return seeds


def _simulate_chunk(g: Graph, model: DiffusionModel, keys: List[int],
                    seeds_per_pair: int) -> List[SeedDiffusionPair]:
    seed_matrix = np.stack([sample_seeds(g, key, seeds_per_pair) for key in keys])
    infected = _simulate_batch(g, seed_matrix, model, np.array(keys, dtype=np.uint64))
    return [SeedDiffusionPair(seeds=seed_matrix[i], infected=infected[i], model=model, run_key=key)
            for i, key in enumerate(keys)]


def generate_pairs(g: Graph, model: DiffusionModel, num_pairs: int, seeds_per_pair: int,
                   master_seed: int, workers: int = 1,
                   chunk_size: int = 256) -> List[SeedDiffusionPair]:
    """Simulate ``num_pairs`` cascades; pair i uses run key hash(master_seed, i).

    Degenerate cascades (seeds only, or the whole graph) are kept. The
    result does not depend on ``workers``.
    """
    if num_pairs < 1:
        raise SimulationError("num_pairs must be at least 1")
    if not 1 <= seeds_per_pair < g.n:
        raise SimulationError(f"seeds_per_pair must lie in [1, {g.n - 1}], got {seeds_per_pair}")

    keys = [run_key(master_seed, index) for index in range(num_pairs)]
    chunk_size = runs_per_chunk(g, chunk_size)
    chunks = [keys[start:start + chunk_size] for start in range(0, num_pairs, chunk_size)]
    if workers > 1 and len(chunks) > 1:
        results = Parallel(n_jobs=workers)(
            delayed(_simulate_chunk)(g, model, chunk, seeds_per_pair) for chunk in chunks)
    else:
        results = [_simulate_chunk(g, model, chunk, seeds_per_pair) for chunk in chunks]

    pairs = [pair for chunk in results for pair in chunk]
    logger.info("Generated %d %s pairs with %d seed(s) each", len(pairs), model.describe(),
                seeds_per_pair)
    return pairs


def estimate_infection_prob(g: Graph, seeds: SeedInput, model: DiffusionModel, runs: int,
                            master_seed: int, chunk_size: int = SIMULATION_CHUNK) -> np.ndarray:
    """Monte Carlo infection probability per node; run i uses hash(master_seed, i)."""
    if runs < 1:
        raise SimulationError("runs must be at least 1")
    seed_vector = as_seed_vector(g, seeds)
    counts = np.zeros(g.n, dtype=np.int64)
    chunk_size = runs_per_chunk(g, chunk_size)
    for start in range(0, runs, chunk_size):
        stop = min(start + chunk_size, runs)
        keys = run_keys(master_seed, start, stop)
        seed_matrix = np.broadcast_to(seed_vector, (stop - start, g.n)).copy()
        counts += _simulate_batch(g, seed_matrix, model, keys).sum(axis=0)
    return counts / runs


def enumerate_ic_exact(g: Graph, seeds: SeedInput, p: float,
                       chunk_size: int = SIMULATION_CHUNK) -> np.ndarray:
    """Exact IC infection probabilities by summing over all 2^m live-edge worlds."""
    _check_p(p)
    if g.m > MAX_ENUMERATION_EDGES:
        raise SimulationError(f"exact enumeration refused for m={g.m} > {MAX_ENUMERATION_EDGES}")
    seed_vector = as_seed_vector(g, seeds)
    bits = np.arange(g.m, dtype=np.int64)
    worlds = 1 << g.m
    probability = np.zeros(g.n, dtype=np.float64)
    for start in range(0, worlds, chunk_size):
        masks = np.arange(start, min(start + chunk_size, worlds), dtype=np.int64)
        live = ((masks[:, None] >> bits[None, :]) & 1).astype(bool)
        live_count = live.sum(axis=1)
        weights = p ** live_count * (1.0 - p) ** (g.m - live_count)
        seed_matrix = np.broadcast_to(seed_vector, (len(masks), g.n)).copy()
        infected = _reachable_batch(g, seed_matrix, live)
        probability += weights @ infected.astype(np.float64)
    return probability

