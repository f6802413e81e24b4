"""Graph class - immutable undirected graph in CSR form, ingestion, and traversals."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse import csgraph

from .errors import GraphError, GraphFormatError

logger = logging.getLogger(__name__)

# Distance reported for nodes that BFS cannot reach.
UNREACHABLE = np.iinfo(np.int64).max


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected, unweighted graph stored as compressed sparse rows.

    Every undirected edge appears in both endpoint lists with the same
    canonical edge id. Neighbor lists are sorted and free of duplicates and
    self-loops. ``labels[i]`` is the original label of internal node ``i``.
    """

    row_offsets: np.ndarray
    neighbors: np.ndarray
    edge_ids: np.ndarray
    labels: Tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return int(self.row_offsets[-1]) // 2

    @cached_property
    def id_map(self) -> Dict[str, int]:
        """Original label -> internal index."""
        return {label: index for index, label in enumerate(self.labels)}

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.row_offsets)

    @cached_property
    def adjacency(self) -> csr_matrix:
        """0/1 adjacency matrix sharing the CSR layout."""
        data = np.ones(len(self.neighbors), dtype=np.float64)
        return csr_matrix((data, self.neighbors, self.row_offsets), shape=(self.n, self.n))

    @cached_property
    def edge_endpoints(self) -> np.ndarray:
        """(m, 2) array; row ``e`` holds the endpoints (u < v) of edge id ``e``."""
        endpoints = np.zeros((self.m, 2), dtype=np.int64)
        sources = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        forward = sources < self.neighbors
        endpoints[self.edge_ids[forward], 0] = sources[forward]
        endpoints[self.edge_ids[forward], 1] = self.neighbors[forward]
        return endpoints

    def neighbors_of(self, node: int) -> np.ndarray:
        """Sorted neighbor indices of ``node``."""
        return self.neighbors[self.row_offsets[node]:self.row_offsets[node + 1]]

    def index_of(self, label: str) -> int:
        try:
            return self.id_map[str(label)]
        except KeyError:
            raise GraphError(f"unknown node label {label!r}") from None

    def label_of(self, index: int) -> str:
        return self.labels[index]

    def indices_of(self, labels: Iterable[str]) -> List[int]:
        return [self.index_of(label) for label in labels]

    def permuted(self, new_index: Sequence[int]) -> "Graph":
        """Relabel internal indices: old node ``v`` becomes ``new_index[v]``."""
        new_index = np.asarray(new_index, dtype=np.int64)
        if sorted(new_index.tolist()) != list(range(self.n)):
            raise GraphError("permutation must be a rearrangement of 0..n-1")
        labels = [""] * self.n
        for old, new in enumerate(new_index):
            labels[new] = self.labels[old]
        endpoints = new_index[self.edge_endpoints]
        return _from_index_pairs(self.n, endpoints[:, 0], endpoints[:, 1], labels)

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[object, object]],
                   nodes: Optional[Iterable[object]] = None) -> "Graph":
        """Build a graph from label pairs; ``nodes`` may add isolated nodes first."""
        builder = GraphBuilder()
        for label in nodes or ():
            builder.add_node(label)
        for u, v in edges:
            builder.add_edge(u, v)
        return builder.build()


@dataclass(frozen=True)
class GraphStats:
    """Node count, edge count and average degree of a graph."""
    nodes: int
    edges: int
    avg_degree: float

    @property
    def display_avg_degree(self) -> float:
        return round(self.avg_degree, 3)

    def __str__(self):
        return f"{self.nodes} nodes, {self.edges} edges, avg degree {self.display_avg_degree:.3f}"


class GraphBuilder:
    """Accumulates labelled edges and assigns dense indices in first-appearance order."""

    def __init__(self):
        self._index: Dict[str, int] = {}
        self._labels: List[str] = []
        self._edges: set = set()
        self._us: List[int] = []
        self._vs: List[int] = []
        self.duplicate_edges = 0
        self.self_loops = 0

    def add_node(self, label) -> int:
        """Register ``label`` if new; returns its index."""
        label = str(label)
        index = self._index.get(label)
        if index is None:
            index = len(self._labels)
            self._index[label] = index
            self._labels.append(label)
        return index

    def add_edge(self, a, b) -> bool:
        """Add an undirected edge. Returns False if it was dropped."""
        u = self.add_node(a)
        v = self.add_node(b)
        if u == v:
            self.self_loops += 1
            return False
        key = (u, v) if u < v else (v, u)
        if key in self._edges:
            self.duplicate_edges += 1
            return False
        self._edges.add(key)
        self._us.append(key[0])
        self._vs.append(key[1])
        return True

    @property
    def edge_count(self) -> int:
        return len(self._us)

    def build(self) -> Graph:
        return _from_index_pairs(len(self._labels), np.asarray(self._us, dtype=np.int64),
                                 np.asarray(self._vs, dtype=np.int64), self._labels)


def _from_index_pairs(n: int, us: np.ndarray, vs: np.ndarray, labels: Sequence[str]) -> Graph:
    """CSR arrays from unique, loop-free index pairs."""
    us = np.asarray(us, dtype=np.int64)
    vs = np.asarray(vs, dtype=np.int64)
    low = np.minimum(us, vs)
    high = np.maximum(us, vs)
    # Canonical edge id = rank of (low, high) in lexicographic order.
    canonical = np.lexsort((high, low))
    edge_ids = np.empty(len(low), dtype=np.int64)
    edge_ids[canonical] = np.arange(len(low), dtype=np.int64)

    src = np.concatenate([low, high])
    dst = np.concatenate([high, low])
    eid = np.concatenate([edge_ids, edge_ids])
    order = np.lexsort((dst, src))
    counts = np.bincount(src, minlength=n)
    row_offsets = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    return Graph(row_offsets=row_offsets, neighbors=dst[order], edge_ids=eid[order],
                 labels=tuple(str(label) for label in labels))


def parse_edge_list(text: Union[str, Iterable[str]]) -> Graph:
    """Parse whitespace-separated label pairs; '#' lines and blank lines are skipped."""
    lines = text.splitlines() if isinstance(text, str) else text
    builder = GraphBuilder()
    for line_number, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"expected 2 node labels, found {len(tokens)}", line_number)
        builder.add_edge(tokens[0], tokens[1])

    if builder.edge_count == 0:
        raise GraphFormatError("edge list contains no edges")
    if builder.duplicate_edges or builder.self_loops:
        logger.warning("Dropped %d duplicate edges and %d self-loops",
                       builder.duplicate_edges, builder.self_loops)
    return builder.build()


def load_edge_list(path) -> Graph:
    """Read an edge-list file from disk."""
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line_number = data.count(b"\n", 0, exc.start) + 1
        raise GraphFormatError(f"invalid UTF-8 byte 0x{data[exc.start]:02x}", line_number) from None
    graph = parse_edge_list(text)
    logger.debug("Loaded %s: %d nodes, %d edges", path, graph.n, graph.m)
    return graph


def graph_stats(g: Graph) -> GraphStats:
    return GraphStats(nodes=g.n, edges=g.m, avg_degree=2.0 * g.m / g.n if g.n else 0.0)


def distance_matrix(g: Graph, sources: Sequence[int]) -> np.ndarray:
    """Unweighted shortest-path lengths from each source, UNREACHABLE where no path."""
    sources = np.atleast_1d(np.asarray(sources, dtype=np.int64))
    if sources.size and (sources.min() < 0 or sources.max() >= g.n):
        raise GraphError(f"source index out of range [0, {g.n})")
    dist = csgraph.shortest_path(g.adjacency, method="D", directed=False,
                                 unweighted=True, indices=sources)
    dist = np.atleast_2d(dist)
    result = np.full(dist.shape, UNREACHABLE, dtype=np.int64)
    finite = np.isfinite(dist)
    result[finite] = dist[finite].astype(np.int64)
    return result


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source``; UNREACHABLE for other components."""
    if not 0 <= source < g.n:
        raise GraphError(f"source {source} out of range [0, {g.n})")
    return distance_matrix(g, [source])[0]


def connected_components(g: Graph) -> np.ndarray:
    """Component label per node, labels in [0, #components)."""
    _, labels = csgraph.connected_components(g.adjacency, directed=False)
    return labels.astype(np.int64)


def count_components(g: Graph, nodes: Optional[Sequence[int]] = None) -> int:
    """Number of components of the whole graph or of the subgraph induced by ``nodes``."""
    adjacency = g.adjacency
    if nodes is not None:
        nodes = np.asarray(nodes, dtype=np.int64)
        if nodes.size == 0:
            return 0
        adjacency = adjacency[nodes][:, nodes]
    count, _ = csgraph.connected_components(adjacency, directed=False)
    return int(count)


def indicator(n: int, nodes: Iterable[int]) -> np.ndarray:
    """Boolean vector of length ``n`` with ``nodes`` set."""
    vector = np.zeros(n, dtype=bool)
    vector[list(nodes)] = True
    return vector
