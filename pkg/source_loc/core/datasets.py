"""Benchmark dataset registry and the embedded karate club graph.

The registry records the published statistics of eight benchmark graphs so
user-supplied edge-list files can be cross-checked after ingestion. Only the
Zachary karate club graph ships with the package.
"""

import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from .errors import UnknownDatasetError
from .graph import Graph, graph_stats, load_edge_list, parse_edge_list

logger = logging.getLogger(__name__)

AVG_DEGREE_TOLERANCE = 0.001


@dataclass(frozen=True)
class DatasetDescriptor:
    """Published statistics of one benchmark graph."""
    name: str
    expected_nodes: int
    expected_edges: int
    expected_avg_degree: float
    has_pairs: bool
    description: str = ""


@dataclass(frozen=True)
class ValidationRow:
    field: str
    expected: float
    actual: float
    match: bool


@dataclass(frozen=True)
class ValidationReport:
    """Comparison of an ingested graph against a registry row."""
    dataset: str
    rows: List[ValidationRow]

    @property
    def all_match(self) -> bool:
        return all(row.match for row in self.rows)

    def mismatches(self) -> List[ValidationRow]:
        return [row for row in self.rows if not row.match]


class DatasetRegistry:
    """Library of the eight benchmark datasets."""

    _DESCRIPTORS = (
        DatasetDescriptor("Karate", 34, 78, 4.588, False,
                          "Zachary's karate club friendship network"),
        DatasetDescriptor("Dolphins", 62, 159, 5.129, False,
                          "Doubtful Sound bottlenose dolphin associations"),
        DatasetDescriptor("Jazz", 198, 2742, 27.697, False,
                          "Jazz musician collaboration network"),
        # Edge count matches Jazz as published; kept as-is.
        DatasetDescriptor("Network Science", 1589, 2742, 3.451, False,
                          "Network science co-authorship network"),
        DatasetDescriptor("Cora-ML", 2810, 7981, 5.68, False,
                          "Machine-learning subset of the Cora citation graph"),
        DatasetDescriptor("Power Grid", 4941, 6594, 2.669, False,
                          "Western US power grid"),
        DatasetDescriptor("Memetracker", 7884, 47911, 12.154, True,
                          "Meme propagation among news sites"),
        DatasetDescriptor("Digg", 15912, 78649, 9.885, True,
                          "Digg social news voting network"),
    )

    @staticmethod
    def _normalize(name: str) -> str:
        return re.sub(r"[\s_\-]+", "", name).lower()

    @classmethod
    def get_descriptors(cls) -> List[DatasetDescriptor]:
        """All registry rows in publication order."""
        return list(cls._DESCRIPTORS)

    @classmethod
    def get_names(cls) -> List[str]:
        return [descriptor.name for descriptor in cls._DESCRIPTORS]

    @classmethod
    def get_by_name(cls, name: str) -> Optional[DatasetDescriptor]:
        """Case-, space- and hyphen-insensitive lookup; None if absent."""
        wanted = cls._normalize(name)
        for descriptor in cls._DESCRIPTORS:
            if cls._normalize(descriptor.name) == wanted:
                return descriptor
        return None

    @classmethod
    def require(cls, name: str) -> DatasetDescriptor:
        descriptor = cls.get_by_name(name)
        if descriptor is None:
            raise UnknownDatasetError(name, cls.get_names())
        return descriptor


def registry() -> List[DatasetDescriptor]:
    return DatasetRegistry.get_descriptors()


def validate_against_registry(g: Graph, name: str) -> ValidationReport:
    """Compare node/edge counts and average degree with the published row.

    Mismatches are logged as warnings; preprocessing variants of the same
    dataset legitimately differ.
    """
    descriptor = DatasetRegistry.require(name)
    stats = graph_stats(g)
    rows = [
        ValidationRow("nodes", descriptor.expected_nodes, stats.nodes,
                      stats.nodes == descriptor.expected_nodes),
        ValidationRow("edges", descriptor.expected_edges, stats.edges,
                      stats.edges == descriptor.expected_edges),
        ValidationRow("avg_degree", descriptor.expected_avg_degree, stats.avg_degree,
                      abs(stats.avg_degree - descriptor.expected_avg_degree) <= AVG_DEGREE_TOLERANCE),
    ]
    report = ValidationReport(descriptor.name, rows)
    for row in report.mismatches():
        logger.warning("%s: %s expected %s, got %s", descriptor.name, row.field,
                       _format_number(row.expected), _format_number(row.actual))
    return report


def _format_number(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return f"{value:.3f}"


def load_dataset(name: str, path) -> Graph:
    """Load a user-supplied edge-list file for a registry dataset and validate it."""
    DatasetRegistry.require(name)
    graph = load_edge_list(path)
    validate_against_registry(graph, name)
    return graph


def builtin_karate() -> Graph:
    """The 34-node Zachary karate club graph."""
    return parse_edge_list(_KARATE_EDGES)


BUILTIN_GRAPHS: Dict[str, Callable[[], Graph]] = {
    "karate": builtin_karate,
}


def builtin_graph(name: str) -> Graph:
    loader = BUILTIN_GRAPHS.get(name.lower())
    if loader is None:
        raise UnknownDatasetError(name, sorted(BUILTIN_GRAPHS))
    return loader()


_KARATE_EDGES = """\
# Zachary karate club, 0-indexed member ids
0 1
0 2
0 3
0 4
0 5
0 6
0 7
0 8
0 10
0 11
0 12
0 13
0 17
0 19
0 21
0 31
1 2
1 3
1 7
1 13
1 17
1 19
1 21
1 30
2 3
2 7
2 8
2 9
2 13
2 27
2 28
2 32
3 7
3 12
3 13
4 6
4 10
5 6
5 10
5 16
6 16
8 30
8 32
8 33
9 33
13 33
14 32
14 33
15 32
15 33
18 32
18 33
19 33
20 32
20 33
22 32
22 33
23 25
23 27
23 29
23 32
23 33
24 25
24 27
24 31
25 31
26 29
26 33
27 33
28 31
28 33
29 32
29 33
30 32
30 33
31 32
31 33
32 33
"""
