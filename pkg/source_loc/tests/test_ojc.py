"""Tests for the greedy Jordan cover."""

import itertools
import unittest

import networkx as nx
import numpy as np

from source_loc.core.datasets import builtin_karate
from source_loc.core.errors import LocalizationError
from source_loc.core.graph import Graph, distance_matrix
from source_loc.methods.ojc import candidate_centers, jordan_radius, ojc
from source_loc.tests.toy_graphs import path_graph, star_graph, two_triangles


def optimal_radius(distances: np.ndarray, k: int) -> int:
    """Brute-force k-center radius over every node subset."""
    n = distances.shape[0]
    return min(int(distances[list(centers)].min(axis=0).max())
               for centers in itertools.combinations(range(n), k))


class TestJordanRadius(unittest.TestCase):
    """Test the covering radius of a center set."""

    def test_path_examples(self):
        """Test radii on P5 fully infected."""
        g = path_graph(5)
        self.assertEqual(jordan_radius(g, range(5), [2]), 2)
        self.assertEqual(jordan_radius(g, [3], [3]), 0)
        self.assertEqual(jordan_radius(g, range(5), [0]), 4)
        self.assertEqual(jordan_radius(g, range(5), [0, 4]), 2)

    def test_unreachable(self):
        """Test an infected node in another component raises."""
        with self.assertRaises(LocalizationError):
            jordan_radius(two_triangles(), range(6), [0])
        with self.assertRaises(LocalizationError):
            jordan_radius(path_graph(3), [0], [])


class TestOjc(unittest.TestCase):
    """Test greedy center selection."""

    def test_path_center(self):
        """Test P5 fully infected picks the middle with radius 2."""
        prediction, radius = ojc(path_graph(5), np.ones(5, dtype=bool))
        self.assertEqual(prediction.source_nodes.tolist(), [2])
        self.assertEqual(radius, 2)

    def test_single_infected(self):
        """Test a lone infected node is its own center."""
        prediction, radius = ojc(star_graph(4), [2])
        self.assertEqual(prediction.source_nodes.tolist(), [2])
        self.assertEqual(radius, 0)

    def test_auto_k_per_component(self):
        """Test two infected triangles get one center each at radius 1."""
        prediction, radius = ojc(two_triangles(), np.ones(6, dtype=bool))
        self.assertEqual(prediction.source_nodes.tolist(), [0, 3])
        self.assertEqual(radius, 1)

    def test_uninfected_center(self):
        """Test the star center may cover infected leaves without being infected."""
        prediction, radius = ojc(star_graph(4), [1, 2, 3, 4], k=1)
        self.assertEqual(prediction.source_nodes.tolist(), [0])
        self.assertEqual(radius, 1)
        self.assertEqual(candidate_centers(star_graph(4), np.array([1])).tolist(), [0, 1])

    def test_too_few_centers(self):
        """Test k below the number of separated components raises."""
        with self.assertRaises(LocalizationError):
            ojc(two_triangles(), np.ones(6, dtype=bool), k=1)

    def test_invalid_arguments(self):
        """Test empty infected sets and k < 1 raise."""
        with self.assertRaises(LocalizationError):
            ojc(path_graph(3), np.zeros(3, dtype=bool))
        with self.assertRaises(LocalizationError):
            ojc(path_graph(3), [0], k=0)

    def test_radius_matches_centers(self):
        """Test the reported radius is the Jordan radius of the chosen centers."""
        g = builtin_karate()
        infected = np.zeros(g.n, dtype=bool)
        infected[[0, 5, 16, 33, 26]] = True
        for k in (1, 2, 3):
            with self.subTest(k=k):
                prediction, radius = ojc(g, infected, k=k)
                self.assertLessEqual(len(prediction.source_nodes), k)
                self.assertEqual(radius, jordan_radius(g, infected, prediction.source_nodes))

    def test_two_approximation_on_small_graphs(self):
        """Test greedy radius <= 2 x optimum on every connected graph up to seven nodes."""
        checked = 0
        for atlas_graph in nx.graph_atlas_g():
            n = atlas_graph.number_of_nodes()
            if n < 2 or not nx.is_connected(atlas_graph):
                continue
            g = Graph.from_edges(atlas_graph.edges(), nodes=range(n))
            distances = distance_matrix(g, range(n))
            for k in (1, 2):
                _, radius = ojc(g, np.ones(n, dtype=bool), k=k)
                best = optimal_radius(distances, k)
                if k == 1:
                    self.assertEqual(radius, best)
                self.assertLessEqual(radius, 2 * best, f"atlas graph {checked} k={k}")
            checked += 1
        self.assertGreater(checked, 800)


if __name__ == "__main__":
    unittest.main()
