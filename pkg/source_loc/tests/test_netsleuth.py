"""Tests for the Laplacian submatrix, the eigen solver and NetSleuth."""

import math
import unittest

import numpy as np

from source_loc.core.datasets import builtin_karate
from source_loc.core.errors import ConvergenceError, LocalizationError
from source_loc.core.graph import Graph, bfs_distances
from source_loc.methods.linalg import laplacian_submatrix, smallest_eigvec
from source_loc.methods.netsleuth import (MdlReport, log2_binomial, log_star, netsleuth, ripple_bits,
                                          seed_set_bits)
from source_loc.tests.toy_graphs import path_graph, star_graph, two_triangles


class TestLaplacianSubmatrix(unittest.TestCase):
    """Test the infected-set Laplacian."""

    def test_path_middle(self):
        """Test P5 restricted to {1, 2, 3}."""
        m = laplacian_submatrix(path_graph(5), [1, 2, 3])
        self.assertEqual(m.tolist(), [[2, -1, 0], [-1, 2, -1], [0, -1, 2]])

    def test_single_node_keeps_full_degree(self):
        """Test a lone node contributes its full-graph degree."""
        self.assertEqual(laplacian_submatrix(star_graph(4), [0]).tolist(), [[4]])

    def test_whole_graph_is_laplacian(self):
        """Test the full connected graph gives its Laplacian, smallest eigenvalue 0."""
        g = builtin_karate()
        m = laplacian_submatrix(g, np.ones(g.n, dtype=bool))
        np.testing.assert_array_equal(m.sum(axis=1), np.zeros(g.n))
        self.assertAlmostEqual(smallest_eigvec(m).value, 0.0, places=8)

    def test_empty_rejected(self):
        """Test an empty infected set raises."""
        with self.assertRaises(LocalizationError):
            laplacian_submatrix(path_graph(3), np.zeros(3, dtype=bool))


class TestSmallestEigvec(unittest.TestCase):
    """Test shifted inverse iteration."""

    def test_path_laplacian(self):
        """Test the P3 Dirichlet Laplacian eigenpair (2 - sqrt 2, (1, sqrt 2, 1)/2)."""
        result = smallest_eigvec(np.array([[2.0, -1, 0], [-1, 2, -1], [0, -1, 2]]))
        self.assertAlmostEqual(result.value, 2 - math.sqrt(2), places=9)
        np.testing.assert_allclose(result.vector, [0.5, math.sqrt(2) / 2, 0.5], atol=1e-6)
        self.assertFalse(result.degenerate)

    def test_identity_is_degenerate(self):
        """Test a repeated smallest eigenvalue is flagged."""
        result = smallest_eigvec(np.eye(3))
        self.assertAlmostEqual(result.value, 1.0)
        self.assertAlmostEqual(float(np.linalg.norm(result.vector)), 1.0)
        self.assertTrue(result.degenerate)

    def test_diagonal(self):
        """Test diag(1, 5) gives (1, (1, 0))."""
        result = smallest_eigvec(np.diag([1.0, 5.0]))
        self.assertAlmostEqual(result.value, 1.0)
        np.testing.assert_allclose(result.vector, [1.0, 0.0], atol=1e-9)

    def test_sign_and_norm(self):
        """Test unit norm and a positive largest-magnitude entry on random PSD matrices."""
        rng = np.random.default_rng(4)
        for _ in range(10):
            a = rng.normal(size=(6, 6))
            m = a @ a.T + 0.1 * np.eye(6)
            result = smallest_eigvec(m)
            self.assertAlmostEqual(float(np.linalg.norm(result.vector)), 1.0)
            self.assertGreater(result.vector[np.argmax(np.abs(result.vector))], 0)
            self.assertAlmostEqual(result.value, float(np.linalg.eigvalsh(m)[0]), places=7)

    def test_rejects_bad_input(self):
        """Test non-square and asymmetric matrices raise, and tight budgets fail loudly."""
        with self.assertRaises(LocalizationError):
            smallest_eigvec(np.ones((2, 3)))
        with self.assertRaises(LocalizationError):
            smallest_eigvec(np.array([[1.0, 2.0], [0.0, 1.0]]))
        with self.assertRaises(ConvergenceError):
            smallest_eigvec(np.diag([1.0, 1.01, 5.0]), tol=1e-14, max_iter=2)


class TestDescriptionLength(unittest.TestCase):
    """Test the bit-count helpers."""

    def test_log_star(self):
        """Test the universal integer code length."""
        self.assertAlmostEqual(log_star(1), math.log2(2.865064))
        self.assertAlmostEqual(log_star(2), math.log2(2.865064) + 1.0)
        self.assertAlmostEqual(log_star(16), math.log2(2.865064) + 4 + 2 + 1)
        with self.assertRaises(ValueError):
            log_star(0)

    def test_log2_binomial(self):
        """Test log2 C(n, k) against exact values."""
        self.assertAlmostEqual(log2_binomial(34, 2), math.log2(561))
        self.assertAlmostEqual(log2_binomial(10, 0), 0.0)
        self.assertAlmostEqual(seed_set_bits(5, 1), log_star(1) + math.log2(5))

    def test_ripple_on_path(self):
        """Test ripple bits from the middle of P5 all infected."""
        g = path_graph(5)
        # frontier sizes 2, 2, 1, 1
        self.assertAlmostEqual(ripple_bits(g, np.arange(5), [2]), 2.0)
        self.assertEqual(ripple_bits(g, np.arange(5), [0]), 0.0)

    def test_unreachable_ripple_is_infinite(self):
        """Test an infected node out of reach makes the ripple cost infinite."""
        g = two_triangles()
        self.assertEqual(ripple_bits(g, np.arange(6), [0]), math.inf)


class TestNetSleuth(unittest.TestCase):
    """Test MDL greedy seed selection."""

    def test_path_first_seed(self):
        """Test P5 infected {1, 2, 3} starts from the middle."""
        report, _ = netsleuth(path_graph(5), [1, 2, 3], max_seeds=2)
        self.assertEqual(report.seeds_in_order[0], 2)

    def test_single_infected(self):
        """Test one infected node is its own single seed."""
        report, prediction = netsleuth(star_graph(4), [3])
        self.assertEqual(report.seeds_in_order, [3])
        self.assertEqual(report.chosen_k, 1)
        self.assertEqual(prediction.source_nodes.tolist(), [3])

    def test_two_triangles(self):
        """Test disjoint infected triangles need one seed each."""
        report, prediction = netsleuth(two_triangles(), np.ones(6, dtype=bool), max_seeds=2)
        self.assertEqual(report.chosen_k, 2)
        self.assertTrue(math.isinf(report.cost_curve[0]))
        seeds = prediction.source_nodes.tolist()
        self.assertEqual(len([s for s in seeds if s < 3]), 1)
        self.assertEqual(len([s for s in seeds if s >= 3]), 1)

    def test_two_stars(self):
        """Test infected stars in separate components get one seed each."""
        g = Graph.from_edges([(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7)])
        report, prediction = netsleuth(g, np.ones(8, dtype=bool), max_seeds=2)
        self.assertEqual(report.chosen_k, 2)
        self.assertEqual(sorted(prediction.source_nodes.tolist()), [0, 4])

    def test_default_max_seeds_on_small_graphs(self):
        """Test the default budget keeps lowering the cost on 6-8 node graphs and uses all five seeds."""
        cases = {
            "two triangles": (two_triangles(), [11.01, 10.675, 9.425, 7.922]),
            "two stars": (Graph.from_edges([(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7)]),
                          [16.818, 16.482, 15.233, 13.729]),
        }
        for name, (g, finite_costs) in cases.items():
            with self.subTest(graph=name):
                report, prediction = netsleuth(g, np.ones(g.n, dtype=bool))
                self.assertEqual(report.chosen_k, 5)
                self.assertEqual(len(prediction.source_nodes), 5)
                self.assertTrue(math.isinf(report.cost_curve[0]))
                for cost, expected in zip(report.cost_curve[1:], finite_costs):
                    self.assertAlmostEqual(cost, expected, delta=1e-3)
                self.assertTrue(all(a > b for a, b in zip(report.cost_curve[1:], report.cost_curve[2:])))

    def test_chosen_k_is_argmin(self):
        """Test chosen_k indexes the first minimum of the cost curve."""
        g = builtin_karate()
        infected = bfs_distances(g, 0) <= 1
        report, prediction = netsleuth(g, infected, max_seeds=4)
        self.assertEqual(report.chosen_k, int(np.argmin(report.cost_curve)) + 1)
        self.assertEqual(len(report.cost_curve), 4)
        self.assertEqual(prediction.source_nodes.tolist(), sorted(report.seeds_in_order[:report.chosen_k]))
        self.assertFalse((prediction.sources & ~infected).any())

    def test_uncoverable(self):
        """Test too few seeds for the infected components raises."""
        with self.assertRaises(LocalizationError):
            netsleuth(two_triangles(), np.ones(6, dtype=bool), max_seeds=1)

    def test_report_serialization(self):
        """Test infinite costs serialize as null and seeds as labels."""
        g = two_triangles()
        report = MdlReport(seeds_in_order=[0, 3], cost_curve=[math.inf, 12.5], chosen_k=2)
        self.assertEqual(report.to_dict(g), {"seeds_in_order": ["0", "3"], "cost_curve": [None, 12.5],
                                             "chosen_k": 2})

    def test_invalid_arguments(self):
        """Test empty infected sets and max_seeds < 1 raise."""
        with self.assertRaises(LocalizationError):
            netsleuth(path_graph(3), np.zeros(3, dtype=bool))
        with self.assertRaises(LocalizationError):
            netsleuth(path_graph(3), [0], max_seeds=0)


if __name__ == "__main__":
    unittest.main()
