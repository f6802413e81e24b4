"""Tests for confusion counts, point metrics, AUC, thresholds and aggregation."""

import unittest

import numpy as np

from source_loc.core.errors import EvaluationError
from source_loc.evaluation.metrics import (Confusion, Metric, aggregate, auc, confusion, evaluate_pair,
                                           point_metrics, select_threshold)
from source_loc.methods.prediction import Prediction


def brute_force_auc(scores: np.ndarray, truth: np.ndarray) -> float:
    positives = scores[truth]
    negatives = scores[~truth]
    wins = (positives[:, None] > negatives[None, :]).sum()
    ties = (positives[:, None] == negatives[None, :]).sum()
    return (wins + 0.5 * ties) / (len(positives) * len(negatives))


class TestPointMetrics(unittest.TestCase):
    """Test confusion counts and the four point metrics."""

    def test_confusion(self):
        """Test direct counting."""
        self.assertEqual(confusion([1, 1, 1, 0], [1, 0, 1, 0]), Confusion(tp=2, fp=1, tn=1, fn=0))

    def test_formulas(self):
        """Test accuracy, precision, recall and F on hand examples."""
        accuracy, precision, recall, f_score = point_metrics(Confusion(tp=2, fp=1, tn=1, fn=0))
        self.assertEqual(accuracy, 0.75)
        self.assertAlmostEqual(precision, 2 / 3)
        self.assertEqual(recall, 1.0)
        self.assertAlmostEqual(f_score, 0.8)
        _, precision, recall, f_score = point_metrics(Confusion(tp=2, fp=1, tn=0, fn=1))
        for value in (precision, recall, f_score):
            self.assertAlmostEqual(value, 2 / 3)
        self.assertEqual(point_metrics(Confusion(tp=3, fp=0, tn=5, fn=0)), (1.0, 1.0, 1.0, 1.0))

    def test_zero_over_zero(self):
        """Test empty predictions score zero precision, recall and F."""
        self.assertEqual(point_metrics(Confusion(tp=0, fp=0, tn=3, fn=1))[1:], (0.0, 0.0, 0.0))

    def test_errors(self):
        """Test empty confusions and mismatched lengths raise."""
        with self.assertRaises(EvaluationError):
            point_metrics(Confusion(0, 0, 0, 0))
        with self.assertRaises(EvaluationError):
            confusion([1, 0], [1, 0, 1])

    def test_bounds(self):
        """Test metrics lie in [0, 1] and F is the harmonic mean."""
        rng = np.random.default_rng(5)
        for _ in range(200):
            n = int(rng.integers(1, 30))
            accuracy, precision, recall, f_score = point_metrics(
                confusion(rng.random(n) < 0.3, rng.random(n) < 0.3))
            for value in (accuracy, precision, recall, f_score):
                self.assertTrue(0.0 <= value <= 1.0)
            if precision + recall:
                self.assertEqual(f_score, 2 * precision * recall / (precision + recall))
            self.assertLessEqual(f_score, precision + recall)


class TestAuc(unittest.TestCase):
    """Test the rank-based AUC."""

    def test_hand_anchor(self):
        """Test three wins and one loss give 0.75."""
        self.assertEqual(auc([0.9, 0.8, 0.3, 0.2], [1, 0, 1, 0]), 0.75)

    def test_separated_and_tied(self):
        """Test perfect separation gives 1 and all-equal scores give 0.5."""
        self.assertEqual(auc([0.9, 0.8, 0.1], [1, 1, 0]), 1.0)
        self.assertEqual(auc([0.4] * 5, [1, 0, 0, 1, 0]), 0.5)

    def test_matches_brute_force(self):
        """Test 500 random instances with ties agree exactly with pairwise counting."""
        rng = np.random.default_rng(12)
        for instance in range(500):
            n = int(rng.integers(2, 201))
            truth = rng.random(n) < 0.3
            truth[0], truth[1] = True, False
            scores = rng.integers(0, 20, size=n) / 20.0
            with self.subTest(instance=instance):
                self.assertAlmostEqual(auc(scores, truth), brute_force_auc(scores, truth), delta=1e-12)

    def test_monotone_invariance(self):
        """Test strictly increasing transforms leave AUC unchanged."""
        rng = np.random.default_rng(3)
        scores = rng.random(60)
        truth = rng.random(60) < 0.4
        truth[:2] = [True, False]
        base = auc(scores, truth)
        self.assertAlmostEqual(auc(np.exp(3 * scores), truth), base, delta=1e-12)
        self.assertAlmostEqual(auc(scores ** 3 - 7, truth), base, delta=1e-12)

    def test_single_class(self):
        """Test AUC is undefined without both classes."""
        with self.assertRaisesRegex(EvaluationError, "AUC undefined"):
            auc([0.1, 0.2], [1, 1])
        with self.assertRaises(EvaluationError):
            auc([0.1, 0.2], [0, 0])


class TestSelectThreshold(unittest.TestCase):
    """Test F-maximizing threshold selection."""

    def test_largest_of_ties(self):
        """Test equally good thresholds resolve to the largest."""
        self.assertEqual(select_threshold([(np.array([0.9, 0.1]), np.array([1, 0]))]), 0.9)

    def test_all_positive(self):
        """Test all-positive truth selects the minimum score."""
        pairs = [(np.array([0.3, 0.7, 0.5]), np.ones(3)), (np.array([0.2, 0.6]), np.ones(2))]
        self.assertEqual(select_threshold(pairs), 0.2)

    def test_duplication_invariant(self):
        """Test duplicating a training pair keeps the threshold."""
        rng = np.random.default_rng(9)
        for _ in range(20):
            pair = (rng.random(12), rng.random(12) < 0.3)
            self.assertEqual(select_threshold([pair]), select_threshold([pair, pair]))

    def test_empty(self):
        """Test an empty training set raises."""
        with self.assertRaises(EvaluationError):
            select_threshold([])


class TestEvaluatePair(unittest.TestCase):
    """Test per-pair Metric construction."""

    def test_combined_example(self):
        """Test decisions and scores evaluated together."""
        prediction = Prediction(scores=np.array([0.9, 0.8, 0.3, 0.2]),
                                sources=np.array([True, True, False, False]))
        metric = evaluate_pair(prediction, [1, 0, 1, 0])
        self.assertEqual((metric.accuracy, metric.precision, metric.recall, metric.f_score, metric.auc),
                         (0.5, 0.5, 0.5, 0.5, 0.75))
        self.assertEqual(metric.auc_undefined_pairs, 0)

    def test_perfect(self):
        """Test a perfect prediction scores 1 everywhere."""
        prediction = Prediction.from_nodes(4, [1])
        metric = evaluate_pair(prediction, [0, 1, 0, 0])
        self.assertEqual(metric.to_dict(), {"accuracy": 1.0, "precision": 1.0, "recall": 1.0,
                                            "f_score": 1.0, "auc": 1.0, "auc_undefined_pairs": 0})

    def test_empty_prediction(self):
        """Test predicting no sources scores zero precision, recall and F."""
        prediction = Prediction.from_nodes(3, [])
        metric = evaluate_pair(prediction, [1, 0, 0])
        self.assertEqual((metric.precision, metric.recall, metric.f_score), (0.0, 0.0, 0.0))

    def test_degenerate_auc(self):
        """Test all-source truth marks AUC undefined."""
        metric = evaluate_pair(Prediction.from_nodes(2, [0, 1]), [1, 1])
        self.assertIsNone(metric.auc)
        self.assertEqual(metric.auc_undefined_pairs, 1)

    def test_size_mismatch(self):
        """Test truth and prediction lengths must agree."""
        with self.assertRaises(EvaluationError):
            evaluate_pair(Prediction.from_nodes(3, [0]), [1, 0])


class TestAggregate(unittest.TestCase):
    """Test macro averaging."""

    def test_means(self):
        """Test per-field arithmetic means."""
        result = aggregate([Metric(1, 1, 1, 1, 1), Metric(0, 0, 0, 0, 0.5)])
        self.assertEqual((result.accuracy, result.precision, result.recall, result.f_score, result.auc),
                         (0.5, 0.5, 0.5, 0.5, 0.75))

    def test_single(self):
        """Test one metric aggregates to itself."""
        metric = Metric(0.9, 0.5, 0.25, 1 / 3, 0.6)
        self.assertEqual(aggregate([metric]), metric)

    def test_undefined_excluded(self):
        """Test undefined AUCs are left out of the mean and counted."""
        result = aggregate([Metric(1, 1, 1, 1, 0.8), Metric(1, 1, 1, 1, None, 1)])
        self.assertEqual(result.auc, 0.8)
        self.assertEqual(result.auc_undefined_pairs, 1)
        self.assertIsNone(aggregate([Metric(1, 1, 1, 1, None, 1)]).auc)

    def test_round_trip_and_empty(self):
        """Test dictionary round trip and empty input."""
        metric = Metric(0.5, 0.25, 1.0, 0.4, None, 2)
        self.assertEqual(Metric.from_dict(metric.to_dict()), metric)
        with self.assertRaises(EvaluationError):
            aggregate([])
        with self.assertRaises(EvaluationError):
            Metric.from_dict({"accuracy": 1.0})


if __name__ == "__main__":
    unittest.main()
