"""Tests for the benchmark split, configuration, pipeline and reports."""

import csv
import json
import os
import tempfile
import unittest

from source_loc.bench.config import BenchConfig, load_config_file
from source_loc.bench.pipeline import (BenchPipeline, PipelinePhase, evaluate_predictions,
                                       run_pipeline, split_indices, split_pairs)
from source_loc.bench.report import CSV_HEADER, read_predictions, read_report, report_to_json, write_report
from source_loc.core.corpus import write_pairs
from source_loc.core.datasets import builtin_karate
from source_loc.core.diffusion import DiffusionModel, generate_pairs
from source_loc.core.errors import ConfigError, PipelineError


def karate_config(**overrides) -> BenchConfig:
    values = dict(builtin="karate", num_pairs=20, p=0.2, master_seed=3, epochs=5, hidden=8)
    values.update(overrides)
    return BenchConfig(**values)


class TestSplit(unittest.TestCase):
    """Test the keyed train/test split."""

    def test_sizes(self):
        """Test ceil(split * N) training pairs with both sides non-empty."""
        self.assertEqual(tuple(map(len, split_indices(10, 0.8, 0))), (8, 2))
        self.assertEqual(tuple(map(len, split_indices(50, 0.8, 7))), (40, 10))
        self.assertEqual(tuple(map(len, split_indices(2, 0.99, 1))), (1, 1))
        self.assertEqual(tuple(map(len, split_indices(2, 0.01, 1))), (1, 1))

    def test_partition_and_determinism(self):
        """Test the split is a seeded permutation of all indices."""
        train, test = split_indices(30, 0.7, 11)
        self.assertEqual(sorted(train + test), list(range(30)))
        self.assertEqual((train, test), split_indices(30, 0.7, 11))
        self.assertNotEqual(train + test, sum(split_indices(30, 0.7, 12), []))

    def test_split_pairs(self):
        """Test pairs are selected by the index split."""
        items = list("abcdefghij")
        train, test = split_pairs(items, 0.8, 0)
        train_idx, test_idx = split_indices(10, 0.8, 0)
        self.assertEqual(train, [items[i] for i in train_idx])
        self.assertEqual(test, [items[i] for i in test_idx])

    def test_invalid(self):
        """Test too few pairs and out-of-range fractions raise."""
        with self.assertRaises(ValueError):
            split_indices(1, 0.5, 0)
        with self.assertRaises(ValueError):
            split_indices(10, 1.0, 0)


class TestBenchConfig(unittest.TestCase):
    """Test configuration validation and precedence."""

    def test_precedence(self):
        """Test flags override the file, which overrides defaults."""
        cfg = BenchConfig.merge({"builtin": "karate", "alpha": 0.3, "num_pairs": 30},
                                {"alpha": 0.7, "num_pairs": None})
        self.assertEqual(cfg.alpha, 0.7)
        self.assertEqual(cfg.num_pairs, 30)
        self.assertEqual(cfg.split, 0.8)

    def test_graph_flag_replaces_file_graph(self):
        """Test a graph given by flag replaces the file's builtin."""
        cfg = BenchConfig.merge({"builtin": "karate"}, {"graph_path": "edges.txt"})
        self.assertIsNone(cfg.builtin)
        self.assertEqual(cfg.graph_path, "edges.txt")

    def test_invalid(self):
        """Test inconsistent settings raise ConfigError."""
        cases = [
            {},
            {"builtin": "karate", "graph_path": "g.txt"},
            {"builtin": "karate", "split": 1.0},
            {"builtin": "karate", "num_pairs": 1},
            {"builtin": "karate", "method": "ojc", "threshold_mode": "f1"},
            {"builtin": "karate", "emit_mdl": "mdl.jsonl"},
            {"builtin": "karate", "method": "lpsi", "save_model": "m.json"},
            {"builtin": "karate", "method": "magic"},
            {"builtin": "karate", "alpha": 1.5},
            {"builtin": "karate", "p": 2.0},
            {"builtin": "karate", "model": "sir"},
            {"builtin": "karate", "k": 0},
            {"builtin": "karate", "output_format": "xml"},
        ]
        for values in cases:
            with self.subTest(values=values):
                with self.assertRaises(ConfigError):
                    BenchConfig.merge(values)
        with self.assertRaises(ConfigError):
            BenchConfig.merge({"builtin": "karate", "colour": "red"})

    def test_config_file(self):
        """Test JSON config files load as flat objects."""
        with tempfile.TemporaryDirectory() as tmp:
            good = os.path.join(tmp, "good.json")
            with open(good, "w", encoding="utf-8") as fh:
                json.dump({"builtin": "karate", "method": "ojc"}, fh)
            self.assertEqual(BenchConfig.merge(load_config_file(good)).method, "ojc")
            for name, text in (("bad.json", "{nope"), ("list.json", "[1, 2]")):
                path = os.path.join(tmp, name)
                with open(path, "w", encoding="utf-8") as fh:
                    fh.write(text)
                with self.subTest(name=name):
                    with self.assertRaises(ConfigError):
                        load_config_file(path)


class TestPipeline(unittest.TestCase):
    """Test end-to-end benchmark runs on karate."""

    def test_deterministic_for_every_method(self):
        """Test two runs give identical reports apart from timings."""
        for method in ("lpsi", "netsleuth", "ojc", "gcnsi"):
            with self.subTest(method=method):
                first = run_pipeline(karate_config(method=method))
                second = run_pipeline(karate_config(method=method))
                self.assertEqual(first.to_dict(include_timings=False), second.to_dict(include_timings=False))
                self.assertEqual(len(first.pairs), 4)
                self.assertEqual(first.train_pairs, 16)
                self.assertEqual(first.method, method)

    def test_seed_only_cascades_are_exact(self):
        """Test p=0 cascades make LPSI peaks exactly the seeds."""
        report = run_pipeline(karate_config(p=0.0))
        for row in report.pairs:
            self.assertEqual(row.metric.accuracy, 1.0)
        self.assertEqual(report.aggregate.f_score, 1.0)

    def test_saturated_cascades(self):
        """Test every method handles all-infected pairs."""
        for method in ("lpsi", "netsleuth", "ojc", "gcnsi"):
            with self.subTest(method=method):
                report = run_pipeline(karate_config(method=method, p=1.0, num_pairs=5))
                self.assertTrue(0.0 <= report.aggregate.accuracy <= 1.0)

    def test_f1_threshold(self):
        """Test f1 mode selects a threshold for scoring methods."""
        report = run_pipeline(karate_config(threshold_mode="f1"))
        self.assertIsNotNone(report.threshold)
        self.assertIsNone(run_pipeline(karate_config()).threshold)

    def test_phases_and_timings(self):
        """Test the pipeline visits every phase."""
        pipeline = BenchPipeline(karate_config())
        report = pipeline.run()
        self.assertEqual(pipeline.phase, PipelinePhase.FINISHED)
        self.assertEqual(set(report.timings), {"load", "pairs", "split", "fit", "evaluate", "output"})

    def test_pairs_file(self):
        """Test a corpus file replaces generation and must hold two pairs."""
        g = builtin_karate()
        pairs = generate_pairs(g, DiffusionModel.ic(0.1), 50, 1, master_seed=9)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "pairs.jsonl")
            write_pairs(path, g, pairs)
            report = run_pipeline(BenchConfig(builtin="karate", pairs_file=path, alpha=0.5, master_seed=7))
            self.assertEqual(len(report.pairs), 10)
            write_pairs(path, g, pairs[:1])
            with self.assertRaises(PipelineError) as ctx:
                run_pipeline(BenchConfig(builtin="karate", pairs_file=path))
        self.assertEqual(ctx.exception.phase, "pairs")

    def test_missing_graph_file(self):
        """Test an unreadable graph fails in the load phase."""
        with self.assertRaises(PipelineError) as ctx:
            run_pipeline(BenchConfig(graph_path="/nonexistent/edges.txt"))
        self.assertEqual(ctx.exception.phase, "load")

    def test_side_outputs(self):
        """Test predictions, MDL reports and saved models are written."""
        with tempfile.TemporaryDirectory() as tmp:
            predictions = os.path.join(tmp, "pred.jsonl")
            mdl = os.path.join(tmp, "mdl.jsonl")
            run_pipeline(karate_config(method="netsleuth", predictions_out=predictions, emit_mdl=mdl))
            with open(mdl, encoding="utf-8") as fh:
                records = [json.loads(line) for line in fh]
            self.assertEqual(len(records), 4)
            self.assertEqual(set(records[0]), {"pair_index", "seeds_in_order", "cost_curve", "chosen_k"})
            self.assertEqual(len(read_predictions(predictions, builtin_karate())), 4)

            model = os.path.join(tmp, "model.json")
            trained = run_pipeline(karate_config(method="gcnsi", save_model=model))
            loaded = run_pipeline(karate_config(method="gcnsi", load_model=model, epochs=1))
            self.assertEqual([p.metric for p in trained.pairs], [p.metric for p in loaded.pairs])


class TestReports(unittest.TestCase):
    """Test report files and scoring stored predictions."""

    @classmethod
    def setUpClass(cls):
        """Run one LPSI benchmark."""
        cls.report = run_pipeline(karate_config())

    def test_json_round_trip(self):
        """Test JSON reports read back to the same document."""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "report.json")
            write_report(self.report, path, "json")
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
            loaded = read_report(path)
        self.assertEqual(text, report_to_json(self.report))
        self.assertEqual(loaded.to_dict(), self.report.to_dict())
        self.assertEqual(json.loads(text)["test_pairs"], 4)

    def test_csv(self):
        """Test CSV reports hold one row per pair plus the mean."""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "report.csv")
            write_report(self.report, path, "csv")
            with open(path, encoding="utf-8", newline="") as fh:
                rows = list(csv.reader(fh))
        self.assertEqual(tuple(rows[0]), CSV_HEADER)
        self.assertEqual(len(rows), 1 + 4 + 1)
        self.assertEqual(rows[-1][0], "mean")
        self.assertEqual(float(rows[-1][1]), self.report.aggregate.accuracy)

    def test_unknown_format(self):
        """Test unsupported report formats raise."""
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(ValueError):
                write_report(self.report, os.path.join(tmp, "report.xml"), "xml")

    def test_evaluate_stored_predictions(self):
        """Test scoring a predictions file reproduces the benchmark metrics."""
        g = builtin_karate()
        cfg = karate_config()
        pipeline = BenchPipeline(cfg)
        report = pipeline.run()
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "pred.jsonl")
            pipeline.cfg = karate_config(predictions_out=path)
            pipeline._write_outputs()
            stored = read_predictions(path, g)
        rescored = evaluate_predictions(g, pipeline.pairs, stored, {"predictions": path})
        self.assertEqual(rescored.method, "predictions")
        self.assertEqual([p.metric for p in rescored.pairs], [p.metric for p in report.pairs])
        with self.assertRaises(PipelineError):
            evaluate_predictions(g, pipeline.pairs[:1], stored, {})


if __name__ == "__main__":
    unittest.main()
