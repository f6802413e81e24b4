"""Benchmark reports and prediction files.

A report is written as JSON (full nested document, sorted keys) or CSV (one
row per test pair plus a final ``mean`` row). Everything except ``timings``
is a deterministic function of the configuration.
"""

import csv
import json
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .. import __version__
from ..core.errors import EvaluationError
from ..core.graph import Graph
from ..evaluation.metrics import METRIC_FIELDS, Metric, aggregate
from ..methods.prediction import Prediction

logger = logging.getLogger(__name__)

CSV_HEADER = ("pair_index",) + METRIC_FIELDS


@dataclass(frozen=True)
class PairResult:
    pair_index: int
    metric: Metric

    def to_dict(self) -> dict:
        return {"pair_index": self.pair_index, **self.metric.to_dict()}


@dataclass
class Report:
    config: dict
    pairs: List[PairResult]
    aggregate: Metric
    method: str
    threshold: Optional[float] = None
    train_pairs: int = 0
    timings: Dict[str, float] = field(default_factory=dict)
    version: str = __version__

    @classmethod
    def from_results(cls, config: dict, method: str, pairs: List[PairResult], **extra) -> "Report":
        if not pairs:
            raise EvaluationError("a report needs at least one evaluated pair")
        return cls(config=config, pairs=pairs, aggregate=aggregate([p.metric for p in pairs]),
                   method=method, **extra)

    def to_dict(self, include_timings: bool = True) -> dict:
        document = {
            "version": self.version,
            "method": self.method,
            "config": self.config,
            "threshold": self.threshold,
            "train_pairs": self.train_pairs,
            "test_pairs": len(self.pairs),
            "pairs": [p.to_dict() for p in self.pairs],
            "aggregate": self.aggregate.to_dict(),
        }
        if include_timings:
            document["timings"] = dict(self.timings)
        return document

    @classmethod
    def from_dict(cls, document: dict) -> "Report":
        try:
            pairs = [PairResult(int(row["pair_index"]), Metric.from_dict(row)) for row in document["pairs"]]
            return cls(config=document["config"], pairs=pairs,
                       aggregate=Metric.from_dict(document["aggregate"]), method=document["method"],
                       threshold=document.get("threshold"), train_pairs=document.get("train_pairs", 0),
                       timings=document.get("timings", {}), version=document.get("version", __version__))
        except (KeyError, TypeError) as exc:
            raise EvaluationError(f"malformed report: {exc}") from exc


def report_to_json(report: Report) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"


def _csv_cell(value) -> str:
    return "" if value is None else repr(float(value))


def write_report(report: Report, path, fmt: str = "json"):
    if fmt == "json":
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report_to_json(report))
    elif fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for row in report.pairs:
                writer.writerow([row.pair_index] + [_csv_cell(getattr(row.metric, f)) for f in METRIC_FIELDS])
            writer.writerow(["mean"] + [_csv_cell(getattr(report.aggregate, f)) for f in METRIC_FIELDS])
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    logger.info("Wrote %s report with %d test pairs to %s", fmt, len(report.pairs), path)


def read_report(path) -> Report:
    with open(path, "r", encoding="utf-8") as fh:
        return Report.from_dict(json.load(fh))


def prediction_to_record(g: Graph, pair_index: int, pred: Prediction) -> dict:
    return {
        "pair_index": pair_index,
        "sources": [g.label_of(v) for v in pred.source_nodes],
        "scores": {g.label_of(v): float(pred.scores[v]) for v in range(g.n)},
    }


def write_predictions(path, g: Graph, predictions: Iterable[Tuple[int, Prediction]]):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for pair_index, pred in predictions:
            fh.write(json.dumps(prediction_to_record(g, pair_index, pred)) + "\n")


def read_predictions(path, g: Graph) -> List[Tuple[int, Prediction]]:
    """Prediction lines as (pair_index, Prediction); nodes missing from ``scores`` score 0."""
    results = []
    with open(path, "rb") as fh:
        for line_number, raw in enumerate(fh, start=1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise EvaluationError(f"{path}: line {line_number}: {exc.reason}") from None
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                sources = np.zeros(g.n, dtype=bool)
                sources[g.indices_of(record["sources"])] = True
                scores = np.zeros(g.n, dtype=np.float64)
                for label, score in record.get("scores", {}).items():
                    scores[g.index_of(label)] = float(score)
                results.append((int(record["pair_index"]), Prediction(scores=scores, sources=sources)))
            except (KeyError, TypeError, ValueError, AttributeError) as exc:
                raise EvaluationError(f"{path}: line {line_number}: {exc}") from exc
    return results
