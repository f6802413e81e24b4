"""Per-pair evaluation: confusion counts, the five-number Metric, AUC and thresholds.

Positive class is "source". Precision, recall and F-score resolve 0/0 to 0.
Corpus results are macro averages over pairs.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import rankdata

from ..core.errors import EvaluationError
from ..methods.prediction import Prediction

logger = logging.getLogger(__name__)

METRIC_FIELDS = ("accuracy", "precision", "recall", "f_score", "auc")


@dataclass(frozen=True)
class Confusion:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class Metric:
    """The five evaluation numbers; ``auc`` is None when undefined."""
    accuracy: float
    precision: float
    recall: float
    f_score: float
    auc: Optional[float]
    auc_undefined_pairs: int = 0

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f_score": self.f_score,
            "auc": self.auc,
            "auc_undefined_pairs": self.auc_undefined_pairs,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Metric":
        try:
            return cls(accuracy=float(data["accuracy"]), precision=float(data["precision"]),
                       recall=float(data["recall"]), f_score=float(data["f_score"]),
                       auc=None if data.get("auc") is None else float(data["auc"]),
                       auc_undefined_pairs=int(data.get("auc_undefined_pairs", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise EvaluationError(f"malformed metric record: {exc}") from exc


def _binary(vector, name: str) -> np.ndarray:
    array = np.asarray(vector)
    if array.ndim != 1:
        raise EvaluationError(f"{name} must be a vector")
    return array.astype(bool)


def confusion(predicted, truth) -> Confusion:
    predicted = _binary(predicted, "prediction")
    truth = _binary(truth, "truth")
    if predicted.shape != truth.shape:
        raise EvaluationError(f"length mismatch: {len(predicted)} predictions, {len(truth)} labels")
    return Confusion(tp=int(np.count_nonzero(predicted & truth)),
                     fp=int(np.count_nonzero(predicted & ~truth)),
                     tn=int(np.count_nonzero(~predicted & ~truth)),
                     fn=int(np.count_nonzero(~predicted & truth)))


def _ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator else 0.0


def point_metrics(c: Confusion) -> Tuple[float, float, float, float]:
    """(accuracy, precision, recall, f_score)."""
    if c.n == 0:
        raise EvaluationError("cannot score an empty confusion")
    precision = _ratio(c.tp, c.tp + c.fp)
    recall = _ratio(c.tp, c.tp + c.fn)
    f_score = _ratio(2 * precision * recall, precision + recall)
    return (c.tp + c.tn) / c.n, precision, recall, f_score


def auc(scores, truth) -> float:
    """Mann-Whitney AUC from average ranks; ties count one half."""
    scores = np.asarray(scores, dtype=np.float64)
    truth = _binary(truth, "truth")
    if scores.shape != truth.shape:
        raise EvaluationError(f"length mismatch: {len(scores)} scores, {len(truth)} labels")
    positives = int(truth.sum())
    negatives = len(truth) - positives
    if positives == 0 or negatives == 0:
        raise EvaluationError("AUC undefined: truth has a single class")
    ranks = rankdata(scores, method="average")
    wins = ranks[truth].sum() - positives * (positives + 1) / 2.0
    return float(wins / (positives * negatives))


def _mean_f_score(pairs: Sequence[Tuple[np.ndarray, np.ndarray]], threshold: float) -> float:
    total = 0.0
    for scores, truth in pairs:
        total += point_metrics(confusion(scores >= threshold, truth))[3]
    return total / len(pairs)


def select_threshold(pairs: Sequence[Tuple[np.ndarray, np.ndarray]]) -> float:
    """Pooled score value maximizing mean training F-score for ``score >= t``; ties go to the largest t."""
    if not pairs:
        raise EvaluationError("threshold selection needs at least one training pair")
    pairs = [(np.asarray(scores, dtype=np.float64), _binary(truth, "truth")) for scores, truth in pairs]
    candidates = np.unique(np.concatenate([scores for scores, _ in pairs]))[::-1]
    best_t, best_f = float(candidates[0]), -1.0
    for t in candidates:
        f = _mean_f_score(pairs, t)
        if f > best_f:
            best_t, best_f = float(t), f
    logger.debug("Selected threshold %.6g (mean F %.4f over %d pairs)", best_t, best_f, len(pairs))
    return best_t


def evaluate_pair(pred: Prediction, truth) -> Metric:
    truth = _binary(truth, "truth")
    if len(pred.sources) != len(truth):
        raise EvaluationError(f"prediction covers {len(pred.sources)} nodes, truth {len(truth)}")
    accuracy, precision, recall, f_score = point_metrics(confusion(pred.sources, truth))
    try:
        area: Optional[float] = auc(pred.scores, truth)
        undefined = 0
    except EvaluationError:
        area, undefined = None, 1
    return Metric(accuracy, precision, recall, f_score, area, undefined)


def aggregate(metrics: List[Metric]) -> Metric:
    """Macro average; undefined AUCs are excluded from the AUC mean and counted."""
    if not metrics:
        raise EvaluationError("nothing to aggregate")
    defined = [m.auc for m in metrics if m.auc is not None]
    undefined = sum(m.auc_undefined_pairs or int(m.auc is None) for m in metrics)
    return Metric(
        accuracy=math.fsum(m.accuracy for m in metrics) / len(metrics),
        precision=math.fsum(m.precision for m in metrics) / len(metrics),
        recall=math.fsum(m.recall for m in metrics) / len(metrics),
        f_score=math.fsum(m.f_score for m in metrics) / len(metrics),
        auc=math.fsum(defined) / len(defined) if defined else None,
        auc_undefined_pairs=undefined,
    )
