"""GCNSI - LPSI-enhanced features fed to a two-layer graph convolutional classifier.

Forward pass::

    H      = relu(Â X W0 + b0)
    logits = Â H W1 + b1
    P      = softmax(logits)            column 0 = non-source, column 1 = source

Training minimizes the class-weighted cross-entropy with full-batch gradient
descent; gradients are derived by hand, and Â is symmetric so the backward
pass reuses the forward operator.
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix

from .linalg import node_indicator, normalized_adjacency_with_self_loops
from .lpsi import LpsiConfig, label_vector, lpsi_scores
from .prediction import Prediction
from ..core.diffusion import SeedDiffusionPair
from ..core.errors import LocalizationError, TrainingError
from ..core.graph import Graph
from ..utils.config import (DEFAULT_GCN_ALPHAS, DEFAULT_GCN_EPOCHS, DEFAULT_GCN_HIDDEN,
                            DEFAULT_GCN_INIT_SEED, DEFAULT_GCN_LR)

logger = logging.getLogger(__name__)

MODEL_FORMAT = "gcnsi-model/1"
PARAM_BLOCKS = ("W0", "b0", "W1", "b1")


@dataclass
class GcnParams:
    W0: np.ndarray
    b0: np.ndarray
    W1: np.ndarray
    b1: np.ndarray

    def __post_init__(self):
        f_in, hidden = self.W0.shape
        if self.b0.shape != (hidden,) or self.W1.shape != (hidden, 2) or self.b1.shape != (2,):
            raise LocalizationError("inconsistent GCN parameter shapes")

    @classmethod
    def zeros(cls, f_in: int, hidden: int) -> "GcnParams":
        return cls(np.zeros((f_in, hidden)), np.zeros(hidden), np.zeros((hidden, 2)), np.zeros(2))

    def blocks(self) -> Dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in PARAM_BLOCKS}

    def copy(self) -> "GcnParams":
        return GcnParams(**{name: block.copy() for name, block in self.blocks().items()})

    def is_finite(self) -> bool:
        return all(np.isfinite(block).all() for block in self.blocks().values())


@dataclass(frozen=True)
class GcnHyper:
    """Training hyperparameters. ``pos_weight=None`` recomputes the weight per pair."""
    hidden: int = DEFAULT_GCN_HIDDEN
    lr: float = DEFAULT_GCN_LR
    epochs: int = DEFAULT_GCN_EPOCHS
    alphas: Tuple[float, ...] = DEFAULT_GCN_ALPHAS
    pos_weight: Optional[float] = None
    init_seed: int = DEFAULT_GCN_INIT_SEED

    def __post_init__(self):
        if self.hidden < 1:
            raise LocalizationError("hidden width must be at least 1")
        if self.lr <= 0:
            raise LocalizationError("learning rate must be positive")
        if self.epochs < 1:
            raise LocalizationError("epochs must be at least 1")
        if any(not 0.0 < alpha < 1.0 for alpha in self.alphas):
            raise LocalizationError("feature alphas must lie in (0, 1)")
        if self.pos_weight is not None and self.pos_weight <= 0:
            raise LocalizationError("pos_weight must be positive")
        object.__setattr__(self, "alphas", tuple(float(alpha) for alpha in self.alphas))

    @property
    def num_features(self) -> int:
        return 1 + len(self.alphas)


@dataclass
class GcnCache:
    """Intermediate values of one forward pass."""
    a_hat: csr_matrix
    x: np.ndarray
    ax: np.ndarray
    z0: np.ndarray
    h: np.ndarray
    ah: np.ndarray
    probabilities: np.ndarray


@dataclass
class GcnModel:
    params: GcnParams
    hyper: GcnHyper
    a_hat: csr_matrix
    training_loss_curve: List[float] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.a_hat.shape[0]


def build_features(g: Graph, infected, alphas: Sequence[float],
                   lpsi_config: Optional[LpsiConfig] = None) -> np.ndarray:
    """Column 0 holds ±1 infection labels, column j the LPSI scores for alphas[j-1]."""
    columns = [label_vector(g, infected)]
    for alpha in alphas:
        cfg = LpsiConfig(alpha=alpha) if lpsi_config is None else LpsiConfig(
            alpha=alpha, tol=lpsi_config.tol, max_iter=lpsi_config.max_iter)
        columns.append(lpsi_scores(g, infected, cfg).scores)
    return np.column_stack(columns)


def init_params(f_in: int, hidden: int, seed: int) -> GcnParams:
    """Glorot-uniform weights, zero biases."""
    rng = np.random.default_rng(seed)
    limit0 = np.sqrt(6.0 / (f_in + hidden))
    limit1 = np.sqrt(6.0 / (hidden + 2))
    return GcnParams(W0=rng.uniform(-limit0, limit0, size=(f_in, hidden)), b0=np.zeros(hidden),
                     W1=rng.uniform(-limit1, limit1, size=(hidden, 2)), b1=np.zeros(2))


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def gcn_forward(params: GcnParams, a_hat: csr_matrix, x: np.ndarray) -> Tuple[np.ndarray, GcnCache]:
    if x.shape != (a_hat.shape[0], params.W0.shape[0]):
        raise LocalizationError(f"feature matrix shape {x.shape} does not match the model")
    ax = a_hat @ x
    z0 = ax @ params.W0 + params.b0
    h = np.maximum(z0, 0.0)
    ah = a_hat @ h
    logits = ah @ params.W1 + params.b1
    probabilities = _softmax(logits)
    if not np.isfinite(probabilities).all():
        raise TrainingError("non-finite GCN output")
    return probabilities, GcnCache(a_hat, x, ax, z0, h, ah, probabilities)


def resolve_pos_weight(labels: np.ndarray, pos_weight: Optional[float]) -> float:
    """Fixed weight, or #non-sources / #sources when ``pos_weight`` is None."""
    if pos_weight is not None:
        if pos_weight <= 0:
            raise LocalizationError("pos_weight must be positive")
        return float(pos_weight)
    sources = int(np.count_nonzero(labels))
    if sources == 0:
        raise TrainingError("automatic pos_weight needs at least one source")
    others = len(labels) - sources
    return others / sources if others else 1.0


def _node_weights(labels: np.ndarray, pos_weight: float) -> np.ndarray:
    return np.where(labels, pos_weight, 1.0)


def gcn_loss(probabilities: np.ndarray, labels: np.ndarray, pos_weight: float) -> float:
    """Weighted cross-entropy averaged over nodes."""
    if pos_weight <= 0:
        raise LocalizationError("pos_weight must be positive")
    labels = np.asarray(labels, dtype=bool)
    picked = probabilities[np.arange(len(labels)), labels.astype(np.int64)]
    log_p = np.log(np.maximum(picked, np.finfo(np.float64).tiny))
    return float(-np.mean(_node_weights(labels, pos_weight) * log_p))


def gcn_backward(cache: GcnCache, params: GcnParams, labels: np.ndarray,
                 pos_weight: float) -> GcnParams:
    """Exact gradients of :func:`gcn_loss` with respect to every parameter block."""
    labels = np.asarray(labels, dtype=bool)
    n = len(labels)
    target = np.zeros_like(cache.probabilities)
    target[np.arange(n), labels.astype(np.int64)] = 1.0
    d_logits = (cache.probabilities - target) * (_node_weights(labels, pos_weight) / n)[:, None]

    d_w1 = cache.ah.T @ d_logits
    d_b1 = d_logits.sum(axis=0)
    d_h = cache.a_hat @ (d_logits @ params.W1.T)
    d_z0 = d_h * (cache.z0 > 0)
    d_w0 = cache.ax.T @ d_z0
    d_b0 = d_z0.sum(axis=0)
    return GcnParams(W0=d_w0, b0=d_b0, W1=d_w1, b1=d_b1)


def train_gcnsi(g: Graph, train_pairs: List[SeedDiffusionPair], hyper: GcnHyper = GcnHyper()) -> GcnModel:
    """Full-batch gradient descent over all training pairs.

    Per-pair gradients are accumulated in pair order and averaged before each
    step; the recorded loss is the mean pair loss at the start of the epoch.
    """
    if not train_pairs:
        raise TrainingError("no training pairs")
    a_hat = normalized_adjacency_with_self_loops(g)
    samples = []
    for pair in train_pairs:
        if not pair.seeds.any():
            raise TrainingError("every training pair needs a source")
        features = build_features(g, pair.infected, hyper.alphas)
        samples.append((features, pair.seeds, resolve_pos_weight(pair.seeds, hyper.pos_weight)))

    params = init_params(hyper.num_features, hyper.hidden, hyper.init_seed)
    curve: List[float] = []
    for epoch in range(1, hyper.epochs + 1):
        total = GcnParams.zeros(hyper.num_features, hyper.hidden)
        epoch_loss = 0.0
        for features, labels, weight in samples:
            try:
                probabilities, cache = gcn_forward(params, a_hat, features)
            except TrainingError as exc:
                raise TrainingError(str(exc), epoch) from exc
            epoch_loss += gcn_loss(probabilities, labels, weight)
            grads = gcn_backward(cache, params, labels, weight)
            for name in PARAM_BLOCKS:
                getattr(total, name)[...] += getattr(grads, name)
        epoch_loss /= len(samples)
        if not np.isfinite(epoch_loss):
            raise TrainingError("non-finite training loss", epoch)
        curve.append(epoch_loss)
        step = hyper.lr / len(samples)
        for name in PARAM_BLOCKS:
            getattr(params, name)[...] -= step * getattr(total, name)
        if not params.is_finite():
            raise TrainingError("parameters diverged", epoch)

    logger.info("GCNSI trained on %d pairs: loss %.4f -> %.4f", len(samples), curve[0], curve[-1])
    return GcnModel(params=params, hyper=hyper, a_hat=a_hat, training_loss_curve=curve)


def predict_gcnsi(model: GcnModel, g: Graph, infected) -> Prediction:
    """Source-class probability as score; sources are nodes scoring above 0.5."""
    if g.n != model.n:
        raise LocalizationError(f"model was trained on {model.n} nodes, graph has {g.n}")
    mask = node_indicator(g, infected)
    features = build_features(g, mask, model.hyper.alphas)
    probabilities, _ = gcn_forward(model.params, model.a_hat, features)
    scores = probabilities[:, 1]
    return Prediction(scores=scores, sources=scores > 0.5)


def model_to_dict(model: GcnModel) -> dict:
    hyper = asdict(model.hyper)
    hyper["alphas"] = list(model.hyper.alphas)
    return {
        "format": MODEL_FORMAT,
        "n": model.n,
        "hyper": hyper,
        "params": {name: {"shape": list(block.shape), "data": block.ravel().tolist()}
                   for name, block in model.params.blocks().items()},
        "training_loss_curve": list(model.training_loss_curve),
    }


def model_from_dict(document: dict, g: Graph) -> GcnModel:
    if document.get("format") != MODEL_FORMAT:
        raise LocalizationError(f"unsupported model format {document.get('format')!r}")
    if document.get("n") != g.n:
        raise LocalizationError(f"model was trained on {document.get('n')} nodes, graph has {g.n}")
    hyper_fields = dict(document["hyper"])
    hyper_fields["alphas"] = tuple(hyper_fields["alphas"])
    hyper = GcnHyper(**hyper_fields)
    blocks = {}
    for name in PARAM_BLOCKS:
        entry = document["params"][name]
        blocks[name] = np.asarray(entry["data"], dtype=np.float64).reshape(entry["shape"])
    params = GcnParams(**blocks)
    if params.W0.shape != (hyper.num_features, hyper.hidden):
        raise LocalizationError("model parameters do not match its hyperparameters")
    return GcnModel(params=params, hyper=hyper, a_hat=normalized_adjacency_with_self_loops(g),
                    training_loss_curve=list(document.get("training_loss_curve", [])))


def save_model(model: GcnModel, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh)


def load_model(path, g: Graph) -> GcnModel:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_dict(json.load(fh), g)
