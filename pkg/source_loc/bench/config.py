"""Benchmark configuration with defaults < config file < flags precedence."""

import json
import logging
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Mapping, Optional

from ..core.diffusion import DiffusionModel
from ..core.errors import ConfigError, SourceLocError
from ..methods.catalog import MethodCatalog, MethodType
from ..methods.gcnsi import GcnHyper
from ..methods.lpsi import LpsiConfig
from ..utils.config import (DEFAULT_GCN_EPOCHS, DEFAULT_GCN_HIDDEN, DEFAULT_GCN_INIT_SEED,
                            DEFAULT_GCN_LR, DEFAULT_IC_P, DEFAULT_LAMBDA_RIPPLE,
                            DEFAULT_LPSI_ALPHA, DEFAULT_MASTER_SEED, DEFAULT_MAX_SEEDS,
                            DEFAULT_NUM_PAIRS, DEFAULT_OUTPUT_FORMAT, DEFAULT_SEEDS_PER_PAIR,
                            DEFAULT_SPLIT, DEFAULT_THRESHOLD_MODE, DEFAULT_WORKERS,
                            OUTPUT_FORMATS, THRESHOLD_MODES)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchConfig:
    """One experiment: graph, cascades, method and outputs.

    Exactly one of ``builtin`` and ``graph_path`` names the graph. ``dataset``
    optionally names the registry row a loaded file is validated against.
    """
    builtin: Optional[str] = None
    graph_path: Optional[str] = None
    dataset: Optional[str] = None

    model: str = "ic"
    p: float = DEFAULT_IC_P
    num_pairs: int = DEFAULT_NUM_PAIRS
    seeds_per_pair: int = DEFAULT_SEEDS_PER_PAIR
    pairs_file: Optional[str] = None
    workers: int = DEFAULT_WORKERS

    split: float = DEFAULT_SPLIT
    master_seed: int = DEFAULT_MASTER_SEED

    method: str = "lpsi"
    threshold_mode: str = DEFAULT_THRESHOLD_MODE
    alpha: float = DEFAULT_LPSI_ALPHA
    max_seeds: int = DEFAULT_MAX_SEEDS
    lambda_ripple: float = DEFAULT_LAMBDA_RIPPLE
    k: Optional[int] = None
    hidden: int = DEFAULT_GCN_HIDDEN
    lr: float = DEFAULT_GCN_LR
    epochs: int = DEFAULT_GCN_EPOCHS
    init_seed: int = DEFAULT_GCN_INIT_SEED

    output: Optional[str] = None
    output_format: str = DEFAULT_OUTPUT_FORMAT
    predictions_out: Optional[str] = None
    emit_mdl: Optional[str] = None
    save_model: Optional[str] = None
    load_model: Optional[str] = None

    def __post_init__(self):
        if (self.builtin is None) == (self.graph_path is None):
            raise ConfigError("exactly one of builtin and graph_path must be set")
        if not 0.0 < self.split < 1.0:
            raise ConfigError(f"split must lie in (0, 1), got {self.split}")
        if self.pairs_file is None and self.num_pairs < 2:
            raise ConfigError("at least 2 pairs are needed for a train/test split")
        if self.seeds_per_pair < 1:
            raise ConfigError("seeds_per_pair must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output format must be one of {', '.join(OUTPUT_FORMATS)}")
        if self.threshold_mode not in THRESHOLD_MODES:
            raise ConfigError(f"threshold mode must be one of {', '.join(THRESHOLD_MODES)}")
        method = self.method_type
        if self.threshold_mode == "f1" and not MethodCatalog.has_scores(method):
            raise ConfigError(f"{method.value} produces node sets; threshold mode f1 needs scores")
        if self.emit_mdl and method is not MethodType.NETSLEUTH:
            raise ConfigError("--emit-mdl applies to netsleuth only")
        if (self.save_model or self.load_model) and method is not MethodType.GCNSI:
            raise ConfigError("model files apply to gcnsi only")
        if self.k is not None and self.k < 1:
            raise ConfigError("k must be at least 1")
        # Surface parameter errors now rather than mid-run.
        try:
            self.diffusion_model()
            self.lpsi_config()
            self.gcn_hyper()
        except SourceLocError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def method_type(self) -> MethodType:
        return MethodCatalog.require(self.method)

    def diffusion_model(self) -> DiffusionModel:
        return DiffusionModel.from_name(self.model, self.p)

    def lpsi_config(self) -> LpsiConfig:
        return LpsiConfig(alpha=self.alpha)

    def gcn_hyper(self) -> GcnHyper:
        return GcnHyper(hidden=self.hidden, lr=self.lr, epochs=self.epochs, init_seed=self.init_seed)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def field_names(cls):
        return [f.name for f in fields(cls)]

    @classmethod
    def merge(cls, file_values: Optional[Mapping[str, Any]] = None,
              flag_values: Optional[Mapping[str, Any]] = None) -> "BenchConfig":
        """Defaults, overridden by config-file values, overridden by flags that were given (not None)."""
        known = set(cls.field_names())
        values: Dict[str, Any] = {}
        for source, mapping in (("config file", file_values or {}), ("flags", flag_values or {})):
            unknown = sorted(set(mapping) - known)
            if unknown:
                raise ConfigError(f"unknown {source} key(s): {', '.join(unknown)}")
            given = {key: value for key, value in mapping.items() if value is not None}
            # a graph named by a later source replaces the earlier one
            for own, other in (("builtin", "graph_path"), ("graph_path", "builtin")):
                if own in given and other not in given:
                    values.pop(other, None)
            values.update(given)
        try:
            return cls(**values)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


def load_config_file(path) -> Dict[str, Any]:
    """Flat JSON object mirroring BenchConfig field names."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            document = json.load(fh)
    except ValueError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(document, dict):
        raise ConfigError(f"{path}: config file must hold a JSON object")
    logger.debug("Loaded %d config value(s) from %s", len(document), path)
    return document
