"""Benchmark pipeline: graph -> pairs -> split -> fit -> evaluate -> outputs."""

import json
import logging
import math
import time
from contextlib import contextmanager
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import BenchConfig
from .report import PairResult, Report, write_predictions
from ..core.corpus import read_pairs
from ..core.datasets import builtin_graph, load_dataset
from ..core.diffusion import SeedDiffusionPair, generate_pairs
from ..core.errors import PipelineError, SourceLocError
from ..core.graph import Graph, load_edge_list
from ..core.hashing import SPLIT_STREAM, hash_pair, hash_pair_array
from ..evaluation.metrics import evaluate_pair, select_threshold
from ..methods.catalog import MethodType
from ..methods.gcnsi import GcnModel, load_model, predict_gcnsi, save_model, train_gcnsi
from ..methods.lpsi import lpsi_predict, lpsi_scores, lpsi_threshold_predict
from ..methods.netsleuth import MdlReport, netsleuth
from ..methods.ojc import ojc
from ..methods.prediction import Prediction

logger = logging.getLogger(__name__)


class PipelinePhase(Enum):
    SETUP = "setup"
    LOAD = "load"
    PAIRS = "pairs"
    SPLIT = "split"
    FIT = "fit"
    EVALUATE = "evaluate"
    OUTPUT = "output"
    FINISHED = "finished"


def split_indices(num_pairs: int, split: float, master_seed: int) -> Tuple[List[int], List[int]]:
    """Shuffle pair indices by hash(split key, i); the first ceil(split*N) train."""
    if num_pairs < 2:
        raise ValueError("at least 2 pairs are needed for a train/test split")
    if not 0.0 < split < 1.0:
        raise ValueError(f"split must lie in (0, 1), got {split}")
    key = hash_pair(master_seed, SPLIT_STREAM)
    order = np.argsort(hash_pair_array(key, np.arange(num_pairs, dtype=np.uint64)), kind="stable")
    # round first so 0.8 * 50 lands on 40, not 41
    boundary = min(max(math.ceil(round(split * num_pairs, 9)), 1), num_pairs - 1)
    return order[:boundary].tolist(), order[boundary:].tolist()


def split_pairs(pairs: Sequence[SeedDiffusionPair], split: float,
                master_seed: int) -> Tuple[List[SeedDiffusionPair], List[SeedDiffusionPair]]:
    train, test = split_indices(len(pairs), split, master_seed)
    return [pairs[i] for i in train], [pairs[i] for i in test]


class BenchPipeline:
    """Runs one BenchConfig through every phase, timing each."""

    def __init__(self, cfg: BenchConfig):
        self.cfg = cfg
        self.phase = PipelinePhase.SETUP
        self.timings: Dict[str, float] = {}
        self.graph: Optional[Graph] = None
        self.pairs: List[SeedDiffusionPair] = []
        self.train_indices: List[int] = []
        self.test_indices: List[int] = []
        self.model: Optional[GcnModel] = None
        self.threshold: Optional[float] = None
        self.predictions: List[Tuple[int, Prediction]] = []
        self.mdl_reports: List[Tuple[int, MdlReport]] = []
        self.results: List[PairResult] = []

    @contextmanager
    def _phase(self, phase: PipelinePhase):
        self.phase = phase
        logger.debug("Entering %s phase", phase.value)
        started = time.perf_counter()
        try:
            yield
        except PipelineError:
            raise
        except (SourceLocError, OSError) as exc:
            raise PipelineError(phase.value, exc) from exc
        finally:
            self.timings[phase.value] = time.perf_counter() - started

    def run(self) -> Report:
        with self._phase(PipelinePhase.LOAD):
            self.graph = self._load_graph()
        with self._phase(PipelinePhase.PAIRS):
            self.pairs = self._obtain_pairs()
        with self._phase(PipelinePhase.SPLIT):
            self.train_indices, self.test_indices = split_indices(
                len(self.pairs), self.cfg.split, self.cfg.master_seed)
        with self._phase(PipelinePhase.FIT):
            self._fit([self.pairs[i] for i in self.train_indices])
        with self._phase(PipelinePhase.EVALUATE):
            self._evaluate()
        with self._phase(PipelinePhase.OUTPUT):
            self._write_outputs()
        self.phase = PipelinePhase.FINISHED
        return Report.from_results(self.cfg.to_dict(), self.cfg.method_type.value, self.results,
                                   threshold=self.threshold, train_pairs=len(self.train_indices),
                                   timings=dict(self.timings))

    def _load_graph(self) -> Graph:
        cfg = self.cfg
        if cfg.builtin is not None:
            return builtin_graph(cfg.builtin)
        if cfg.dataset is not None:
            return load_dataset(cfg.dataset, cfg.graph_path)
        return load_edge_list(cfg.graph_path)

    def _obtain_pairs(self) -> List[SeedDiffusionPair]:
        cfg = self.cfg
        if cfg.pairs_file is not None:
            pairs = read_pairs(cfg.pairs_file, self.graph)
            if len(pairs) < 2:
                raise PipelineError(PipelinePhase.PAIRS.value,
                                    ValueError(f"{cfg.pairs_file} holds {len(pairs)} pair(s); 2 are needed"))
            return pairs
        return generate_pairs(self.graph, cfg.diffusion_model(), cfg.num_pairs, cfg.seeds_per_pair,
                              cfg.master_seed, workers=cfg.workers)

    def _fit(self, train: List[SeedDiffusionPair]):
        method = self.cfg.method_type
        if method is MethodType.GCNSI:
            if self.cfg.load_model:
                self.model = load_model(self.cfg.load_model, self.graph)
                logger.info("Loaded GCNSI model from %s", self.cfg.load_model)
            else:
                self.model = train_gcnsi(self.graph, train, self.cfg.gcn_hyper())
        if self.cfg.threshold_mode == "f1":
            samples = [(self._scores(pair.infected), pair.seeds) for pair in train]
            self.threshold = select_threshold(samples)
            logger.info("Selected score threshold %.6g on %d training pairs", self.threshold, len(train))

    def _scores(self, infected: np.ndarray) -> np.ndarray:
        if self.cfg.method_type is MethodType.GCNSI:
            return predict_gcnsi(self.model, self.graph, infected).scores
        return lpsi_scores(self.graph, infected, self.cfg.lpsi_config()).scores

    def predict(self, infected: np.ndarray, pair_index: int) -> Prediction:
        cfg, g = self.cfg, self.graph
        method = cfg.method_type
        if self.threshold is not None:
            return lpsi_threshold_predict(self._scores(infected), self.threshold)
        if method is MethodType.LPSI:
            return lpsi_predict(g, infected, lpsi_scores(g, infected, cfg.lpsi_config()).scores)
        if method is MethodType.NETSLEUTH:
            report, prediction = netsleuth(g, infected, cfg.max_seeds, cfg.lambda_ripple)
            self.mdl_reports.append((pair_index, report))
            return prediction
        if method is MethodType.OJC:
            return ojc(g, infected, cfg.k)[0]
        return predict_gcnsi(self.model, g, infected)

    def _evaluate(self):
        for index in self.test_indices:
            pair = self.pairs[index]
            prediction = self.predict(pair.infected, index)
            self.predictions.append((index, prediction))
            self.results.append(PairResult(index, evaluate_pair(prediction, pair.seeds)))
        logger.info("Evaluated %s on %d test pairs", self.cfg.method_type.value, len(self.results))

    def _write_outputs(self):
        cfg = self.cfg
        if cfg.predictions_out:
            write_predictions(cfg.predictions_out, self.graph, self.predictions)
        if cfg.emit_mdl:
            with open(cfg.emit_mdl, "w", encoding="utf-8", newline="\n") as fh:
                for index, report in self.mdl_reports:
                    fh.write(json.dumps({"pair_index": index, **report.to_dict(self.graph)}) + "\n")
        if cfg.save_model and self.model is not None:
            save_model(self.model, cfg.save_model)
            logger.info("Saved GCNSI model to %s", cfg.save_model)


def run_pipeline(cfg: BenchConfig) -> Report:
    return BenchPipeline(cfg).run()


def evaluate_predictions(g: Graph, pairs: Sequence[SeedDiffusionPair],
                         predictions: Sequence[Tuple[int, Prediction]], config: dict) -> Report:
    """Score stored predictions against the seeds of their pairs."""
    results = []
    for index, prediction in predictions:
        if not 0 <= index < len(pairs):
            raise PipelineError(PipelinePhase.EVALUATE.value,
                                IndexError(f"pair_index {index} outside corpus of {len(pairs)}"))
        results.append(PairResult(index, evaluate_pair(prediction, pairs[index].seeds)))
    return Report.from_results(config, "predictions", results)
