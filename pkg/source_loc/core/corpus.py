"""Seed-diffusion pair corpora as JSON Lines.

One object per line::

    {"seeds": [labels], "infected": [labels], "model": "IC"|"LT", "ic_p": p, "run_key": k}

Labels are original node labels. ``ic_p`` is present for IC only. Files from
external sources may omit ``model`` (taken as IC at the default p) and
``run_key`` (taken as the line's pair index).
"""

import json
import logging
from dataclasses import dataclass
from typing import Iterable, List

import numpy as np

from .diffusion import DiffusionKind, DiffusionModel, SeedDiffusionPair
from .errors import SourceLocError
from .graph import Graph, indicator

logger = logging.getLogger(__name__)


class CorpusFormatError(SourceLocError, ValueError):
    """Malformed pair corpus line."""


def pair_to_record(g: Graph, pair: SeedDiffusionPair) -> dict:
    record = {
        "seeds": [g.label_of(v) for v in pair.seed_nodes],
        "infected": [g.label_of(v) for v in pair.infected_nodes],
        "model": pair.model.kind.value,
    }
    if pair.model.kind is DiffusionKind.IC:
        record["ic_p"] = pair.model.ic_p
    record["run_key"] = int(pair.run_key)
    return record


def record_to_pair(g: Graph, record: dict, index: int) -> SeedDiffusionPair:
    if not isinstance(record, dict):
        raise CorpusFormatError(f"expected a JSON object, found {type(record).__name__}")
    try:
        seed_labels, infected_labels = record["seeds"], record["infected"]
    except KeyError as exc:
        raise CorpusFormatError(f"missing field {exc}") from None
    if not isinstance(seed_labels, list) or not isinstance(infected_labels, list):
        raise CorpusFormatError("seeds and infected must be lists of labels")
    seeds = indicator(g.n, g.indices_of(seed_labels))
    infected = indicator(g.n, g.indices_of(infected_labels))
    model = DiffusionModel.from_name(record.get("model", "IC"), record.get("ic_p"))
    # Observed cascades may omit seeds from the infected list.
    infected |= seeds
    return SeedDiffusionPair(seeds=seeds, infected=infected, model=model,
                             run_key=int(record.get("run_key", index)))


def dumps_pairs(g: Graph, pairs: Iterable[SeedDiffusionPair]) -> str:
    return "".join(json.dumps(pair_to_record(g, pair)) + "\n" for pair in pairs)


def write_pairs(path, g: Graph, pairs: Iterable[SeedDiffusionPair]):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_pairs(g, pairs))


def loads_pairs(g: Graph, lines: Iterable[str]) -> List[SeedDiffusionPair]:
    pairs = []
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"line {line_number}: {exc.msg}") from None
        try:
            pairs.append(record_to_pair(g, record, len(pairs)))
        except (ValueError, TypeError, AttributeError) as exc:
            raise CorpusFormatError(f"line {line_number}: {exc}") from None
    return pairs


def read_pairs(path, g: Graph) -> List[SeedDiffusionPair]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            pairs = loads_pairs(g, fh)
    except UnicodeDecodeError as exc:
        raise CorpusFormatError(f"{path} is not valid UTF-8: {exc.reason}") from None
    logger.info("Read %d pairs from %s", len(pairs), path)
    return pairs


@dataclass(frozen=True)
class CorpusSummary:
    pairs: int
    mean_seeds: float
    mean_infected: float
    saturated_fraction: float
    seeds_only_fraction: float


def summarize_pairs(pairs: List[SeedDiffusionPair]) -> CorpusSummary:
    """Size statistics of a corpus, including its degenerate cascades."""
    if not pairs:
        return CorpusSummary(0, 0.0, 0.0, 0.0, 0.0)
    seeds = np.array([pair.seeds.sum() for pair in pairs], dtype=np.float64)
    infected = np.array([pair.infected.sum() for pair in pairs], dtype=np.float64)
    saturated = np.array([pair.infected.all() for pair in pairs])
    seeds_only = seeds == infected
    return CorpusSummary(pairs=len(pairs), mean_seeds=float(seeds.mean()),
                         mean_infected=float(infected.mean()),
                         saturated_fraction=float(saturated.mean()),
                         seeds_only_fraction=float(seeds_only.mean()))
