"""Localization method definitions and lookup."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from ..core.errors import ConfigError
from ..utils.config import (DEFAULT_GCN_EPOCHS, DEFAULT_GCN_HIDDEN, DEFAULT_GCN_LR,
                            DEFAULT_LAMBDA_RIPPLE, DEFAULT_LPSI_ALPHA, DEFAULT_MAX_SEEDS)


class MethodType(Enum):
    LPSI = "lpsi"              # label propagation peaks
    NETSLEUTH = "netsleuth"    # MDL seed selection
    OJC = "ojc"                # greedy Jordan cover
    GCNSI = "gcnsi"            # graph convolutional classifier


@dataclass(frozen=True)
class MethodParameter:
    name: str
    default: object
    help: str


class MethodCatalog:
    """Descriptions, tunables and capabilities of every localization method."""

    DESCRIPTIONS = {
        MethodType.LPSI: "Label propagation; sources are local score peaks of the infected subgraph",
        MethodType.NETSLEUTH: "Greedy Laplacian eigenvector seeds, seed count by minimum description length",
        MethodType.OJC: "Greedy k-center cover of the infected set (Jordan centers)",
        MethodType.GCNSI: "Two-layer GCN over LPSI features, trained on simulated pairs",
    }

    PARAMETERS = {
        MethodType.LPSI: (MethodParameter("alpha", DEFAULT_LPSI_ALPHA, "propagation weight in (0, 1)"),),
        MethodType.NETSLEUTH: (
            MethodParameter("max_seeds", DEFAULT_MAX_SEEDS, "largest seed count tried"),
            MethodParameter("lambda_ripple", DEFAULT_LAMBDA_RIPPLE, "weight of the ripple code length"),
        ),
        MethodType.OJC: (MethodParameter("k", None, "center count; default one per infected component"),),
        MethodType.GCNSI: (
            MethodParameter("hidden", DEFAULT_GCN_HIDDEN, "hidden layer width"),
            MethodParameter("lr", DEFAULT_GCN_LR, "learning rate"),
            MethodParameter("epochs", DEFAULT_GCN_EPOCHS, "training epochs"),
        ),
    }

    TRAINED = {MethodType.GCNSI}
    # methods whose scores are real-valued and can be thresholded
    SCORING = {MethodType.LPSI, MethodType.GCNSI}

    @classmethod
    def get_names(cls) -> List[str]:
        return [method.value for method in MethodType]

    @classmethod
    def parse_method(cls, name: str) -> Optional[MethodType]:
        """Case-insensitive lookup; None for unknown names."""
        try:
            return MethodType(name.strip().lower())
        except ValueError:
            return None

    @classmethod
    def require(cls, name: str) -> MethodType:
        method = cls.parse_method(name)
        if method is None:
            raise ConfigError(f"unknown method {name!r}; choose from {', '.join(cls.get_names())}")
        return method

    @classmethod
    def requires_training(cls, method: MethodType) -> bool:
        return method in cls.TRAINED

    @classmethod
    def has_scores(cls, method: MethodType) -> bool:
        return method in cls.SCORING

    @classmethod
    def get_description(cls, method: MethodType) -> str:
        return cls.DESCRIPTIONS.get(method, "Unknown method")

    @classmethod
    def get_parameters(cls, method: MethodType) -> Tuple[MethodParameter, ...]:
        return cls.PARAMETERS.get(method, ())

    @classmethod
    def describe_all(cls) -> List[Dict[str, object]]:
        rows = []
        for method in MethodType:
            rows.append({
                "name": method.value,
                "description": cls.get_description(method),
                "trained": cls.requires_training(method),
                "parameters": {p.name: p.default for p in cls.get_parameters(method)},
            })
        return rows
