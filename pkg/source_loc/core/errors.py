"""Exception hierarchy for source-loc."""

from typing import Optional, Sequence


class SourceLocError(Exception):
    """Base class for every error raised by source-loc."""


class GraphError(SourceLocError, ValueError):
    """Invalid graph input or graph query."""


class GraphFormatError(GraphError):
    """Malformed edge-list text."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class UnknownDatasetError(SourceLocError, KeyError):
    """Dataset name missing from the registry."""

    def __init__(self, name: str, known: Sequence[str]):
        super().__init__(f"unknown dataset {name!r}; known datasets: {', '.join(known)}")
        self.name = name
        self.known = list(known)

    def __str__(self):
        return self.args[0]


class SimulationError(SourceLocError, ValueError):
    """Invalid diffusion simulation request."""


class ConvergenceError(SourceLocError):
    """An iterative solver stopped before reaching its tolerance."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(f"{message} (residual {residual:.3e} after {iterations} iterations)")
        self.residual = residual
        self.iterations = iterations


class LocalizationError(SourceLocError, ValueError):
    """A localization method cannot produce an answer for its input."""


class TrainingError(SourceLocError):
    """GCN training diverged."""

    def __init__(self, message: str, epoch: Optional[int] = None):
        if epoch is not None:
            message = f"epoch {epoch}: {message}"
        super().__init__(message)
        self.epoch = epoch


class EvaluationError(SourceLocError, ValueError):
    """Metric computation on inconsistent or degenerate input."""


class ConfigError(SourceLocError, ValueError):
    """Invalid benchmark configuration."""


class PipelineError(SourceLocError):
    """A benchmark phase failed; wraps the underlying error."""

    def __init__(self, phase: str, cause: Exception):
        super().__init__(f"{phase} phase failed: {cause}")
        self.phase = phase
        self.cause = cause
