"""End-to-end benchmark: configuration, pipeline and reports."""

from .config import BenchConfig, load_config_file
from .pipeline import BenchPipeline, PipelinePhase, evaluate_predictions, run_pipeline, split_pairs
from .report import Report, read_predictions, read_report, write_predictions, write_report

__all__ = [
    'BenchConfig',
    'BenchPipeline',
    'PipelinePhase',
    'Report',
    'evaluate_predictions',
    'load_config_file',
    'read_predictions',
    'read_report',
    'run_pipeline',
    'split_pairs',
    'write_predictions',
    'write_report'
]
