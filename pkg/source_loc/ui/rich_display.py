"""Rich tables for graphs, datasets, corpora, methods and reports."""

from typing import List, Optional

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from .styles import Styles
from ..bench.report import Report
from ..core.corpus import CorpusSummary
from ..core.datasets import DatasetDescriptor, ValidationReport
from ..core.graph import GraphStats
from ..evaluation.metrics import METRIC_FIELDS, Metric
from ..methods.catalog import MethodCatalog


def _number(value, digits: int = 4) -> Text:
    if value is None:
        return Text("n/a", style=Styles.DIM)
    if isinstance(value, float):
        return Text(f"{value:.{digits}f}", style=Styles.NUMBER)
    return Text(str(value), style=Styles.NUMBER)


def _metric(value) -> Text:
    if value is None:
        return Text("undefined", style=Styles.DIM)
    return Text(f"{value:.4f}", style=Styles.metric_style(value))


class RichReportDisplay:
    """Builds rich renderables; printing is left to the caller's console."""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console()

    def stats_panel(self, name: str, stats: GraphStats) -> Panel:
        return Panel(Text(str(stats), style=Styles.VALUE), title=name, border_style=Styles.INFO)

    def validation_table(self, report: ValidationReport) -> Table:
        table = Table(title=f"Registry check: {report.dataset}", title_style=Styles.SECTION)
        table.add_column("Field", style=Styles.LABEL)
        table.add_column("Expected", justify="right")
        table.add_column("Actual", justify="right")
        table.add_column("Match", justify="center")
        for row in report.rows:
            table.add_row(row.field, _number(row.expected, 3), _number(row.actual, 3),
                          Text("yes" if row.match else "no", style=Styles.match_style(row.match)))
        return table

    def registry_table(self, descriptors: List[DatasetDescriptor]) -> Table:
        table = Table(title="Benchmark datasets", title_style=Styles.SECTION)
        table.add_column("Dataset", style=Styles.LABEL)
        table.add_column("#Node", justify="right")
        table.add_column("#Edge", justify="right")
        table.add_column("Average Degree", justify="right")
        table.add_column("Pairs", justify="center")
        for d in descriptors:
            table.add_row(d.name, str(d.expected_nodes), str(d.expected_edges),
                          f"{d.expected_avg_degree:.3f}".rstrip("0").rstrip("."),
                          "yes" if d.has_pairs else "")
        return table

    def corpus_table(self, summary: CorpusSummary) -> Table:
        table = Table(title="Pair corpus", title_style=Styles.SECTION, show_header=False)
        table.add_column("Statistic", style=Styles.LABEL)
        table.add_column("Value", justify="right")
        table.add_row("pairs", _number(summary.pairs))
        table.add_row("mean seeds", _number(summary.mean_seeds, 2))
        table.add_row("mean infected", _number(summary.mean_infected, 2))
        table.add_row("saturated", _number(summary.saturated_fraction, 3))
        table.add_row("seeds only", _number(summary.seeds_only_fraction, 3))
        return table

    def methods_table(self) -> Table:
        table = Table(title="Localization methods", title_style=Styles.SECTION)
        table.add_column("Method", style=Styles.LABEL)
        table.add_column("Description")
        table.add_column("Parameters (default)")
        for row in MethodCatalog.describe_all():
            params = ", ".join(f"{name}={value}" for name, value in row["parameters"].items())
            name = row["name"] + (" *" if row["trained"] else "")
            table.add_row(name, row["description"], params)
        table.caption = "* trained on simulated pairs before prediction"
        return table

    def metric_table(self, metric: Metric, title: str = "Aggregate metric") -> Table:
        table = Table(title=title, title_style=Styles.SECTION)
        for name in METRIC_FIELDS:
            table.add_column(name, justify="right")
        table.add_row(*[_metric(getattr(metric, name)) for name in METRIC_FIELDS])
        if metric.auc_undefined_pairs:
            table.caption = f"AUC undefined on {metric.auc_undefined_pairs} pair(s)"
        return table

    def timings_table(self, report: Report) -> Table:
        table = Table(title="Phase timings", title_style=Styles.SECTION)
        table.add_column("Phase", style=Styles.LABEL)
        table.add_column("Seconds", justify="right")
        for phase, seconds in report.timings.items():
            table.add_row(phase, f"{seconds:.3f}")
        return table

    def show_report(self, report: Report):
        self.console.print(Text(f"{report.method}: {len(report.pairs)} test pairs, "
                                f"{report.train_pairs} training pairs", style=Styles.TITLE))
        if report.threshold is not None:
            self.console.print(Text(f"score threshold {report.threshold:.6g}", style=Styles.INFO))
        self.console.print(self.metric_table(report.aggregate))
        if report.timings:
            self.console.print(self.timings_table(report))
