"""
Console output and logging setup for the command line.

Results go to stdout through a rich Console; log records and error messages
go to stderr through a second Console, so piping a report stays clean.
"""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.text import Text

from .styles import Styles

LOGGER_NAME = "source_loc"


def configure_logging(verbosity: int = 0, console: Optional[Console] = None) -> logging.Logger:
    """Install one RichHandler on the package logger.

    verbosity < 0 shows warnings only, 0 info, > 0 debug.
    """
    if verbosity < 0:
        level = logging.WARNING
    elif verbosity == 0:
        level = logging.INFO
    else:
        level = logging.DEBUG

    logger = logging.getLogger(LOGGER_NAME)
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    handler = RichHandler(console=console or Console(stderr=True), show_time=False,
                          show_path=verbosity > 0, markup=False)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger


class TerminalOutputManager:
    """Single entry point for everything the CLI prints."""

    def __init__(self, console: Optional[Console] = None, error_console: Optional[Console] = None):
        self.console = console or Console()
        self.error_console = error_console or Console(stderr=True)

    def print(self, renderable, style: Optional[str] = None) -> None:
        self.console.print(renderable, style=style)

    def print_line(self, text: str, style: Optional[str] = None) -> None:
        """Plain text line, never interpreted as markup."""
        self.console.print(Text(text, style=style or ""))

    def print_title(self, text: str) -> None:
        self.console.print(Text(text, style=Styles.TITLE))

    def print_success(self, text: str) -> None:
        self.console.print(Text(text, style=Styles.SUCCESS))

    def print_error(self, text: str) -> None:
        self.error_console.print(Text(f"error: {text}", style=Styles.ERROR))
