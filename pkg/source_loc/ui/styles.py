"""Rich style names for console output."""


class Styles:
    """Style constants for the different kinds of output."""

    # Headings
    TITLE = "bold bright_cyan"
    SECTION = "bold yellow"

    # Table content
    LABEL = "cyan"
    VALUE = "white"
    NUMBER = "bright_white"
    DIM = "dim white"

    # Outcomes
    SUCCESS = "bold green"
    WARNING = "bold yellow"
    ERROR = "bold red"
    INFO = "bright_blue"

    # Metric quality bands
    GOOD = "green"
    FAIR = "yellow"
    POOR = "red"

    @classmethod
    def match_style(cls, match: bool) -> str:
        return cls.SUCCESS if match else cls.WARNING

    @classmethod
    def metric_style(cls, value) -> str:
        """Colour a [0, 1] score by band; undefined values are dimmed."""
        if value is None:
            return cls.DIM
        if value >= 0.7:
            return cls.GOOD
        if value >= 0.3:
            return cls.FAIR
        return cls.POOR
