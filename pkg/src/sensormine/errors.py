"""Exception hierarchy shared by every stage of the pipeline."""


class SensorMineError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SensorMineError, ValueError):
    """Invalid parameters, windows, layouts or walk schedules."""


class LogParseError(SensorMineError, ValueError):
    """A record in an event log could not be parsed."""

    def __init__(self, line_number: int, text: str, reason: str):
        self.line_number = line_number
        self.text = text
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}: {text!r}")
