"""Reading CASAS-style sensor event logs.

Each record is a whitespace separated line::

    2009-10-16 06:18:19.000019 M021 ON [annotation tokens ...]

Only the first four fields are used. Fractional seconds are optional.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from datetime import date, datetime
from pathlib import Path
from typing import Iterable, Optional, Union

from .errors import ConfigError, LogParseError

logger = logging.getLogger(__name__)

MOTION = "motion"
DOOR = "door"
TEMPERATURE = "temperature"
OTHER = "other"

_CLASS_BY_PREFIX = {"M": MOTION, "D": DOOR, "T": TEMPERATURE}

DEFAULT_TRIGGER_VALUES = frozenset({"ON", "OPEN"})


def sensor_class(sensor: str) -> str:
    """Classify a sensor id by its leading letter."""
    return _CLASS_BY_PREFIX.get(sensor[:1].upper(), OTHER)


@dataclass(frozen=True)
class SensorEvent:
    timestamp: datetime
    sensor: str
    value: str

    def __post_init__(self):
        if not self.sensor:
            raise ValueError("sensor id must be non-empty")
        if not self.value:
            raise ValueError("event value must be non-empty")


@dataclass(frozen=True)
class EventStream:
    """Time-ordered, immutable sequence of events."""

    events: tuple = ()
    skipped_lines: int = 0

    @property
    def day_count(self) -> int:
        return len({e.timestamp.date() for e in self.events})

    @property
    def sensors(self) -> frozenset:
        return frozenset(e.sensor for e in self.events)

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)


@dataclass(frozen=True)
class IngestFilter:
    excluded_classes: frozenset = frozenset({TEMPERATURE})
    # None admits every value
    trigger_values: Optional[frozenset] = DEFAULT_TRIGGER_VALUES
    date_range: Optional[tuple] = None

    def __post_init__(self):
        if self.date_range is not None:
            start, end = self.date_range
            if start > end:
                raise ConfigError(f"date range start {start} is after end {end}")

    def accepts(self, event: SensorEvent) -> bool:
        if sensor_class(event.sensor) in self.excluded_classes:
            return False
        if self.trigger_values is not None and event.value not in self.trigger_values:
            return False
        if self.date_range is not None:
            day = event.timestamp.date()
            if not self.date_range[0] <= day <= self.date_range[1]:
                return False
        return True


def parse_timestamp(day: str, clock: str) -> datetime:
    whole, _, fraction = clock.partition(".")
    stamp = datetime.strptime(f"{day} {whole}", "%Y-%m-%d %H:%M:%S")
    if fraction:
        if not fraction.isdigit():
            raise ValueError(f"bad fractional seconds {fraction!r}")
        # pad/truncate to microseconds
        stamp = stamp.replace(microsecond=int(fraction[:6].ljust(6, "0")))
    return stamp


def parse_event_line(line: str, line_number: int = 0) -> Optional[SensorEvent]:
    """Parse one log record; returns None for blank lines."""
    fields = line.split()
    if not fields:
        return None
    if len(fields) < 4:
        raise LogParseError(line_number, line.rstrip("\n"), "expected date, time, sensor and value")
    try:
        stamp = parse_timestamp(fields[0], fields[1])
    except ValueError as exc:
        raise LogParseError(line_number, line.rstrip("\n"), f"bad timestamp ({exc})") from None
    return SensorEvent(stamp, fields[2], fields[3])


def format_event_line(event: SensorEvent) -> str:
    return f"{event.timestamp:%Y-%m-%d %H:%M:%S.%f} {event.sensor} {event.value}"


def write_events(events: Iterable[SensorEvent], path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for event in events:
            fh.write(format_event_line(event) + "\n")


def load_aliases(path: Union[str, Path]) -> dict:
    """Read a two-column ``fingerprint sensor_id`` file."""
    aliases = {}
    with open(path, encoding="utf-8") as fh:
        for number, line in enumerate(fh, 1):
            fields = line.split()
            if not fields or fields[0].startswith("#"):
                continue
            if len(fields) != 2:
                raise LogParseError(number, line.rstrip("\n"), "alias lines need exactly two columns")
            aliases[fields[0]] = fields[1]
    return aliases


def stream_from_events(events: Iterable[SensorEvent], skipped_lines: int = 0) -> EventStream:
    # sorted() is stable, so equal timestamps keep their input order
    return EventStream(tuple(sorted(events, key=lambda e: e.timestamp)), skipped_lines)


def read_events(lines: Iterable[str], ingest: IngestFilter = IngestFilter(),
                lenient: bool = False, aliases: Optional[dict] = None) -> EventStream:
    events = []
    skipped = 0
    for number, line in enumerate(lines, 1):
        try:
            event = parse_event_line(line, number)
        except LogParseError:
            if not lenient:
                raise
            skipped += 1
            continue
        if event is None:
            continue
        if aliases:
            event = SensorEvent(event.timestamp, aliases.get(event.sensor, event.sensor), event.value)
        if ingest.accepts(event):
            events.append(event)
    if skipped:
        logger.warning("skipped %d malformed lines", skipped)
    return stream_from_events(events, skipped)


def load_dataset(path: Union[str, Path], ingest: IngestFilter = IngestFilter(),
                 lenient: bool = False, aliases: Optional[dict] = None) -> EventStream:
    """Parse, filter and sort an event log file.

    With ``lenient`` set, malformed lines are skipped and counted in
    ``EventStream.skipped_lines``; otherwise the first one raises
    :class:`LogParseError`.
    """
    with open(path, encoding="utf-8") as fh:
        return read_events(fh, ingest, lenient=lenient, aliases=aliases)


def parse_date(text: str) -> date:
    return datetime.strptime(text, "%Y-%m-%d").date()
