"""Splitting an event stream into indoor activities.

An indoor activity is a maximal run of events in which consecutive
triggers are at most ``y`` seconds apart and which spans at least ``x``
seconds from first to last trigger.
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Iterable, List

from .errors import ConfigError
from .sensor_log import SensorEvent

_MICRO = timedelta(microseconds=1)
_EPOCH = datetime(1970, 1, 1)


def to_micros(stamp: datetime) -> int:
    return (stamp - _EPOCH) // _MICRO


@dataclass(frozen=True)
class SegmentationParams:
    x: float = 40
    y: float = 10

    def __post_init__(self):
        if not self.x > self.y > 0:
            raise ConfigError(f"need x > y > 0, got x={self.x}, y={self.y}")

    @property
    def min_duration_us(self) -> int:
        return round(self.x * 1_000_000)

    @property
    def max_gap_us(self) -> int:
        return round(self.y * 1_000_000)


@dataclass(frozen=True)
class IndoorActivity:
    events: tuple

    def __post_init__(self):
        if not self.events:
            raise ValueError("an activity needs at least one event")

    @property
    def start(self) -> datetime:
        return self.events[0].timestamp

    @property
    def end(self) -> datetime:
        return self.events[-1].timestamp

    @property
    def sensors(self) -> tuple:
        """Sensor ids in trigger order, repeats included."""
        return tuple(e.sensor for e in self.events)

    @property
    def duration(self) -> timedelta:
        return self.end - self.start


def segment(events: Iterable[SensorEvent], params: SegmentationParams = SegmentationParams()) -> List[IndoorActivity]:
    """Greedy left-to-right segmentation of a time-sorted event sequence.

    A run grows while the next gap is within ``params.y``; when the gap
    rule breaks, the run is emitted if it lasted ``params.x`` seconds and
    dropped otherwise, and the breaking event opens the next run.
    """
    max_gap = params.max_gap_us
    min_duration = params.min_duration_us
    activities = []
    run: List[SensorEvent] = []
    run_start = last = 0

    def close():
        if run and last - run_start >= min_duration:
            activities.append(IndoorActivity(tuple(run)))

    for event in events:
        t = to_micros(event.timestamp)
        if run and t - last <= max_gap:
            run.append(event)
        else:
            close()
            run = [event]
            run_start = t
        last = t
    close()
    return activities

