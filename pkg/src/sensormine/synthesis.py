"""Seeded random-walk traces over a known layout.

A single simulated resident walks along layout edges, triggering one
sensor per step. Walks are separated by a rest gap long enough to end
an activity, so every walk of sufficient length becomes exactly one
indoor activity.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from datetime import datetime, time, timedelta
from typing import Optional, Sequence

from .errors import ConfigError
from .sensor_log import EventStream, SensorEvent
from .topology import GroundTruthLayout


@dataclass(frozen=True)
class ScheduleEntry:
    """``repeats`` walks of ``walk_length`` steps starting at ``at`` every day."""

    at: time
    walk_length: int
    nodes: Optional[frozenset] = None  # None means the whole layout
    repeats: int = 1


@dataclass(frozen=True)
class WalkParams:
    seed: int = 0
    steps: int = 0
    dwell: float = 5.0
    rest_gap: float = 60.0
    schedule: Sequence[ScheduleEntry] = ()
    days: int = 1
    start: datetime = datetime(2009, 10, 16)
    stay_probability: float = 0.0
    noise: float = 0.0
    value: str = "ON"

    def __post_init__(self):
        if self.steps < 0:
            raise ConfigError("steps must be non-negative")
        if not 0 < self.dwell < self.rest_gap:
            raise ConfigError("need 0 < dwell < rest_gap")
        if self.days < 0:
            raise ConfigError("days must be non-negative")
        for entry in self.schedule:
            if entry.walk_length < 0 or entry.repeats < 0:
                raise ConfigError(f"bad schedule entry {entry}")


def _is_connected(nodes: frozenset, adjacency: dict) -> bool:
    if not nodes:
        return False
    start = min(nodes)
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nxt in adjacency[node]:
            if nxt in nodes and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen == nodes


def layout_adjacency(layout: GroundTruthLayout) -> dict:
    adjacency = {s: [] for s in layout.sensors}
    for pair in layout.adjacent:
        a, b = sorted(pair)
        adjacency[a].append(b)
        adjacency[b].append(a)
    return {s: sorted(n) for s, n in adjacency.items()}


def generate_trace(layout: GroundTruthLayout, params: WalkParams) -> EventStream:
    """Produce a deterministic event stream for ``params.seed``.

    Without a schedule, one walk of ``params.steps`` steps starts at
    ``params.start``. With a schedule, each entry runs on each of
    ``params.days`` days; a walk never starts sooner than ``rest_gap``
    after the previous event, so a crowded schedule drifts later.
    """
    rng = random.Random(params.seed)
    adjacency = layout_adjacency(layout)
    all_nodes = frozenset(layout.sensors)

    if params.schedule:
        plan = []
        for day in range(params.days):
            base = datetime.combine(params.start.date() + timedelta(days=day), time())
            for entry in sorted(params.schedule, key=lambda e: e.at):
                at = base + timedelta(hours=entry.at.hour, minutes=entry.at.minute,
                                      seconds=entry.at.second)
                plan.extend((at, entry.walk_length, entry.nodes) for _ in range(entry.repeats))
    else:
        plan = [(params.start, params.steps, None)]

    checked = set()
    for _, length, nodes in plan:
        nodes = all_nodes if nodes is None else frozenset(nodes)
        if length and nodes not in checked:
            if not nodes <= all_nodes:
                raise ConfigError(f"schedule names unknown sensors {sorted(nodes - all_nodes)}")
            if not _is_connected(nodes, adjacency):
                raise ConfigError(f"walk subgraph {sorted(nodes)} is not connected")
            checked.add(nodes)

    dwell = timedelta(seconds=params.dwell)
    rest = timedelta(seconds=params.rest_gap)
    events = []
    last = None
    sensors = sorted(all_nodes)
    for at, length, nodes in plan:
        if length == 0:
            continue
        nodes = all_nodes if nodes is None else frozenset(nodes)
        stamp = at if last is None else max(at, last + rest)
        here = rng.choice(sorted(nodes))
        for step in range(length):
            if step:
                stamp += dwell
                options = [n for n in adjacency[here] if n in nodes]
                if options and rng.random() >= params.stay_probability:
                    here = rng.choice(options)
            events.append(SensorEvent(stamp, here, params.value))
            if params.noise and rng.random() < params.noise:
                events.append(SensorEvent(stamp + dwell / 2, rng.choice(sensors), params.value))
        last = events[-1].timestamp
    return EventStream(tuple(events))


def grid_layout(rows: int, cols: int, prefix: str = "M") -> GroundTruthLayout:
    """Rectangular grid of sensors named ``M001``, ``M002``, ... row by row."""
    def name(r, c):
        return f"{prefix}{r * cols + c + 1:03d}"

    sensors = [name(r, c) for r in range(rows) for c in range(cols)]
    pairs = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                pairs.append((name(r, c), name(r, c + 1)))
            if r + 1 < rows:
                pairs.append((name(r, c), name(r + 1, c)))
    return GroundTruthLayout.from_pairs(sensors, pairs)


def path_layout(names: Sequence[str]) -> GroundTruthLayout:
    return GroundTruthLayout.from_pairs(names, zip(names, names[1:]))
