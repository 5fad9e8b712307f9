"""Locating bedroom and kitchen/dining sensors.

Activities that start inside a time-of-day window become transactions.
The dominant frequent itemset of those transactions seeds a room, and
the topology then pulls in any sensor linked to at least half of the
room's sensors.
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, time
from typing import Iterable, List, Optional, Sequence

from .errors import ConfigError
from .itemsets import MiningParams, frequent_itemsets, select_dominant_itemset
from .segmentation import IndoorActivity
from .topology import Topology

BEDROOM = "bedroom"
KITCHEN_DINING = "kitchen_dining"


@dataclass(frozen=True)
class TimeWindow:
    """Half-open ``[start, end)`` time-of-day window, applied to every day."""

    start: time
    end: time

    def __post_init__(self):
        if not self.start < self.end:
            raise ConfigError(f"window start {self.start} must precede end {self.end}")

    @classmethod
    def parse(cls, text: str) -> "TimeWindow":
        try:
            left, right = text.split("-")
            return cls(datetime.strptime(left.strip(), "%H:%M").time(),
                       datetime.strptime(right.strip(), "%H:%M").time())
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"bad window {text!r}, expected HH:MM-HH:MM") from None

    def contains(self, stamp: datetime) -> bool:
        return self.start <= stamp.time() < self.end

    def __str__(self):
        return f"{self.start:%H:%M}-{self.end:%H:%M}"


BEDROOM_WINDOW = TimeWindow(time(2, 0), time(6, 0))
KITCHEN_WINDOW = TimeWindow(time(18, 0), time(19, 0))


@dataclass(frozen=True)
class RoomAssignment:
    kind: str
    index: Optional[int]
    seed: frozenset
    expanded: frozenset
    seed_support: int = 0
    transactions: int = 0
    dropped_from_seed: frozenset = frozenset()

    def __post_init__(self):
        if not self.seed <= self.expanded:
            raise ValueError("expanded room must contain its seed")
        if not self.expanded:
            raise ValueError("a room needs at least one sensor")

    @property
    def label(self) -> str:
        return f"{self.kind} {self.index}" if self.index is not None else self.kind

    @property
    def added(self) -> frozenset:
        return self.expanded - self.seed

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "seed": sorted(self.seed),
            "added": sorted(self.added),
            "sensors": sorted(self.expanded),
            "seed_support": self.seed_support,
            "transactions": self.transactions,
            "dropped_from_seed": sorted(self.dropped_from_seed),
        }


def collect_window_transactions(activities: Iterable[IndoorActivity], window: TimeWindow) -> List[frozenset]:
    return [frozenset(a.sensors) for a in activities if window.contains(a.start)]


def expand_with_topology(seed: Iterable[str], topology: Topology, excluded: Iterable[str] = ()) -> frozenset:
    """Grow ``seed`` to a fixpoint with sensors adjacent to half of it or more.

    Each round tests every outside sensor against the room as it stood
    at the start of the round, then adds all that qualify.
    """
    room = set(seed)
    excluded = set(excluded)
    adjacency = topology.adjacency()
    while True:
        joining = [
            s for s in sorted(adjacency)
            if s not in room and s not in excluded
            and 2 * len(adjacency[s] & room) >= len(room)
        ]
        if not joining:
            return frozenset(room)
        room.update(joining)


def _mine_room(transactions: Sequence[frozenset], params: MiningParams):
    dominant = select_dominant_itemset(frequent_itemsets(transactions, params))
    if dominant is None or dominant.size <= 1:
        return None
    return dominant


def deduce_bedrooms(activities: Sequence[IndoorActivity], topology: Topology,
                    window: TimeWindow = BEDROOM_WINDOW,
                    params: MiningParams = MiningParams()) -> List[RoomAssignment]:
    pending = collect_window_transactions(activities, window)
    rooms = []
    assigned = set()
    while pending:
        dominant = _mine_room(pending, params)
        if dominant is None:
            break
        seed = frozenset(dominant.items)
        room = expand_with_topology(seed, topology, assigned)
        rooms.append(RoomAssignment(BEDROOM, len(rooms) + 1, seed, room,
                                    dominant.support_count, len(pending)))
        assigned |= room
        pending = [t for t in pending if not t & room]
    return rooms


def deduce_kitchen(activities: Sequence[IndoorActivity], topology: Topology,
                   window: TimeWindow = KITCHEN_WINDOW,
                   params: MiningParams = MiningParams(),
                   excluded: Iterable[str] = ()) -> Optional[RoomAssignment]:
    """Kitchen/dining seed and expansion; ``excluded`` holds bedroom sensors."""
    transactions = collect_window_transactions(activities, window)
    dominant = _mine_room(transactions, params)
    if dominant is None:
        return None
    excluded = frozenset(excluded)
    mined = frozenset(dominant.items)
    # a sensor belongs to one room only
    seed = mined - excluded
    if len(seed) <= 1:
        return None
    room = expand_with_topology(seed, topology, excluded)
    return RoomAssignment(KITCHEN_DINING, None, seed, room, dominant.support_count,
                          len(transactions), mined & excluded)
