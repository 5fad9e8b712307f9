"""Sensor topology deduction from indoor activities.

Consecutive distinct sensors inside an activity give a directed edge.
Edge confidence is the number of activities containing that edge. The
threshold ``alpha`` is the floored mean confidence; an undirected edge
is *solid* when both directions exceed it and *dashed* when only one
does.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

from .errors import ConfigError
from .segmentation import IndoorActivity

SOLID = "solid"
DASHED = "dashed"

CONFUSION_CLASSES = ("1/1", "1/0", "0/0", "0/1")


def extract_edges(activity: IndoorActivity) -> frozenset:
    """Directed transitions between consecutive distinct sensors, as a set."""
    return frozenset(iter_transitions(activity))


def iter_transitions(activity: IndoorActivity):
    sensors = activity.sensors
    for a, b in zip(sensors, sensors[1:]):
        if a != b:
            yield (a, b)


@dataclass(frozen=True)
class ConfidenceGraph:
    counts: Mapping = field(default_factory=dict)
    sensors: frozenset = frozenset()

    @property
    def beta(self) -> int:
        return sum(self.counts.values())

    @property
    def gamma(self) -> int:
        return len(self.counts)

    @property
    def alpha(self) -> Optional[int]:
        """Floored mean confidence, or None for a graph without edges."""
        if not self.counts:
            return None
        return self.beta // self.gamma

    @property
    def is_empty(self) -> bool:
        return not self.counts

    def count(self, a: str, b: str) -> int:
        return self.counts.get((a, b), 0)


def build_confidence_graph(activities: Iterable[IndoorActivity], multiset: bool = False) -> ConfidenceGraph:
    """Count, for each directed edge, how many activities contain it.

    With ``multiset`` every raw transition is counted instead, so an
    activity that walks A->B twice contributes 2.
    """
    counts = Counter()
    sensors = set()
    for activity in activities:
        sensors.update(activity.sensors)
        if multiset:
            counts.update(iter_transitions(activity))
        else:
            counts.update(extract_edges(activity))
    return ConfidenceGraph(dict(counts), frozenset(sensors))


def merge_graphs(*graphs: ConfidenceGraph) -> ConfidenceGraph:
    counts = Counter()
    sensors = set()
    for g in graphs:
        counts.update(g.counts)
        sensors |= g.sensors
    return ConfidenceGraph(dict(counts), frozenset(sensors))


@dataclass(frozen=True)
class Topology:
    edges: Mapping = field(default_factory=dict)  # frozenset({a, b}) -> SOLID | DASHED
    sensors: frozenset = frozenset()

    def neighbors(self, sensor: str) -> frozenset:
        return frozenset(other for pair in self.edges if sensor in pair for other in pair if other != sensor)

    def adjacency(self) -> dict:
        adj = {s: set() for s in self.sensors}
        for pair in self.edges:
            a, b = sorted(pair)
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        return adj

    def has_edge(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def edge_list(self, kind: str) -> list:
        return sorted(sorted(pair) for pair, k in self.edges.items() if k == kind)


def classify_pair(forward: int, backward: int, alpha: int) -> Optional[str]:
    above = (forward > alpha) + (backward > alpha)
    return {2: SOLID, 1: DASHED}.get(above)


def derive_topology(graph: ConfidenceGraph, alpha: Optional[int] = None) -> Topology:
    """Apply the solid/dashed rules; ``alpha`` overrides the graph's own threshold."""
    if alpha is None:
        alpha = graph.alpha
    if alpha is None:
        return Topology({}, graph.sensors)
    edges = {}
    for a, b in graph.counts:
        pair = frozenset((a, b))
        if pair in edges:
            continue
        kind = classify_pair(graph.count(a, b), graph.count(b, a), alpha)
        if kind is not None:
            edges[pair] = kind
    return Topology(edges, graph.sensors)


def _dot_id(name: str) -> str:
    return json.dumps(name)


def export_dot(topology: Topology, graph: Optional[ConfidenceGraph] = None,
               show_confidence: bool = False, name: str = "topology") -> str:
    """Render the topology as an undirected graphviz document."""
    lines = [f"graph {_dot_id(name)} {{", "  node [shape=circle];"]
    nodes = set(topology.sensors)
    for pair in topology.edges:
        nodes |= pair
    for node in sorted(nodes):
        lines.append(f"  {_dot_id(node)};")
    for pair in sorted(sorted(p) for p in topology.edges):
        a, b = pair
        attrs = [f"style={topology.edges[frozenset(pair)]}"]
        if show_confidence and graph is not None:
            attrs.append(f'label="{a}>{b}:{graph.count(a, b)} {b}>{a}:{graph.count(b, a)}"')
        lines.append(f"  {_dot_id(a)} -- {_dot_id(b)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GroundTruthLayout:
    sensors: frozenset
    adjacent: frozenset  # of frozenset pairs

    def __post_init__(self):
        for pair in self.adjacent:
            if len(pair) != 2:
                raise ConfigError(f"adjacency entry {sorted(pair)} is not a pair of distinct sensors")
            missing = pair - self.sensors
            if missing:
                raise ConfigError(f"adjacent pair mentions unknown sensors {sorted(missing)}")

    @classmethod
    def from_pairs(cls, sensors: Iterable[str], pairs: Iterable) -> "GroundTruthLayout":
        return cls(frozenset(sensors), frozenset(frozenset(p) for p in pairs))

    def neighbors(self, sensor: str) -> list:
        return sorted(other for pair in self.adjacent if sensor in pair for other in pair if other != sensor)

    def to_dict(self) -> dict:
        return {"sensors": sorted(self.sensors), "adjacent": sorted(sorted(p) for p in self.adjacent)}


def load_layout(path: Union[str, Path]) -> GroundTruthLayout:
    """Read a ``{"sensors": [...], "adjacent": [[a, b], ...]}`` JSON document."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON ({exc})") from None
    try:
        return GroundTruthLayout.from_pairs(doc["sensors"], doc["adjacent"])
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"{path}: layout needs 'sensors' and 'adjacent' lists ({exc})") from None


@dataclass(frozen=True)
class ConfusionReport:
    cells: Mapping  # (a, b) -> one of CONFUSION_CLASSES
    sensor_count: int

    @property
    def totals(self) -> dict:
        totals = dict.fromkeys(CONFUSION_CLASSES, 0)
        totals.update(Counter(self.cells.values()))
        return totals

    @property
    def pair_count(self) -> int:
        return self.sensor_count * self.sensor_count - self.sensor_count

    @property
    def errors(self) -> int:
        totals = self.totals
        return totals["1/0"] + totals["0/1"]

    @property
    def accuracy(self) -> float:
        if not self.pair_count:
            return 1.0
        return 1 - self.errors / self.pair_count

    def false_pairs(self) -> dict:
        return {
            kind: sorted(list(pair) for pair, cell in self.cells.items() if cell == kind)
            for kind in ("1/0", "0/1")
        }

    def to_dict(self) -> dict:
        return {
            "sensors": self.sensor_count,
            "pairs": self.pair_count,
            "totals": self.totals,
            "errors": self.errors,
            "accuracy": self.accuracy,
            "false_pairs": self.false_pairs(),
        }


def evaluate_against_layout(topology: Topology, truth: GroundTruthLayout) -> ConfusionReport:
    """Compare every ordered sensor pair with the true layout.

    Solid and dashed edges both count as a deduced direct link.
    """
    unknown = set(topology.sensors) - truth.sensors
    for pair in topology.edges:
        unknown |= pair - truth.sensors
    if unknown:
        raise ConfigError(f"topology sensors missing from ground truth: {sorted(unknown)}")
    cells = {}
    for a in truth.sensors:
        for b in truth.sensors:
            if a == b:
                continue
            pair = frozenset((a, b))
            reachable = pair in truth.adjacent
            deduced = pair in topology.edges
            cells[(a, b)] = f"{int(reachable)}/{int(deduced)}"
    return ConfusionReport(cells, len(truth.sensors))
