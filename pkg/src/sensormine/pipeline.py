"""End-to-end run: ingest, segment, build topology, locate rooms, evaluate."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .itemsets import MiningParams
from .rooms import (BEDROOM_WINDOW, KITCHEN_WINDOW, TimeWindow, deduce_bedrooms,
                    deduce_kitchen)
from .segmentation import SegmentationParams, segment
from .sensor_log import EventStream, IngestFilter, load_aliases, load_dataset
from .topology import (DASHED, SOLID, build_confidence_graph, derive_topology,
                       evaluate_against_layout, export_dot, load_layout)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineConfig:
    dataset: Union[str, Path]
    ingest: IngestFilter = IngestFilter()
    segmentation: SegmentationParams = SegmentationParams()
    mining: MiningParams = MiningParams()
    bedroom_window: TimeWindow = BEDROOM_WINDOW
    kitchen_window: TimeWindow = KITCHEN_WINDOW
    ground_truth: Optional[Union[str, Path]] = None
    aliases: Optional[Union[str, Path]] = None
    lenient: bool = False
    multiset_edges: bool = False
    report_out: Optional[Union[str, Path]] = None
    dot_out: Optional[Union[str, Path]] = None


@dataclass
class PipelineReport:
    config: dict
    ingest: dict
    segmentation: dict
    topology: dict
    rooms: dict
    evaluation: Optional[dict] = None
    notices: list = field(default_factory=list)
    dot: str = ""

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "ingest": self.ingest,
            "segmentation": self.segmentation,
            "topology": self.topology,
            "rooms": self.rooms,
            "evaluation": self.evaluation,
            "notices": self.notices,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _config_dict(config: PipelineConfig) -> dict:
    date_range = config.ingest.date_range
    trigger = config.ingest.trigger_values
    return {
        "dataset": str(config.dataset),
        "from_date": date_range[0].isoformat() if date_range else None,
        "to_date": date_range[1].isoformat() if date_range else None,
        "excluded_classes": sorted(config.ingest.excluded_classes),
        "trigger_values": sorted(trigger) if trigger is not None else "all",
        "x_seconds": config.segmentation.x,
        "y_seconds": config.segmentation.y,
        "min_support": str(config.mining.min_support),
        "bedroom_window": str(config.bedroom_window),
        "kitchen_window": str(config.kitchen_window),
        "multiset_edges": config.multiset_edges,
    }


def analyse_stream(stream: EventStream, config: PipelineConfig) -> PipelineReport:
    activities = segment(stream.events, config.segmentation)
    graph = build_confidence_graph(activities, multiset=config.multiset_edges)
    topology = derive_topology(graph)
    bedrooms = deduce_bedrooms(activities, topology, config.bedroom_window, config.mining)
    assigned = frozenset().union(*(room.expanded for room in bedrooms))
    kitchen = deduce_kitchen(activities, topology, config.kitchen_window, config.mining, assigned)

    report = PipelineReport(
        config=_config_dict(config),
        ingest={
            "events": len(stream),
            "days": stream.day_count,
            "sensors": sorted(stream.sensors),
            "skipped_lines": stream.skipped_lines,
        },
        segmentation={"activities": len(activities)},
        topology={
            "beta": graph.beta,
            "gamma": graph.gamma,
            "alpha": graph.alpha,
            "solid": topology.edge_list(SOLID),
            "dashed": topology.edge_list(DASHED),
            "confidence": [[a, b, n] for (a, b), n in sorted(graph.counts.items())],
        },
        rooms={
            "bedrooms": [room.to_dict() for room in bedrooms],
            "kitchen_dining": kitchen.to_dict() if kitchen else None,
        },
        dot=export_dot(topology, graph),
    )
    if graph.is_empty:
        report.notices.append("no directed edges found; topology is empty")

    if config.ground_truth is None:
        report.notices.append("no ground truth given; evaluation skipped")
    else:
        truth = load_layout(config.ground_truth)
        report.evaluation = evaluate_against_layout(topology, truth).to_dict()
    return report


def run_pipeline(config: PipelineConfig) -> PipelineReport:
    aliases = load_aliases(config.aliases) if config.aliases else None
    stream = load_dataset(config.dataset, config.ingest, lenient=config.lenient, aliases=aliases)
    logger.info("loaded %d events over %d days", len(stream), stream.day_count)
    report = analyse_stream(stream, config)
    if config.report_out:
        emit_report(report, config.report_out)
    if config.dot_out:
        Path(config.dot_out).write_text(report.dot, encoding="utf-8")
    return report


def emit_report(report: PipelineReport, path: Union[str, Path]) -> None:
    Path(path).write_text(report.to_json(), encoding="utf-8")
