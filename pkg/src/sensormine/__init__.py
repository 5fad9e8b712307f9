"""Mine sensor topology and room locations from smart-home event logs."""
from .errors import ConfigError, LogParseError, SensorMineError
from .itemsets import FrequentItemset, MiningParams, frequent_itemsets, select_dominant_itemset
from .pipeline import PipelineConfig, PipelineReport, emit_report, run_pipeline
from .rooms import (RoomAssignment, TimeWindow, collect_window_transactions, deduce_bedrooms,
                    deduce_kitchen, expand_with_topology)
from .segmentation import IndoorActivity, SegmentationParams, segment
from .sensor_log import (EventStream, IngestFilter, SensorEvent, load_dataset, parse_event_line,
                         sensor_class)
from .synthesis import ScheduleEntry, WalkParams, generate_trace, grid_layout
from .topology import (ConfidenceGraph, ConfusionReport, GroundTruthLayout, Topology,
                       build_confidence_graph, derive_topology, evaluate_against_layout,
                       export_dot, extract_edges, load_layout)

__version__ = "0.1.0"
