"""Command line entry point.

    sensormine run --dataset milan/data --from-date 2009-10-16 --to-date 2009-10-21
    sensormine synth --layout layout.json --steps 500 --out trace.txt
"""
from __future__ import annotations

import argparse
import logging
import sys
from datetime import datetime

from .errors import ConfigError, LogParseError
from .itemsets import MiningParams
from .pipeline import PipelineConfig, run_pipeline
from .rooms import BEDROOM_WINDOW, KITCHEN_WINDOW, TimeWindow
from .segmentation import SegmentationParams
from .sensor_log import TEMPERATURE, IngestFilter, parse_date, write_events
from .synthesis import ScheduleEntry, WalkParams, generate_trace
from .topology import load_layout

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PARSE = 3
EXIT_IO = 4

logger = logging.getLogger("sensormine")


def _window(text):
    try:
        return TimeWindow.parse(text)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _date(text):
    try:
        return parse_date(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad date {text!r}, expected YYYY-MM-DD")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sensormine", description=__doc__.splitlines()[0] or None)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="analyse an event log")
    run.add_argument("--dataset", required=True)
    run.add_argument("--from-date", type=_date)
    run.add_argument("--to-date", type=_date)
    run.add_argument("--x-seconds", type=float, default=40.0, help="minimum activity duration")
    run.add_argument("--y-seconds", type=float, default=10.0, help="maximum gap inside an activity")
    run.add_argument("--min-support", default="0.5")
    run.add_argument("--bedroom-window", type=_window, default=BEDROOM_WINDOW)
    run.add_argument("--kitchen-window", type=_window, default=KITCHEN_WINDOW)
    run.add_argument("--ground-truth", help="layout JSON with 'sensors' and 'adjacent'")
    run.add_argument("--aliases", help="two-column fingerprint to sensor id file")
    run.add_argument("--report-out")
    run.add_argument("--dot-out")
    run.add_argument("--include-all-values", action="store_true",
                     help="count every event, not only ON/OPEN activations")
    run.add_argument("--keep-temperature", action="store_true")
    run.add_argument("--lenient-parse", action="store_true", help="skip malformed lines")
    run.add_argument("--multiset-edges", action="store_true",
                     help="count every transition instead of once per activity")

    synth = sub.add_parser("synth", help="write a random-walk trace for a layout")
    synth.add_argument("--layout", required=True)
    synth.add_argument("--out", required=True)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--steps", type=int, default=0)
    synth.add_argument("--dwell", type=float, default=5.0)
    synth.add_argument("--rest-gap", type=float, default=60.0)
    synth.add_argument("--days", type=int, default=1)
    synth.add_argument("--walk", action="append", default=[], metavar="HH:MM,LENGTH,REPEATS[,S1+S2...]",
                       help="scheduled daily walks; may be repeated")
    return parser


def _schedule_entry(text: str) -> ScheduleEntry:
    parts = text.split(",")
    if len(parts) not in (3, 4):
        raise ConfigError(f"bad walk schedule {text!r}")
    try:
        at = datetime.strptime(parts[0], "%H:%M").time()
        length, repeats = int(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"bad walk schedule {text!r}") from None
    nodes = frozenset(parts[3].split("+")) if len(parts) == 4 else None
    return ScheduleEntry(at, length, nodes, repeats)


def _run(args) -> int:
    date_range = None
    if args.from_date or args.to_date:
        date_range = (args.from_date or args.to_date, args.to_date or args.from_date)
    config = PipelineConfig(
        dataset=args.dataset,
        ingest=IngestFilter(
            excluded_classes=frozenset() if args.keep_temperature else frozenset({TEMPERATURE}),
            trigger_values=None if args.include_all_values else IngestFilter().trigger_values,
            date_range=date_range,
        ),
        segmentation=SegmentationParams(args.x_seconds, args.y_seconds),
        mining=MiningParams(args.min_support),
        bedroom_window=args.bedroom_window,
        kitchen_window=args.kitchen_window,
        ground_truth=args.ground_truth,
        aliases=args.aliases,
        lenient=args.lenient_parse,
        multiset_edges=args.multiset_edges,
        report_out=args.report_out,
        dot_out=args.dot_out,
    )
    report = run_pipeline(config)
    for notice in report.notices:
        logger.warning(notice)
    if not args.report_out:
        sys.stdout.write(report.to_json())
    return EXIT_OK


def _synth(args) -> int:
    layout = load_layout(args.layout)
    params = WalkParams(seed=args.seed, steps=args.steps, dwell=args.dwell, rest_gap=args.rest_gap,
                        days=args.days, schedule=tuple(_schedule_entry(w) for w in args.walk))
    write_events(generate_trace(layout, params).events, args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = _run if args.command == "run" else _synth
    try:
        return handler(args)
    except LogParseError as exc:
        logger.error("parse error: %s", exc)
        return EXIT_PARSE
    except (ConfigError, ValueError) as exc:
        logger.error("configuration error: %s", exc)
        return EXIT_CONFIG
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
