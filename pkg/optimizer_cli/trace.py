"""
Module writing per-run traces and CERAF event logs as plain text.
"""

from pathlib import Path
from typing import Sequence, Union

import pandas as pd

from differential_ga import CerafEvent, RunResult
from differential_ga.core import ReportError


def write_trace(
    result: RunResult, path: Union[str, Path], with_ceraf_events: bool = False
) -> None:
    """
    Writes one csv line per generation: ``generation,best_value,nfc`` plus
    ``ceraf_event`` when ``with_ceraf_events`` is set (empty when nothing
    happened in that generation).

    Raises:
        ReportError: If the file cannot be written
    """
    columns = ["generation", "best_value", "nfc"] + (["ceraf_event"] if with_ceraf_events else [])
    records = [
        {
            "generation": record.generation,
            "best_value": f"{record.best_value:.12g}",
            "nfc": record.nfc,
            "ceraf_event": record.event or "",
        }
        for record in result.history
    ]
    frame = pd.DataFrame.from_records(records, columns=columns)
    try:
        frame.to_csv(path, index=False, lineterminator="\n")
    except OSError as err:
        raise ReportError(f"Cannot write trace to {path}: {err}", str(path)) from err


def format_event(event: CerafEvent) -> str:
    zone = "-" if event.zone_id is None else str(event.zone_id)
    return f"{event.generation} {event.event} {zone} {event.best_value:.12g}"


def write_event_log(events: Sequence[CerafEvent], path: Union[str, Path]) -> None:
    """
    Writes the CERAF event log, one ``generation event zone_id best_value``
    line per event (``-`` when the event concerns no zone).
    """
    try:
        with open(path, "w") as file:
            for event in events:
                file.write(format_event(event) + "\n")
    except OSError as err:
        raise ReportError(f"Cannot write event log to {path}: {err}", str(path)) from err
