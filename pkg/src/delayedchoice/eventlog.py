"""CSV persistence of pulse records."""

from __future__ import annotations

import csv
from typing import Iterable, TextIO

from .experiment import PulseRecord
from .models import Behavior, InterferometerConfig

HEADER = ["pulse_id", "config", "phase_rad", "behavior", "d1", "d2", "t_entry_ns", "t_choice_ns"]

_CONFIG = {c.value: c for c in InterferometerConfig}
_BEHAVIOR = {"W": Behavior.WAVE, "P": Behavior.PARTICLE, "-": None}
_BOOL = {"0": False, "1": True}


class EventLogError(ValueError):
    pass


def write_event_log(records: Iterable[PulseRecord], sink: TextIO) -> None:
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(HEADER)
    w.writerows(
        (
            r.pulse_id,
            r.config.value,
            f"{r.phase:.9f}",
            "-" if r.behavior is None else r.behavior.value,
            int(r.d1),
            int(r.d2),
            repr(float(r.t_entry_ns)),
            repr(float(r.t_choice_ns)),
        )
        for r in records
    )


def read_event_log(source: TextIO) -> list[PulseRecord]:
    reader = csv.reader(source)
    header = next(reader, None)
    if header != HEADER:
        raise EventLogError(f"event log header mismatch: expected {','.join(HEADER)!r}, got {header!r}")
    out = []
    for rowno, row in enumerate(reader, 2):
        try:
            pid, cfg, phase, beh, d1, d2, t_entry, t_choice = row
            out.append(
                PulseRecord(
                    int(pid),
                    _CONFIG[cfg],
                    float(phase),
                    _BEHAVIOR[beh],
                    _BOOL[d1],
                    _BOOL[d2],
                    float(t_entry),
                    float(t_choice),
                )
            )
        except (ValueError, KeyError) as exc:
            raise EventLogError(f"malformed event log row at line {rowno}: {row!r}") from exc
    return out
