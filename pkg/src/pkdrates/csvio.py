"""Plot-ready CSV for sweep results."""
from __future__ import annotations

import csv
import io
from typing import IO, List

from .qkd import RatePoint
from .sweep import SweepResult

HEADER = ("protocol", "loss_db", "mu", "qber", "bits_per_pulse", "bits_per_second", "clamped")


class CsvWriteError(OSError):
    def __init__(self, bytes_written: int, cause: OSError):
        super().__init__(f"write failed after {bytes_written} bytes: {cause}")
        self.bytes_written = bytes_written


def _row(p: RatePoint) -> str:
    mu = "" if p.mu is None else repr(p.mu)
    fields = (p.protocol, repr(p.loss_db), mu, repr(p.qber),
              repr(p.bits_per_pulse), repr(p.bits_per_second), "true" if p.clamped else "false")
    return ",".join(fields) + "\n"


def emit_csv(result: SweepResult, destination: IO[str]) -> None:
    """Write one header line and one row per point; floats use ``repr``."""
    written = 0
    try:
        for line in [",".join(HEADER) + "\n"] + [_row(p) for p in result.points]:
            destination.write(line)
            written += len(line.encode("utf-8"))
        destination.flush()
    except OSError as exc:
        raise CsvWriteError(written, exc) from exc


def to_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    emit_csv(result, buf)
    return buf.getvalue()


def read_csv(text: str) -> List[RatePoint]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != HEADER:
        raise ValueError(f"unexpected header {header!r}")
    return [
        RatePoint(
            protocol=row[0],
            loss_db=float(row[1]),
            mu=float(row[2]) if row[2] else None,
            qber=float(row[3]),
            bits_per_pulse=float(row[4]),
            bits_per_second=float(row[5]),
            clamped=row[6] == "true",
        )
        for row in reader
    ]
