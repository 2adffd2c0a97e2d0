"""CSV emission and parsing of sweep results."""
from __future__ import annotations

import csv
import io
from typing import Iterable

from .errors import ConfigurationError
from .simulator import BerRecord, PhaseRecord

HEADER = (
    "snr_db,detector,scenario,ber_x1,ber_x2,ber_avg,bits_x1,bits_x2,errors_x1,errors_x2,"
    "ber_p1_x1,ber_p1_x2,ber_p2_x1,ber_p2_x2"
)
COLUMNS = HEADER.split(",")
PHASE_COLUMNS = COLUMNS[-4:]


class CsvFormatError(ConfigurationError):
    pass


def _g(x: float) -> str:
    return f"{x:.6g}"


def format_csv(records: Iterable[BerRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in records:
        ph = r.phase
        phase_cols = (
            [_g(ph.ber_p1_x1), _g(ph.ber_p1_x2), _g(ph.ber_p2_x1), _g(ph.ber_p2_x2)]
            if ph is not None else ["", "", "", ""]
        )
        w.writerow([
            _g(r.snr_db), r.detector, r.scenario,
            _g(r.ber_x1), _g(r.ber_x2), _g(r.ber_avg),
            r.bits_x1, r.bits_x2, r.bit_errors_x1, r.bit_errors_x2,
            *phase_cols,
        ])
    return buf.getvalue()


def parse_csv(text: str, source: str = "<csv>") -> list[BerRecord]:
    """Rebuild records from CSV text; counts are authoritative, BERs are derived.

    Per-phase error counts are recovered as ``round(ber * bits)``.
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise CsvFormatError(f"{source}:1: header must be exactly {HEADER!r}")
    records = []
    for lineno, row in enumerate(csv.reader(lines[1:]), 2):
        if not row:
            continue
        if len(row) != len(COLUMNS):
            raise CsvFormatError(f"{source}:{lineno}: expected {len(COLUMNS)} fields, got {len(row)}")
        f = dict(zip(COLUMNS, row))
        try:
            snr = float(f["snr_db"])
            b1, b2 = int(f["bits_x1"]), int(f["bits_x2"])
            e1, e2 = int(f["errors_x1"]), int(f["errors_x2"])
            if b1 <= 0 or b2 <= 0 or not 0 <= e1 <= b1 or not 0 <= e2 <= b2:
                raise ValueError("bit/error counts out of range")
            phase = None
            present = [f[c] != "" for c in PHASE_COLUMNS]
            if all(present):
                p = [float(f[c]) for c in PHASE_COLUMNS]
                if any(not 0 <= v <= 1 for v in p):
                    raise ValueError("per-phase BER outside [0, 1]")
                phase = PhaseRecord(snr, b1, b2, round(p[0] * b1), round(p[1] * b2),
                                    round(p[2] * b1), round(p[3] * b2))
            elif any(present):
                raise ValueError("per-phase columns must be all filled or all empty")
        except ValueError as exc:
            raise CsvFormatError(f"{source}:{lineno}: {exc}") from None
        records.append(BerRecord(snr, e1, e2, b1, b2, 0, f["detector"], f["scenario"], phase))
    if not records:
        raise CsvFormatError(f"{source}: no data rows")
    return records

