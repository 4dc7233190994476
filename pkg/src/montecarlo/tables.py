"""CSV and markdown rendering of study reports."""

from typing import List
import io
import logging

import pandas as pd

from src.core.constants import FLOAT_FORMAT
from src.core.errors import DomainError, IngestionError
from src.montecarlo.study import CELL_COLUMNS, StudyCell, StudyReport

logger = logging.getLogger(__name__)

TABLE_FORMATS = ("csv", "markdown")


def _ordered(report: StudyReport) -> pd.DataFrame:
    if not report.cells:
        raise DomainError("cannot emit an empty report")
    frame = report.to_frame()
    return frame.sort_values(["beta", "n"], kind="mergesort").reset_index(drop=True)


def emit_table(report: StudyReport, fmt: str = "csv") -> str:
    """
    Render ``report`` with one row per (beta, n) cell.

    Args:
        report: a nonempty study report
        fmt: "csv" (header beta,n,ab,rmse,ci_length,mean_estimate,true_value)
            or "markdown"
    """
    frame = _ordered(report)
    if fmt == "csv":
        return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    if fmt == "markdown":
        lines = [
            "| " + " | ".join(CELL_COLUMNS) + " |",
            "|" + "|".join("---:" for _ in CELL_COLUMNS) + "|",
        ]
        for row in frame.itertuples(index=False):
            values = [FLOAT_FORMAT % row.beta, str(int(row.n))]
            values += [FLOAT_FORMAT % getattr(row, name) for name in CELL_COLUMNS[2:]]
            lines.append("| " + " | ".join(values) + " |")
        return "\n".join(lines) + "\n"
    raise DomainError(f"unknown table format {fmt!r}", choices=list(TABLE_FORMATS))


def parse_table(text: str) -> List[StudyCell]:
    """Read cells back from the CSV produced by ``emit_table``."""
    frame = pd.read_csv(io.StringIO(text))
    missing = [c for c in CELL_COLUMNS if c not in frame.columns]
    if missing:
        raise IngestionError(f"study table is missing columns {missing}", missing=missing)
    return [
        StudyCell(
            beta=float(row.beta),
            n=int(row.n),
            ab=float(row.ab),
            rmse=float(row.rmse),
            ci_length=float(row.ci_length),
            mean_estimate=float(row.mean_estimate),
            true_value=float(row.true_value),
        )
        for row in frame.itertuples(index=False)
    ]
