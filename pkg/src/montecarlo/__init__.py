"""Replication studies of the estimators and their tabular output."""

from src.montecarlo.study import (
    CELL_COLUMNS,
    StudyCell,
    StudyReport,
    default_betas,
    run_study,
    simulate_estimates,
    study_config_for,
    summarize_cell,
    true_value,
)
from src.montecarlo.tables import TABLE_FORMATS, emit_table, parse_table

__all__ = [
    "CELL_COLUMNS",
    "StudyCell",
    "StudyReport",
    "TABLE_FORMATS",
    "default_betas",
    "emit_table",
    "parse_table",
    "run_study",
    "simulate_estimates",
    "study_config_for",
    "summarize_cell",
    "true_value",
]
