"""Figure rendering for tournkit experiment CSVs."""

from .render import (
    CSV_HEADER,
    METRICS,
    FigureSpec,
    MissingData,
    SchemaMismatch,
    build_figure,
    load_rows,
    render,
)

__all__ = [
    "FigureSpec",
    "MissingData",
    "SchemaMismatch",
    "render",
    "build_figure",
    "load_rows",
    "CSV_HEADER",
    "METRICS",
]

__version__ = "0.1.0"
