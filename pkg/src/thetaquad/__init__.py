"""Exact q-series tools for representation counts by sums of squares and
triangular numbers, with a rule catalog and verification engine."""

from .counting import FormSpec, Kind, count_enum, count_series
from .qseries import QSeries, phi_series, psi_series

__all__ = ["FormSpec", "Kind", "QSeries", "count_enum", "count_series", "phi_series", "psi_series"]
