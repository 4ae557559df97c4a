"""Exact verification of catalog rules, closed forms and theta identities."""

from .engine import Job, catalog_jobs, check_concrete, enum_sample, run_jobs, verify_rule
from .report import Counterexample, Method, Status, VerifyReport, to_csv, to_json

__all__ = [
    "Counterexample",
    "Job",
    "Method",
    "Status",
    "VerifyReport",
    "catalog_jobs",
    "check_concrete",
    "enum_sample",
    "run_jobs",
    "to_csv",
    "to_json",
    "verify_rule",
]
