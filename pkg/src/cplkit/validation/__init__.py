"""Batteries, schema checks and the independent intuitionistic oracle."""

from .battery import FrameBattery, battery_contexts, default_samples, gen_frames, sample_contexts
from .enumerate import count, formulas
from .ipc import ipc_decide
from .schemas import SCHEMA_BY_NAME, SCHEMAS, AxiomSchema, instances, instantiate
from .suite import (Counterexample, Deciders, KnownCountermodel, Report, SuiteResult, check_schema,
                    demorgan_check, format_report, known_countermodels, lob_check, mp_check,
                    nec_check, run_suite)

__all__ = [
    "FrameBattery", "battery_contexts", "default_samples", "gen_frames", "sample_contexts",
    "count", "formulas", "ipc_decide", "SCHEMA_BY_NAME", "SCHEMAS", "AxiomSchema", "instances",
    "instantiate", "Counterexample", "Deciders", "KnownCountermodel", "Report", "SuiteResult",
    "check_schema", "demorgan_check", "format_report", "known_countermodels", "lob_check",
    "mp_check", "nec_check", "run_suite",
]
