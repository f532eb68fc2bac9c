"""Repair schemes for Reed-Solomon codes over tower fields."""

from ._core import (
    CapExceeded,
    ConsistencyError,
    Error,
    InvalidArgument,
    InvalidCheck,
    PreconditionError,
    bound,
    brute_force_min_bandwidth,
    build_scheme,
    field,
    repair,
    scheme_table,
    simulate,
    suite_names,
    verify,
)

__all__ = [
    "CapExceeded",
    "ConsistencyError",
    "Error",
    "InvalidArgument",
    "InvalidCheck",
    "PreconditionError",
    "bound",
    "brute_force_min_bandwidth",
    "build_scheme",
    "field",
    "repair",
    "scheme_table",
    "simulate",
    "suite_names",
    "verify",
]
