"""Domains of linear fractional transformations and their symmetries."""

import json

from ._lftd import *  # noqa: F403
from ._lftd import LftdError, report as _report


def report(seed=42, trials=100, dim_h=2, dim_k=2, group=None):
    """Run the invariant suites and return the report as a dict."""
    return json.loads(_report(seed, trials, dim_h, dim_k, group))


__all__ = [name for name in dir() if not name.startswith("_")]
