"""Python access to the wrangle engine: tables, operators and workflows."""

import json
import os

from ._wrangle import (
    Table,
    WeatherDoc,
    WrangleError,
    generate,
    haversine_m,
    journey_time_s,
    list_ops,
)
from . import _wrangle

__all__ = [
    "Table",
    "WeatherDoc",
    "WrangleError",
    "generate",
    "haversine_m",
    "journey_time_s",
    "list_ops",
    "op",
    "run_workflow",
]


def op(name, params=None, **ports):
    """Run one catalogue operator, e.g. op("relops.filter", {"predicate": "x > 1"}, in_=t).

    Port names that clash with Python keywords take a trailing underscore.
    """
    inputs = {k.rstrip("_"): v for k, v in ports.items()}
    return _wrangle.run_op(name, inputs, json.dumps(params or {}))


def run_workflow(workflow, inputs, sequential=False, deterministic_keys=False):
    """Execute a workflow document (path or JSON text). Returns (outputs, report)."""
    text = workflow
    if isinstance(workflow, os.PathLike) or (isinstance(workflow, str) and os.path.exists(workflow)):
        with open(workflow, encoding="utf-8") as f:
            text = f.read()
    elif isinstance(workflow, dict):
        text = json.dumps(workflow)
    return _wrangle.run_workflow(text, dict(inputs), sequential, deterministic_keys)
