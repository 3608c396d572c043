"""Execution-time opacity analysis for (parametric) timed automata."""

import json

from . import _core
from ._core import BudgetExceeded, Model, ModelError, lu_exists, lu_roles, run_cli

__all__ = [
    "BudgetExceeded",
    "Model",
    "ModelError",
    "check",
    "contains",
    "durations",
    "lu_exists",
    "lu_roles",
    "opaque_times",
    "oracle",
    "random_runs",
    "run_cli",
    "synth_exists",
]


def _bindings(params):
    return {k: str(v) for k, v in (params or {}).items()}


def _delta(delta):
    return None if delta is None else str(delta)


def durations(model, params=None, delta=None):
    return json.loads(_core.durations_json(model, _bindings(params), _delta(delta)))


def check(model, problem, params=None, delta=None):
    return json.loads(_core.check_json(model, problem, _bindings(params), _delta(delta)))


def opaque_times(model, params=None):
    return json.loads(_core.opaque_times_json(model, _bindings(params)))


def contains(duration_set, duration):
    """Membership of a duration (number or string like '5/2') in a set as returned by durations()."""
    return _core.contains(json.dumps(duration_set), str(duration))


def synth_exists(model, depth=200):
    return json.loads(_core.synth_exists_json(model, depth))


def oracle(model, granularity, horizon, params=None, delta=None):
    return json.loads(_core.oracle_json(model, granularity, str(horizon), _bindings(params), _delta(delta)))


def random_runs(model, n, seed=1):
    return json.loads(_core.random_runs_json(model, n, seed))
