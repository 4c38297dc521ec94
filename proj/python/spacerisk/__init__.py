"""Python front end to the spacerisk C++ core.

The file-driven calls return plain dicts decoded from the same JSON the CLI
prints. Relative names fall back to the bundled data directory.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import _spacerisk
from ._spacerisk import (
    Error,
    NotConverged,
    ValidationError,
    cascade_arc_update,
    cascade_node_update,
    joint_likelihood,
    matrix_lookup,
    risk_band,
)

__all__ = [
    "Error",
    "NotConverged",
    "ValidationError",
    "analyze",
    "cascade_arc_update",
    "cascade_node_update",
    "chain_metrics",
    "data_path",
    "extrapolate",
    "harden",
    "joint_likelihood",
    "matrix_lookup",
    "nrs_assess",
    "risk_band",
]

_HERE = Path(__file__).resolve().parent
# Installed wheels carry data/ inside the package; editable installs point here
# at the source tree, where it sits two levels up.
_DATA_DIRS = (_HERE / "data", _HERE.parent.parent / "data")


def data_path(name: str | Path) -> Path:
    p = Path(name)
    if p.is_absolute() or p.exists():
        return p
    for d in _DATA_DIRS:
        if (d / p).exists():
            return d / p
    return p


def analyze(scenario="satcom_case_study.json", *, case=0, schedule="synchronous",
            epsilon=1e-10, max_iterations=1_000_000) -> dict:
    return json.loads(_spacerisk._analyze(str(data_path(scenario)), case, schedule,
                                          epsilon, max_iterations))


def harden(scenario="satcom_case_study.json", *, tau=0.1, case=0,
           controls="satcom_controls.json", epsilon=1e-10,
           max_iterations=1_000_000) -> dict:
    return json.loads(_spacerisk._harden(str(data_path(scenario)), str(data_path(controls)),
                                         tau, case, epsilon, max_iterations))


def nrs_assess(scenario, *, tau="medium") -> dict:
    return json.loads(_spacerisk._nrs_assess(str(data_path(scenario)), tau))


def extrapolate(annotation, *, rules=None, cap=1_000_000) -> dict:
    r = str(data_path(rules)) if rules else ""
    return json.loads(_spacerisk._extrapolate(str(data_path(annotation)), r, cap))


def chain_metrics(chains, scores) -> list[dict]:
    return _spacerisk.chain_metrics(str(data_path(chains)), str(data_path(scores)))
