"""JSON documents for vectors, ladders, operators, plans and matrices.

Exact scalars are written as ``"p/q"`` strings, floats as JSON numbers.
Every top-level document carries ``"schema_version": 1``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .lattice import EXACT, FLOAT, ProbVector, canonicalize
from .mixed import DensityMatrix, MixedPlan, ProjectorPartition
from .protocols import ProtocolComparison, ProtocolPlan
from .transform import DiagonalOperator, TransformLadder

SCHEMA_VERSION = 1


def scalar(x) -> Any:
    if isinstance(x, (bool, type(None))):
        return x
    if isinstance(x, (Fraction, int)):
        return str(Fraction(x))
    return float(x)


def vector(p: ProbVector) -> dict:
    return {"mode": p.mode, "components": [scalar(c) for c in p.components]}


def ladder(lad: TransformLadder) -> dict:
    return {"steps": [{"q": scalar(q), "l": l} for q, l in lad.steps]}


def operator(op: DiagonalOperator) -> dict:
    return {"diagonal": list(op.diagonal), "squared": [scalar(s) for s in op.squared]}


def plan(p: ProtocolPlan) -> dict:
    return {
        "kind": p.kind,
        "source": vector(p.source),
        "target": vector(p.target),
        "lattice_state": vector(p.lattice_state),
        "intermediate": vector(p.intermediate),
        "ladder": ladder(p.ladder),
        "success_probability": scalar(p.success_probability),
        "deterministic": p.deterministic,
        "success_path": [vector(v) for v in p.success_path],
        "residual": None if p.residual is None else vector(p.residual),
    }


def comparison(c: ProtocolComparison) -> dict:
    return {
        "greedy": plan(c.greedy),
        "thrifty": plan(c.thrifty),
        "vacuous": c.vacuous,
        "same_probability": c.same_probability,
        "intermediates_ordered": c.intermediates_ordered,
        "residuals_ordered": c.residuals_ordered,
        "entropy_gap": c.entropy_gap,
    }


def mixed_plan(m: MixedPlan) -> dict:
    return {
        "target": vector(m.target),
        "block_states": [vector(v) for v in m.block_states],
        "ocp_state": vector(m.ocp_state),
        "ocp_probability": scalar(m.ocp_probability),
        "block_ocp_states": [vector(v) for v in m.block_ocp_states],
        "block_probabilities": [scalar(q) for q in m.block_probabilities],
        "inequality_holds": m.inequality_holds,
        "strict": m.strict,
    }


def document(**fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, **fields}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _parse_text(text: str) -> Any:
    # decimals stay as text so exact mode reads 0.1 as 1/10
    return json.loads(text, parse_float=str)


def load(source: str) -> Any:
    """Parse ``source`` as inline JSON, or as a path to a JSON file."""
    path = Path(source)
    if not source.lstrip().startswith(("[", "{")) and path.is_file():
        return _parse_text(path.read_text())
    return _parse_text(source)


def read_vector(obj: Any, mode: str | None = None) -> ProbVector:
    """Accept ``[...]`` or ``{"mode": ..., "components": [...]}``."""
    if isinstance(obj, dict):
        comps = obj["components"]
        mode = mode or obj.get("mode")
    else:
        comps = obj
    if not isinstance(comps, list):
        raise ValueError("a vector must be a JSON list of numbers")
    if mode is None:
        mode = _infer_mode(comps)
    return canonicalize(comps, mode)


def _infer_mode(comps: list) -> str:
    # decimal literals arrive as strings (see _parse_text); "p/q" strings are exact
    for c in comps:
        if isinstance(c, float) or (isinstance(c, str) and "/" not in c):
            return FLOAT
    return EXACT


def _complex(x) -> complex:
    if isinstance(x, list):
        re, im = x
        return complex(float(Fraction(re)) if isinstance(re, str) else float(re),
                       float(Fraction(im)) if isinstance(im, str) else float(im))
    return complex(float(Fraction(x)) if isinstance(x, str) else float(x))


def read_matrix(obj: Any) -> DensityMatrix:
    """Row-major matrix whose entries are numbers or ``[re, im]`` pairs."""
    if isinstance(obj, dict):
        obj = obj["entries"]
    return DensityMatrix(np.array([[_complex(x) for x in row] for row in obj], dtype=complex))


def matrix(rho: DensityMatrix) -> dict:
    return {"entries": [[[float(z.real), float(z.imag)] for z in row] for row in rho.entries]}


def read_partition(obj: Any) -> ProjectorPartition:
    return ProjectorPartition(tuple(tuple(b) for b in obj))


def partition(p: ProjectorPartition) -> list:
    return [list(b) for b in p.blocks]


def sim_report(r) -> dict:
    def stats(s):
        return {
            "protocol": s.protocol,
            "success_state": vector(s.success_state),
            "residual": None if s.residual is None else vector(s.residual),
            "mean_entropy": s.mean_entropy,
            "mean_failure_entropy": s.mean_failure_entropy,
            "mean_monotones": list(s.mean_monotones),
            "mean_failure_monotones": None if s.mean_failure_monotones is None else list(s.mean_failure_monotones),
        }

    doc = {
        "seed": r.seed,
        "trials": r.trials,
        "success_probability": scalar(r.success_probability),
        "successes": r.successes,
        "failures": r.failures,
        "empirical_success_rate": r.success_rate,
        "three_sigma": r.three_sigma,
        "deterministic": r.deterministic,
        "protocols": [stats(s) for s in r.stats],
    }
    if r.outcomes is not None:
        doc["outcomes"] = "".join("1" if ok else "0" for ok in r.outcomes)
    return doc
