"""Greedy and thrifty probabilistic coherence-transformation plans.

The greedy plan first moves deterministically to the join of source and
target, then runs the optimal probabilistic step. The thrifty plan runs the
probabilistic step towards the meet and finishes with a deterministic step.
Deterministic steps are represented by state replacement only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ZeroProbabilityError
from .lattice import ProbVector, Scalar, _align, join, majorized, meet, shannon_entropy
from .transform import (
    TransformLadder,
    intermediate_state,
    ladder,
    max_probability,
    residual_state,
)

GREEDY = "greedy"
THRIFTY = "thrifty"


@dataclass(frozen=True)
class ProtocolPlan:
    kind: str
    source: ProbVector
    target: ProbVector
    lattice_state: ProbVector  # join for greedy, meet for thrifty
    intermediate: ProbVector
    ladder: TransformLadder
    success_probability: Scalar
    success_path: tuple  # states visited after the probabilistic step succeeds
    residual: Optional[ProbVector]

    @property
    def deterministic(self) -> bool:
        return self.ladder.deterministic

    @property
    def success_state(self) -> ProbVector:
        return self.success_path[-1]


def _require_probability(psi: ProbVector, phi: ProbVector, tol) -> None:
    if max_probability(psi, phi, tol) == 0:
        raise ZeroProbabilityError("target has more nonzero components than the source")


def greedy_plan(psi: ProbVector, phi: ProbVector, tol: float | None = None) -> ProtocolPlan:
    (psi, phi), _ = _align([psi, phi])
    _require_probability(psi, phi, tol)
    top = join([psi, phi])
    lad = ladder(psi, phi, tol)
    inter = intermediate_state(phi, lad, tol)
    residual = None if lad.deterministic else residual_state(inter, lad)
    return ProtocolPlan(GREEDY, psi, phi, top, inter, lad, lad.q1, (phi,), residual)


def thrifty_plan(psi: ProbVector, phi: ProbVector, tol: float | None = None) -> ProtocolPlan:
    """Thrifty plan; its ladder is built against the meet, not the target."""
    (psi, phi), _ = _align([psi, phi])
    _require_probability(psi, phi, tol)
    bottom = meet([psi, phi])
    lad = ladder(psi, bottom, tol)
    inter = intermediate_state(bottom, lad, tol)
    residual = None if lad.deterministic else residual_state(inter, lad)
    path = (phi,) if bottom == phi else (bottom, phi)
    return ProtocolPlan(THRIFTY, psi, phi, bottom, inter, lad, lad.q1, path, residual)


def tail_feasible(plan: ProtocolPlan, tol: float | None = None) -> bool:
    """Whether every deterministic hop on the success path is allowed."""
    prev = plan.success_path[0]
    for nxt in plan.success_path[1:]:
        if not majorized(prev, nxt, tol):
            return False
        prev = nxt
    return True


@dataclass(frozen=True)
class ProtocolComparison:
    greedy: ProtocolPlan
    thrifty: ProtocolPlan
    vacuous: bool
    same_probability: bool
    intermediates_ordered: bool  # thrifty intermediate majorized by greedy's
    residuals_ordered: bool  # thrifty residual majorized by greedy's
    entropy_gap: float  # H(thrifty residual) - H(greedy residual)


def compare_protocols(psi: ProbVector, phi: ProbVector, tol: float | None = None) -> ProtocolComparison:
    g = greedy_plan(psi, phi, tol)
    t = thrifty_plan(psi, phi, tol)
    if g.deterministic:
        return ProtocolComparison(g, t, True, t.deterministic, True, True, 0.0)
    eps = 0 if g.ladder.mode == "exact" else (1e-12 if tol is None else tol)
    return ProtocolComparison(
        greedy=g,
        thrifty=t,
        vacuous=False,
        same_probability=abs(g.success_probability - t.success_probability) <= eps,
        intermediates_ordered=majorized(t.intermediate, g.intermediate, tol),
        residuals_ordered=majorized(t.residual, g.residual, tol),
        entropy_gap=shannon_entropy(t.residual) - shannon_entropy(g.residual),
    )
