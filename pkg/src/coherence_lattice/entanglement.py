"""Converting coherence into bipartite entanglement.

A coherent state ``sum_j a_j |j>`` followed by a generalized CNOT onto an
incoherent ancilla gives ``sum_j a_j |j>|j>``, whose Schmidt vector is the
coherence vector. Bipartite states are therefore carried as Schmidt vectors;
the d*d amplitude vector is only built on request.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .lattice import ProbVector, Scalar, _align, meet, shannon_entropy, tolerance, to_scalar
from .protocols import ProtocolPlan, thrifty_plan
from .transform import PureState, coherence_vector

SchmidtVector = ProbVector


def conversion_probability(psi: ProbVector, schmidt: SchmidtVector, tol: float | None = None) -> Scalar:
    """Optimal probability of producing the entangled state with Schmidt vector ``schmidt``.

    Evaluated with 0-based tail sums ``sum_{i>=l} psi_i / sum_{i>=l} lambda_i``
    over l = 0..d-1, capped at 1; zero tails of ``schmidt`` are skipped.
    """
    (psi, schmidt), mode = _align([psi, schmidt])
    zero, one = to_scalar(0, mode), to_scalar(1, mode)
    if psi.support < schmidt.support:
        return zero
    eps = tolerance(mode, tol)
    d = psi.dim
    # cumulative prefix sums bounded by the majorization tolerance
    ps = pl = zero
    prefix_ok = True
    for i in range(d):
        ps += psi[i]
        pl += schmidt[i]
        if ps > pl + eps:
            prefix_ok = False
            break
    if prefix_ok:
        return one
    best = one
    tail_psi = tail_lam = zero
    for l in range(d - 1, -1, -1):
        tail_psi += psi[l]
        tail_lam += schmidt[l]
        if tail_lam <= eps:
            continue
        r = tail_psi / tail_lam
        if r < best:
            best = r
    return best


def ce_ocr_state(psi: ProbVector, schmidt: SchmidtVector) -> ProbVector:
    return meet([psi, schmidt])


@dataclass(frozen=True)
class BipartiteState:
    """Maximally correlated state ``sum_j a_j |j>|j>``."""

    schmidt: SchmidtVector
    amplitudes: Optional[tuple] = None  # local amplitudes a_j, phases kept

    @property
    def entropy(self) -> float:
        return shannon_entropy(self.schmidt)

    def full_vector(self) -> np.ndarray:
        if self.amplitudes is not None:
            amps = np.asarray(self.amplitudes, dtype=complex)
        else:
            amps = np.sqrt(np.asarray(self.schmidt.to_floats()))
        d = len(amps)
        out = np.zeros(d * d, dtype=complex)
        out[np.arange(d) * (d + 1)] = amps
        return out


def cnot_embed(phi: PureState) -> BipartiteState:
    return BipartiteState(coherence_vector(phi), tuple(complex(a) for a in phi.amplitudes))


def embed_vector(p: ProbVector) -> BipartiteState:
    return BipartiteState(p)


@dataclass(frozen=True)
class ConversionPlan:
    source: ProbVector
    schmidt: SchmidtVector
    probability: Scalar
    plan: Optional[ProtocolPlan]  # thrifty plan; None when the probability is 0
    success: Optional[BipartiteState]
    failure: Optional[BipartiteState]

    @property
    def success_entropy(self) -> Optional[float]:
        return None if self.success is None else self.success.entropy

    @property
    def failure_entropy(self) -> Optional[float]:
        return None if self.failure is None else self.failure.entropy


def conversion_plan(psi: ProbVector, schmidt: SchmidtVector, tol: float | None = None) -> ConversionPlan:
    q = conversion_probability(psi, schmidt, tol)
    if q == 0:
        return ConversionPlan(psi, schmidt, q, None, None, None)
    plan = thrifty_plan(psi, schmidt, tol)
    failure = None if plan.residual is None else embed_vector(plan.residual)
    return ConversionPlan(psi, schmidt, q, plan, embed_vector(plan.target), failure)
