"""Seeded Monte Carlo runs of the greedy and thrifty protocols.

Trial ``i`` takes word 0 of the first block numpy's Philox4x64 emits when
started at counter ``i`` under key ``seed``. Because the generator is
counter-based, any chunking of the trial range (serial, threaded, resumed)
yields the same outcomes. Success means ``u < q_1`` where ``u`` is the top
53 bits of the word scaled to [0, 1); the comparison is done on integers,
so exact probabilities are honoured exactly.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import ZeroProbabilityError
from .lattice import ProbVector, Scalar, shannon_entropy
from .protocols import GREEDY, THRIFTY, ProtocolPlan, greedy_plan, thrifty_plan
from .transform import monotones

log = logging.getLogger(__name__)

BOTH = "both"
PROTOCOLS = (GREEDY, THRIFTY, BOTH)
_MANTISSA = 1 << 53


@dataclass(frozen=True)
class SimConfig:
    seed: int = 42
    trials: int = 10_000
    protocol: str = BOTH
    record_outcomes: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.protocol not in PROTOCOLS:
            raise ValueError(f"protocol must be one of {PROTOCOLS}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class ProtocolStats:
    protocol: str
    success_state: ProbVector
    residual: Optional[ProbVector]
    mean_entropy: float  # final-state entropy averaged over all trials
    mean_failure_entropy: Optional[float]
    mean_monotones: tuple
    mean_failure_monotones: Optional[tuple]


@dataclass(frozen=True)
class SimReport:
    seed: int
    trials: int
    success_probability: Scalar
    successes: int
    deterministic: bool
    stats: tuple  # ProtocolStats per simulated protocol
    outcomes: Optional[tuple] = field(default=None, repr=False)

    @property
    def failures(self) -> int:
        return self.trials - self.successes

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials

    @property
    def three_sigma(self) -> float:
        q = float(self.success_probability)
        return 3.0 * math.sqrt(q * (1.0 - q) / self.trials)

    def for_protocol(self, name: str) -> ProtocolStats:
        for s in self.stats:
            if s.protocol == name:
                return s
        raise KeyError(name)


def success_threshold(q: Scalar) -> int:
    """Integer T with ``u53 < T`` iff ``u53 / 2**53 < q``."""
    q = Fraction(q)
    return -(-q.numerator * _MANTISSA // q.denominator)


def trial_words(seed: int, start: int, count: int) -> np.ndarray:
    """Raw 64-bit draws for trials ``start .. start + count - 1``."""
    gen = np.random.Philox(key=seed, counter=start)
    return gen.random_raw(4 * count)[::4]


def _successes(seed: int, threshold: int, start: int, count: int) -> np.ndarray:
    return (trial_words(seed, start, count) >> np.uint64(11)) < np.uint64(threshold)


def draw_outcomes(seed: int, trials: int, q: Scalar, chunk_size: int | None = None,
                  workers: int = 1) -> np.ndarray:
    """Boolean success vector, identical for every chunking and worker count."""
    threshold = success_threshold(q)
    chunk = trials if chunk_size is None else max(1, chunk_size)
    starts = list(range(0, trials, chunk))
    jobs = [(s, min(chunk, trials - s)) for s in starts]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda j: _successes(seed, threshold, *j), jobs))
    else:
        parts = [_successes(seed, threshold, s, n) for s, n in jobs]
    return np.concatenate(parts)


def _mean(values) -> float:
    values = list(values)
    return math.fsum(values) / len(values)


def _mean_curve(curves) -> tuple:
    curves = list(curves)
    return tuple(_mean(col) for col in zip(*curves))


def _stats(plan: ProtocolPlan, outcomes: np.ndarray) -> ProtocolStats:
    final = plan.success_state
    residual = plan.residual
    h_ok = shannon_entropy(final)
    c_ok = tuple(float(c) for c in monotones(final).values)
    if residual is None:
        h_fail, c_fail = None, None
    else:
        h_fail = shannon_entropy(residual)
        c_fail = tuple(float(c) for c in monotones(residual).values)

    per_trial_h = [h_ok if ok else h_fail for ok in outcomes.tolist()]
    per_trial_c = [c_ok if ok else c_fail for ok in outcomes.tolist()]
    failed = [i for i, ok in enumerate(outcomes.tolist()) if not ok]
    return ProtocolStats(
        protocol=plan.kind,
        success_state=final,
        residual=residual,
        mean_entropy=_mean(per_trial_h),
        mean_failure_entropy=_mean(per_trial_h[i] for i in failed) if failed else None,
        mean_monotones=_mean_curve(per_trial_c),
        mean_failure_monotones=_mean_curve(per_trial_c[i] for i in failed) if failed else None,
    )


def simulate(psi: ProbVector, phi: ProbVector, cfg: SimConfig, chunk_size: int | None = None,
             workers: int = 1) -> SimReport:
    """Run ``cfg.trials`` independent protocol attempts.

    Failure trials emit the closed-form residual of the plan. A deterministic
    instance is not an error: every trial succeeds and the report says so.
    """
    plans = []
    if cfg.protocol in (GREEDY, BOTH):
        plans.append(greedy_plan(psi, phi))
    if cfg.protocol in (THRIFTY, BOTH):
        plans.append(thrifty_plan(psi, phi))
    q = plans[0].success_probability
    if q == 0:
        raise ZeroProbabilityError("success probability is 0")
    deterministic = plans[0].deterministic
    if deterministic:
        log.warning("deterministic instance: every trial succeeds")

    outcomes = draw_outcomes(cfg.seed, cfg.trials, q, chunk_size, workers)
    return SimReport(
        seed=cfg.seed,
        trials=cfg.trials,
        success_probability=q,
        successes=int(outcomes.sum()),
        deterministic=deterministic,
        stats=tuple(_stats(p, outcomes) for p in plans),
        outcomes=tuple(bool(x) for x in outcomes.tolist()) if cfg.record_outcomes else None,
    )
