"""Single-copy pure-state coherence transformations.

Coherence monotones are suffix sums ``C_l = c_l + ... + c_d`` of the
coherence vector. The transformation ladder ``[(q_1, l_1), ..., (q_k, l_k)]``
is the recursive sequence of minimal monotone ratios; ``q_1`` is the optimal
success probability, and the ladder splits indices into segments
``[l_j, l_{j-1} - 1]`` (with ``l_0 = d + 1``) on which the target is rescaled
by ``q_j``. All indices exposed here are 1-based.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    DeterministicLadderError,
    DeterministicNoResidualError,
    DimensionMismatchError,
    EntryExceedsOneError,
    LadderMismatchError,
    NotNormalizedError,
    UnsupportedTargetError,
)
from .lattice import (
    EXACT,
    FLOAT,
    ProbVector,
    Scalar,
    _align,
    canonicalize,
    majorized,
    tolerance,
    to_scalar,
)


@dataclass(frozen=True)
class PureState:
    """State vector in the incoherent reference basis."""

    amplitudes: tuple

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", tuple(self.amplitudes))

    @property
    def dim(self) -> int:
        return len(self.amplitudes)

    @classmethod
    def from_coherence(cls, p: ProbVector, phases: Sequence[float] | None = None) -> "PureState":
        """State with amplitudes ``sqrt(p_i)`` (times optional phases ``e^{i theta}``)."""
        amps = [math.sqrt(float(c)) for c in p.components]
        if phases is not None:
            amps = [a * cmath.exp(1j * t) for a, t in zip(amps, phases)]
        return cls(tuple(amps))

    def norm_squared(self) -> float:
        return math.fsum(abs(a) ** 2 for a in self.amplitudes)


def coherence_vector(state: PureState, mode: str | None = None, tol: float = 1e-12) -> ProbVector:
    """Squared moduli of the amplitudes, sorted descending.

    Integer or Fraction amplitudes give an exact vector unless ``mode`` says
    otherwise; anything else is evaluated in floating point.
    """
    amps = state.amplitudes
    rational = all(isinstance(a, (int, Fraction)) for a in amps)
    if mode is None:
        mode = EXACT if rational else FLOAT
    if mode == EXACT and rational:
        probs = [Fraction(a) ** 2 for a in amps]
        if sum(probs) != 1:
            raise NotNormalizedError(f"squared amplitudes sum to {sum(probs)}")
        return canonicalize(probs, EXACT)
    probs = [abs(complex(a)) ** 2 for a in amps]
    total = math.fsum(probs)
    if abs(total - 1.0) > tol * max(1, len(probs)):
        raise NotNormalizedError(f"squared amplitudes sum to {total!r}")
    p = canonicalize(probs, FLOAT)
    return p.as_mode(mode)


@dataclass(frozen=True)
class CoherenceMonotones:
    values: tuple
    mode: str = EXACT

    def __getitem__(self, l: int) -> Scalar:
        """``C_l`` with the 1-based index used throughout; ``C_{d+1} = 0``."""
        if l == len(self.values) + 1:
            return Fraction(0) if self.mode == EXACT else 0.0
        if not 1 <= l <= len(self.values):
            raise IndexError(l)
        return self.values[l - 1]

    def __len__(self) -> int:
        return len(self.values)


def monotones(p: ProbVector) -> CoherenceMonotones:
    out = []
    acc = Fraction(0) if p.mode == EXACT else 0.0
    for c in reversed(p.components):
        acc = acc + c
        out.append(acc)
    return CoherenceMonotones(tuple(reversed(out)), p.mode)


def deterministic_feasible(psi: ProbVector, phi: ProbVector, tol: float | None = None) -> bool:
    return majorized(psi, phi, tol)


@dataclass(frozen=True)
class TransformLadder:
    steps: tuple  # ((q_1, l_1), ..., (q_k, l_k))
    dim: int
    mode: str = EXACT

    @property
    def q1(self) -> Scalar:
        return self.steps[0][0]

    @property
    def deterministic(self) -> bool:
        return self.q1 == 1

    @property
    def ratios(self) -> tuple:
        return tuple(q for q, _ in self.steps)

    @property
    def indices(self) -> tuple:
        return tuple(l for _, l in self.steps)

    def segments(self) -> Iterator[tuple]:
        """Yield ``(q_j, first, last)`` with 1-based inclusive index bounds."""
        upper = self.dim + 1
        for q, l in self.steps:
            yield q, l, upper - 1
            upper = l

    def multipliers(self) -> tuple:
        """Per-index scale factors ``m_i = q_j`` for i in segment j."""
        m = [None] * self.dim
        for q, first, last in self.segments():
            for i in range(first - 1, last):
                m[i] = q
        return tuple(m)


def _deterministic_ladder(d: int, mode: str) -> TransformLadder:
    return TransformLadder(((to_scalar(1, mode), 1),), d, mode)


def _check_support(psi: ProbVector, phi: ProbVector) -> None:
    if psi.support < phi.support:
        raise UnsupportedTargetError(
            f"source has {psi.support} nonzero components, target needs {phi.support}"
        )


def ladder(psi: ProbVector, phi: ProbVector, tol: float | None = None) -> TransformLadder:
    """Recursive minimal monotone ratios driving the optimal probabilistic protocol.

    When ``psi`` is already majorized by ``phi`` the single step ``(1, 1)``
    is returned. Ratios whose denominator vanishes are skipped, and among
    (tolerance-)tied ratios the smallest index wins.
    """
    (psi, phi), mode = _align([psi, phi])
    d = psi.dim
    _check_support(psi, phi)
    if majorized(psi, phi, tol):
        return _deterministic_ladder(d, mode)

    eps = tolerance(mode, tol)
    cp, cf = monotones(psi), monotones(phi)
    steps = []
    upper = d + 1
    while upper > 1:
        base_p, base_f = cp[upper], cf[upper]
        best = None
        best_l = None
        for l in range(1, upper):
            den = cf[l] - base_f
            if den <= eps:
                continue
            r = (cp[l] - base_p) / den
            if best is None or r < best - eps:
                best, best_l = r, l
        if best is None:
            # only reachable if the target has no weight left below `upper`
            raise UnsupportedTargetError("no admissible monotone ratio")
        steps.append((best, best_l))
        upper = best_l
    return TransformLadder(tuple(steps), d, mode)


def max_probability(psi: ProbVector, phi: ProbVector, tol: float | None = None) -> Scalar:
    """Optimal conversion probability ``min(1, min_l C_l(psi) / C_l(phi))``.

    Returns 0 when the target has larger support than the source.
    """
    (psi, phi), mode = _align([psi, phi])
    zero, one = to_scalar(0, mode), to_scalar(1, mode)
    if psi.support < phi.support:
        return zero
    if majorized(psi, phi, tol):
        return one
    eps = tolerance(mode, tol)
    cp, cf = monotones(psi), monotones(phi)
    best = one
    for l in range(1, psi.dim + 1):
        if cf[l] <= eps:
            continue
        r = cp[l] / cf[l]
        if r < best:
            best = r
    return best


def _scaled(factors: Sequence, p: ProbVector) -> ProbVector:
    return ProbVector(tuple(m * c for m, c in zip(factors, p.components)), p.mode)


def intermediate_state(phi: ProbVector, lad: TransformLadder, tol: float | None = None) -> ProbVector:
    """Rescale each ladder segment of ``phi`` by its ratio ``q_j``."""
    if lad.dim != phi.dim:
        raise LadderMismatchError(f"ladder is for dimension {lad.dim}, vector has {phi.dim}")
    mode = EXACT if (phi.mode == EXACT and lad.mode == EXACT) else FLOAT
    phi = phi.as_mode(mode)
    m = [to_scalar(q, mode) for q in lad.multipliers()]
    out = _scaled(m, phi)
    total = sum(out.components)
    if abs(total - 1) > tolerance(mode, tol) * phi.dim:
        raise LadderMismatchError(f"ladder does not fit this vector (rescaled sum {total})")
    return out


@dataclass(frozen=True)
class DiagonalOperator:
    """Diagonal Kraus operator stored through its squared entries.

    Squares stay rational in exact mode even when the entries themselves
    are irrational; :attr:`diagonal` gives the nonnegative square roots.
    """

    squared: tuple
    mode: str = EXACT

    @property
    def diagonal(self) -> tuple:
        return tuple(math.sqrt(float(s)) for s in self.squared)

    @property
    def dim(self) -> int:
        return len(self.squared)

    def apply(self, amplitudes: Sequence) -> tuple:
        return tuple(m * a for m, a in zip(self.diagonal, amplitudes))

    def matrix(self):
        import numpy as np

        return np.diag(self.diagonal)


def success_operator(lad: TransformLadder) -> DiagonalOperator:
    """Diagonal SIO with entry ``sqrt(q_1 / q_j)`` on segment j."""
    if lad.deterministic:
        raise DeterministicLadderError("deterministic ladder has no probabilistic step")
    q1 = lad.q1
    return DiagonalOperator(tuple(q1 / q for q in lad.multipliers()), lad.mode)


def failure_operator(M: DiagonalOperator, tol: float | None = None) -> DiagonalOperator:
    """Positive diagonal ``N`` completing ``M^dag M + N^dag N = I``."""
    eps = tolerance(M.mode, tol)
    one = to_scalar(1, M.mode)
    out = []
    for i, s in enumerate(M.squared):
        if s > one + eps:
            raise EntryExceedsOneError(f"entry {i} of M has modulus above one")
        out.append(max(one - s, to_scalar(0, M.mode)))
    return DiagonalOperator(tuple(out), M.mode)


def residual_state(intermediate: ProbVector, lad: TransformLadder) -> ProbVector:
    """Coherence vector left behind when the probabilistic step fails."""
    if lad.deterministic:
        raise DeterministicNoResidualError("success probability is 1; the failure branch is empty")
    if lad.dim != intermediate.dim:
        raise LadderMismatchError(f"ladder is for dimension {lad.dim}, vector has {intermediate.dim}")
    mode = EXACT if (intermediate.mode == EXACT and lad.mode == EXACT) else FLOAT
    intermediate = intermediate.as_mode(mode)
    N = failure_operator(success_operator(lad))
    q1 = to_scalar(lad.q1, mode)
    n = [to_scalar(s, mode) / (1 - q1) for s in N.squared]
    raw = [a * b for a, b in zip(n, intermediate.components)]
    total = sum(raw)
    return ProbVector(tuple(c / total for c in raw), mode)


def fidelity(a: PureState, b: PureState) -> float:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimensions differ: {a.dim} vs {b.dim}")
    overlap = sum(complex(x).conjugate() * complex(y) for x, y in zip(a.amplitudes, b.amplitudes))
    return abs(overlap) ** 2


def coherence_fidelity(a: ProbVector, b: ProbVector) -> float:
    """Fidelity of the real nonnegative states built from two coherence vectors."""
    (a, b), _ = _align([a, b])
    return math.fsum(math.sqrt(float(x) * float(y)) for x, y in zip(a, b)) ** 2
