"""Ensemble targets and mixed-state transformations.

Density matrices are numpy arrays and always live in float mode. Block
partitions use 1-based basis labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    BlockNotPureError,
    ConsistencyError,
    DimensionTooLargeError,
    EmptySetError,
    InvalidDensityMatrixError,
    WeightsInvalidError,
    ZeroProbabilityError,
)
from .lattice import (
    FLOAT,
    ProbVector,
    Scalar,
    _align,
    canonicalize,
    join,
    majorized,
    meet,
    pad,
    tolerance,
    to_scalar,
)
from .transform import PureState, coherence_vector, max_probability, monotones

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
TRACE_TOL = 1e-10
RANK_ONE_TOL = 1e-9
MAX_SEARCH_DIM = 12


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidDensityMatrixError(f"expected a square matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise InvalidDensityMatrixError("matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL:
            raise InvalidDensityMatrixError(f"trace is {np.trace(m).real!r}, not 1")
        if np.linalg.eigvalsh(m).min() < -PSD_TOL:
            raise InvalidDensityMatrixError("matrix has a negative eigenvalue")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_pure(cls, amplitudes: Sequence) -> "DensityMatrix":
        v = np.asarray(amplitudes, dtype=complex)
        return cls(np.outer(v, v.conj()))

    @classmethod
    def mixture(cls, weights: Sequence[float], states: Sequence[Sequence]) -> "DensityMatrix":
        m = sum(w * np.outer(np.asarray(s, complex), np.asarray(s, complex).conj()) for w, s in zip(weights, states))
        return cls(m)

    @classmethod
    def diagonal(cls, values: Sequence[float]) -> "DensityMatrix":
        return cls(np.diag(np.asarray(values, dtype=complex)))


@dataclass(frozen=True)
class ProjectorPartition:
    blocks: tuple  # tuple of sorted tuples of 1-based labels

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(i) for i in b)) for b in self.blocks)
        if any(len(b) == 0 for b in blocks):
            raise ValueError("partition blocks must be nonempty")
        labels = [i for b in blocks for i in b]
        if len(labels) != len(set(labels)):
            raise ValueError("partition blocks overlap")
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise ValueError("partition must cover labels 1..d exactly")
        object.__setattr__(self, "blocks", tuple(sorted(blocks)))

    @property
    def dim(self) -> int:
        return sum(len(b) for b in self.blocks)

    def projector(self, alpha: int) -> np.ndarray:
        p = np.zeros((self.dim, self.dim))
        for i in self.blocks[alpha]:
            p[i - 1, i - 1] = 1.0
        return p

    @classmethod
    def trivial(cls, d: int) -> "ProjectorPartition":
        return cls((tuple(range(1, d + 1)),))


@dataclass(frozen=True)
class Ensemble:
    members: tuple  # ((weight, ProbVector), ...)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple((w, p) for w, p in self.members))

    def mixture(self) -> ProbVector:
        if not self.members:
            raise EmptySetError("empty ensemble")
        vecs, mode = _align([p for _, p in self.members])
        weights = [to_scalar(w, mode) for w, _ in self.members]
        eps = tolerance(mode) * len(weights)
        if any(w < 0 for w in weights) or abs(sum(weights) - 1) > eps:
            raise WeightsInvalidError(f"weights must be nonnegative and sum to 1, got {weights}")
        mix = [sum(w * v[i] for w, v in zip(weights, vecs)) for i in range(vecs[0].dim)]
        return canonicalize(mix, mode)


def ocr_state(states: Iterable[ProbVector], tol: float | None = None) -> ProbVector:
    """Meet of a set of coherence vectors.

    Its monotones are checked against the member-wise maxima before returning.
    """
    states = list(states)
    if not states:
        raise EmptySetError("ocr_state needs at least one state")
    out = meet(states)
    eps = tolerance(out.mode, tol) * out.dim
    expected = [max(col) for col in zip(*(monotones(s).values for s in _align(states)[0]))]
    if any(abs(a - b) > eps for a, b in zip(monotones(out).values, expected)):
        raise ConsistencyError("meet monotones differ from member-wise maxima")
    return out


def ensemble_ocr_probability(psi: ProbVector, targets: Iterable[ProbVector], tol: float | None = None) -> Scalar:
    """Optimal probability of reaching the common meet of ``psi`` and all targets.

    Cross-checked against the smallest individual optimal probability.
    """
    targets = list(targets)
    if not targets:
        raise EmptySetError("no targets")
    bottom = ocr_state([psi, *targets], tol)
    q = max_probability(psi, bottom, tol)
    individual = min(max_probability(psi, t, tol) for t in targets)
    if abs(q - individual) > tolerance(bottom.mode, tol) * bottom.dim:
        raise ConsistencyError(f"ensemble probability {q} differs from individual minimum {individual}")
    if q == 0:
        raise ZeroProbabilityError("some target has more nonzero components than the source")
    return q


def ensemble_obtainable(psi: ProbVector, ensemble: Ensemble, tol: float | None = None) -> bool:
    return majorized(psi, ensemble.mixture(), tol)


def diagonal_vector(sigma: DensityMatrix) -> ProbVector:
    return canonicalize([float(x) for x in np.real(np.diag(sigma.entries))], FLOAT)


def _block_state(rho: np.ndarray, block: Sequence[int]) -> Optional[tuple]:
    """``(weight, amplitudes)`` for a rank-one block, None for a zero block.

    Raises BlockNotPureError when the block has rank above one.
    """
    idx = [i - 1 for i in block]
    sub = rho[np.ix_(idx, idx)]
    weight = float(np.trace(sub).real)
    if weight <= PSD_TOL:
        return None
    vals, vecs = np.linalg.eigh(sub / weight)
    if len(vals) > 1 and vals[-2] > RANK_ONE_TOL:
        raise BlockNotPureError(f"block {tuple(block)} is mixed (second eigenvalue {vals[-2]:.3g})")
    v = vecs[:, -1]
    # fix the global phase so the largest-modulus amplitude is real positive
    k = int(np.argmax(np.abs(v)))
    v = v * (abs(v[k]) / v[k])
    amps = np.zeros(rho.shape[0], dtype=complex)
    amps[idx] = v
    return weight, amps


def block_decompose(rho: DensityMatrix, partition: ProjectorPartition) -> list:
    """Pure states ``P rho P / Tr[P rho P]`` for each nonzero block.

    Returns ``[(weight, PureState), ...]`` with states embedded in the full
    dimension; zero-trace blocks are skipped.
    """
    if partition.dim != rho.dim:
        raise ValueError(f"partition covers {partition.dim} labels, matrix has dimension {rho.dim}")
    out = []
    for block in partition.blocks:
        got = _block_state(rho.entries, block)
        if got is not None:
            w, amps = got
            out.append((w, PureState(tuple(complex(a) for a in amps))))
    return out


def _block_vectors(rho: DensityMatrix, partition: ProjectorPartition) -> list:
    return [coherence_vector(s) for _, s in block_decompose(rho, partition)]


def deterministic_mixed_feasible(rho: DensityMatrix, sigma: DensityMatrix, partition: ProjectorPartition,
                                 tol: float | None = None) -> bool:
    try:
        vectors = _block_vectors(rho, partition)
    except BlockNotPureError:
        return False
    target = diagonal_vector(sigma)
    return all(majorized(pad(v, target.dim), target, tol) for v in vectors)


def _is_pure_block(rho: np.ndarray, block: tuple) -> bool:
    try:
        _block_state(rho, block)
    except BlockNotPureError:
        return False
    return True


def search_partition(rho: DensityMatrix) -> Optional[ProjectorPartition]:
    """Coarsest partition whose blocks are all pure.

    Partitions are ranked by block count, then lexicographically by their
    sorted blocks. Singleton blocks are always pure, so a partition exists
    for every valid input; ``None`` is kept in the signature for callers
    that treat "not found" uniformly.
    """
    d = rho.dim
    if d > MAX_SEARCH_DIM:
        raise DimensionTooLargeError(f"exhaustive search is capped at d={MAX_SEARCH_DIM}, got {d}")
    m = rho.entries
    pure_cache: dict = {}

    def pure(block: tuple) -> bool:
        if block not in pure_cache:
            pure_cache[block] = _is_pure_block(m, block)
        return pure_cache[block]

    def candidates(remaining: tuple):
        # blocks containing the smallest remaining label, in lexicographic order
        first, rest = remaining[0], remaining[1:]
        subsets = [()]
        for x in rest:
            subsets += [s + (x,) for s in subsets]
        for s in sorted((first,) + s for s in subsets):
            if pure(s):
                yield s

    def search(remaining: tuple, budget: int) -> Optional[list]:
        if not remaining:
            return []
        if budget == 0:
            return None
        for block in candidates(remaining):
            rest = tuple(x for x in remaining if x not in block)
            if len(rest) > 0 and budget == 1:
                continue
            tail = search(rest, budget - 1)
            if tail is not None:
                return [block] + tail
        return None

    labels = tuple(range(1, d + 1))
    for k in range(1, d + 1):
        found = search(labels, k)
        if found is not None:
            return ProjectorPartition(tuple(found))
    return None


@dataclass(frozen=True)
class MixedPlan:
    """Greedy-style plan for reaching the target diagonal from pure blocks."""

    target: ProbVector
    block_states: tuple  # coherence vectors of the pure blocks
    ocp_state: ProbVector  # join of the target and every block state
    ocp_probability: Scalar
    block_ocp_states: tuple
    block_probabilities: tuple
    inequality_holds: bool  # ocp_probability <= every block probability
    strict: bool  # ocp_probability strictly below the smallest block probability


def mixed_pct_plan_from_vectors(blocks: Sequence[ProbVector], target: ProbVector,
                                tol: float | None = None) -> MixedPlan:
    blocks = [pad(b, target.dim) for b in blocks]
    if not blocks:
        raise EmptySetError("need at least one block state")
    vecs, mode = _align([target, *blocks])
    target, blocks = vecs[0], vecs[1:]
    top = join([target, *blocks])
    q_top = max_probability(top, target, tol)
    per_block = tuple(join([b, target]) for b in blocks)
    q_blocks = tuple(max_probability(v, target, tol) for v in per_block)
    eps = tolerance(mode, tol)
    return MixedPlan(
        target=target,
        block_states=tuple(blocks),
        ocp_state=top,
        ocp_probability=q_top,
        block_ocp_states=per_block,
        block_probabilities=q_blocks,
        inequality_holds=all(q_top <= q + eps for q in q_blocks),
        strict=q_top < min(q_blocks) - eps,
    )


def mixed_pct_plan(rho: DensityMatrix, sigma: DensityMatrix, partition: ProjectorPartition,
                   tol: float | None = None) -> MixedPlan:
    return mixed_pct_plan_from_vectors(_block_vectors(rho, partition), diagonal_vector(sigma), tol)
