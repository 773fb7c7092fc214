"""Probability vectors on the majorization lattice.

Vectors carry a numeric mode: ``"exact"`` stores :class:`fractions.Fraction`
components and never rounds, ``"float"`` stores Python floats and compares
cumulative sums with an absolute tolerance of :data:`EPS`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import (
    DimensionMismatchError,
    EmptySetError,
    NegativeEntryError,
    ShrinkNotAllowedError,
    SumNotOneError,
)

Scalar = Union[Fraction, float]

EPS = 1e-12
EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)


def to_scalar(x, mode: str) -> Scalar:
    """Coerce a number (or a ``"p/q"`` / decimal string) into ``mode``.

    Floats entering exact mode are read through their shortest decimal
    repr, so ``0.1`` becomes ``1/10`` rather than the binary expansion.
    """
    if mode == EXACT:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, Rational)):
            return Fraction(x)
        if isinstance(x, float):
            if not math.isfinite(x):
                raise ValueError(f"non-finite value {x!r}")
            return Fraction(repr(x))
        if isinstance(x, str):
            return Fraction(x.strip())
        raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")
    if mode == FLOAT:
        if isinstance(x, str):
            return float(Fraction(x.strip()))
        return float(x)
    raise ValueError(f"unknown mode {mode!r}")


def infer_mode(values: Iterable) -> str:
    for v in values:
        if isinstance(v, float):
            return FLOAT
    return EXACT


def tolerance(mode: str, tol: float | None = None) -> Scalar:
    if mode == EXACT:
        return 0
    return EPS if tol is None else tol


@dataclass(frozen=True)
class ProbVector:
    """Descending probability vector (coherence or Schmidt vector).

    Build instances through :func:`canonicalize`; the constructor trusts
    its input.
    """

    components: tuple
    mode: str = EXACT

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def support(self) -> int:
        """Number of components that are nonzero (above EPS in float mode)."""
        tol = tolerance(self.mode)
        return sum(1 for c in self.components if c > tol)

    def as_mode(self, mode: str) -> "ProbVector":
        if mode == self.mode:
            return self
        return ProbVector(tuple(to_scalar(c, mode) for c in self.components), mode)

    def to_floats(self) -> tuple:
        return tuple(float(c) for c in self.components)

    def lorenz(self) -> "LorenzCurve":
        return lorenz(self)

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.components)
        return f"ProbVector(({body}), {self.mode})"


@dataclass(frozen=True)
class LorenzCurve:
    """Partial sums ``s_k = c_1 + ... + c_k`` for ``k = 1..d``."""

    partial_sums: tuple
    mode: str = EXACT

    def __len__(self) -> int:
        return len(self.partial_sums)

    def increments(self) -> tuple:
        prev = 0
        out = []
        for s in self.partial_sums:
            out.append(s - prev)
            prev = s
        return tuple(out)

    def is_concave(self) -> bool:
        inc = self.increments()
        return all(inc[i] >= inc[i + 1] for i in range(len(inc) - 1))

    def to_vector(self) -> ProbVector:
        inc = self.increments()
        if self.mode == FLOAT:
            inc = tuple(max(0.0, c) for c in inc)
        return ProbVector(inc, self.mode)


class MajorizationOrder(enum.Enum):
    FIRST_MAJORIZED_BY_SECOND = "first_majorized_by_second"
    SECOND_MAJORIZED_BY_FIRST = "second_majorized_by_first"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def canonicalize(raw: Sequence, mode: str | None = None) -> ProbVector:
    """Validate ``raw`` as a distribution and sort it in descending order.

    Ties keep their original relative order. In float mode entries down to
    ``-EPS`` are clamped to zero and a sum within ``EPS * d`` of one is
    renormalized; anything further off raises.
    """
    values = list(raw)
    if not values:
        raise EmptySetError("a probability vector needs at least one component")
    if mode is None:
        mode = infer_mode(values)
    vals = [to_scalar(v, mode) for v in values]
    d = len(vals)

    if mode == EXACT:
        for i, v in enumerate(vals):
            if v < 0:
                raise NegativeEntryError(f"component {i} is negative: {v}")
        total = sum(vals, Fraction(0))
        if total != 1:
            raise SumNotOneError(f"components sum to {total}, not 1")
    else:
        for i, v in enumerate(vals):
            if not math.isfinite(v):
                raise NegativeEntryError(f"component {i} is not finite: {v}")
            if v < -EPS:
                raise NegativeEntryError(f"component {i} is negative: {v}")
        vals = [max(0.0, v) for v in vals]
        total = math.fsum(vals)
        if abs(total - 1.0) > EPS * d:
            raise SumNotOneError(f"components sum to {total!r}, not 1")
        if total != 1.0:
            vals = [v / total for v in vals]

    order = sorted(range(d), key=lambda i: (-vals[i], i))
    return ProbVector(tuple(vals[i] for i in order), mode)


def _common_mode(vectors: Sequence[ProbVector]) -> str:
    return EXACT if all(v.mode == EXACT for v in vectors) else FLOAT


def _align(vectors: Sequence[ProbVector]) -> tuple[list[ProbVector], str]:
    vectors = list(vectors)
    if not vectors:
        raise EmptySetError("operation needs at least one vector")
    d = vectors[0].dim
    for v in vectors[1:]:
        if v.dim != d:
            raise DimensionMismatchError(f"dimensions differ: {d} vs {v.dim}; pad() first")
    mode = _common_mode(vectors)
    return [v.as_mode(mode) for v in vectors], mode


def _cumsum(values: Sequence) -> tuple:
    out = []
    acc = 0
    for v in values:
        acc = acc + v
        out.append(acc)
    return tuple(out)


def lorenz(p: ProbVector) -> LorenzCurve:
    return LorenzCurve(_cumsum(p.components), p.mode)


def pad(p: ProbVector, d: int) -> ProbVector:
    if d < p.dim:
        raise ShrinkNotAllowedError(f"cannot pad a {p.dim}-vector down to {d}")
    zero = Fraction(0) if p.mode == EXACT else 0.0
    return ProbVector(p.components + (zero,) * (d - p.dim), p.mode)


def majorized(a: ProbVector, b: ProbVector, tol: float | None = None) -> bool:
    """True iff ``a`` is majorized by ``b`` (every prefix sum of a <= that of b)."""
    (a, b), mode = _align([a, b])
    eps = tolerance(mode, tol)
    return all(x <= y + eps for x, y in zip(_cumsum(a.components), _cumsum(b.components)))


def compare(a: ProbVector, b: ProbVector, tol: float | None = None) -> MajorizationOrder:
    ab = majorized(a, b, tol)
    ba = majorized(b, a, tol)
    if ab and ba:
        return MajorizationOrder.EQUAL
    if ab:
        return MajorizationOrder.FIRST_MAJORIZED_BY_SECOND
    if ba:
        return MajorizationOrder.SECOND_MAJORIZED_BY_FIRST
    return MajorizationOrder.INCOMPARABLE


def meet(vectors: Iterable[ProbVector]) -> ProbVector:
    """Greatest lower bound: pointwise minimum of the Lorenz curves, differenced."""
    vectors, mode = _align(list(vectors))
    curves = [_cumsum(v.components) for v in vectors]
    low = tuple(min(column) for column in zip(*curves))
    return LorenzCurve(low, mode).to_vector()


def _concave_majorant(sums: Sequence, mode: str) -> tuple:
    """Least concave majorant of the points (k, s_k), k = 0..d, evaluated at integers."""
    zero = Fraction(0) if mode == EXACT else 0.0
    pts = [(0, zero)] + [(k + 1, s) for k, s in enumerate(sums)]
    hull: list[tuple] = []
    for x, y in pts:
        # drop the middle point while it lies on or below the chord
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (y1 - y0) * (x - x0) <= (y - y0) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append((x, y))

    out = []
    seg = 0
    for k in range(1, len(sums) + 1):
        while hull[seg + 1][0] < k:
            seg += 1
        (x0, y0), (x1, y1) = hull[seg], hull[seg + 1]
        if k == x1:
            out.append(y1)
        elif mode == EXACT:
            out.append(y0 + (y1 - y0) * Fraction(k - x0, x1 - x0))
        else:
            out.append(y0 + (y1 - y0) * (k - x0) / (x1 - x0))
    return tuple(out)


def join(vectors: Iterable[ProbVector]) -> ProbVector:
    """Least upper bound.

    The pointwise maximum of Lorenz curves need not be concave; when it is
    not, it is replaced by its least concave majorant.
    """
    vectors, mode = _align(list(vectors))
    curves = [_cumsum(v.components) for v in vectors]
    high = LorenzCurve(tuple(max(column) for column in zip(*curves)), mode)
    if high.is_concave():
        return high.to_vector()
    return LorenzCurve(_concave_majorant(high.partial_sums, mode), mode).to_vector()


def shannon_entropy(p: ProbVector) -> float:
    """Shannon entropy in bits, always evaluated in floating point."""
    return -math.fsum(float(c) * math.log2(float(c)) for c in p.components if c > 0)


def gini_index(p: ProbVector) -> Scalar:
    d = p.dim
    if p.mode == EXACT:
        weighted = sum((i * c for i, c in enumerate(p.components, start=1)), Fraction(0))
        return Fraction(d + 1, d) - Fraction(2, d) * weighted
    weighted = math.fsum(i * c for i, c in enumerate(p.components, start=1))
    return (d + 1) / d - 2.0 / d * weighted


def distance_d(a: ProbVector, b: ProbVector) -> float:
    """Entropy-based lattice distance ``H(a) + H(b) - 2 H(a v b)``."""
    (a, b), _ = _align([a, b])
    return shannon_entropy(a) + shannon_entropy(b) - 2.0 * shannon_entropy(join([a, b]))


def distance_D(a: ProbVector, b: ProbVector) -> Scalar:
    """Gini-based lattice distance ``G(a) + G(b) - 2 G(a ^ b)``; exact in exact mode."""
    (a, b), _ = _align([a, b])
    return gini_index(a) + gini_index(b) - 2 * gini_index(meet([a, b]))


def uniform(d: int, mode: str = EXACT) -> ProbVector:
    return ProbVector((to_scalar(Fraction(1, d), mode),) * d, mode)


def point_mass(d: int, mode: str = EXACT) -> ProbVector:
    one, zero = to_scalar(1, mode), to_scalar(0, mode)
    return ProbVector((one,) + (zero,) * (d - 1), mode)
