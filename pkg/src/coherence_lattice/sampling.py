"""Random instance generators for property checks.

All generators take a :class:`numpy.random.Generator` so callers control
seeding. Two samplers matter for the closest-state checks: states reachable
from ``psi`` are drawn as ``join(psi, r)`` for random ``r``, and states that
can reach ``phi`` are drawn by repeated random pairwise mixing of ``phi``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .lattice import EXACT, FLOAT, ProbVector, canonicalize, join, majorized
from .transform import max_probability

DEFAULT_SEED = 20240917


def random_vector(rng: np.random.Generator, d: int, mode: str = FLOAT, zeros: int = 0) -> ProbVector:
    """Random distribution on ``d`` outcomes, the last ``zeros`` forced to 0.

    Float vectors are Dirichlet(1) draws; exact vectors use random integer
    weights in [1, 1000] over their sum.
    """
    live = d - zeros
    if mode == EXACT:
        w = [int(x) for x in rng.integers(1, 1001, size=live)]
        total = sum(w)
        vals = [Fraction(x, total) for x in w] + [Fraction(0)] * zeros
    else:
        vals = list(rng.dirichlet(np.ones(live))) + [0.0] * zeros
    return canonicalize(vals, mode)


def pairwise_mix(rng: np.random.Generator, p: ProbVector, steps: int = 4) -> ProbVector:
    """Apply ``steps`` random T-transforms; the result is majorized by ``p``."""
    vals = list(p.components)
    d = len(vals)
    if d < 2:
        return p
    for _ in range(steps):
        i, j = (int(x) for x in rng.choice(d, size=2, replace=False))
        if p.mode == EXACT:
            t = Fraction(int(rng.integers(0, 101)), 100)
        else:
            t = float(rng.random())
        a, b = vals[i], vals[j]
        vals[i] = t * a + (1 - t) * b
        vals[j] = (1 - t) * a + t * b
    return canonicalize(vals, p.mode)


def random_reachable(rng: np.random.Generator, psi: ProbVector) -> ProbVector:
    """A state majorizing ``psi``, i.e. deterministically reachable from it."""
    return join([psi, random_vector(rng, psi.dim, psi.mode)])


def random_comparable_pair(rng: np.random.Generator, d: int, mode: str = FLOAT) -> tuple:
    """``(low, high)`` with ``low`` majorized by ``high``."""
    high = random_vector(rng, d, mode)
    return pairwise_mix(rng, high, steps=int(rng.integers(1, 2 * d + 1))), high


def random_probabilistic_instance(rng: np.random.Generator, d: int, mode: str = FLOAT) -> tuple:
    """``(psi, phi)`` where the conversion succeeds with probability in (0, 1)."""
    while True:
        psi = random_vector(rng, d, mode)
        zeros = int(rng.integers(0, d)) if rng.random() < 0.2 else 0
        phi = random_vector(rng, d, mode, zeros=zeros)
        if majorized(psi, phi):
            continue
        if 0 < max_probability(psi, phi) < 1:
            return psi, phi
