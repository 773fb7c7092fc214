"""Majorization-lattice toolkit for probabilistic coherence transformations."""

from .errors import LatticeError
from .lattice import (
    EPS,
    EXACT,
    FLOAT,
    LorenzCurve,
    MajorizationOrder,
    ProbVector,
    canonicalize,
    compare,
    distance_D,
    distance_d,
    gini_index,
    join,
    lorenz,
    majorized,
    meet,
    pad,
    shannon_entropy,
)
from .protocols import ProtocolPlan, compare_protocols, greedy_plan, thrifty_plan
from .transform import (
    CoherenceMonotones,
    DiagonalOperator,
    PureState,
    TransformLadder,
    coherence_vector,
    deterministic_feasible,
    failure_operator,
    fidelity,
    intermediate_state,
    ladder,
    max_probability,
    monotones,
    residual_state,
    success_operator,
)

__version__ = "0.1.0"

__all__ = [
    "canonicalize",
    "coherence_vector",
    "CoherenceMonotones",
    "compare",
    "compare_protocols",
    "deterministic_feasible",
    "DiagonalOperator",
    "distance_D",
    "distance_d",
    "EPS",
    "EXACT",
    "failure_operator",
    "fidelity",
    "FLOAT",
    "gini_index",
    "greedy_plan",
    "intermediate_state",
    "join",
    "ladder",
    "LatticeError",
    "lorenz",
    "LorenzCurve",
    "MajorizationOrder",
    "majorized",
    "max_probability",
    "meet",
    "monotones",
    "pad",
    "ProbVector",
    "ProtocolPlan",
    "PureState",
    "residual_state",
    "shannon_entropy",
    "success_operator",
    "thrifty_plan",
    "TransformLadder",
]
