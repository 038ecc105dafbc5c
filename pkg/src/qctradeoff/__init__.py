"""Quantum-classical trade-off curves for finite pure-state sources.

Computes Q*(R) = M(E, R), the minimal qubit rate at classical rate R, via a
barycentric LP over ensemble decompositions, together with derived
quantities (information-disturbance X, remote-state-preparation N, blind
rate, AVS supremum, tensor combination), group-covariant reductions, the
uniform-qubit closed form, and a desk-scale typicality / channel-simulation
toolkit.
"""

from ._backend import BACKEND
from .qcore import (
    Ensemble,
    binary_entropy,
    classical_info,
    conditional_chi,
    eta,
    fannes_bound,
    fidelity,
    holevo_chi,
    shannon_entropy,
    von_neumann_entropy,
)
from .simplexlp import InfeasibleError
from .solver import (
    DecompositionPoint,
    SimplexGrid,
    TradeoffCurve,
    avs_sup,
    blind_rate,
    schur_monotonicity_check,
    solve_M,
    solve_N_rsp,
    solve_X,
    tensor_tradeoff,
    trade_off_curve,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Ensemble",
    "InfeasibleError",
    "DecompositionPoint",
    "SimplexGrid",
    "TradeoffCurve",
    "avs_sup",
    "binary_entropy",
    "blind_rate",
    "classical_info",
    "conditional_chi",
    "eta",
    "fannes_bound",
    "fidelity",
    "holevo_chi",
    "schur_monotonicity_check",
    "shannon_entropy",
    "solve_M",
    "solve_N_rsp",
    "solve_X",
    "tensor_tradeoff",
    "trade_off_curve",
    "von_neumann_entropy",
]
