"""Quantum discord, classical correlation and concurrence in small spin clusters."""

from .qcore import DensityMatrix, Spectrum, eig_hermitian, partial_trace_pair, thermal_state, von_neumann_entropy
from .xstate import CorrelationReport, XState, analyze, discord_numeric, discord_symmetric
from .clusters import PairKind, TetramerParams, TrimerParams
from .decoherence import apply_dephasing, trajectory, werner

__version__ = "0.1.0"

__all__ = [
    "DensityMatrix",
    "Spectrum",
    "eig_hermitian",
    "partial_trace_pair",
    "thermal_state",
    "von_neumann_entropy",
    "CorrelationReport",
    "XState",
    "analyze",
    "discord_numeric",
    "discord_symmetric",
    "PairKind",
    "TetramerParams",
    "TrimerParams",
    "apply_dephasing",
    "trajectory",
    "werner",
]
