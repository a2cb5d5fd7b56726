"""Spin-1/2 trimer and tetramer clusters.

The trimer is a ring of three spins with XXZ exchange (anisotropy
``epsilon`` scales the transverse part) in an optional longitudinal field.
The tetramer is a square with isotropic nearest-neighbour coupling ``J1``
along the edges and ``J2`` across the diagonals.

Energies are in units of the exchange constant and ``k_B = 1``; a
temperature of exactly zero selects the equal-weight ground-state mixture.
Sites are numbered from 0. Tetramer edges are (0,1), (1,2), (2,3), (3,0);
diagonals are (0,2) and (1,3).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import qcore
from .qcore import SX, SY, SZ, DensityMatrix, Spectrum, site_operator
from .xstate import XState, analyze

BOUNDARY_TOL = 1e-12


class FieldNotSupported(ValueError):
    pass


class PairKind(str, enum.Enum):
    NN = "nn"
    NNN = "nnn"

    @property
    def sites(self) -> tuple[int, int]:
        return (0, 1) if self is PairKind.NN else (0, 2)


@dataclass(frozen=True)
class TrimerParams:
    J: float = 1.0
    epsilon: float = 1.0
    h: float = 0.0
    T: float = 0.0

    def __post_init__(self):
        if self.epsilon > 1 + 1e-12:
            raise ValueError(f"anisotropy must be <= 1, got {self.epsilon}")
        if self.h < 0:
            raise ValueError("field h must be >= 0")
        if self.T < 0:
            raise ValueError("temperature must be >= 0")


@dataclass(frozen=True)
class TetramerParams:
    J1: float = 1.0
    J2: float = 0.5
    T: float = 0.0

    def __post_init__(self):
        if not (self.J1 > 0 and self.J2 > 0):
            raise ValueError("tetramer couplings J1, J2 must both be positive")
        if self.T < 0:
            raise ValueError("temperature must be >= 0")


def _bond(i: int, j: int, n: int, transverse: float = 1.0) -> np.ndarray:
    zz = site_operator(SZ, i, n) @ site_operator(SZ, j, n)
    xy = site_operator(SX, i, n) @ site_operator(SX, j, n) + site_operator(SY, i, n) @ site_operator(SY, j, n)
    return zz + transverse * xy


# -- trimer -----------------------------------------------------------------

TRIMER_BONDS = ((0, 1), (1, 2), (2, 0))


def trimer_hamiltonian(p: TrimerParams) -> np.ndarray:
    """J sum S^z S^z + eps J sum (S^x S^x + S^y S^y) + h sum S^z on the ring."""
    h = sum(p.J * _bond(i, j, 3, p.epsilon) for i, j in TRIMER_BONDS)
    h = h + p.h * sum(site_operator(SZ, k, 3) for k in range(3))
    return h


def trimer_spectrum_analytic(p: TrimerParams) -> np.ndarray:
    """Closed-form levels E1..E8 (same labelling as the eigenstates |1>..|8>)."""
    J, e, h = p.J, p.epsilon, p.h
    low = -(1 + 2 * e) * J / 4
    mid = -(1 - 4 * e) * J / 4
    return np.array(
        [
            3 * J / 4 + 3 * h / 2,
            h / 2 + low,
            h / 2 + low,
            h / 2 + mid,
            -h / 2 + low,
            -h / 2 + low,
            -h / 2 + mid,
            3 * J / 4 - 3 * h / 2,
        ]
    )


@lru_cache(maxsize=256)
def _trimer_spectrum(J: float, epsilon: float, h: float) -> Spectrum:
    return qcore.eig_hermitian(trimer_hamiltonian(TrimerParams(J, epsilon, h)))


def trimer_state(p: TrimerParams) -> DensityMatrix:
    """Full 8x8 state: Gibbs at T > 0, equal-weight ground mixture at T = 0."""
    spec = _trimer_spectrum(p.J, p.epsilon, p.h)
    if p.T == 0:
        tol = 1e-9 * max(abs(p.J), abs(p.h), 1e-300)
        return qcore.ground_state_mixture_from_spectrum(spec, tol)
    return qcore.thermal_state_from_spectrum(spec, 1.0 / p.T)


def trimer_rdm(p: TrimerParams, pair: tuple[int, int] = (0, 1)) -> DensityMatrix:
    return qcore.partial_trace_pair(trimer_state(p), *pair)


def trimer_ground_rdm(p: TrimerParams, pair: tuple[int, int] = (0, 1)) -> DensityMatrix:
    """Two-site reduction of the ground mixture (``p.T`` is ignored)."""
    return trimer_rdm(TrimerParams(p.J, p.epsilon, p.h, 0.0), pair)


def trimer_partition_function(p: TrimerParams) -> float:
    """Z = 2 (e^{-3g} + 2 e^{(1+2 eps) g} + e^{(1-4 eps) g}) with g = J / 4T."""
    g = p.J / (4 * p.T)
    e = p.epsilon
    return 2 * (math.exp(-3 * g) + 2 * math.exp((1 + 2 * e) * g) + math.exp((1 - 4 * e) * g))


def trimer_thermal_xstate(p: TrimerParams) -> XState:
    """Closed-form reduced thermal pair state of the zero-field trimer."""
    if p.h != 0:
        raise FieldNotSupported("closed-form thermal elements exist only for h = 0")
    if p.T <= 0:
        raise ValueError("closed-form thermal elements need T > 0")
    g = p.J / (4 * p.T)
    e = p.epsilon
    x = np.array([-3 * g, (1 + 2 * e) * g, (1 - 4 * e) * g])
    w1, w2, w3 = np.exp(x - x.max())  # common factor cancels against Z
    z_part = 2 * (w1 + 2 * w2 + w3)
    a = (w1 + 2 / 3 * w2 + 1 / 3 * w3) / z_part
    b = 2 / (3 * z_part) * (2 * w2 + w3)
    z = 2 / (3 * z_part) * (w3 - w2)
    return XState(a, b, b, a, z, 0.0)


# -- tetramer ---------------------------------------------------------------

TETRAMER_EDGES = ((0, 1), (1, 2), (2, 3), (3, 0))
TETRAMER_DIAGONALS = ((0, 2), (1, 3))


def tetramer_hamiltonian(p: TetramerParams) -> np.ndarray:
    """J1 sum_edges S_i.S_j + J2 sum_diagonals S_i.S_j."""
    return sum(p.J1 * _bond(i, j, 4) for i, j in TETRAMER_EDGES) + sum(
        p.J2 * _bond(i, j, 4) for i, j in TETRAMER_DIAGONALS
    )


def tetramer_spectrum_analytic(p: TetramerParams) -> list[tuple[float, int]]:
    """The five levels e1..e5 with their multiplicities."""
    J1, J2 = p.J1, p.J2
    return [
        (J1 + J2 / 2, 5),
        (-J2 / 2, 6),
        (-J1 + J2 / 2, 3),
        (-3 * J2 / 2, 1),
        (-2 * J1 + J2 / 2, 1),
    ]


def tetramer_partition_function(p: TetramerParams) -> float:
    beta = 1.0 / p.T
    return sum(g * math.exp(-beta * e) for e, g in tetramer_spectrum_analytic(p))


@lru_cache(maxsize=256)
def _tetramer_spectrum(J1: float, J2: float) -> Spectrum:
    return qcore.eig_hermitian(tetramer_hamiltonian(TetramerParams(J1, J2)))


def tetramer_state(p: TetramerParams) -> DensityMatrix:
    spec = _tetramer_spectrum(p.J1, p.J2)
    if p.T == 0:
        return qcore.ground_state_mixture_from_spectrum(spec, 1e-9 * max(p.J1, p.J2))
    return qcore.thermal_state_from_spectrum(spec, 1.0 / p.T)


def tetramer_rdm(p: TetramerParams, pair: PairKind | tuple[int, int] = PairKind.NN) -> DensityMatrix:
    sites = PairKind(pair).sites if isinstance(pair, str) else pair
    return qcore.partial_trace_pair(tetramer_state(p), *sites)


# reduced ground-state elements (a, b, z) of the two valence-bond ground states
_RVB_11 = {PairKind.NN: (1 / 12, 5 / 12, -1 / 3), PairKind.NNN: (1 / 3, 1 / 6, 1 / 6)}
_RVB_10 = {PairKind.NN: (1 / 4, 1 / 4, 0.0), PairKind.NNN: (0.0, 1 / 2, -1 / 2)}


def tetramer_ground_rdm(p: TetramerParams, pair: PairKind | str = PairKind.NN) -> XState:
    """Closed-form reduced ground state for either pair type.

    J1 > J2 gives the |11> valence-bond state, J1 < J2 gives |10>, and at
    J1 == J2 (within ``BOUNDARY_TOL``) the two are mixed with equal weight.
    """
    pair = PairKind(pair)
    if abs(p.J1 - p.J2) <= BOUNDARY_TOL:
        a, b, z = (0.5 * (u + v) for u, v in zip(_RVB_11[pair], _RVB_10[pair]))
    elif p.J1 > p.J2:
        a, b, z = _RVB_11[pair]
    else:
        a, b, z = _RVB_10[pair]
    return XState(a, b, b, a, z, 0.0)


# Boltzmann-weight coefficients of (a, b, z) per level e1..e5
_TETRA_ELEMENTS = {
    PairKind.NN: (
        (5 / 3, 3 / 2, 1 / 2, 1 / 4, 1 / 12),
        (5 / 6, 3 / 2, 1, 1 / 4, 5 / 12),
        (5 / 6, 0, -1 / 2, 0, -1 / 3),
    ),
    PairKind.NNN: (
        (5 / 3, 1, 1, 0, 1 / 3),
        (5 / 6, 2, 1 / 2, 1 / 2, 1 / 6),
        (5 / 6, -1, 1 / 2, -1 / 2, 1 / 6),
    ),
}


def tetramer_thermal_xstate(p: TetramerParams, pair: PairKind | str = PairKind.NN) -> XState:
    """Closed-form reduced thermal state of the tetramer for one pair type."""
    if p.T <= 0:
        raise ValueError("closed-form thermal elements need T > 0")
    pair = PairKind(pair)
    levels = tetramer_spectrum_analytic(p)
    energies = np.array([e for e, _ in levels])
    mult = np.array([g for _, g in levels])
    x = -energies / p.T
    w = np.exp(x - x.max())
    z_part = float(mult @ w)
    ca, cb, cz = (np.array(c) for c in _TETRA_ELEMENTS[pair])
    a = float(ca @ w) / z_part
    b = float(cb @ w) / z_part
    z = float(cz @ w) / z_part
    return XState(a, b, b, a, z, 0.0)


# -- ground-state parameter scans -------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    parameter: float
    Q: float
    C: float
    CN: float


@dataclass
class ScanResult:
    family: str
    rows: list[ScanRow]
    jumps: list[tuple[float, float]] = field(default_factory=list)


def detect_jumps(params, values, floor: float = 1e-3) -> list[tuple[float, float]]:
    """Intervals where |dQ| exceeds max(10 x median |dQ|, ``floor``)."""
    values = np.asarray(values, dtype=float)
    if len(values) < 2:
        return []
    dq = np.abs(np.diff(values))
    threshold = max(10 * float(np.median(dq)), floor)
    return [(float(params[k]), float(params[k + 1])) for k in np.nonzero(dq > threshold)[0]]


def qpt_scan(
    family: str,
    lo: float,
    hi: float,
    steps: int = 201,
    *,
    J: float = 1.0,
    epsilon: float = 1.0,
    J2: float = 1.0,
    pair: PairKind | str = PairKind.NNN,
) -> ScanResult:
    """Ground-state correlations across a field or coupling-ratio grid.

    ``trimer_field`` scans the field ``h`` of the trimer at fixed ``J`` and
    ``epsilon``. ``tetramer_ratio`` scans ``J1 / J2`` with ``J2`` held fixed.
    """
    if lo == hi:
        grid = np.array([lo], dtype=float)
    elif steps < 2:
        raise ValueError("steps must be >= 2")
    else:
        grid = np.linspace(lo, hi, steps)
    rows = []
    for x in grid:
        if family == "trimer_field":
            rep = analyze(trimer_ground_rdm(TrimerParams(J, epsilon, float(x))))
        elif family == "tetramer_ratio":
            rep = analyze(tetramer_ground_rdm(TetramerParams(float(x) * J2, J2), pair))
        else:
            raise ValueError(f"unknown scan family {family!r}")
        rows.append(ScanRow(float(x), rep.Q, rep.C, rep.CN))
    jumps = detect_jumps(grid, [r.Q for r in rows])
    return ScanResult(family, rows, jumps)

