"""Werner states under independent local dephasing.

Each qubit sees the same dephasing channel with Kraus operators
``E0 = diag(1, sqrt(1 - gamma))`` and ``E1 = diag(0, sqrt(gamma))``, where
``gamma = 1 - exp(-Gamma t)``. Populations are untouched and the inner
coherence of a Werner state decays as ``z -> z (1 - gamma)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import DensityMatrix


class BadGamma(ValueError):
    pass


def _check_alpha(alpha: float) -> None:
    if not 0 <= alpha <= 1:
        raise ValueError(f"Werner weight alpha must lie in [0, 1], got {alpha}")


def _check_gamma(gamma: float) -> None:
    if not 0 <= gamma <= 1:
        raise BadGamma(f"dephasing strength gamma must lie in [0, 1], got {gamma}")


@dataclass(frozen=True)
class ChannelParams:
    gamma: float
    Gamma: float | None = None
    t: float | None = None

    def __post_init__(self):
        _check_gamma(self.gamma)

    @classmethod
    def from_rate(cls, Gamma: float, t: float) -> "ChannelParams":
        if Gamma < 0 or t < 0:
            raise ValueError("decay rate and time must be >= 0")
        return cls(1.0 - math.exp(-Gamma * t), Gamma, t)


def werner(alpha: float) -> DensityMatrix:
    """(1 - alpha) I/4 + alpha |psi-><psi-| with psi- = (|ud> - |du>)/sqrt 2."""
    _check_alpha(alpha)
    psi = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
    return DensityMatrix((1 - alpha) * np.eye(4) / 4 + alpha * np.outer(psi, psi.conj()), 2)


def dephasing_kraus(gamma: float) -> list[np.ndarray]:
    """Two-qubit Kraus operators E_mu (x) E_nu, mu, nu in {0, 1}."""
    _check_gamma(gamma)
    e0 = np.diag([1.0, math.sqrt(1 - gamma)]).astype(complex)
    e1 = np.diag([0.0, math.sqrt(gamma)]).astype(complex)
    return [np.kron(a, b) for a in (e0, e1) for b in (e0, e1)]


def apply_dephasing(rho: DensityMatrix, gamma: float) -> DensityMatrix:
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    out = sum(k @ m @ k.conj().T for k in dephasing_kraus(gamma))
    return DensityMatrix(0.5 * (out + out.conj().T), 2)


def concurrence_closed(alpha: float, gamma: float, signed: bool = False) -> float:
    """alpha (3/2 - gamma) - 1/2, clipped at zero unless ``signed``."""
    _check_alpha(alpha)
    _check_gamma(gamma)
    raw = alpha * (1.5 - gamma) - 0.5
    return raw if signed else max(raw, 0.0)


def _xlog2(x: float) -> float:
    return x * math.log2(x) if x > 0 else 0.0


def discord_closed(alpha: float, gamma: float) -> float:
    """Discord of the dephased Werner state.

    With F(x) = x log2 x, a = 1 + alpha and b = 2 alpha (1 - gamma)::

        Q = (F(a + b) + F(a - b)) / 4 - F(a) / 2
    """
    _check_alpha(alpha)
    _check_gamma(gamma)
    a = 1 + alpha
    b = 2 * alpha * (1 - gamma)
    q = 0.25 * (_xlog2(a + b) + _xlog2(a - b)) - 0.5 * _xlog2(a)
    if q < -1e-12:
        raise ArithmeticError(f"closed-form discord negative: {q}")
    return max(q, 0.0)


def sudden_death_gamma(alpha: float) -> float | None:
    """Dephasing strength at which the concurrence first hits zero.

    Returns 0.0 if the initial state is already separable and ``None`` if
    the concurrence survives up to gamma = 1.
    """
    _check_alpha(alpha)
    if alpha <= 1 / 3:
        return 0.0
    g = 1.5 - 1 / (2 * alpha)
    return g if g <= 1 else None


def first_zero(xs, ys) -> float | None:
    """First x where ``ys`` reaches zero, linearly interpolated.

    Pass the signed (unclipped) quantity: interpolating towards a value
    clipped at zero would always land on the right-hand grid point. Returns
    ``xs[0]`` if the series starts at or below zero and ``None`` if it never
    gets there.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    hits = np.nonzero(ys <= 0)[0]
    if len(hits) == 0:
        return None
    k = int(hits[0])
    if k == 0:
        return float(xs[0])
    x0, x1, y0, y1 = xs[k - 1], xs[k], ys[k - 1], ys[k]
    return float(x0 + y0 * (x1 - x0) / (y0 - y1))


@dataclass(frozen=True)
class TrajectoryRow:
    gamma: float
    concurrence: float
    discord: float


@dataclass(frozen=True)
class DephasingTrajectory:
    alpha: float
    rows: tuple[TrajectoryRow, ...]

    @property
    def gammas(self) -> np.ndarray:
        return np.array([r.gamma for r in self.rows])

    @property
    def concurrences(self) -> np.ndarray:
        return np.array([r.concurrence for r in self.rows])

    @property
    def discords(self) -> np.ndarray:
        return np.array([r.discord for r in self.rows])


def trajectory(alpha: float, gamma_steps: int = 201, lo: float = 0.0, hi: float = 1.0) -> DephasingTrajectory:
    """Closed-form (gamma, CN, Q) rows on a uniform grid, [0, 1] by default."""
    if gamma_steps < 2:
        raise ValueError("gamma_steps must be >= 2")
    if not 0 <= lo < hi <= 1:
        raise BadGamma(f"need 0 <= lo < hi <= 1, got ({lo}, {hi})")
    gammas = np.linspace(lo, hi, gamma_steps)
    rows = tuple(
        TrajectoryRow(float(g), concurrence_closed(alpha, float(g)), discord_closed(alpha, float(g)))
        for g in gammas
    )
    return DephasingTrajectory(alpha, rows)
