"""Correlation measures for two-qubit states.

Two routes are provided. For X states with ``a == d`` and ``b1 == b2`` the
classical correlation and discord have closed forms in terms of the
coefficients ``c1..c5``. Any other two-qubit state goes through the
numerical route, which maximizes the measured mutual information over
rank-1 projective measurements on one qubit (qubit B, the second tensor
factor, unless asked otherwise).

All entropies are in bits and ``0 log 0 = 0`` throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .qcore import (
    DensityMatrix,
    InvalidState,
    eig_hermitian,
    partial_trace_site,
    von_neumann_entropy,
)

SYMMETRY_TOL = 1e-9
Q_CLAMP = 1e-9

_PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
_SYSY = np.kron(_PAULI[1], _PAULI[1])


class NotXForm(ValueError):
    pass


class ComplexCoherence(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class ConsistencyError(RuntimeError):
    pass


def _xlog2(x: float) -> float:
    return x * math.log2(x) if x > 0 else 0.0


@dataclass(frozen=True)
class Coefficients:
    c1: float
    c2: float
    c3: float
    c4: float
    c5: float


@dataclass(frozen=True)
class XState:
    """Two-qubit X state in the {uu, ud, du, dd} basis::

        [[a, 0,  0,  f],
         [0, b1, z,  0],
         [0, z,  b2, 0],
         [f, 0,  0,  d]]
    """

    a: float
    b1: float
    b2: float
    d: float
    z: float
    f: float = 0.0

    def __post_init__(self):
        a, b1, b2, d, z, f = (float(v) for v in (self.a, self.b1, self.b2, self.d, self.z, self.f))
        for name, v in zip(("a", "b1", "b2", "d", "z", "f"), (a, b1, b2, d, z, f)):
            object.__setattr__(self, name, v)
        if abs(a + b1 + b2 + d - 1.0) > 1e-10:
            raise InvalidState(f"populations sum to {a + b1 + b2 + d}, not 1")
        if min(a, b1, b2, d) < -1e-12:
            raise InvalidState("negative population")
        if abs(z) > math.sqrt(max(b1 * b2, 0.0)) + 1e-10 or abs(f) > math.sqrt(max(a * d, 0.0)) + 1e-10:
            raise InvalidState("coherence too large for a positive X state")

    @property
    def coefficients(self) -> Coefficients:
        a, b1, b2, d, z, f = self.a, self.b1, self.b2, self.d, self.z, self.f
        return Coefficients(
            c1=2 * z + 2 * f,
            c2=2 * z - 2 * f,
            c3=a + d - b1 - b2,
            c4=a - d - b1 + b2,
            c5=a - d + b1 - b2,
        )

    @property
    def is_symmetric(self) -> bool:
        c = self.coefficients
        return abs(c.c4) <= SYMMETRY_TOL and abs(c.c5) <= SYMMETRY_TOL

    def to_array(self) -> np.ndarray:
        a, b1, b2, d, z, f = self.a, self.b1, self.b2, self.d, self.z, self.f
        return np.array(
            [[a, 0, 0, f], [0, b1, z, 0], [0, z, b2, 0], [f, 0, 0, d]],
            dtype=complex,
        )

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(self.to_array(), 2)

    def astuple(self) -> tuple[float, ...]:
        return (self.a, self.b1, self.b2, self.d, self.z, self.f)


@dataclass(frozen=True)
class Measurement:
    """Projector pair (I +/- n.sigma)/2 along the Bloch direction (theta, phi)."""

    theta: float
    phi: float

    @property
    def direction(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        ns = np.tensordot(self.direction, _PAULI, axes=1)
        eye = np.eye(2, dtype=complex)
        return 0.5 * (eye + ns), 0.5 * (eye - ns)


@dataclass(frozen=True)
class CorrelationReport:
    mutual_information: float
    classical_correlation: float
    discord: float
    concurrence: float
    method: Literal["analytic_symmetric", "numeric_projective"]
    measurement: Measurement | None = None

    # short aliases matching the usual symbols
    @property
    def I(self) -> float:  # noqa: E743
        return self.mutual_information

    @property
    def C(self) -> float:
        return self.classical_correlation

    @property
    def Q(self) -> float:
        return self.discord

    @property
    def CN(self) -> float:
        return self.concurrence


def from_matrix(rho: DensityMatrix, tol: float = 1e-10) -> XState:
    """Read the X-pattern entries of a two-qubit state.

    Raises
    ------
    NotXForm
        If any entry off the diagonal/anti-diagonal exceeds ``tol``.
    ComplexCoherence
        If ``z`` or ``f`` has an imaginary part larger than ``tol``.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape != (4, 4):
        raise NotXForm(f"expected a 4x4 matrix, got {m.shape}")
    mask = np.ones((4, 4), dtype=bool)
    for i in range(4):
        mask[i, i] = mask[i, 3 - i] = False
    if np.any(np.abs(m[mask]) > tol):
        raise NotXForm(f"off-X entry of size {np.abs(m[mask]).max():.3g}")
    z, f = m[1, 2], m[0, 3]
    if abs(z.imag) > tol or abs(f.imag) > tol:
        raise ComplexCoherence("X-state coherences must be real")
    return XState(m[0, 0].real, m[1, 1].real, m[2, 2].real, m[3, 3].real, z.real, f.real)


def xstate_eigenvalues(x: XState) -> np.ndarray:
    """Closed-form eigenvalues (lambda0..lambda3) of an X state."""
    c = x.coefficients
    r_plus = math.sqrt((c.c4 + c.c5) ** 2 + (c.c1 - c.c2) ** 2)
    r_minus = math.sqrt((c.c4 - c.c5) ** 2 + (c.c1 + c.c2) ** 2)
    return 0.25 * np.array(
        [
            (1 + c.c3) + r_plus,
            (1 + c.c3) - r_plus,
            (1 - c.c3) + r_minus,
            (1 - c.c3) - r_minus,
        ]
    )


def _binary_entropy_from_c(c: float) -> float:
    return -_xlog2((1 + c) / 2) - _xlog2((1 - c) / 2)


def mutual_information(x: XState) -> float:
    c = x.coefficients
    s_a = _binary_entropy_from_c(c.c5)
    s_b = _binary_entropy_from_c(c.c4)
    return s_a + s_b + sum(_xlog2(float(lam)) for lam in xstate_eigenvalues(x))


def _require_symmetric(x: XState) -> Coefficients:
    c = x.coefficients
    if abs(c.c4) > SYMMETRY_TOL or abs(c.c5) > SYMMETRY_TOL:
        raise NotSymmetric(f"closed form needs c4 = c5 = 0, got c4={c.c4:.3g}, c5={c.c5:.3g}")
    return c


def classical_correlation_symmetric(x: XState) -> float:
    c = _require_symmetric(x)
    cm = max(abs(c.c1), abs(c.c2), abs(c.c3))
    return 0.5 * _xlog2(1 - cm) + 0.5 * _xlog2(1 + cm)


def _clamp_discord(q: float) -> float:
    if q < -Q_CLAMP:
        raise ConsistencyError(f"discord came out negative ({q:.3g})")
    return max(q, 0.0)


def discord_symmetric(x: XState) -> float:
    c = _require_symmetric(x)
    c1, c2, c3 = c.c1, c.c2, c.c3
    bracket = (
        _xlog2(1 - c1 - c2 - c3)
        + _xlog2(1 - c1 + c2 + c3)
        + _xlog2(1 + c1 - c2 + c3)
        + _xlog2(1 + c1 + c2 - c3)
    )
    return _clamp_discord(0.25 * bracket - classical_correlation_symmetric(x))


def concurrence(x: XState, signed: bool = False) -> float:
    """Wootters concurrence of an X state.

    ``2 max(|z| - sqrt(ad), |f| - sqrt(b1 b2))`` clipped at zero. With
    ``signed=True`` the clip is skipped, which gives a quantity that crosses
    zero smoothly (useful for locating where entanglement dies).
    """
    raw = 2.0 * max(
        abs(x.z) - math.sqrt(max(x.a * x.d, 0.0)),
        abs(x.f) - math.sqrt(max(x.b1 * x.b2, 0.0)),
    )
    return raw if signed else max(raw, 0.0)


def wootters_concurrence(rho, signed: bool = False) -> float:
    """Concurrence of a general two-qubit state from the spin-flipped state.

    Uses the Hermitian form sqrt(rho) rho~ sqrt(rho) so only a Hermitian
    eigensolver is needed. ``signed=True`` returns l1 - l2 - l3 - l4 without
    the clip at zero.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    spec = eig_hermitian(m)
    root = (spec.eigenvectors * np.sqrt(np.clip(spec.eigenvalues, 0, None))) @ spec.eigenvectors.conj().T
    flipped = _SYSY @ m.conj() @ _SYSY
    prod = root @ flipped @ root
    lam = eig_hermitian(0.5 * (prod + prod.conj().T)).eigenvalues
    s = np.sort(np.sqrt(np.clip(lam, 0, None)))[::-1]
    raw = float(s[0] - s[1] - s[2] - s[3])
    return raw if signed else max(raw, 0.0)


def is_zero_discord(x: XState, tol: float = 1e-9) -> bool:
    return (
        abs(abs(x.f) - abs(x.z)) <= tol
        and abs(x.a - x.b2) <= tol
        and abs(x.d - x.b1) <= tol
    )


def analytic_report(x: XState) -> CorrelationReport:
    i = mutual_information(x)
    c = classical_correlation_symmetric(x)
    q = discord_symmetric(x)
    if abs(i - (c + q)) > 1e-9:
        raise ConsistencyError(f"I - (C + Q) = {i - c - q:.3g}")
    return CorrelationReport(i, c, q, concurrence(x), "analytic_symmetric")


# -- numerical measurement optimization ------------------------------------


def _bloch(m: np.ndarray):
    """Local Bloch vectors r (qubit A), s (qubit B) and correlation tensor T."""
    r = np.array([np.trace(m @ np.kron(p, np.eye(2))).real for p in _PAULI])
    s = np.array([np.trace(m @ np.kron(np.eye(2), p)).real for p in _PAULI])
    t = np.array([[np.trace(m @ np.kron(p, q)).real for q in _PAULI] for p in _PAULI])
    return r, s, t


def _h2_of_length(length: np.ndarray) -> np.ndarray:
    """Entropy (bits) of a qubit with Bloch vector length ``length``."""
    length = np.clip(length, 0.0, 1.0)
    out = np.zeros_like(length)
    for sign in (1.0, -1.0):
        p = 0.5 * (1 + sign * length)
        safe = np.where(p > 0, p, 1.0)
        out -= np.where(p > 0, p * np.log2(safe), 0.0)
    return out


class _Objective:
    """J(theta, phi) = S(unmeasured) - sum_i p_i S(unmeasured | i)."""

    def __init__(self, m: np.ndarray, measure: Literal["A", "B"]):
        r, s, t = _bloch(m)
        if measure == "A":
            r, s, t = s, r, t.T
        elif measure != "B":
            raise ValueError(f"measure must be 'A' or 'B', got {measure!r}")
        self.r, self.s, self.t = r, s, t
        self.s_unmeasured = float(_h2_of_length(np.array(np.linalg.norm(r))))

    def __call__(self, theta, phi) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        n = np.stack(
            [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta) + 0 * phi],
            axis=-1,
        )
        sn = n @ self.s
        tn = n @ self.t.T
        cond = np.zeros(sn.shape)
        for sign in (1.0, -1.0):
            w = 1 + sign * sn  # 2 * p_i
            safe = np.where(w > 1e-15, w, 1.0)
            u = (self.r + sign * tn) / safe[..., None]
            cond += np.where(w > 1e-15, 0.5 * w * _h2_of_length(np.linalg.norm(u, axis=-1)), 0.0)
        return self.s_unmeasured - cond


def _golden_max(f, lo: float, hi: float, iters: int) -> tuple[float, float]:
    g = (math.sqrt(5) - 1) / 2
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = f(x1), f(x2)
    best = max((f1, x1), (f2, x2))
    for _ in range(iters):
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = f(x1)
            best = max(best, (f1, x1))
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = f(x2)
            best = max(best, (f2, x2))
    return best[1], best[0]


def classical_correlation_numeric(
    rho: DensityMatrix,
    grid_theta: int = 64,
    grid_phi: int = 128,
    refine_iters: int = 40,
    measure: Literal["A", "B"] = "B",
    rounds: int = 3,
) -> tuple[float, Measurement]:
    """Maximize the measured mutual information over projective measurements.

    A coarse (theta, phi) grid scan picks the starting point (ties go to the
    smallest theta, then the smallest phi); alternating golden-section
    searches in theta and phi, one grid cell either side, then polish it.
    Measurement outcomes with zero probability contribute nothing.

    Returns
    -------
    (float, Measurement)
        The classical correlation in bits and the maximizing measurement.
    """
    if grid_theta < 16 or grid_phi < 16:
        raise ValueError("grids need at least 16 points per axis")
    if refine_iters < 0:
        raise ValueError("refine_iters must be >= 0")
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    obj = _Objective(m, measure)

    thetas = np.linspace(0.0, math.pi, grid_theta)
    phis = np.linspace(0.0, 2 * math.pi, grid_phi, endpoint=False)
    vals = obj(thetas[:, None], phis[None, :])
    k = int(np.argmax(vals))
    th, ph = float(thetas[k // grid_phi]), float(phis[k % grid_phi])
    best = float(vals.flat[k])
    dth, dph = thetas[1] - thetas[0], phis[1] - phis[0]

    if refine_iters > 0:
        for _ in range(rounds):
            th_new, v = _golden_max(
                lambda t: float(obj(t, ph)), max(0.0, th - dth), min(math.pi, th + dth), refine_iters
            )
            if v > best:
                th, best = th_new, v
            ph_new, v = _golden_max(lambda p: float(obj(th, p)), ph - dph, ph + dph, refine_iters)
            if v > best:
                ph, best = ph_new % (2 * math.pi), v
    return max(float(best), 0.0), Measurement(float(th), float(ph))


def discord_numeric(
    rho: DensityMatrix,
    grid_theta: int = 64,
    grid_phi: int = 128,
    refine_iters: int = 40,
    measure: Literal["A", "B"] = "B",
) -> CorrelationReport:
    """Discord of an arbitrary two-qubit state via the numerical route."""
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix.from_array(rho)
    i = (
        von_neumann_entropy(partial_trace_site(rho, 0))
        + von_neumann_entropy(partial_trace_site(rho, 1))
        - von_neumann_entropy(rho)
    )
    i = max(float(i), 0.0)
    c, meas = classical_correlation_numeric(rho, grid_theta, grid_phi, refine_iters, measure)
    q = _clamp_discord(i - c)
    return CorrelationReport(i, i - q, q, wootters_concurrence(rho), "numeric_projective", meas)


def analyze(state: Union[XState, DensityMatrix], measure: Literal["A", "B"] = "B") -> CorrelationReport:
    """Pick the closed form when it applies, the numerical route otherwise."""
    if isinstance(state, DensityMatrix):
        try:
            state = from_matrix(state)
        except (NotXForm, ComplexCoherence):
            return discord_numeric(state, measure=measure)
    if state.is_symmetric:
        return analytic_report(state)
    return discord_numeric(state.to_density(), measure=measure)


__all__ = [
    "XState",
    "Coefficients",
    "Measurement",
    "CorrelationReport",
    "NotXForm",
    "ComplexCoherence",
    "NotSymmetric",
    "ConsistencyError",
    "from_matrix",
    "xstate_eigenvalues",
    "mutual_information",
    "classical_correlation_symmetric",
    "discord_symmetric",
    "classical_correlation_numeric",
    "discord_numeric",
    "concurrence",
    "wootters_concurrence",
    "is_zero_discord",
    "analytic_report",
    "analyze",
]
