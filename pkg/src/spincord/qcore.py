"""Small dense linear algebra for spin-1/2 clusters.

Everything here works on plain ``numpy`` complex arrays of dimension <= 16.
Basis convention: site 0 is the leftmost tensor factor and the single-site
basis is ordered (up, down), so a two-site state is written in the ordered
basis {uu, ud, du, dd}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

# single-site spin-1/2 operators S = sigma / 2 in the (up, down) basis
SX = np.array([[0, 0.5], [0.5, 0]], dtype=complex)
SY = np.array([[0, -0.5j], [0.5j, 0]], dtype=complex)
SZ = np.array([[0.5, 0], [0, -0.5]], dtype=complex)
ID2 = np.eye(2, dtype=complex)


class NotHermitian(ValueError):
    pass


class InvalidState(ValueError):
    pass


class BadSiteIndex(IndexError):
    pass


@dataclass(frozen=True)
class DensityMatrix:
    """A validated n-site spin-1/2 density matrix.

    The constructor checks Hermiticity, unit trace and positivity and raises
    :class:`InvalidState` otherwise.
    """

    matrix: np.ndarray
    n_sites: int

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        dim = 2**self.n_sites
        if m.shape != (dim, dim):
            raise InvalidState(f"expected {dim}x{dim} matrix for {self.n_sites} sites, got {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise InvalidState("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > TRACE_TOL:
            raise InvalidState(f"trace {np.trace(m).real:.3g} != 1")
        if np.linalg.eigvalsh(m).min() < -PSD_TOL:
            raise InvalidState("density matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return 2**self.n_sites

    @classmethod
    def from_array(cls, m) -> "DensityMatrix":
        m = np.asarray(m, dtype=complex)
        n = int(round(math.log2(m.shape[0])))
        return cls(m, n)


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def multiplets(self, tol: float = 1e-9) -> list[tuple[float, int]]:
        """Group eigenvalues within ``tol`` of the group's first member."""
        groups: list[list[float]] = []
        for e in self.eigenvalues:
            if groups and abs(e - groups[-1][0]) <= tol:
                groups[-1].append(e)
            else:
                groups.append([e])
        return [(float(np.mean(g)), len(g)) for g in groups]


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def site_operator(op, site: int, n_sites: int) -> np.ndarray:
    """Embed a single-site operator at ``site`` of an ``n_sites`` register."""
    out = np.ones((1, 1), dtype=complex)
    for k in range(n_sites):
        out = kron(out, op if k == site else ID2)
    return out


def _check_hermitian(h: np.ndarray, tol: float = 1e-10) -> None:
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitian(f"matrix must be square, got shape {h.shape}")
    scale = max(1.0, float(np.max(np.abs(h)))) if h.size else 1.0
    if h.size and np.max(np.abs(h - h.conj().T)) > tol * scale:
        raise NotHermitian("matrix is not Hermitian")


def eig_hermitian(h, tol: float = 1e-14, max_sweeps: int = 100) -> Spectrum:
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``h[p, q]`` and then
    applies the real 2x2 Jacobi rotation that annihilates it. Sweeps run in
    fixed row-major pivot order, so the result is deterministic. Iteration
    stops once the off-diagonal Frobenius norm falls below
    ``tol * ||h||_F``.

    Parameters
    ----------
    h : array_like
        Square Hermitian matrix.
    tol : float
        Relative off-diagonal convergence threshold.
    max_sweeps : int
        Hard cap on the number of full sweeps.

    Returns
    -------
    Spectrum
        Eigenvalues in ascending order and eigenvectors as columns.
    """
    a = np.array(h, dtype=complex)
    _check_hermitian(a)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    offmask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        if np.linalg.norm(a[offmask]) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-20 * scale:
                    a[p, q] = a[q, p] = 0.0
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                cph = phase.conjugate()

                colp, colq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * colp - s * cph * colq
                a[:, q] = s * colp + c * cph * colq
                rowp, rowq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rowp - s * phase * rowq
                a[q, :] = s * rowp + c * phase * rowq
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                colp, colq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * colp - s * cph * colq
                v[:, q] = s * colp + c * cph * colq
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], v[:, order])


def partial_trace_pair(rho: DensityMatrix, keep_i: int, keep_j: int) -> DensityMatrix:
    """Reduce ``rho`` to the two sites ``keep_i < keep_j``.

    ``keep_i`` becomes the left (first) qubit of the returned 4x4 state.
    """
    n = rho.n_sites
    if not (0 <= keep_i < keep_j < n):
        raise BadSiteIndex(f"need 0 <= keep_i < keep_j < {n}, got ({keep_i}, {keep_j})")
    t = rho.matrix.reshape((2,) * (2 * n))
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows = list(letters[:n])
    cols = [rows[k] if k not in (keep_i, keep_j) else letters[n + k] for k in range(n)]
    out = rows[keep_i] + rows[keep_j] + cols[keep_i] + cols[keep_j]
    red = np.einsum("".join(rows) + "".join(cols) + "->" + out, t).reshape(4, 4)
    return DensityMatrix(0.5 * (red + red.conj().T), 2)


def partial_trace_site(rho: DensityMatrix, keep: int) -> np.ndarray:
    """Single-site reduced matrix (2x2 array) of site ``keep``."""
    n = rho.n_sites
    if not 0 <= keep < n:
        raise BadSiteIndex(f"site {keep} out of range for {n} sites")
    t = rho.matrix.reshape((2,) * (2 * n))
    t = np.moveaxis(t, (keep, n + keep), (0, n))
    rest = 2 ** (n - 1)
    return np.einsum("ikjk->ij", t.reshape(2, rest, 2, rest))


def entropy_bits(probs) -> float:
    """Shannon entropy in bits with the 0 log 0 = 0 convention."""
    p = np.asarray(probs, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def von_neumann_entropy(rho) -> float:
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    lam = eig_hermitian(m).eigenvalues
    return max(entropy_bits(np.clip(lam, 0.0, None)), 0.0)


def _state_from_weights(spectrum: Spectrum, weights: np.ndarray) -> DensityMatrix:
    vecs = spectrum.eigenvectors
    m = (vecs * (weights / weights.sum())) @ vecs.conj().T
    m = 0.5 * (m + m.conj().T)
    m /= np.trace(m).real
    return DensityMatrix.from_array(m)


def thermal_state_from_spectrum(spectrum: Spectrum, beta: float) -> DensityMatrix:
    if not (math.isfinite(beta) and beta >= 0):
        raise ValueError(f"beta must be finite and >= 0, got {beta}")
    e = spectrum.eigenvalues
    return _state_from_weights(spectrum, np.exp(-beta * (e - e[0])))


def thermal_state(h, beta: float) -> DensityMatrix:
    """Gibbs state exp(-beta H) / Z (energies shifted by the ground energy)."""
    return thermal_state_from_spectrum(eig_hermitian(h), beta)


def ground_state_mixture_from_spectrum(spectrum: Spectrum, degeneracy_tol: float) -> DensityMatrix:
    e = spectrum.eigenvalues
    return _state_from_weights(spectrum, (e <= e[0] + degeneracy_tol).astype(float))


def ground_state_mixture(h, degeneracy_tol: float | None = None) -> DensityMatrix:
    """Equal-weight mixture over the (possibly degenerate) ground manifold.

    The default tolerance is ``1e-9 * max|h_ij|``.
    """
    h = np.asarray(h, dtype=complex)
    if degeneracy_tol is None:
        degeneracy_tol = 1e-9 * max(float(np.max(np.abs(h))), 1e-300)
    if degeneracy_tol <= 0:
        raise ValueError("degeneracy_tol must be positive")
    return ground_state_mixture_from_spectrum(eig_hermitian(h), degeneracy_tol)
