import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spincord import qcore
from spincord.qcore import DensityMatrix, InvalidState, NotHermitian, BadSiteIndex

import oracle


def random_hermitian(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (m + m.conj().T) / 2


def random_state(rng, n_sites):
    d = 2**n_sites
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, n_sites)


def test_kron_small_example():
    a = np.array([[1, 2], [3, 4]])
    b = np.array([[0, 5], [6, 7]])
    expected = np.array(
        [[0, 5, 0, 10], [6, 7, 12, 14], [0, 15, 0, 20], [18, 21, 24, 28]]
    )
    assert np.array_equal(qcore.kron(a, b), expected)


def test_site_operator_places_factor_on_the_right_site():
    op = qcore.site_operator(qcore.SZ, 1, 3)
    assert np.allclose(op, oracle.embed(oracle.PAULI["z"], 1, 3) / 2)


@pytest.mark.parametrize("n", [4, 8, 16])
def test_jacobi_matches_lapack_on_random_matrices(n):
    rng = np.random.default_rng(n)
    for _ in range(100):
        h = random_hermitian(rng, n)
        spec = qcore.eig_hermitian(h)
        v = spec.eigenvectors
        assert np.allclose(spec.eigenvalues, np.linalg.eigvalsh(h), atol=1e-10)
        assert np.linalg.norm(h @ v - v * spec.eigenvalues) < 1e-10
        assert np.linalg.norm(v.conj().T @ v - np.eye(n)) < 1e-10
        assert np.all(np.diff(spec.eigenvalues) >= 0)


def test_jacobi_on_diagonal_and_degenerate_input():
    spec = qcore.eig_hermitian(np.diag([3.0, -1.0, 3.0, 0.0]))
    assert np.allclose(spec.eigenvalues, [-1, 0, 3, 3])
    assert spec.multiplets() == [(-1.0, 1), (0.0, 1), (3.0, 2)]


def test_jacobi_is_deterministic():
    h = random_hermitian(np.random.default_rng(3), 8)
    a, b = qcore.eig_hermitian(h), qcore.eig_hermitian(h)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_jacobi_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        qcore.eig_hermitian(np.array([[0, 1], [0, 0]]))
    with pytest.raises(NotHermitian):
        qcore.eig_hermitian(np.ones((2, 3)))


def test_density_matrix_validation():
    with pytest.raises(InvalidState):
        DensityMatrix(np.eye(4), 2)
    with pytest.raises(InvalidState):
        DensityMatrix(np.diag([1.5, -0.5]), 1)
    with pytest.raises(InvalidState):
        DensityMatrix(np.array([[0.5, 0.5], [0, 0.5]]), 1)
    with pytest.raises(InvalidState):
        DensityMatrix(np.eye(2) / 2, 2)
    rho = DensityMatrix(np.eye(4) / 4, 2)
    assert rho.dim == 4
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1


def test_partial_trace_of_product_state_recovers_factors():
    rng = np.random.default_rng(7)
    factors = [random_state(rng, 1).matrix for _ in range(4)]
    full = DensityMatrix(
        np.kron(np.kron(factors[0], factors[1]), np.kron(factors[2], factors[3])), 4
    )
    for i in range(4):
        assert np.max(np.abs(qcore.partial_trace_site(full, i) - factors[i])) < 1e-14
    pair = qcore.partial_trace_pair(full, 1, 3)
    assert np.max(np.abs(pair.matrix - np.kron(factors[1], factors[3]))) < 1e-14


def test_partial_trace_matches_oracle_on_entangled_states():
    rng = np.random.default_rng(11)
    for _ in range(20):
        rho = random_state(rng, 4)
        for keep in [(0, 1), (0, 2), (1, 3), (2, 3)]:
            ours = qcore.partial_trace_pair(rho, *keep).matrix
            assert np.allclose(ours, oracle.reduce_to(rho.matrix, list(keep), 4), atol=1e-14)


def test_partial_trace_bad_indices():
    rho = DensityMatrix(np.eye(8) / 8, 3)
    with pytest.raises(BadSiteIndex):
        qcore.partial_trace_pair(rho, 1, 1)
    with pytest.raises(BadSiteIndex):
        qcore.partial_trace_pair(rho, 0, 3)
    with pytest.raises(BadSiteIndex):
        qcore.partial_trace_site(rho, 3)


def test_entropy_examples():
    assert qcore.entropy_bits([0.5, 0.5]) == pytest.approx(1.0)
    assert qcore.entropy_bits([1.0, 0.0, 0.0]) == 0.0
    # log2(2) / 2 + 3 log2(6) / 6
    assert qcore.entropy_bits([1 / 2, 1 / 6, 1 / 6, 1 / 6]) == pytest.approx(1.79248125, abs=1e-8)
    assert qcore.von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-12)
    psi = np.array([0, 1, -1, 0]) / math.sqrt(2)
    assert qcore.von_neumann_entropy(np.outer(psi, psi)) == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_entropy_bounds_and_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    rho = random_state(rng, 2)
    s = qcore.von_neumann_entropy(rho)
    assert -1e-12 <= s <= 2 + 1e-12
    assert s == pytest.approx(oracle.vn_entropy(rho.matrix), abs=1e-10)
    u = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0]
    assert qcore.von_neumann_entropy(u @ rho.matrix @ u.conj().T) == pytest.approx(s, abs=1e-10)


def test_thermal_state_limits_and_commutation():
    rng = np.random.default_rng(5)
    h = random_hermitian(rng, 8)
    assert np.allclose(qcore.thermal_state(h, 0.0).matrix, np.eye(8) / 8, atol=1e-14)
    rho = qcore.thermal_state(h, 0.7).matrix
    assert np.linalg.norm(rho @ h - h @ rho) < 1e-12
    assert np.allclose(rho, oracle.gibbs(h, 1 / 0.7), atol=1e-12)
    cold = qcore.thermal_state(h, 1e4).matrix
    assert np.max(np.abs(cold - qcore.ground_state_mixture(h).matrix)) < 1e-8


def test_thermal_state_rejects_bad_beta():
    with pytest.raises(ValueError):
        qcore.thermal_state(np.eye(2), -1.0)
    with pytest.raises(ValueError):
        qcore.thermal_state(np.eye(2), math.inf)


def test_ground_mixture_spans_degenerate_manifold():
    h = np.diag([-1.0, -1.0, 0.0, 2.0, -1.0])[:4, :4]
    rho = qcore.ground_state_mixture(h).matrix
    assert np.allclose(rho, np.diag([0.5, 0.5, 0, 0]))
    ring = oracle.trimer(1.0, 1.0)
    rho = qcore.ground_state_mixture(ring)
    assert np.linalg.matrix_rank(rho.matrix, tol=1e-10) == 4
    assert np.allclose(rho.matrix, oracle.ground_mixture(ring), atol=1e-12)
    with pytest.raises(ValueError):
        qcore.ground_state_mixture(h, degeneracy_tol=0.0)
