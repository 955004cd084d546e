import math

import numpy as np
import pytest
import scipy.sparse as sp

from rabispec.operators import (DensityState, DimensionLimitError,
                                SolverError, SparseOperator, annihilator,
                                effective_hamiltonian_preconditioner,
                                expectation, identity, liouvillian,
                                steady_state, tensor, zero)

RNG = np.random.default_rng(20240817)


def random_sparse(dim, density=0.4):
    m = (RNG.normal(size=(dim, dim)) + 1j * RNG.normal(size=(dim, dim)))
    m[RNG.random((dim, dim)) > density] = 0.0
    return SparseOperator(m)


def random_dyadic_sparse(dim, density=0.5):
    """Entries with few mantissa bits, so products are exact in any order."""
    re = RNG.integers(-8, 9, size=(dim, dim)).astype(float)
    im = RNG.integers(-8, 9, size=(dim, dim)).astype(float)
    m = (re + 1j * im) * 0.25
    m[RNG.random((dim, dim)) > density] = 0.0
    return SparseOperator(m)


def random_density(dim):
    a = RNG.normal(size=(dim, dim)) + 1j * RNG.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return DensityState(rho / np.trace(rho))


# ---------------------------------------------------------------- tensor

def test_tensor_identities():
    out = tensor(identity(2), identity(3))
    assert out.dim == 6
    assert np.allclose(out.to_dense(), np.eye(6))


def test_tensor_sigma_minus_embedding():
    sigma_minus = SparseOperator.from_entries(2, [(0, 1, 1.0)])
    out = tensor(sigma_minus, identity(2))
    expected = np.zeros((4, 4), complex)
    expected[0, 2] = 1.0
    expected[1, 3] = 1.0
    assert np.allclose(out.to_dense(), expected)


def test_tensor_against_dense_kron_oracle():
    a = annihilator(2)
    out = tensor(a, a)
    oracle = np.kron(a.to_dense(), a.to_dense())
    assert np.allclose(out.to_dense(), oracle)


@pytest.mark.parametrize("dims", [(2, 3, 4), (3, 3, 2)])
def test_tensor_associative(dims):
    a, b, c = (random_dyadic_sparse(d) for d in dims)
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    assert left.entries() == right.entries()


def test_tensor_dim_limit():
    with pytest.raises(DimensionLimitError):
        tensor(identity(2000), identity(2000), max_dim=10**6)


def test_canonical_form_prunes_tiny_entries():
    m = np.array([[1.0, 1e-20], [0.0, 1.0]])
    op = SparseOperator(m)
    assert op.nnz == 2


# ----------------------------------------------------------- annihilator

def test_annihilator_small():
    assert np.allclose(annihilator(1).to_dense(), [[0, 1], [0, 0]])
    a2 = annihilator(2).to_dense()
    assert a2[0, 1] == pytest.approx(1.0)
    assert a2[1, 2] == pytest.approx(math.sqrt(2))
    assert np.count_nonzero(a2) == 2


def test_number_operator_action():
    n_max = 5
    a = annihilator(n_max)
    num = (a.dag() @ a).to_dense()
    for n in range(n_max + 1):
        e = np.zeros(n_max + 1)
        e[n] = 1.0
        assert num @ e == pytest.approx(n * e)


def test_annihilator_rejects_zero():
    with pytest.raises(ValueError):
        annihilator(0)


# ----------------------------------------------------------- liouvillian

def test_liouvillian_vacuum_steady_state():
    kappa = 1.3
    a = annihilator(1)
    L = liouvillian(zero(2), [math.sqrt(2 * kappa) * a])
    rho = steady_state(L, check_positivity=True)
    assert expectation(rho, a.dag() @ a).real == pytest.approx(0.0, abs=1e-12)


def test_liouvillian_two_level_decay():
    delta = 0.7
    sz = SparseOperator(np.diag([1.0, -1.0]))
    sm = SparseOperator.from_entries(2, [(1, 0, 1.0)])  # |g><e| with |e> first
    H = 0.5 * delta * sz
    L = liouvillian(H, [math.sqrt(2 * 0.4) * sm])
    rho = steady_state(L, check_positivity=True)
    assert rho.matrix[1, 1].real == pytest.approx(1.0, abs=1e-10)


def test_liouvillian_driven_cavity_closed_form():
    kappa, eps, delta = 0.9, 0.12, 0.5
    n_max = 6
    a = annihilator(n_max)
    num = a.dag() @ a
    H = delta * num + eps * (a + a.dag())
    L = liouvillian(H, [math.sqrt(2 * kappa) * a])
    rho = steady_state(L, check_positivity=True)
    expected = eps**2 / (kappa**2 + delta**2)
    assert expectation(rho, num).real == pytest.approx(expected, rel=1e-6)


def test_liouvillian_rejects_non_hermitian():
    bad = SparseOperator(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError, match="Hermitian"):
        liouvillian(bad, [])


def test_liouvillian_trace_preservation():
    H = 0.3 * SparseOperator(np.diag([1.0, -1.0]))
    jump = math.sqrt(0.8) * SparseOperator.from_entries(2, [(0, 1, 1.0)])
    L = liouvillian(H, [jump])
    d = 2
    tr_vec = np.zeros(d * d)
    tr_vec[np.arange(d) * d + np.arange(d)] = 1.0
    left = tr_vec @ L.matrix
    assert np.linalg.norm(left) <= 1e-12 * L.frobenius_norm()


@pytest.mark.parametrize("n_max", [1, 2, 3])
def test_liouvillian_eigenvalues_nonpositive(n_max):
    a = annihilator(n_max)
    H = 0.4 * (a + a.dag()) + 0.9 * (a.dag() @ a)
    L = liouvillian(H, [math.sqrt(2 * 0.35) * a])
    assert L.dim <= 16 * 16
    eig = np.linalg.eigvals(L.to_dense())
    assert eig.real.max() <= 1e-10 * max(1.0, np.abs(eig).max())


# ---------------------------------------------------------- steady state

def test_steady_state_driven_cavity_on_resonance():
    kappa, ratio = 1.7, 0.2
    eps = ratio * kappa
    a = annihilator(5)
    H = eps * (a + a.dag())
    L = liouvillian(H, [math.sqrt(2 * kappa) * a])
    rho = steady_state(L, check_positivity=True)
    assert expectation(rho, a.dag() @ a).real == pytest.approx(0.04, rel=1e-4)


def test_steady_state_matches_between_methods():
    kappa, eps = 1.1, 0.3
    a = annihilator(3)
    H = 0.4 * (a.dag() @ a) + eps * (a + a.dag())
    jumps = [math.sqrt(2 * kappa) * a]
    L = liouvillian(H, jumps)
    rho_d = steady_state(L, method="direct")
    precond = effective_hamiltonian_preconditioner(H, jumps)
    rho_i = steady_state(L, method="iterative", preconditioner=precond)
    assert np.abs(rho_d.matrix - rho_i.matrix).max() < 1e-8


def test_steady_state_properties_random_models():
    for trial in range(3):
        dim = 4
        h = RNG.normal(size=(dim, dim)) + 1j * RNG.normal(size=(dim, dim))
        H = SparseOperator(0.5 * (h + h.conj().T))
        jumps = [SparseOperator(0.3 * (RNG.normal(size=(dim, dim))
                                       + 1j * RNG.normal(size=(dim, dim))))]
        L = liouvillian(H, jumps)
        rho = steady_state(L)
        assert np.abs(rho.matrix - rho.matrix.conj().T).max() <= 1e-10
        assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-10)
        assert rho.min_eigenvalue() >= -1e-8


@pytest.mark.filterwarnings("ignore::scipy.sparse.linalg.MatrixRankWarning")
def test_steady_state_singular_system_raises():
    # no dissipation at all: every state is steady, solve must not pretend
    H = SparseOperator(np.diag([0.0, 1.0]))
    L = liouvillian(H, [])
    with pytest.raises(SolverError):
        steady_state(L)


def test_steady_state_rejects_bad_dim():
    with pytest.raises(ValueError):
        steady_state(SparseOperator(np.zeros((3, 3))))


# ----------------------------------------------------------- expectation

def test_expectation_trivial_cases():
    a = annihilator(2)
    vac = np.zeros((3, 3), complex)
    vac[0, 0] = 1.0
    assert expectation(DensityState(vac), a.dag() @ a) == pytest.approx(0.0)
    mixed = DensityState(np.eye(4) / 4.0)
    assert expectation(mixed, identity(4)).real == pytest.approx(1.0)


def test_expectation_against_dense_trace_oracle():
    for dim in (3, 5):
        rho = random_density(dim)
        op = random_sparse(dim)
        oracle = np.trace(rho.matrix @ op.to_dense())
        got = expectation(rho, op)
        assert got == pytest.approx(oracle, abs=1e-12)


def test_expectation_dim_mismatch():
    with pytest.raises(ValueError):
        expectation(random_density(3), identity(4))


def test_density_state_validation():
    with pytest.raises(ValueError, match="Hermitian"):
        DensityState(np.array([[0.5, 1.0], [0.0, 0.5]]))
    with pytest.raises(ValueError, match="trace"):
        DensityState(np.eye(2))
