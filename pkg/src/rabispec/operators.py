"""Complex sparse operator algebra on tensor-product Hilbert spaces.

Provides the ladder/identity building blocks, Kronecker composition, the
Lindblad superoperator, and the constrained linear solve that produces
master-equation steady states.

Vectorization convention is column-stacking throughout:
vec(A rho B) = (B^T kron A) vec(rho), so the element (i, j) of rho lives
at vec index j*d + i.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
import scipy.sparse.linalg as spla

DEFAULT_DIM_LIMIT = 10**6
# direct factorization up to this many unknowns (d^2), iterative beyond
DIRECT_UNKNOWN_LIMIT = 20_000
# stored entries below this fraction of the largest magnitude are dropped
_PRUNE_REL = 1e-15
_HERM_TOL = 1e-12


class DimensionLimitError(RuntimeError):
    """Composite Hilbert-space dimension exceeds the configured limit."""


class SolverError(RuntimeError):
    """A steady-state solve failed its residual contract."""


class SparseOperator:
    """Immutable complex sparse matrix acting on a `dim`-dimensional space.

    Entries are held in canonical CSR form: duplicates summed, indices
    sorted, and explicit values below 1e-15 of the largest magnitude
    eliminated.  Treat instances (and the underlying matrix) as read-only.
    """

    __slots__ = ("dim", "_m")

    def __init__(self, matrix):
        m = sp.csr_matrix(matrix, dtype=np.complex128)
        if m.shape[0] != m.shape[1]:
            raise ValueError(f"operator must be square, got shape {m.shape}")
        m.sum_duplicates()
        m.sort_indices()
        if m.nnz:
            cutoff = _PRUNE_REL * np.abs(m.data).max()
            if cutoff > 0.0:
                m.data[np.abs(m.data) < cutoff] = 0.0
                m.eliminate_zeros()
        self.dim = m.shape[0]
        self._m = m

    @classmethod
    def from_entries(cls, dim, entries):
        """Build from an iterable of (row, col, value)."""
        rows, cols, vals = [], [], []
        for r, c, v in entries:
            if not (0 <= r < dim and 0 <= c < dim):
                raise ValueError(f"entry ({r}, {c}) outside a {dim}-dim space")
            rows.append(r)
            cols.append(c)
            vals.append(v)
        coo = sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim), dtype=np.complex128)
        return cls(coo)

    @property
    def matrix(self) -> sp.csr_matrix:
        return self._m

    @property
    def nnz(self) -> int:
        return self._m.nnz

    def entries(self):
        """Canonically ordered (row, col, value) triples."""
        coo = self._m.tocoo()
        return list(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))

    def dag(self) -> "SparseOperator":
        return SparseOperator(self._m.conj().T)

    def to_dense(self) -> np.ndarray:
        return self._m.toarray()

    def frobenius_norm(self) -> float:
        return math.sqrt(float((np.abs(self._m.data) ** 2).sum())) if self._m.nnz else 0.0

    def is_hermitian(self, tol: float = _HERM_TOL) -> bool:
        diff = (self._m - self._m.conj().T).tocoo()
        if diff.nnz == 0:
            return True
        scale = max(1.0, float(np.abs(self._m.data).max()) if self._m.nnz else 1.0)
        return float(np.abs(diff.data).max()) <= tol * scale

    def __add__(self, other):
        return SparseOperator(self._m + other._m)

    def __sub__(self, other):
        return SparseOperator(self._m - other._m)

    def __mul__(self, scalar):
        return SparseOperator(self._m * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self.dim != other.dim:
            raise ValueError(f"dim mismatch: {self.dim} vs {other.dim}")
        return SparseOperator(self._m @ other._m)

    def __repr__(self):
        return f"SparseOperator(dim={self.dim}, nnz={self.nnz})"


def identity(dim: int) -> SparseOperator:
    return SparseOperator(sp.identity(dim, dtype=np.complex128, format="csr"))


def zero(dim: int) -> SparseOperator:
    return SparseOperator(sp.csr_matrix((dim, dim), dtype=np.complex128))


def annihilator(n_max: int) -> SparseOperator:
    """Photon annihilation operator on the {|0>, ..., |n_max>} ladder."""
    if n_max < 1:
        raise ValueError("annihilator: n_max must be at least 1")
    amps = np.sqrt(np.arange(1, n_max + 1, dtype=float))
    return SparseOperator(sp.diags(amps, offsets=1, format="csr").astype(np.complex128))


def tensor(a: SparseOperator, b: SparseOperator, max_dim: int = DEFAULT_DIM_LIMIT) -> SparseOperator:
    """Kronecker product a (x) b under row-major composite indexing."""
    new_dim = a.dim * b.dim
    if new_dim > max_dim:
        raise DimensionLimitError(
            f"tensor would create dim {new_dim} > limit {max_dim}")
    return SparseOperator(sp.kron(a.matrix, b.matrix, format="csr"))


def hamiltonian_commutator(op: SparseOperator) -> SparseOperator:
    """Superoperator of -i[X, .] in column-stacking vectorization."""
    eye = sp.identity(op.dim, dtype=np.complex128, format="csr")
    m = op.matrix
    return SparseOperator(-1j * (sp.kron(eye, m, format="csr")
                                 - sp.kron(m.T, eye, format="csr")))


def liouvillian(H: SparseOperator, jumps=()) -> SparseOperator:
    """Lindblad superoperator L with L vec(rho) = vec(drho/dt).

    drho/dt = -i[H, rho] + sum_k (J_k rho J_k^dag - {J_k^dag J_k, rho}/2),
    in column-stacking vectorization.  H must be Hermitian.
    """
    if not H.is_hermitian():
        raise ValueError("liouvillian: H is not Hermitian within tolerance")
    d = H.dim
    eye = sp.identity(d, dtype=np.complex128, format="csr")
    Hm = H.matrix
    L = -1j * (sp.kron(eye, Hm, format="csr") - sp.kron(Hm.T, eye, format="csr"))
    for J in jumps:
        if J.dim != d:
            raise ValueError(f"jump operator dim {J.dim} != H dim {d}")
        Jm = J.matrix
        JdJ = (Jm.conj().T @ Jm).tocsr()
        L = L + sp.kron(Jm.conj(), Jm, format="csr") \
            - 0.5 * sp.kron(eye, JdJ, format="csr") \
            - 0.5 * sp.kron(JdJ.T, eye, format="csr")
    return SparseOperator(L)


class DensityState:
    """Dense, Hermitian, trace-one density matrix."""

    __slots__ = ("dim", "matrix")

    def __init__(self, matrix, check: bool = True):
        m = np.asarray(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        if check:
            herm = np.abs(m - m.conj().T).max()
            if herm > 1e-10:
                raise ValueError(f"density matrix not Hermitian (max dev {herm:.2e})")
            tr = np.trace(m)
            if abs(tr - 1.0) > 1e-10:
                raise ValueError(f"density matrix trace {tr} != 1")
        self.dim = m.shape[0]
        self.matrix = m

    def min_eigenvalue(self) -> float:
        return float(la.eigvalsh(self.matrix)[0])

    def __repr__(self):
        return f"DensityState(dim={self.dim})"


def expectation(rho: DensityState, op: SparseOperator) -> complex:
    """tr(rho op)."""
    if rho.dim != op.dim:
        raise ValueError(f"dim mismatch: rho {rho.dim} vs op {op.dim}")
    coo = op.matrix.tocoo()
    # tr(rho op) = sum_{jk} rho[k, j] op[j, k]
    return complex(np.sum(coo.data * rho.matrix[coo.col, coo.row]))


def _trace_positions(d: int) -> np.ndarray:
    return np.arange(d) * d + np.arange(d)


def _replace_row(m: sp.csr_matrix, r: int, cols, vals) -> sp.csr_matrix:
    """CSR copy of `m` with row r replaced by the given sparse row."""
    start, stop = m.indptr[r], m.indptr[r + 1]
    cols = np.asarray(cols, dtype=m.indices.dtype)
    vals = np.asarray(vals, dtype=m.data.dtype)
    data = np.concatenate([m.data[:start], vals, m.data[stop:]])
    indices = np.concatenate([m.indices[:start], cols, m.indices[stop:]])
    indptr = m.indptr.copy()
    indptr[r + 1:] += len(cols) - (stop - start)
    return sp.csr_matrix((data, indices, indptr), shape=m.shape)


def _constrained_system(Lm: sp.csr_matrix, d: int):
    """Replace one row of L by the trace constraint.

    Only rows at trace positions (vec indices of diagonal elements) are
    eligible: the left null vector of a Liouvillian is vec(identity), so
    deleting any other row leaves the system singular.  Among those, the
    row under the largest |diagonal| is replaced (lowest index on ties).
    """
    n = d * d
    tpos = _trace_positions(d)
    diag = Lm.diagonal()
    r = int(tpos[int(np.argmax(np.abs(diag[tpos])))])
    A = _replace_row(Lm, r, tpos, np.ones(d, np.complex128))
    b = np.zeros(n, np.complex128)
    b[r] = 1.0
    return A, b, r


def _residual_bound(L: SparseOperator, d: int, tol_scale: float) -> float:
    return tol_scale * L.frobenius_norm() / d


def _finish(x: np.ndarray, d: int, L: SparseOperator, bound: float,
            check_positivity: bool) -> DensityState:
    if not np.all(np.isfinite(x)):
        raise SolverError("steady_state: non-finite solution (singular system?)")
    rho = x.reshape((d, d), order="F")
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho).real
    if abs(tr) < 1e-300:
        raise SolverError("steady_state: solution has vanishing trace")
    rho = rho / tr
    resid = float(np.linalg.norm(L.matrix @ rho.reshape(-1, order="F")))
    if resid > bound:
        raise SolverError(
            f"steady_state: residual {resid:.3e} exceeds bound {bound:.3e}")
    state = DensityState(rho)
    if check_positivity and state.min_eigenvalue() < -1e-8:
        raise SolverError(
            f"steady_state: negative eigenvalue {state.min_eigenvalue():.3e}")
    return state


def steady_state(L: SparseOperator, method: str = "auto", tol_scale: float = 1e-9,
                 check_positivity: bool = False, preconditioner=None,
                 x0: np.ndarray | None = None) -> DensityState:
    """Solve L vec(rho) = 0 with tr(rho) = 1.

    The trace constraint replaces one (necessarily trace-position) row of
    L and the resulting system is solved either by direct sparse LU or by
    preconditioned GMRES (`method` in {"auto", "direct", "iterative"};
    auto switches to iterative above 2e4 unknowns).  The returned state
    satisfies ||L vec(rho)||_2 <= tol_scale * ||L||_F / d.

    `preconditioner` (optional, iterative path) is a callable mapping a
    residual vector to an approximate correction; see
    `effective_hamiltonian_preconditioner`.  `x0` warm-starts the Krylov
    iteration.
    """
    n = L.dim
    d = math.isqrt(n)
    if d * d != n:
        raise ValueError("steady_state: L dimension is not a perfect square")
    A, b, _ = _constrained_system(L.matrix, d)
    bound = _residual_bound(L, d, tol_scale)
    if method == "auto":
        method = "direct" if n <= DIRECT_UNKNOWN_LIMIT else "iterative"
    if method == "direct":
        x = spla.spsolve(A.tocsc(), b)
        return _finish(x, d, L, bound, check_positivity)
    if method != "iterative":
        raise ValueError(f"steady_state: unknown method {method!r}")

    M = None
    if preconditioner is not None:
        M = spla.LinearOperator((n, n), preconditioner)
    atol = 0.25 * bound if bound > 0 else 1e-30
    x, info = spla.gmres(A, b, x0=x0, M=M, rtol=1e-13, atol=atol,
                         restart=400, maxiter=4)
    if info == 0:
        try:
            return _finish(x, d, L, bound, check_positivity)
        except SolverError:
            pass
    # fallback: ILU-preconditioned retry, then direct
    try:
        ilu = spla.spilu(A.tocsc(), drop_tol=1e-8, fill_factor=30)
        Milu = spla.LinearOperator((n, n), ilu.solve)
        x, info = spla.gmres(A, b, x0=x, M=Milu, rtol=1e-13, atol=atol,
                             restart=400, maxiter=4)
        if info == 0:
            return _finish(x, d, L, bound, check_positivity)
    except (RuntimeError, MemoryError):
        pass
    raise SolverError(
        f"steady_state: iterative solve failed to reach residual bound "
        f"{bound:.3e} (gmres info={info})")


def preconditioner_from_heff(heff: np.ndarray, single_precision: bool = False):
    """Sylvester-inverting preconditioner from a dense effective Hamiltonian.

    Returns a callable mapping a residual vector R (vectorized) to the X
    solving -i(H_eff X - X H_eff^dag) = R, through one eigendecomposition
    of H_eff.  Divisors -i(lam_j - conj(lam_k)) have strictly positive
    real part because every H_eff eigenvalue decays, so the map is always
    well defined.

    `single_precision` runs the dense algebra in complex64; the rounding
    only perturbs the preconditioner, never the verified residual.
    """
    d = heff.shape[0]
    lam, V = la.eig(np.asarray(heff, dtype=np.complex128), check_finite=False)
    Vinv = la.inv(V, check_finite=False)
    denom = -1j * (lam[:, None] - lam[None, :].conj())
    VH = V.conj().T
    VinvH = Vinv.conj().T
    if single_precision:
        V = V.astype(np.complex64)
        Vinv = Vinv.astype(np.complex64)
        VH = VH.astype(np.complex64)
        VinvH = VinvH.astype(np.complex64)
        inv_denom = (1.0 / denom).astype(np.complex64)

        def apply(rvec: np.ndarray) -> np.ndarray:
            R = rvec.astype(np.complex64).reshape((d, d), order="F")
            X = V @ ((Vinv @ R @ VinvH) * inv_denom) @ VH
            return X.reshape(-1, order="F").astype(np.complex128)

        return apply

    def apply(rvec: np.ndarray) -> np.ndarray:
        R = rvec.reshape((d, d), order="F")
        X = V @ ((Vinv @ R @ VinvH) / denom) @ VH
        return X.reshape(-1, order="F")

    return apply


def _gmres_mgs(matvec, minv, b, x0, atol, maxiter=250):
    """Right-preconditioned GMRES, one long cycle.

    Solves A M^-1 u = b and returns x = x0 + M^-1 (Q y); with right
    preconditioning the Arnoldi recurrence tracks the true residual norm
    ||b - A x||, compared against `atol`.  Callers verify the final
    residual independently.
    """
    n = len(b)
    x = np.zeros(n, np.complex128) if x0 is None else x0.astype(np.complex128)
    r = b - matvec(x) if x0 is not None else b.copy()
    beta = np.linalg.norm(r)
    if beta <= atol:
        return x
    Q = np.empty((maxiter + 1, n), np.complex128)
    Qc = np.empty((maxiter + 1, n), np.complex128)  # conjugated copy, kept in step
    Q[0] = r / beta
    Qc[0] = Q[0].conj()
    Hcol = np.zeros((maxiter + 1, maxiter), np.complex128)
    cs = np.zeros(maxiter, np.complex128)
    sn = np.zeros(maxiter, np.complex128)
    g = np.zeros(maxiter + 1, np.complex128)
    g[0] = beta
    k_used = 0
    for k in range(maxiter):
        w = matvec(minv(Q[k]))
        h = Qc[:k + 1] @ w
        w -= h @ Q[:k + 1]
        h_next = np.linalg.norm(w)
        Hcol[:k + 1, k] = h
        Hcol[k + 1, k] = h_next
        if h_next > 0.0:
            Q[k + 1] = w / h_next
            Qc[k + 1] = Q[k + 1].conj()
        # apply accumulated Givens rotations, then zero the subdiagonal
        for i in range(k):
            t = cs[i] * Hcol[i, k] + sn[i] * Hcol[i + 1, k]
            Hcol[i + 1, k] = -np.conj(sn[i]) * Hcol[i, k] + cs[i] * Hcol[i + 1, k]
            Hcol[i, k] = t
        denom = math.sqrt(abs(Hcol[k, k]) ** 2 + abs(Hcol[k + 1, k]) ** 2)
        if denom == 0.0:
            k_used = k
            break
        cs[k] = abs(Hcol[k, k]) / denom if Hcol[k, k] != 0 else 0.0
        phase = Hcol[k, k] / abs(Hcol[k, k]) if Hcol[k, k] != 0 else 1.0
        sn[k] = phase * np.conj(Hcol[k + 1, k]) / denom
        Hcol[k, k] = cs[k] * Hcol[k, k] + sn[k] * Hcol[k + 1, k]
        Hcol[k + 1, k] = 0.0
        g[k + 1] = -np.conj(sn[k]) * g[k]
        g[k] = cs[k] * g[k]
        k_used = k + 1
        if abs(g[k + 1]) <= atol:
            break
    if k_used == 0:
        return x
    y = np.linalg.solve(Hcol[:k_used, :k_used], g[:k_used])
    return x + minv(y @ Q[:k_used])


def symmetric_sector_basis(perm, signs) -> sp.csr_matrix:
    """Orthonormal basis of the +1 sector of the map rho -> S rho S.

    S is the signed permutation S|i> = signs[i] |perm[i]>, an involution
    commuting with the Liouvillian.  Column vectors are single vec-space
    coordinates (fixed points with positive sign) or normalized pairs
    (e_v + s e_w)/sqrt(2); the unique steady state lies in their span.
    """
    perm = np.asarray(perm)
    signs = np.asarray(signs, dtype=float)
    d = len(perm)
    if np.any(perm[perm] != np.arange(d)):
        raise ValueError("perm must be an involution")
    n = d * d
    v = np.arange(n)
    row = v % d
    col = v // d
    w = perm[col] * d + perm[row]
    s = signs[col] * signs[row]
    fixed = (w == v)
    keep_fixed = v[fixed & (s > 0)]
    pair_lo = v[(~fixed) & (v < w)]
    pair_hi = w[(~fixed) & (v < w)]
    pair_sign = s[(~fixed) & (v < w)]
    m = len(keep_fixed) + len(pair_lo)
    rows = np.concatenate([keep_fixed, pair_lo, pair_hi])
    cols = np.concatenate([
        np.arange(len(keep_fixed)),
        np.arange(len(pair_lo)) + len(keep_fixed),
        np.arange(len(pair_lo)) + len(keep_fixed),
    ])
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    vals = np.concatenate([
        np.ones(len(keep_fixed)),
        np.full(len(pair_lo), inv_sqrt2),
        pair_sign * inv_sqrt2,
    ])
    return sp.csr_matrix((vals, (rows, cols)), shape=(n, m))


class DetuningSweep:
    """Steady states of the family L(delta) = L0 + delta * diag(k).

    Probe scans only shift the Liouvillian's diagonal (the commutator of
    the excitation number), so the constrained system's sparsity pattern,
    trace-replaced row and symbolic structure are shared across the whole
    grid; each point updates the stored diagonal data in place.  With a
    `basis` (see `symmetric_sector_basis`) the solve runs in the invariant
    sector holding the steady state, at half the cost.  Solutions satisfy
    the same residual contract as `steady_state` and warm-start the next
    point's Krylov iteration.
    """

    def __init__(self, L0: SparseOperator, k_diag: np.ndarray,
                 tol_scale: float = 1e-9, basis: sp.spmatrix | None = None):
        n_full = L0.dim
        d = math.isqrt(n_full)
        if d * d != n_full:
            raise ValueError("DetuningSweep: L0 dimension is not a perfect square")
        if len(k_diag) != n_full:
            raise ValueError("DetuningSweep: diagonal length mismatch")
        self.d = d
        k_full = np.asarray(k_diag, dtype=np.complex128)
        trace_full = np.zeros(n_full)
        trace_full[_trace_positions(d)] = 1.0

        if basis is None:
            self._embed = self._project = None
            work = L0.matrix
            self.k_diag = k_full
            t_work = trace_full
        else:
            B = basis.tocsc()
            Bh = basis.conj().T.tocsr()
            self._embed = B
            self._project = Bh
            work = SparseOperator(Bh @ L0.matrix @ B).matrix
            self.k_diag = (Bh @ sp.diags(k_full) @ B).diagonal()
            t_work = Bh @ trace_full
        self.n = work.shape[0]
        n = self.n

        eligible = np.flatnonzero(np.abs(t_work) > 1e-12)
        diag = work.diagonal()
        r = int(eligible[int(np.argmax(np.abs(diag[eligible])))])
        self._row = r
        if self.k_diag[r] != 0.0:
            raise ValueError("DetuningSweep: detuning term must vanish on the "
                             "constraint row")
        t_cols = np.flatnonzero(t_work)
        A0 = _replace_row(work, r, t_cols, t_work[t_cols].astype(np.complex128))
        b = np.zeros(n, np.complex128)
        b[r] = 1.0
        self._b = b
        # force a full explicit diagonal so the pattern is delta-independent
        patt = (A0 + sp.diags(np.ones(n))).tocsr()
        patt.sum_duplicates()
        patt.sort_indices()
        self._indices = patt.indices
        self._indptr = patt.indptr
        diag_pos = np.empty(n, dtype=np.int64)
        for i in range(n):
            lo, hi = patt.indptr[i], patt.indptr[i + 1]
            diag_pos[i] = lo + np.searchsorted(patt.indices[lo:hi], i)
        self._diag_pos = diag_pos
        base = patt.data.copy()
        base[diag_pos] -= 1.0
        self._base_data = base
        # pieces for the residual contract ||L vec(rho)|| <= tol * ||L||_F / d
        self._l_diag = diag
        self._l_offdiag_sq = float((np.abs(work.data) ** 2).sum()
                                   - (np.abs(diag) ** 2).sum())
        self._l_row = work.getrow(r)
        self._tol_scale = tol_scale
        self._x_prev = None

    def _matrix(self, delta: float) -> sp.csr_matrix:
        data = self._base_data.copy()
        data[self._diag_pos] += delta * self.k_diag
        return sp.csr_matrix((data, self._indices, self._indptr),
                             shape=(self.n, self.n))

    def _bound(self, delta: float) -> float:
        diag_sq = float((np.abs(self._l_diag + delta * self.k_diag) ** 2).sum())
        return self._tol_scale * math.sqrt(self._l_offdiag_sq + diag_sq) / self.d

    def wrap_preconditioner(self, minv):
        """Adapt a full-space preconditioner to this sweep's working space."""
        if self._embed is None:
            return minv
        B, Bh = self._embed, self._project
        return lambda y: Bh @ minv(B @ y)

    def solve(self, delta: float, preconditioner) -> DensityState:
        A = self._matrix(delta)
        bound = self._bound(delta)
        x = _gmres_mgs(A.__matmul__, preconditioner, self._b, self._x_prev,
                       atol=0.5 * bound if bound > 0 else 1e-30)
        rho = None
        if np.all(np.isfinite(x)):
            rho, x = self._accept(A, x, bound)
        if rho is None:
            x = spla.spsolve(A.tocsc(), self._b)
            rho, x = self._accept(A, x, bound)
            if rho is None:
                raise SolverError(
                    f"sweep solve at delta={delta:.6e} missed residual bound "
                    f"{bound:.3e}")
        self._x_prev = x
        return DensityState(rho)

    def _accept(self, A, x, bound):
        d = self.d
        full = x if self._embed is None else self._embed @ x
        rho = full.reshape((d, d), order="F")
        rho = 0.5 * (rho + rho.conj().T)
        tr = np.trace(rho).real
        if not np.isfinite(tr) or abs(tr) < 1e-300:
            return None, x
        rho = rho / tr
        v = rho.reshape(-1, order="F")
        y = v if self._project is None else self._project @ v
        resid_vec = A @ y
        resid_vec[self._row] = (self._l_row @ y)[0]
        resid = float(np.linalg.norm(resid_vec))
        if resid > bound:
            return None, x
        return rho, y


def effective_hamiltonian_preconditioner(H: SparseOperator, jumps):
    """Preconditioner for the iterative steady-state solve.

    Inverts the anti-commutator part of the Liouvillian,
    r -> X with -i(H_eff X - X H_eff^dag) = R, H_eff = H - i/2 sum J^dag J.
    The neglected quantum-jump feeding term is bounded, so GMRES converges
    in tens of iterations.
    """
    Heff = H.matrix.toarray().astype(np.complex128)
    for J in jumps:
        Jm = J.matrix
        Heff -= 0.5j * (Jm.conj().T @ Jm).toarray()
    return preconditioner_from_heff(Heff)
