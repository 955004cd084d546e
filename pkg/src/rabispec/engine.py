"""Driven, dissipative atom-cavity model at one position and probe detuning.

The Hamiltonian is written in the frame rotating at the probe frequency,
so a steady state exists.  The probe drives the x-polarized mode; for the
full Zeeman basis the circular combinations a+ = (a_x - i a_y)/sqrt(2),
a- = (a_x + i a_y)/sqrt(2) couple to the sigma+/- dipole operators.  In
the two-level reduction the driven mode itself carries the stretched
transition at full strength (the standard Jaynes-Cummings limit); a
second mode, if requested, is carried but couples to nothing.

The trap shift common to all ground states is absorbed into the atomic
frequency; only differential shifts (beta_m' - 1) U(r) enter.  Position
enters the model solely through the local coupling g0 psi(r) and those
differential shifts, so all operator assembly is shared across positions
and probe detunings via a cached, affine decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import atom as atom_mod
from .config import TWO_PI, TWO_LEVEL, ModelReduction, SystemParams
from .operators import (DetuningSweep, SparseOperator, annihilator,
                        expectation, hamiltonian_commutator, identity,
                        liouvillian, preconditioner_from_heff, steady_state,
                        symmetric_sector_basis, tensor)
from .trap import Position, fort_potential, mode_function

# below this many superoperator unknowns the direct solver wins a scan
_CURVE_DIRECT_LIMIT = 2500


@dataclass(frozen=True)
class ModelMeta:
    position: Position
    probe_detuning: float
    reduction: ModelReduction


@dataclass(frozen=True)
class ModelInstance:
    hamiltonian: SparseOperator
    jumps: tuple
    probe_mode_annihilator: SparseOperator
    dim: int
    meta: ModelMeta


class _ModelFamily:
    """Position- and detuning-independent operators of one configuration.

    H(pos, delta) = H_fixed + g0 psi(pos) V
                    + sum_m' (beta_m' - 1) 2 pi U(pos) P_m' - delta N,
    with V the unit-strength coupling, P_m' the excited projectors and N
    the total excitation number.  The Liouvillian decomposes the same way
    around the fixed dissipators, so probe scans and thermal ensembles
    reuse one superoperator assembly.
    """

    def __init__(self, params: SystemParams, reduction: ModelReduction):
        self.params = params
        self.reduction = reduction
        scheme = atom_mod.LevelScheme.for_basis(reduction.atomic_basis)
        n_modes = reduction.mode_count
        nm = reduction.photon_cutoff + 1
        a = annihilator(reduction.photon_cutoff)
        ident_m = identity(nm)
        ident_atom = identity(scheme.dim)

        if n_modes == 1:
            a_x = tensor(ident_atom, a)
            a_y = None
        else:
            a_x = tensor(tensor(ident_atom, a), ident_m)
            a_y = tensor(tensor(ident_atom, ident_m), a)

        self.dim = scheme.dim * nm**n_modes
        mode_ident = identity(self.dim // scheme.dim)

        if reduction.atomic_basis == TWO_LEVEL:
            # stretched-transition JC: the driven mode carries the coupling
            coupling = atom_mod.coupling_operator(scheme, +1, a_x, 1.0)
        else:
            if n_modes == 2:
                a_plus = (a_x - 1j * a_y) * (1.0 / math.sqrt(2.0))
                a_minus = (a_x + 1j * a_y) * (1.0 / math.sqrt(2.0))
            else:
                a_plus = a_minus = a_x * (1.0 / math.sqrt(2.0))
            coupling = (atom_mod.coupling_operator(scheme, +1, a_plus, 1.0)
                        + atom_mod.coupling_operator(scheme, -1, a_minus, 1.0))
        self.coupling_unit = coupling

        eps = params.kappa * math.sqrt(params.drive_photon_number)
        excited_proj_sum = None
        self.shift_projectors = []      # (beta_m' - 1, projector) for beta != 1
        for state in scheme.excited_states():
            proj = tensor(scheme.excited_projector(state.m), mode_ident)
            excited_proj_sum = proj if excited_proj_sum is None else excited_proj_sum + proj
            beta = params.beta(state.m)
            if beta != 1.0:
                self.shift_projectors.append((beta - 1.0, proj))

        h_fixed = eps * (a_x + a_x.dag()) + params.delta_AC * excited_proj_sum
        number_x = a_x.dag() @ a_x
        if n_modes == 2:
            number_y = a_y.dag() @ a_y
            h_fixed = h_fixed + params.mode_splitting * number_y
            excitation = number_x + number_y + excited_proj_sum
        else:
            excitation = number_x + excited_proj_sum
        self.h_fixed = h_fixed
        self.excitation_number = excitation
        self.probe_mode = a_x
        self.probe_number = number_x

        jumps = [math.sqrt(2.0 * params.kappa) * a_x]
        if n_modes == 2:
            jumps.append(math.sqrt(2.0 * params.kappa) * a_y)
        decay = math.sqrt(2.0 * params.gamma)
        for q in (-1, 0, 1):
            D = atom_mod.dipole_lowering(scheme, q)
            if D.nnz:
                jumps.append(decay * tensor(D, mode_ident))
        self.jumps = tuple(jumps)

        # superoperator pieces (lazy: only scans need them)
        self._liou_fixed = None
        self._k_coupling = None
        self._k_shift = None
        self._heff_fixed = None
        self._sector = None
        self._sector_known = False

    # ---- position/detuning composition ------------------------------

    def local_terms(self, pos: Position):
        """(g_local, differential shifts) at one position."""
        g_local = self.params.g0 * mode_function(pos, self.params)
        shifts = []
        if self.shift_projectors:
            u = TWO_PI * fort_potential(pos, self.params)
            shifts = [(ratio * u, proj) for ratio, proj in self.shift_projectors]
        return g_local, shifts

    def hamiltonian(self, pos: Position, probe_detuning: float) -> SparseOperator:
        g_local, shifts = self.local_terms(pos)
        H = self.h_fixed + g_local * self.coupling_unit
        for value, proj in shifts:
            H = H + value * proj
        if probe_detuning != 0.0:
            H = H + (-probe_detuning) * self.excitation_number
        return H

    def _superoperator_pieces(self):
        if self._liou_fixed is None:
            self._liou_fixed = liouvillian(self.h_fixed, self.jumps)
            self._k_coupling = hamiltonian_commutator(self.coupling_unit)
            self._k_shift = [(hamiltonian_commutator(proj))
                             for _, proj in self.shift_projectors]
            heff = self.h_fixed.to_dense()
            for J in self.jumps:
                Jm = J.matrix
                heff -= 0.5j * (Jm.conj().T @ Jm).toarray()
            self._heff_fixed = heff
        return self._liou_fixed, self._k_coupling, self._k_shift, self._heff_fixed

    def liouvillian_base(self, pos: Position):
        """L at delta = 0 plus the dense H_eff at delta = 0, for sweeps."""
        liou_fixed, k_coupling, k_shift, heff_fixed = self._superoperator_pieces()
        g_local, shifts = self.local_terms(pos)
        Lm = liou_fixed.matrix + g_local * k_coupling.matrix
        heff = heff_fixed + g_local * self.coupling_unit.to_dense()
        for (value, proj), k_proj in zip(shifts, k_shift):
            Lm = Lm + value * k_proj.matrix
            heff = heff + value * proj.to_dense()
        return SparseOperator(Lm), heff

    def mirror_sector_basis(self, probe_L0: SparseOperator):
        """Invariant-sector basis of the Zeeman mirror symmetry, if exact.

        The map combining m -> -m on the atom with the parity of the
        y-polarized mode commutes with the model when the excited trap
        shifts are mirror-symmetric; the steady state then lives in the
        +1 sector.  Verified numerically against `probe_L0` before use;
        returns None when unavailable.
        """
        if self._sector_known:
            return self._sector
        self._sector_known = True
        if self.reduction.atomic_basis == TWO_LEVEL:
            return None
        betas = self.params.excited_shift_ratios
        if any(betas[mp + 5] != betas[5 - mp] for mp in range(1, 6)):
            return None
        nm = self.reduction.photon_cutoff + 1
        n_modes = self.reduction.mode_count
        # atomic mirror: ground index m+4 -> 4-m, excited 14+m' -> 14-m'
        atom_perm = np.concatenate([8 - np.arange(9), 9 + (10 - np.arange(11))])
        mode_dim = nm**n_modes
        perm = (atom_perm[:, None] * mode_dim + np.arange(mode_dim)).ravel()
        signs = np.ones(20 * mode_dim)
        if n_modes == 2:
            ny = np.tile(np.arange(nm), 20 * nm)
            signs = np.where(ny % 2 == 0, 1.0, -1.0)
        basis = symmetric_sector_basis(perm, signs)
        # cheap invariance probe: L must keep the sector invariant
        rng_vec = np.cos(0.7 * np.arange(basis.shape[1])) + 0.1
        full = basis @ rng_vec
        image = probe_L0.matrix @ full
        leak = image - basis @ (basis.conj().T @ image)
        if np.linalg.norm(leak) > 1e-8 * max(np.linalg.norm(image), 1e-300):
            return None
        self._sector = basis
        return basis


@lru_cache(maxsize=8)
def _family(params: SystemParams, reduction: ModelReduction) -> _ModelFamily:
    return _ModelFamily(params, reduction)


def build_model(params: SystemParams, reduction: ModelReduction, pos: Position,
                probe_detuning: float) -> ModelInstance:
    """Assemble Hamiltonian, jump operators and probe mode at one point.

    `probe_detuning` is omega_p - omega_C1 in rad/s.
    """
    fam = _family(params, reduction)
    return ModelInstance(
        hamiltonian=fam.hamiltonian(pos, probe_detuning),
        jumps=fam.jumps,
        probe_mode_annihilator=fam.probe_mode,
        dim=fam.dim,
        meta=ModelMeta(pos, probe_detuning, reduction),
    )


def transmission(params: SystemParams, reduction: ModelReduction, pos: Position,
                 probe_detuning: float, method: str = "auto") -> float:
    """Normalized probe transmission T1 at one point.

    T1 = <a_x^dag a_x>_ss / drive_photon_number; the denominator is the
    analytic resonant empty-cavity photon number, not a second solve.
    """
    model = build_model(params, reduction, pos, probe_detuning)
    L = liouvillian(model.hamiltonian, model.jumps)
    precond = None
    if method == "iterative" or (method == "auto" and model.dim**2 > 20_000):
        heff = model.hamiltonian.to_dense()
        for J in model.jumps:
            Jm = J.matrix
            heff -= 0.5j * (Jm.conj().T @ Jm).toarray()
        precond = preconditioner_from_heff(heff)
    rho = steady_state(L, method=method, preconditioner=precond)
    n_x = model.probe_mode_annihilator.dag() @ model.probe_mode_annihilator
    return expectation(rho, n_x).real / params.drive_photon_number


def transmission_curve(params: SystemParams, reduction: ModelReduction, pos: Position,
                       detunings, method: str | None = None) -> np.ndarray:
    """T1 over a detuning grid, reusing one Liouvillian assembly.

    L(delta) = L(0) + delta * K with K the diagonal commutator
    superoperator of the excitation number, so a whole scan shares one
    sparse structure.  Zeeman-sized systems go through the preconditioned
    Krylov solver, warm-started along the grid; small systems use the
    direct solver.
    """
    fam = _family(params, reduction)
    d = fam.dim
    if method is None:
        method = "direct" if d * d <= _CURVE_DIRECT_LIMIT else "iterative"
    nvec = fam.excitation_number.matrix.diagonal().real
    k_diag = 1j * (np.tile(nvec, d) - np.repeat(nvec, d))
    nx_diag = fam.probe_number.matrix.diagonal().real
    diag_idx = np.arange(d)
    out = np.empty(len(detunings))

    if method == "iterative":
        L0, heff_base = fam.liouvillian_base(pos)
        basis = fam.mirror_sector_basis(L0)
        sweep = DetuningSweep(L0, k_diag, basis=basis)
        heff = np.empty_like(heff_base)
        for i, delta in enumerate(detunings):
            np.copyto(heff, heff_base)
            heff[diag_idx, diag_idx] -= delta * nvec
            precond = sweep.wrap_preconditioner(preconditioner_from_heff(heff))
            rho = sweep.solve(delta, preconditioner=precond)
            out[i] = (nx_diag @ rho.matrix.diagonal().real) / params.drive_photon_number
        return out

    import scipy.sparse as sp
    L0, _ = fam.liouvillian_base(pos)
    for i, delta in enumerate(detunings):
        L = SparseOperator(L0.matrix + sp.diags(k_diag * delta))
        rho = steady_state(L, method=method)
        out[i] = (nx_diag @ rho.matrix.diagonal().real) / params.drive_photon_number
    return out
