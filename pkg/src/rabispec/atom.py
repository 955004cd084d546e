"""Cs atomic structure for the D2 (F=4 -> F'=5) manifold.

Enumerates the Zeeman basis (9 ground + 11 excited sublevels), the
Clebsch-Gordan weights G of each (m, q) transition, and the
polarization-resolved dipole lowering operators.  The quantization axis
is the cavity axis z, so the cavity couples only sigma+/- (q = +/-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import factorial

from .config import TWO_LEVEL, ZEEMAN_FULL
from .operators import SparseOperator, identity, tensor

GROUND_F4 = "ground_F4"
EXCITED_F5 = "excited_F5"


@dataclass(frozen=True)
class ZeemanState:
    manifold: str
    m: int

    def __post_init__(self):
        if self.manifold == GROUND_F4:
            if abs(self.m) > 4:
                raise ValueError(f"|m| <= 4 required in F=4, got {self.m}")
        elif self.manifold == EXCITED_F5:
            if abs(self.m) > 5:
                raise ValueError(f"|m| <= 5 required in F'=5, got {self.m}")
        else:
            raise ValueError(f"unknown manifold {self.manifold!r}")


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """<j1 m1; j2 m2 | J M> from the Racah factorial sum (integer j only)."""
    if M != m1 + m2 or abs(m1) > j1 or abs(m2) > j2 or abs(M) > J:
        return 0.0
    if J > j1 + j2 or J < abs(j1 - j2):
        return 0.0
    pref = (2 * J + 1) * factorial(J + j1 - j2) * factorial(J - j1 + j2) \
        * factorial(j1 + j2 - J) / factorial(j1 + j2 + J + 1)
    pref *= factorial(J + M) * factorial(J - M) * factorial(j1 - m1) \
        * factorial(j1 + m1) * factorial(j2 - m2) * factorial(j2 + m2)
    total = 0.0
    for k in range(j1 + j2 + J + 2):
        dens = (k, j1 + j2 - J - k, j1 - m1 - k, j2 + m2 - k,
                J - j2 + m1 + k, J - j1 - m2 + k)
        if any(x < 0 for x in dens):
            continue
        prod = 1
        for x in dens:
            prod *= factorial(x)
        total += (-1) ** k / prod
    return math.sqrt(pref) * total


def clebsch_weight(m: int, q: int) -> float:
    """G_{m, q} = <4, m; 1, q | 5, m+q> for a ground sublevel m and photon q.

    With this composition the stretched coefficients are exactly 1, so G
    equals the raw Clebsch-Gordan coefficient.
    """
    if abs(m) > 4:
        raise ValueError(f"ground m out of range: {m}")
    if q not in (-1, 0, 1):
        raise ValueError(f"polarization q must be -1, 0 or +1, got {q}")
    if abs(m + q) > 5:
        raise ValueError(f"no excited partner for m={m}, q={q}")
    return clebsch_gordan(4, m, 1, q, 5, m + q)


class LevelScheme:
    """Ordered atomic basis plus the coupling weights between its manifolds.

    States are ordered ground (ascending m) then excited (ascending m').
    ``couplings[(m, q)]`` holds G for the |g,m> <-> |e,m+q> transition.
    """

    def __init__(self, ground_ms, excited_ms):
        self.states = tuple(
            [ZeemanState(GROUND_F4, m) for m in ground_ms]
            + [ZeemanState(EXCITED_F5, m) for m in excited_ms])
        self._index = {s: i for i, s in enumerate(self.states)}
        self.couplings = {}
        for m in ground_ms:
            for q in (-1, 0, 1):
                if (m + q) in excited_ms and abs(m + q) <= 5:
                    self.couplings[(m, q)] = clebsch_weight(m, q)

    @classmethod
    def zeeman_full(cls) -> "LevelScheme":
        return cls(range(-4, 5), range(-5, 6))

    @classmethod
    def two_level(cls) -> "LevelScheme":
        """Stretched-transition reduction: |g> = |4,4>, |e> = |5',5>."""
        return cls([4], [5])

    @classmethod
    def for_basis(cls, atomic_basis: str) -> "LevelScheme":
        if atomic_basis == TWO_LEVEL:
            return cls.two_level()
        if atomic_basis == ZEEMAN_FULL:
            return cls.zeeman_full()
        raise ValueError(f"unknown atomic basis {atomic_basis!r}")

    @property
    def dim(self) -> int:
        return len(self.states)

    def index_of(self, state: ZeemanState) -> int:
        return self._index[state]

    def ground_states(self):
        return [s for s in self.states if s.manifold == GROUND_F4]

    def excited_states(self):
        return [s for s in self.states if s.manifold == EXCITED_F5]

    def excited_projector(self, m_prime: int) -> SparseOperator:
        i = self._index[ZeemanState(EXCITED_F5, m_prime)]
        return SparseOperator.from_entries(self.dim, [(i, i, 1.0)])


def dipole_lowering(scheme: LevelScheme, q: int) -> SparseOperator:
    """D_q = sum_m G_{m,q} |g, m><e, m+q| on the scheme's atomic space."""
    if q not in (-1, 0, 1):
        raise ValueError(f"polarization q must be -1, 0 or +1, got {q}")
    entries = []
    for (m, qq), G in scheme.couplings.items():
        if qq != q:
            continue
        gi = scheme.index_of(ZeemanState(GROUND_F4, m))
        ei = scheme.index_of(ZeemanState(EXCITED_F5, m + q))
        entries.append((gi, ei, G))
    if not entries:
        return SparseOperator.from_entries(scheme.dim, [])
    return SparseOperator.from_entries(scheme.dim, entries)


def coupling_operator(scheme: LevelScheme, q: int,
                      mode_annihilator_embedded: SparseOperator,
                      g_local: float) -> SparseOperator:
    """Hermitian interaction g (a_q^dag D_q + D_q^dag a_q) on the composite.

    The embedded mode operator must live on an atom-first composite space
    (atom (x) modes); the atomic dipole operator is embedded to match.
    q = 0 is rejected: pi light has no cavity mode along z to pair with.
    """
    if q not in (-1, 1):
        raise ValueError("coupling_operator: cavity modes couple only q = +/-1")
    full_dim = mode_annihilator_embedded.dim
    rest, rem = divmod(full_dim, scheme.dim)
    if rem != 0:
        raise ValueError(
            f"embedded operator dim {full_dim} incompatible with atomic dim {scheme.dim}")
    D = tensor(dipole_lowering(scheme, q), identity(rest))
    a = mode_annihilator_embedded
    return g_local * (a.dag() @ D) + g_local * (D.dag() @ a)
