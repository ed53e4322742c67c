"""Two-qubit state constructors and 4x4 Hermitian matrix utilities.

Density matrices are plain complex ``numpy`` arrays in the computational
basis ordered |00>, |01>, |10>, |11>, so that entry (i, j) with 1-based
indices matches the usual rho_ij convention (rho_41 is the |11><00|
coherence).  All functions are pure; arrays are never mutated in place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalContractError

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-9

#: entries allowed to be nonzero in an X-form state: diagonal + anti-diagonal
_X_MASK = np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1, 1, 0],
        [1, 0, 0, 1],
    ],
    dtype=bool,
)


@dataclass(frozen=True)
class StateFamily:
    """A named initial-state family with its single parameter.

    kind
        one of ``"bell"``, ``"werner"``, ``"mems"``, ``"nme"``
    param
        mixing weight r_b for Werner, anti-diagonal weight for MEMS,
        |alpha|^2 for the non-maximally entangled pure state.  Ignored
        for ``"bell"``.
    """

    kind: str
    param: float = 1.0

    def __post_init__(self):
        if self.kind not in ("bell", "werner", "mems", "nme"):
            raise ValueError(f"unknown state family {self.kind!r}")
        if not 0.0 <= self.param <= 1.0:
            raise ValueError(f"family parameter {self.param} outside [0, 1]")


def bell_state() -> np.ndarray:
    """Density matrix of (|00> + |11>)/sqrt(2)."""
    psi = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0)
    return np.outer(psi, psi.conj())


def werner_state(r_b: float) -> np.ndarray:
    """Mixture (1 - r_b)/4 * I + r_b * Bell; r_b sets the purity."""
    if not 0.0 <= r_b <= 1.0:
        raise ValueError(f"r_b={r_b} outside [0, 1]")
    return (1.0 - r_b) / 4.0 * np.eye(4, dtype=complex) + r_b * bell_state()


def mems_state(gamma: float) -> np.ndarray:
    """Maximally entangled mixed state with anti-diagonal weight gamma.

    The (1,1)/(4,4) populations follow the piecewise g(gamma): 1/3 below
    gamma = 2/3 and gamma/2 above, which maximizes entanglement at fixed
    linear entropy.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma={gamma} outside [0, 1]")
    g = 1.0 / 3.0 if gamma < 2.0 / 3.0 else gamma / 2.0
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = g
    rho[1, 1] = 1.0 - 2.0 * g
    rho[0, 3] = rho[3, 0] = gamma / 2.0
    return rho


def nme_state(alpha2: float) -> np.ndarray:
    """Pure state alpha|00> + beta|11> with alpha = sqrt(alpha2), beta real."""
    if not 0.0 <= alpha2 <= 1.0:
        raise ValueError(f"alpha2={alpha2} outside [0, 1]")
    psi = np.zeros(4, dtype=complex)
    psi[0] = np.sqrt(alpha2)
    psi[3] = np.sqrt(1.0 - alpha2)
    return np.outer(psi, psi.conj())


def make_state(family: StateFamily) -> np.ndarray:
    """Build the initial density matrix for a :class:`StateFamily`."""
    if family.kind == "bell":
        return bell_state()
    if family.kind == "werner":
        return werner_state(family.param)
    if family.kind == "mems":
        return mems_state(family.param)
    return nme_state(family.param)


def validate_density_matrix(
    rho: np.ndarray,
    herm_tol: float = HERMITICITY_TOL,
    trace_tol: float = TRACE_TOL,
    psd_tol: float = PSD_TOL,
) -> None:
    """Raise :class:`NumericalContractError` unless rho is a valid state.

    Checks entrywise Hermiticity, unit trace, positive semidefiniteness
    (up to the given tolerances) and that every entry is finite.
    """
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise NumericalContractError(f"expected a 4x4 matrix, got {rho.shape}")
    if not np.isfinite(rho).all():
        raise NumericalContractError("non-finite entries in density matrix")
    herm_dev = np.abs(rho - rho.conj().T).max()
    if herm_dev > herm_tol:
        raise NumericalContractError(f"Hermiticity violated by {herm_dev:.3e}")
    trace_dev = abs(rho.trace().real - 1.0) + abs(rho.trace().imag)
    if trace_dev > trace_tol:
        raise NumericalContractError(f"trace deviates from 1 by {trace_dev:.3e}")
    min_eig = np.linalg.eigvalsh((rho + rho.conj().T) / 2.0).min()
    if min_eig < -psd_tol:
        raise NumericalContractError(f"negative eigenvalue {min_eig:.3e}")


def hermitian_eigenvalues(m: np.ndarray, herm_tol: float = 1e-10) -> np.ndarray:
    """Real eigenvalues of a Hermitian 4x4 matrix, sorted descending."""
    m = np.asarray(m, dtype=complex)
    dev = np.abs(m - m.conj().T).max()
    if dev > herm_tol:
        raise NumericalContractError(f"matrix not Hermitian (deviation {dev:.3e})")
    return np.linalg.eigvalsh(m)[::-1]


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy -sum(lam * log2 lam) in bits, with 0 log 0 := 0.

    Eigenvalues are clamped to [0, 1] first; channel endpoints produce
    round-off of order 1e-16 that would otherwise yield NaN.
    """
    lam = np.clip(hermitian_eigenvalues(rho), 0.0, 1.0)
    nz = lam[lam > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def purity_and_linear_entropy(rho: np.ndarray) -> tuple[float, float]:
    """Return (Tr rho^2, 4/3 (1 - Tr rho^2))."""
    p = float(np.einsum("ij,ji->", rho, rho).real)
    return p, 4.0 / 3.0 * (1.0 - p)


def is_x_state(rho: np.ndarray, tol: float = 1e-10) -> bool:
    """True iff every entry off the diagonal/anti-diagonal has modulus <= tol."""
    return bool(np.abs(np.asarray(rho)[~_X_MASK]).max() <= tol)


def random_x_state(rng: np.random.Generator) -> np.ndarray:
    """Draw a random X-form density matrix with real coherences.

    Populations are uniform on the simplex; the two coherences are drawn
    uniformly inside the exact positivity bounds |rho14| <= sqrt(rho11 rho44),
    |rho23| <= sqrt(rho22 rho33), so the output is PSD by construction.
    """
    pop = rng.dirichlet(np.ones(4))
    rho = np.diag(pop).astype(complex)
    c14 = (2.0 * rng.random() - 1.0) * np.sqrt(pop[0] * pop[3])
    c23 = (2.0 * rng.random() - 1.0) * np.sqrt(pop[1] * pop[2])
    rho[0, 3] = rho[3, 0] = c14
    rho[1, 2] = rho[2, 1] = c23
    return rho
