"""Six correlation measures on two-qubit states, raw and normalized.

All logarithms are base 2, so entropic quantities are in bits and the
dense-coding capacity peaks at 2.  The discord and steering formulas are
analytic X-state expressions and refuse non-X input; everything this
toolkit produces is X-form.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .exceptions import (
    ConfigurationError,
    NumericalContractError,
    UnsupportedStateError,
)
from .states import is_x_state, von_neumann_entropy

X_STATE_TOL = 1e-10
_CLAMP = 1e-12

_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SPIN_FLIP = np.kron(_SY, _SY).real  # real anti-diagonal (-1, 1, 1, -1)

# Encoding unitaries for two classical bits on one qubit: identity, bit
# flip, phase flip, and their product (global phases drop out of the mix).
_I2 = np.eye(2, dtype=complex)
_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SZ = np.diag([1.0, -1.0]).astype(complex)
_ENCODERS = [np.kron(u, _I2) for u in (_I2, _SX, _SZ, _SX @ _SZ)]

# Orthonormal basis in which every maximally entangled state has real
# coefficients; columns are (|00>+|11>)/sqrt2, i(|00>-|11>)/sqrt2,
# i(|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2.
_MAGIC_BASIS = np.array(
    [
        [1.0, 1.0j, 0.0, 0.0],
        [0.0, 0.0, 1.0j, 1.0],
        [0.0, 0.0, 1.0j, -1.0],
        [1.0, -1.0j, 0.0, 0.0],
    ],
    dtype=complex,
) / np.sqrt(2.0)


@dataclass(frozen=True)
class CorrelationVector:
    """The six measures of one state; X-only entries are None off X-form."""

    chi: float
    fidelity: float
    concurrence: float
    qs: float | None
    tdd: float | None
    jsd: float

    def as_tuple(self):
        return (self.chi, self.fidelity, self.concurrence, self.qs, self.tdd, self.jsd)


@dataclass(frozen=True)
class NormalizationTable:
    """Per-measure (maximum, classical limit) anchors.

    Normalized value = (raw - classical) / (maximum - classical), so 1 at
    the maximum and 0 at the classical limit; negative values are allowed
    and physically inconsequential.
    """

    chi: tuple[float, float] = (2.0, 1.0)
    fidelity: tuple[float, float] = (1.0, 2.0 / 3.0)
    concurrence: tuple[float, float] = (1.0, 0.0)
    qs: tuple[float, float] = (6.0, 2.0)
    tdd: tuple[float, float] = (1.0, 0.0)
    jsd: tuple[float, float] = (0.56, 0.0)


DEFAULT_NORMALIZATION = NormalizationTable()


@dataclass(frozen=True)
class SteeringCoefficients:
    """Matrix-element combinations entering the steering inequality.

    r_marg and s_marg are the two local population imbalances (named to
    avoid a clash with the reversal strength r used elsewhere).
    """

    c1: float
    c2: float
    c3: float
    r_marg: float
    s_marg: float


@dataclass(frozen=True)
class FanoBlochX:
    """Correlation components of an X state used by the discord formula."""

    gamma1: float
    gamma2: float
    gamma3: float
    x_a3: float


def _require_real_x_state(rho: np.ndarray, tol: float) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if not is_x_state(rho, tol):
        raise UnsupportedStateError("analytic X-state formula fed a non-X state")
    imag = max(abs(rho[0, 3].imag), abs(rho[1, 2].imag))
    if imag > tol:
        raise UnsupportedStateError(
            f"X-state coherences must be real (imaginary part {imag:.3e})"
        )
    return rho


def steering_coefficients(rho: np.ndarray, tol: float = X_STATE_TOL) -> SteeringCoefficients:
    rho = _require_real_x_state(rho, tol)
    d = rho.diagonal().real
    c23 = rho[1, 2].real
    c14 = rho[0, 3].real
    return SteeringCoefficients(
        c1=2.0 * (c23 + c14),
        c2=2.0 * (c23 - c14),
        c3=d[0] + d[3] - d[1] - d[2],
        r_marg=d[0] + d[1] - d[3] - d[2],
        s_marg=d[0] - d[3] - d[1] + d[2],
    )


def fano_bloch(rho: np.ndarray, tol: float = X_STATE_TOL) -> FanoBlochX:
    rho = _require_real_x_state(rho, tol)
    d = rho.diagonal().real
    c32 = rho[2, 1].real
    c41 = rho[3, 0].real
    return FanoBlochX(
        gamma1=2.0 * (c32 + c41),
        gamma2=2.0 * (c32 - c41),
        gamma3=1.0 - 2.0 * (d[1] + d[2]),
        x_a3=2.0 * (d[0] + d[1]) - 1.0,
    )


def _xlog2x(x: float) -> float:
    """x * log2(x) with 0 log 0 := 0; tiny negatives are clamped to 0."""
    if x < 0.0:
        if x < -_CLAMP:
            raise NumericalContractError(f"entropy argument {x:.3e} below -1e-12")
        return 0.0
    if x == 0.0:
        return 0.0
    return x * np.log2(x)


def jsd_coherence(rho: np.ndarray) -> float:
    """Square root of the entropic divergence between rho and its diagonal.

    Vanishes exactly for incoherent (diagonal) states and reaches about
    0.56 on a Bell state.
    """
    rho = np.asarray(rho, dtype=complex)
    rho_d = np.diag(rho.diagonal())
    radicand = (
        von_neumann_entropy((rho + rho_d) / 2.0)
        - von_neumann_entropy(rho) / 2.0
        - von_neumann_entropy(rho_d) / 2.0
    )
    if radicand < -_CLAMP:
        raise NumericalContractError(f"coherence radicand {radicand:.3e}")
    return float(np.sqrt(max(radicand, 0.0)))


def concurrence(rho: np.ndarray) -> float | np.ndarray:
    """Entanglement monotone from the spin-flipped spectrum.

    Equals max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)} over the
    descending eigenvalues l_i of rho (sy x sy) rho* (sy x sy).  The
    roots sqrt(l_i) are computed as the singular values of
    sqrt(rho) (sy x sy) sqrt(rho)*, which shares its squared spectrum
    with the non-normal product but avoids the half-precision loss of a
    general eigensolve at defective zero eigenvalues.  Accepts a stack
    of states with shape (..., 4, 4) and then returns an array.
    """
    rho = np.asarray(rho, dtype=complex)
    herm_dev = np.abs(rho - rho.conj().swapaxes(-1, -2)).max()
    if herm_dev > 1e-8:
        raise NumericalContractError(
            f"spin-flip spectrum undefined for non-Hermitian input ({herm_dev:.3e})"
        )
    w, v = np.linalg.eigh(rho)
    root = (v * np.sqrt(np.clip(w, 0.0, None))[..., None, :]) @ v.conj().swapaxes(-1, -2)
    m = root @ _SPIN_FLIP @ root.conj()
    s = np.linalg.svd(m, compute_uv=False)
    c = np.maximum(s[..., 0] - s[..., 1] - s[..., 2] - s[..., 3], 0.0)
    return float(c) if c.ndim == 0 else c


def dense_coding_capacity(rho: np.ndarray) -> float:
    """Holevo quantity of the four-encoding ensemble.

    The sender's qubit (the first one) is encoded with each of the four
    unitaries with equal weight; the capacity is S(mixed) - S(rho) in bits.
    """
    rho = np.asarray(rho, dtype=complex)
    mixed = sum(u @ rho @ u.conj().T for u in _ENCODERS) / 4.0
    return von_neumann_entropy(mixed) - von_neumann_entropy(rho)


def fully_entangled_fraction(rho: np.ndarray) -> float:
    """Largest overlap with any maximally entangled pure state.

    Equals the top eigenvalue of the real part of rho expressed in the
    magic basis, where maximally entangled states are the real unit
    vectors.
    """
    m = _MAGIC_BASIS.conj().T @ np.asarray(rho, dtype=complex) @ _MAGIC_BASIS
    return float(np.linalg.eigvalsh(m.real)[-1])


def teleportation_fidelity(rho: np.ndarray) -> float:
    """Optimal teleportation fidelity (1 + 2 FEF)/3."""
    return (1.0 + 2.0 * fully_entangled_fraction(rho)) / 3.0


def trace_distance_discord(rho: np.ndarray, tol: float = X_STATE_TOL) -> float:
    """Analytic trace-norm discord of an X state.

    The two transverse correlations enter as an ordered pair with
    |gamma1| >= |gamma2|; states whose anti-diagonal coherences share a
    single nonzero entry satisfy this automatically.  When the max/min
    branches coincide the general expression is 0/0; the limit along the
    degenerate family (all four branch arguments equal, e.g.
    Bell-diagonal states) is |gamma1|/2 and is returned instead.
    """
    g = fano_bloch(rho, tol)
    g1, g2 = g.gamma1, g.gamma2
    if abs(g2) > abs(g1):
        g1, g2 = g2, g1
    g1sq, g2sq, g3sq = g1**2, g2**2, g.gamma3**2
    big = max(g3sq, g2sq + g.x_a3**2)
    small = min(g3sq, g1sq)
    denom = big - small + g1sq - g2sq
    if abs(denom) < 1e-12:
        return abs(g1) / 2.0
    num = g1sq * big - g2sq * small
    ratio = num / denom
    if ratio < 0.0:
        if ratio < -_CLAMP:
            raise NumericalContractError(f"negative discord radicand {ratio:.3e}")
        ratio = 0.0
    return 0.5 * float(np.sqrt(ratio))


def epr_steering(rho: np.ndarray, tol: float = X_STATE_TOL) -> float:
    """Left-hand side of the entropic steering inequality for X states.

    Values above the classical limit 2 certify steering; the maximum is 6
    on a Bell state.
    """
    c = steering_coefficients(rho, tol)
    total = 0.0
    for cj in (c.c1, c.c2):
        total += _xlog2x(1.0 + cj) + _xlog2x(1.0 - cj)
    total += -_xlog2x(1.0 + c.r_marg) + _xlog2x(1.0 - c.r_marg)
    total += 0.5 * (
        _xlog2x(1.0 + c.c3 + c.r_marg + c.s_marg)
        + _xlog2x(1.0 + c.c3 - c.r_marg - c.s_marg)
        + _xlog2x(1.0 - c.c3 - c.r_marg + c.s_marg)
        + _xlog2x(1.0 - c.c3 + c.r_marg - c.s_marg)
    )
    return float(total)


def correlation_vector(rho: np.ndarray, x_tol: float = X_STATE_TOL) -> CorrelationVector:
    """All six measures of one state.

    The steering and discord entries are analytic X-state formulas; for a
    non-X input they are reported as None rather than silently falling
    back to something else.
    """
    x_form = is_x_state(rho, x_tol)
    return CorrelationVector(
        chi=dense_coding_capacity(rho),
        fidelity=teleportation_fidelity(rho),
        concurrence=float(concurrence(rho)),
        qs=epr_steering(rho, x_tol) if x_form else None,
        tdd=trace_distance_discord(rho, x_tol) if x_form else None,
        jsd=jsd_coherence(rho),
    )


def _affine(value: float | None, anchors: tuple[float, float]) -> float | None:
    maximum, classical = anchors
    if maximum == classical:
        raise ConfigurationError("normalization anchors coincide")
    if value is None:
        return None
    return (value - classical) / (maximum - classical)


def normalize(
    v: CorrelationVector, table: NormalizationTable = DEFAULT_NORMALIZATION
) -> CorrelationVector:
    """Map each measure to (raw - classical)/(max - classical)."""
    return replace(
        v,
        chi=_affine(v.chi, table.chi),
        fidelity=_affine(v.fidelity, table.fidelity),
        concurrence=_affine(v.concurrence, table.concurrence),
        qs=_affine(v.qs, table.qs),
        tdd=_affine(v.tdd, table.tdd),
        jsd=_affine(v.jsd, table.jsd),
    )


def reduced_state(rho: np.ndarray, keep: int) -> np.ndarray:
    """Partial trace down to one qubit; keep=0 for the first, 1 for the second."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    return np.trace(r, axis1=1, axis2=3) if keep == 0 else np.trace(r, axis1=0, axis2=2)


__all__ = [
    "CorrelationVector",
    "NormalizationTable",
    "DEFAULT_NORMALIZATION",
    "SteeringCoefficients",
    "FanoBlochX",
    "steering_coefficients",
    "fano_bloch",
    "jsd_coherence",
    "concurrence",
    "dense_coding_capacity",
    "fully_entangled_fraction",
    "teleportation_fidelity",
    "trace_distance_discord",
    "epr_steering",
    "correlation_vector",
    "normalize",
    "reduced_state",
]
