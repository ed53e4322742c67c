"""Amplitude damping with memory and the measurement/reversal pipeline.

The two-qubit channel interpolates between independent single-qubit
amplitude damping (memory eta = 0) and fully correlated damping (eta = 1),
where both excitations decay together or not at all.  Optional protection
wraps the channel between a weak measurement of strength q (applied before
the noise) and a measurement reversal of strength r (applied after).  Both
measurement operators are diagonal, hence non-unitary: the sandwiched state
is renormalized and the discarded trace is reported as the success
probability of the probabilistic protocol.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import DegenerateMeasurementError

_DEGENERATE_TRACE = 1e-14


class WmrMode(str, Enum):
    """Where the measurement/reversal pair acts."""

    NONE = "none"
    ONE_QUBIT = "wm1"   # second qubit only
    TWO_QUBIT = "wm2"   # equal strengths on both qubits


@dataclass(frozen=True)
class ChannelParams:
    """Damping strength p and memory parameter eta, both in [0, 1]."""

    p: float
    eta: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p={self.p} outside [0, 1]")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta={self.eta} outside [0, 1]")


@dataclass(frozen=True)
class WmrParams:
    """Measurement strength q, reversal strength r, and placement mode.

    Strengths live in [0, 1): strength 1 annihilates the post-measurement
    state.  In two-qubit mode the same strength acts on both qubits.
    """

    q: float
    r: float
    mode: WmrMode = WmrMode.TWO_QUBIT

    def __post_init__(self):
        if not 0.0 <= self.q < 1.0:
            raise ValueError(f"q={self.q} outside [0, 1)")
        if not 0.0 <= self.r < 1.0:
            raise ValueError(f"r={self.r} outside [0, 1)")


@dataclass(frozen=True)
class PipelineOutput:
    """Renormalized evolved state plus the trace discarded on the way."""

    state: np.ndarray
    success_probability: float


def ad_kraus(p: float) -> list[np.ndarray]:
    """Single-qubit amplitude-damping Kraus pair for decay probability p."""
    e0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - p)]], dtype=complex)
    e1 = np.array([[0.0, np.sqrt(p)], [0.0, 0.0]], dtype=complex)
    return [e0, e1]


def correlated_kraus(p: float) -> list[np.ndarray]:
    """Two-qubit Kraus pair of the fully correlated damping branch.

    A0 damps only the doubly excited amplitude; A1 sends |11> to |00>
    with probability p.
    """
    a0 = np.diag([1.0, 1.0, 1.0, np.sqrt(1.0 - p)]).astype(complex)
    a1 = np.zeros((4, 4), dtype=complex)
    a1[0, 3] = np.sqrt(p)
    return [a0, a1]


def apply_ad_uncorrelated(rho: np.ndarray, p: float) -> np.ndarray:
    """Memoryless two-qubit amplitude damping: sum over E_i x E_j sandwiches."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    es = ad_kraus(p)
    out = np.zeros((4, 4), dtype=complex)
    for ei in es:
        for ej in es:
            k = np.kron(ei, ej)
            out += k @ rho @ k.conj().T
    return out


def apply_cad(rho: np.ndarray, ch: ChannelParams) -> np.ndarray:
    """Partially correlated damping: (1-eta) * uncorrelated + eta * correlated."""
    uncorr = apply_ad_uncorrelated(rho, ch.p)
    if ch.eta == 0.0:
        return uncorr
    corr = np.zeros((4, 4), dtype=complex)
    for a in correlated_kraus(ch.p):
        corr += a @ rho @ a.conj().T
    return (1.0 - ch.eta) * uncorr + ch.eta * corr


def wm_diagonal(q: float, mode: WmrMode) -> np.ndarray:
    """Diagonal of the weak-measurement operator for the given placement."""
    sq = np.sqrt(1.0 - q)
    if mode is WmrMode.TWO_QUBIT:
        return np.array([1.0, sq, sq, 1.0 - q])
    if mode is WmrMode.ONE_QUBIT:
        return np.array([1.0, sq, 1.0, sq])
    return np.ones(4)


def qmr_diagonal(r: float, mode: WmrMode) -> np.ndarray:
    """Diagonal of the reversal operator (1 and sqrt(1-r) swapped vs. WM)."""
    sr = np.sqrt(1.0 - r)
    if mode is WmrMode.TWO_QUBIT:
        return np.array([1.0 - r, sr, sr, 1.0])
    if mode is WmrMode.ONE_QUBIT:
        return np.array([sr, 1.0, sr, 1.0])
    return np.ones(4)


def _sandwich_normalized(rho: np.ndarray, diag: np.ndarray) -> tuple[np.ndarray, float]:
    # M rho M^dag for diagonal real M is an entrywise rescale
    out = rho * np.outer(diag, diag)
    t = float(out.trace().real)
    if t < _DEGENERATE_TRACE:
        raise DegenerateMeasurementError(f"post-measurement trace {t:.3e}")
    return out / t, t


def apply_wm(rho: np.ndarray, q: float, mode: WmrMode) -> tuple[np.ndarray, float]:
    """Weak measurement of strength q; returns (renormalized state, trace).

    The returned trace is the probability weight of the kept outcome.
    Strength 0 (or mode NONE) is the identity and returns the input
    unchanged with weight 1.
    """
    if not 0.0 <= q < 1.0:
        raise ValueError(f"q={q} outside [0, 1)")
    if mode is WmrMode.NONE or q == 0.0:
        return rho, 1.0
    return _sandwich_normalized(rho, wm_diagonal(q, mode))


def apply_qmr(rho: np.ndarray, r: float, mode: WmrMode) -> tuple[np.ndarray, float]:
    """Measurement reversal of strength r; mirrors :func:`apply_wm`."""
    if not 0.0 <= r < 1.0:
        raise ValueError(f"r={r} outside [0, 1)")
    if mode is WmrMode.NONE or r == 0.0:
        return rho, 1.0
    return _sandwich_normalized(rho, qmr_diagonal(r, mode))


def wmr_pipeline(rho: np.ndarray, ch: ChannelParams, wmr: WmrParams) -> PipelineOutput:
    """Weak measurement, then the damping channel, then the reversal.

    With mode NONE this is the bare channel and the success probability
    is exactly 1.  Otherwise the success probability is the product of
    the two measurement traces (the channel itself is trace preserving).
    """
    if wmr.mode is WmrMode.NONE:
        return PipelineOutput(apply_cad(rho, ch), 1.0)
    measured, t_wm = apply_wm(rho, wmr.q, wmr.mode)
    damped = apply_cad(measured, ch)
    reversed_, t_qmr = apply_qmr(damped, wmr.r, wmr.mode)
    return PipelineOutput(reversed_, t_wm * t_qmr)
