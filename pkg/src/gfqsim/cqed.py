"""Transmission-line resonator modes and coupled qubit-resonator dynamics.

The resonator is a length-L line with inductance and capacitance per unit
length l_s and c, coordinate x in [-L/2, L/2].  Mode n has frequency
omega_n = n*pi*v/L with v = 1/sqrt(l_s*c); its current profile is
cos(n*pi*x/L) for odd n and sin(n*pi*x/L) for even n.  hbar defaults to 1 so
that frequencies and energies share a unit; set the physical value for SI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import ConfigurationError, DispersiveInvalid
from .operators import (OperatorMatrix, QUBIT_LABELS, SIGMA_MINUS, SIGMA_PLUS,
                        SIGMA_X, SIGMA_Z, annihilation, fock_labels, identity,
                        tensor)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ResonatorParams:
    """Half-wave transmission-line resonator.  Exactly one of the capacitor
    width d and the lumped geometry factor delta selects how the n = 2 mode
    couples to the bias line."""

    length: float
    l_s: float
    c: float
    d: float = None
    delta: float = None
    hbar: float = 1.0

    def __post_init__(self):
        if self.length <= 0 or self.l_s <= 0 or self.c <= 0:
            raise ValueError("length, l_s and c must be positive")
        if self.d is not None and not 0 <= self.d < self.length:
            raise ValueError("capacitor width d must lie in [0, L)")

    @property
    def velocity(self) -> float:
        return 1.0 / math.sqrt(self.l_s * self.c)


def mode_frequency(params: ResonatorParams, n: int) -> float:
    if n < 1:
        raise ValueError("mode index must be >= 1")
    return n * math.pi * params.velocity / params.length


def current_mode_amplitude(params: ResonatorParams, n: int, x: float) -> float:
    """Zero-point current coefficient of mode n at position x, the scalar
    multiplying -i(a - a^dag)."""
    if abs(x) > params.length / 2:
        raise ValueError("position outside the resonator")
    scale = math.sqrt(params.hbar * mode_frequency(params, n)
                      / (params.l_s * params.length))
    arg = n * math.pi * x / params.length
    return scale * (math.sin(arg) if n % 2 == 0 else math.cos(arg))


def bias_amplitude(params: ResonatorParams) -> float:
    """Amplitude I_b of the n = 2 mode current fed to the qubit bias line:
    2*sqrt(hbar*omega2/l_s L)*sin(pi d/L) in the capacitor-width mode, or
    sqrt(hbar*omega2/l_s L)*delta in the lumped mode."""
    if (params.d is None) == (params.delta is None):
        raise ConfigurationError(
            "exactly one of d and delta must be configured")
    scale = math.sqrt(params.hbar * mode_frequency(params, 2)
                      / (params.l_s * params.length))
    if params.d is not None:
        return 2.0 * scale * math.sin(math.pi * params.d / params.length)
    return scale * params.delta


def resonator_coupling(alpha: float, params: ResonatorParams,
                       phi0: float = 1.0, n: int = 1) -> float:
    """Qubit-resonator coupling g = alpha*(phi0/2pi)*delta*sqrt(hbar
    omega_n/l_s L) for a qubit in the lumped-geometry mode."""
    if params.delta is None:
        raise ConfigurationError("resonator_coupling needs the delta mode")
    scale = math.sqrt(params.hbar * mode_frequency(params, n)
                      / (params.l_s * params.length))
    return alpha * (phi0 / TWO_PI) * params.delta * scale


# ---------------------------------------------------------------------------
# Hamiltonian builders (qubit factor first, Fock factor second)


def _check_cutoff(fock_cutoff: int):
    if fock_cutoff < 5:
        raise ValueError("Fock cutoff must be at least 5")


def build_qubit_resonator_h(delta_q: float, g: float, omega2: float,
                            fock_cutoff: int = 10,
                            basis: str = "energy") -> OperatorMatrix:
    """Full (non-RWA) qubit-resonator Hamiltonian
    omega2*a^dag a + (delta_q/2)*sigma_z + i*g*sigma_x*(a - a^dag);
    basis="well" uses the unitarily equivalent well-basis coupling
    i*g*(|down><down| - |up><up|)*(a - a^dag)."""
    _check_cutoff(fock_cutoff)
    a = annihilation(fock_cutoff)
    number = a.conj().T @ a
    iq = np.eye(2, dtype=complex)
    ifock = np.eye(fock_cutoff, dtype=complex)
    if basis == "energy":
        coup, qz, labels = SIGMA_X, SIGMA_Z, QUBIT_LABELS
    elif basis == "well":
        # well basis: the drive is diagonal, the gap term off-diagonal
        coup, qz, labels = -SIGMA_Z, -SIGMA_X, ("down", "up")
    else:
        raise ValueError("basis must be 'energy' or 'well'")
    h = (omega2 * np.kron(iq, number)
         + 0.5 * delta_q * np.kron(qz, ifock)
         + 1j * g * np.kron(coup, a - a.conj().T))
    full = tuple(f"{q}|{m}" for q in labels for m in fock_labels(fock_cutoff))
    return OperatorMatrix(h, full)


def build_rwa_h(delta_q: float, g: float, omega2: float,
                fock_cutoff: int = 10) -> OperatorMatrix:
    """Rotating-wave qubit-resonator Hamiltonian
    omega2*a^dag a + (delta_q/2)*sigma_z - i*g*(a^dag sigma_- - sigma_+ a)."""
    _check_cutoff(fock_cutoff)
    a = annihilation(fock_cutoff)
    number = a.conj().T @ a
    h = (omega2 * np.kron(np.eye(2), number)
         + 0.5 * delta_q * np.kron(SIGMA_Z, np.eye(fock_cutoff))
         - 1j * g * (np.kron(SIGMA_MINUS, a.conj().T)
                     - np.kron(SIGMA_PLUS, a)))
    full = tuple(f"{q}|{m}" for q in QUBIT_LABELS
                 for m in fock_labels(fock_cutoff))
    return OperatorMatrix(h, full)


def excitation_number(fock_cutoff: int) -> np.ndarray:
    """Total excitation operator a^dag a + |1><1| on the qubit x Fock basis."""
    a = annihilation(fock_cutoff)
    proj1 = np.diag([0.0, 1.0]).astype(complex)
    return (np.kron(np.eye(2), a.conj().T @ a)
            + np.kron(proj1, np.eye(fock_cutoff)))


# ---------------------------------------------------------------------------
# time evolution


def time_evolve(h, state: np.ndarray, t: float, hbar: float = 1.0) -> np.ndarray:
    """Evolve `state` under a time-independent Hermitian Hamiltonian by exact
    eigendecomposition."""
    m = h.matrix if isinstance(h, OperatorMatrix) else np.asarray(h)
    vals, vecs = np.linalg.eigh(m)
    psi = vecs @ (np.exp(-1j * vals * t / hbar) * (vecs.conj().T @ state))
    drift = abs(np.linalg.norm(psi) - np.linalg.norm(state))
    if drift > 1e-8:
        raise RuntimeError(f"norm drift {drift:.2e} exceeds tolerance")
    return psi


def evolve_driven(h_func, state: np.ndarray, t_final: float,
                  drive_period: float, steps_per_period: int = 200,
                  hbar: float = 1.0, sample_times=None):
    """Evolve under a time-dependent Hamiltonian h_func(t) with a
    piecewise-constant midpoint rule; each step is exponentiated exactly, so
    the evolution is unitary regardless of step size.

    Returns (times, states) sampled at step boundaries (or the nearest step
    to each requested sample time)."""
    dt = drive_period / steps_per_period
    nsteps = max(1, int(math.ceil(t_final / dt)))
    dt = t_final / nsteps
    psi = np.asarray(state, dtype=complex)
    times = [0.0]
    states = [psi.copy()]
    for k in range(nsteps):
        tm = (k + 0.5) * dt
        hm = h_func(tm)
        hm = hm.matrix if isinstance(hm, OperatorMatrix) else np.asarray(hm)
        psi = expm(-1j * hm * dt / hbar) @ psi
        times.append((k + 1) * dt)
        states.append(psi.copy())
    drift = abs(np.linalg.norm(psi) - 1.0)
    if drift > 1e-8:
        raise RuntimeError(f"norm drift {drift:.2e} exceeds tolerance")
    times = np.array(times)
    states = np.array(states)
    if sample_times is not None:
        idx = np.searchsorted(times, np.asarray(sample_times))
        idx = np.clip(idx, 0, len(times) - 1)
        return times[idx], states[idx]
    return times, states


def top_fock_population(state: np.ndarray, fock_cutoff: int) -> float:
    """Total population of the highest Fock level across qubit states, used
    to validate the cutoff."""
    psi = np.asarray(state).reshape(-1, fock_cutoff)
    return float(np.sum(np.abs(psi[:, -1]) ** 2))


# ---------------------------------------------------------------------------
# two-qubit dispersive coupling


@dataclass(frozen=True)
class TwoQubitParams:
    """Two qubits dispersively coupled through the n = 1 resonator mode."""

    delta_l: float
    delta_r: float
    g_l: float
    g_r: float
    omega1: float

    @property
    def detuning_l(self) -> float:
        return self.delta_l - self.omega1

    @property
    def detuning_r(self) -> float:
        return self.delta_r - self.omega1

    @property
    def shifted_l(self) -> float:
        return self.delta_l + self.g_l ** 2 / self.detuning_l

    @property
    def shifted_r(self) -> float:
        return self.delta_r + self.g_r ** 2 / self.detuning_r

    @property
    def exchange(self) -> float:
        """J = (1/2)(1/detuning_l + 1/detuning_r) g_l g_r."""
        return 0.5 * (1.0 / self.detuning_l
                      + 1.0 / self.detuning_r) * self.g_l * self.g_r

    @property
    def dispersive_valid(self) -> bool:
        return (self.detuning_l >= 10.0 * self.g_l
                and self.detuning_r >= 10.0 * self.g_r)


def _two_qubit_labels(fock_cutoff: int) -> tuple:
    return tuple(f"{ql}|{qr}|{m}" for ql in QUBIT_LABELS for qr in QUBIT_LABELS
                 for m in fock_labels(fock_cutoff))


def dispersive_two_qubit_h(params: TwoQubitParams, fock_cutoff: int = 10,
                           force: bool = False) -> OperatorMatrix:
    """Effective dispersive Hamiltonian omega1*a^dag a + sum_j
    (shifted_j/2) sigma_zj + J (sigma_-l sigma_+r + sigma_+l sigma_-r)."""
    _check_cutoff(fock_cutoff)
    if not params.dispersive_valid and not force:
        raise DispersiveInvalid(
            "detuning must exceed 10x the coupling (pass force=True to "
            "override)")
    a = annihilation(fock_cutoff)
    number = a.conj().T @ a
    iq = np.eye(2, dtype=complex)
    ifock = np.eye(fock_cutoff, dtype=complex)
    h = (params.omega1 * np.kron(np.kron(iq, iq), number)
         + 0.5 * params.shifted_l * np.kron(np.kron(SIGMA_Z, iq), ifock)
         + 0.5 * params.shifted_r * np.kron(np.kron(iq, SIGMA_Z), ifock)
         + params.exchange * (np.kron(np.kron(SIGMA_MINUS, SIGMA_PLUS), ifock)
                              + np.kron(np.kron(SIGMA_PLUS, SIGMA_MINUS),
                                        ifock)))
    return OperatorMatrix(h, _two_qubit_labels(fock_cutoff))


def two_qubit_exact_h(params: TwoQubitParams,
                      fock_cutoff: int = 10) -> OperatorMatrix:
    """Exact three-body model the dispersive form approximates: both qubits
    exchange-coupled to the shared mode with their bare gaps."""
    _check_cutoff(fock_cutoff)
    a = annihilation(fock_cutoff)
    number = a.conj().T @ a
    iq = np.eye(2, dtype=complex)
    ifock = np.eye(fock_cutoff, dtype=complex)
    h = (params.omega1 * np.kron(np.kron(iq, iq), number)
         + 0.5 * params.delta_l * np.kron(np.kron(SIGMA_Z, iq), ifock)
         + 0.5 * params.delta_r * np.kron(np.kron(iq, SIGMA_Z), ifock)
         - 1j * params.g_l * (np.kron(np.kron(SIGMA_MINUS, iq), a.conj().T)
                              - np.kron(np.kron(SIGMA_PLUS, iq), a))
         - 1j * params.g_r * (np.kron(np.kron(iq, SIGMA_MINUS), a.conj().T)
                              - np.kron(np.kron(iq, SIGMA_PLUS), a)))
    return OperatorMatrix(h, _two_qubit_labels(fock_cutoff))


def exchange_splitting_exact(params: TwoQubitParams,
                             fock_cutoff: int = 10) -> float:
    """Splitting of the two single-excitation qubit-like levels of the exact
    three-body model, the quantity 2J approximates."""
    h = two_qubit_exact_h(params, fock_cutoff)
    nq = np.kron(np.kron(np.diag([0.0, 1.0]), np.eye(2)),
                 np.eye(fock_cutoff))
    nq = nq + np.kron(np.kron(np.eye(2), np.diag([0.0, 1.0])),
                      np.eye(fock_cutoff))
    nf = np.kron(np.eye(4), np.diag(np.arange(fock_cutoff, dtype=float)))
    ntot = nq + nf
    vals, vecs = np.linalg.eigh(h.matrix)
    qubit_like = []
    for i in range(len(vals)):
        v = vecs[:, i]
        if abs(v.conj() @ ntot @ v - 1.0) < 1e-6 and v.conj() @ nf @ v < 0.5:
            qubit_like.append(vals[i])
    if len(qubit_like) < 2:
        raise RuntimeError("could not isolate the single-excitation doublet")
    qubit_like.sort()
    return float(qubit_like[1] - qubit_like[0])
