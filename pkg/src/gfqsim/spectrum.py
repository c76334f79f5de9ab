"""Tunneling splitting, qubit spectrum and the two-level Hamiltonian.

The double-well doublet is solved on a finite-difference grid with hard
walls.  The kinetic prefactors along phi_p and phit_m follow from the
capacitive Lagrangian in the transformed coordinates with phi_m frozen and
phit_p slaved to -phi_p/2 by the trapping-loop constraint, using the
junction-area scaling Ct/C = Et_J/E_J.  The overall charging scale is the
single-junction value 4*E_C; the parallel-pair reduction enters only through
the (1 + ratio/4) denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import NoDoubleWell
from .operators import OperatorMatrix, SIGMA_X

TWO_PI = 2.0 * math.pi


def alpha_param(ej_ratio: float, f_alpha: float) -> float:
    """Half-separation alpha = |phi_p| of the two wells, 2*acos of the
    double-well argument."""
    c = math.cos(math.pi * f_alpha)
    if c <= 0:
        raise NoDoubleWell("cos(pi f_alpha) <= 0")
    arg = ej_ratio / (4.0 * c)
    if arg >= 1.0:
        raise NoDoubleWell(f"double-well argument {arg:.6g} >= 1")
    return 2.0 * math.acos(arg)


def kinetic_prefactors(e_c: float, ej_ratio: float):
    """(kp, km): coefficients of -d^2/dphi_p^2 and -d^2/dphit_m^2 in units
    of E_J, for a single-junction charging energy e_c = E_C/E_J."""
    kp = 4.0 * e_c / (1.0 + ej_ratio / 4.0)
    km = 4.0 * e_c / ej_ratio
    return kp, km


@dataclass(frozen=True)
class GapResult:
    t_q: float
    delta: float
    levels: np.ndarray
    doublet_isolated: bool


@dataclass(frozen=True)
class QubitSpectrum:
    E_down: float
    E_up: float
    t_q: float
    delta: float
    alpha: float
    eps: float


def qubit_spectrum(e_down: float, e_up: float, t_q: float,
                   alpha: float) -> QubitSpectrum:
    return QubitSpectrum(E_down=e_down, E_up=e_up, t_q=t_q, delta=2.0 * t_q,
                         alpha=alpha % TWO_PI, eps=e_up - e_down)


def tunneling_gap_1d(potential, e_c: float, ej_ratio: float,
                     npoints: int = 2001, halfwidth: float = TWO_PI) -> GapResult:
    """Lowest-doublet splitting of the 1D phit_m = 0 cut.

    `potential` maps a phi_p array to energies in E_J; hard walls sit at
    +-halfwidth.  Returns t_q = Delta/2 with Delta = E1 - E0.
    """
    if npoints < 101:
        raise ValueError("npoints must be at least 101")
    kp, _ = kinetic_prefactors(e_c, ej_ratio)
    x = np.linspace(-halfwidth, halfwidth, npoints)
    h = x[1] - x[0]
    v = np.asarray(potential(x), dtype=float)
    ham = sp.diags([-kp / h**2 * np.ones(npoints - 1),
                    2 * kp / h**2 + v,
                    -kp / h**2 * np.ones(npoints - 1)], [-1, 0, 1]).tocsc()
    v0 = np.full(npoints, 1.0 / math.sqrt(npoints))
    levels = np.sort(spla.eigsh(ham, k=4, sigma=float(v.min()), which="LM",
                                v0=v0, return_eigenvectors=False))
    delta = float(levels[1] - levels[0])
    isolated = (levels[2] - levels[1]) >= 3.0 * delta
    return GapResult(t_q=0.5 * delta, delta=delta, levels=levels,
                     doublet_isolated=bool(isolated))


def splitting_2d(potential, kp: float, km: float,
                 window=((-TWO_PI, TWO_PI), (-math.pi, math.pi)),
                 shape=(201, 201), nlevels: int = 4) -> GapResult:
    """Lowest-doublet splitting from the 2D finite-difference Hamiltonian
    -kp d^2/dx^2 - km d^2/dy^2 + V(x, y) with hard walls, via a sparse
    shift-invert eigensolve."""
    nx, ny = shape
    x = np.linspace(window[0][0], window[0][1], nx)
    y = np.linspace(window[1][0], window[1][1], ny)
    hx, hy = x[1] - x[0], y[1] - y[0]
    xx, yy = np.meshgrid(x, y, indexing="ij")
    v = np.asarray(potential(xx, yy), dtype=float).ravel()
    d2x = sp.diags([np.ones(nx - 1), -2 * np.ones(nx), np.ones(nx - 1)],
                   [-1, 0, 1]) / hx**2
    d2y = sp.diags([np.ones(ny - 1), -2 * np.ones(ny), np.ones(ny - 1)],
                   [-1, 0, 1]) / hy**2
    ham = (-kp * sp.kron(d2x, sp.identity(ny))
           - km * sp.kron(sp.identity(nx), d2y) + sp.diags(v)).tocsc()
    v0 = np.full(nx * ny, 1.0 / math.sqrt(nx * ny))
    try:
        levels = np.sort(spla.eigsh(ham, k=nlevels, sigma=float(v.min()),
                                    which="LM", v0=v0,
                                    return_eigenvectors=False))
    except spla.ArpackNoConvergence as exc:
        raise RuntimeError("2D eigensolver did not converge") from exc
    delta = float(levels[1] - levels[0])
    isolated = (levels[2] - levels[1]) >= 3.0 * delta
    return GapResult(t_q=0.5 * delta, delta=delta, levels=levels,
                     doublet_isolated=bool(isolated))


def tight_binding_h(spec: QubitSpectrum, beta0: float = 0.0) -> OperatorMatrix:
    """Two-level Hamiltonian in the well basis {|down>, |up>}: well energies,
    tunneling -t_q, and the bias tilt -beta0*alpha*(|d><d| - |u><u|)."""
    tilt = beta0 * spec.alpha
    m = np.array([[spec.E_down - tilt, -spec.t_q],
                  [-spec.t_q, spec.E_up + tilt]], dtype=complex)
    return OperatorMatrix(m, ("down", "up"))


def to_energy_basis(h_well: OperatorMatrix) -> OperatorMatrix:
    """Rotate a well-basis two-level Hamiltonian to {|0>, |1>} with
    |0> = (|down> + |up>)/sqrt(2), |1> = (|down> - |up>)/sqrt(2)."""
    u = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    return OperatorMatrix(u @ h_well.matrix @ u.conj().T, ("0", "1"))


def drive_coupling_matrix() -> np.ndarray:
    """sigma_x in the {|0>, |1>} basis, the operator the ac bias couples to."""
    return SIGMA_X.copy()
