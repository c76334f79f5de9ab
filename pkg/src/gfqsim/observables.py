"""Measurable quantities: loop currents, qubit-drive coupling, SI conversion.

Currents are reported in the reduced form I*L_eff/Phi0; conversion to amperes
is a separate explicit step through PhysicalConstants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import (CircuitParams, PhaseState, loop_residual,
                      optimal_mprime)
from .errors import ConfigurationError, NoDoubleWell
from .spectrum import alpha_param

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA constants plus the configured circuit scales."""

    Phi0: float = 2.067833848e-15       # Wb
    h: float = 6.62607015e-34           # J s
    L_eff: float = 15e-12               # H
    ej_over_h: float = 200e9            # Hz

    def __post_init__(self):
        if self.L_eff <= 0 or self.ej_over_h <= 0:
            raise ConfigurationError("L_eff and ej_over_h must be positive")


@dataclass(frozen=True)
class LoopCurrents:
    """Reduced branch and alpha-loop currents I*L_eff/Phi0, with optional SI
    values in amperes.  sign_note flags that the alpha-loop value is reported
    with the sign produced by the stated convention; only its magnitude is
    convention-independent."""

    Ip1: float
    Ip2: float
    Ialpha: float
    Ip1_si: float = None
    Ip2_si: float = None
    Ialpha_si: float = None
    sign_note: str = ("alpha-loop current sign depends on the branch "
                      "orientation convention; compare magnitudes")


def _as_phases(minimum) -> PhaseState:
    if isinstance(minimum, PhaseState):
        return minimum
    pos = getattr(minimum, "position", minimum)
    if len(pos) != 4:
        raise ValueError("expected a four-coordinate transformed minimum")
    return PhaseState.from_transformed(*pos)


def loop_currents(params: CircuitParams, minimum,
                  constants: PhysicalConstants = None,
                  m_prime: int = None) -> LoopCurrents:
    """Branch and alpha-loop currents at a potential minimum.

    `minimum` is a LocalMinimum in the (phi_p, phi_m, phit_p, phit_m)
    coordinates, the bare 4-tuple, or a PhaseState.  The branch currents use
    the closed-form split of the branch wave vectors, in which the difference
    term carries the winding residual m' + f1 + f2 + (1 - L_M/(L_K+L_g))*f_a;
    m' defaults to the integer minimizing that residual.
    """
    phases = _as_phases(minimum)
    ind, flux = params.inductances, params.flux
    if m_prime is None:
        m_prime = optimal_mprime(flux.f1, flux.f2, flux.f_alpha, ind.lm_ratio)
    x = loop_residual(flux, params.winding, phases)
    resid = (m_prime + flux.f1 + flux.f2
             + (1.0 - ind.lm_ratio) * flux.f_alpha)
    half_diff = resid * ind.L_eff / (2.0 * (ind.Lp_K + ind.Lp_g))
    ip1 = -0.5 * x + half_diff
    ip2 = -0.5 * x - half_diff
    s_loop = params.energies.stiffness_loop
    i1 = -(math.pi / 2.0) * math.sin(phases.phi1) / s_loop
    i2 = -(math.pi / 2.0) * math.sin(phases.phi2) / s_loop
    ialpha = 0.5 * (i1 - i2)
    si = (None, None, None)
    if constants is not None:
        si = tuple(to_si(v, "current", constants) for v in (ip1, ip2, ialpha))
    return LoopCurrents(Ip1=ip1, Ip2=ip2, Ialpha=ialpha,
                        Ip1_si=si[0], Ip2_si=si[1], Ialpha_si=si[2])


def coupling_strength(ej_ratio: float, f_alpha: float,
                      phi0_ib: float = 1.0) -> float:
    """Drive-coupling energy g = (Phi0*I_b/2pi) * alpha, with phi0_ib the
    product Phi0*I_b in the chosen energy unit."""
    return phi0_ib * alpha_param(ej_ratio, f_alpha) / TWO_PI


def g_curve(ej_ratios, f_alpha_range):
    """Table of (ratio, f_alpha, g/Phi0*I_b) rows over the double-well
    existence region; returns (rows, omitted_count)."""
    rows = []
    omitted = 0
    for ratio in ej_ratios:
        for fa in f_alpha_range:
            try:
                g = coupling_strength(ratio, fa)
            except NoDoubleWell:
                omitted += 1
                continue
            rows.append((float(ratio), float(fa), g))
    return rows, omitted


def to_si(value: float, kind: str, constants: PhysicalConstants) -> float:
    """Convert a reduced value to SI: 'current' (I*L_eff/Phi0 -> A),
    'energy' (E_J units -> J), 'frequency' (E_J units -> Hz)."""
    if constants is None:
        raise ConfigurationError("physical constants are required")
    if kind == "current":
        return value * constants.Phi0 / constants.L_eff
    if kind == "energy":
        return value * constants.h * constants.ej_over_h
    if kind == "frequency":
        return value * constants.ej_over_h
    raise ValueError(f"unknown conversion kind {kind!r}")


def state_flip(c: LoopCurrents) -> LoopCurrents:
    """Currents of the opposite well: branch currents flip sign, the
    alpha-loop current keeps it."""
    flip = lambda v: None if v is None else -v
    return LoopCurrents(Ip1=-c.Ip1, Ip2=-c.Ip2, Ialpha=c.Ialpha,
                        Ip1_si=flip(c.Ip1_si), Ip2_si=flip(c.Ip2_si),
                        Ialpha_si=c.Ialpha_si)
