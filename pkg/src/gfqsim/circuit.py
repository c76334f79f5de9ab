"""Circuit parameters, wave vectors and effective potentials of the
current-biased gradiometric flux qubit.

Everything is kept in reduced units: energies in units of the trapping-loop
junction energy E_J, phases in radians, external fluxes in units of the flux
quantum, and bias currents through beta = Phi0*I/(2*pi*E_J).  Wave vectors use
the convention 2*pi*L_K/l = 1 (and likewise for the primed and tilde
branches), so that a reduced current is simply I*L_eff/Phi0 = -k*L_eff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# parameter records


@dataclass(frozen=True)
class InductanceSet:
    """Kinetic (K), geometric (g) and mutual (M) inductances in one common
    arbitrary unit.  Unprimed entries belong to the dc-SQUID halves, primed
    ones to the left/right branches, tilde ones to the central branch."""

    L_K: float = 0.5
    L_g: float = 0.5
    Lp_K: float = 0.5
    Lp_g: float = 0.5
    Lt_K: float = 0.5
    Lt_g: float = 0.5
    L_M: float = 0.4
    Lp_M: float = 0.2

    def __post_init__(self):
        if self.L_K <= 0 or self.Lp_K <= 0 or self.Lt_K <= 0:
            raise ValueError("kinetic inductances must be strictly positive")
        for name in ("L_g", "Lp_g", "Lt_g", "L_M", "Lp_M"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.L_eff <= 0:
            raise ValueError("effective inductance must be positive")

    @property
    def L_eff(self) -> float:
        return (self.L_K + self.L_g + self.Lp_K + self.Lp_g
                + 2.0 * (self.Lt_K + self.Lt_g) + self.L_M + self.Lp_M)

    @property
    def lm_ratio(self) -> float:
        """Mutual-inductance ratio L_M / (L_K + L_g)."""
        return self.L_M / (self.L_K + self.L_g)


def effective_inductance(ind: InductanceSet) -> float:
    """Sum of all loop inductances, with the central branch counted twice."""
    return ind.L_eff


@dataclass(frozen=True)
class FluxBias:
    """Reduced external fluxes f = Phi_ext / Phi0."""

    f1: float = 0.0
    f2: float = 0.0
    f_alpha: float = 0.2

    def __post_init__(self):
        for name in ("f1", "f2", "f_alpha"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class WindingNumbers:
    """Fluxoid winding integers of the two trapping loops and the alpha loop."""

    n1: int = -1
    n2: int = -1
    n: int = 1

    def __post_init__(self):
        for name in ("n1", "n2", "n"):
            if getattr(self, name) != int(getattr(self, name)):
                raise ValueError(f"{name} must be an integer")

    @property
    def m(self) -> int:
        return self.n2 - self.n1

    @property
    def m_prime(self) -> int:
        return self.n1 + self.n2


@dataclass(frozen=True)
class JunctionEnergies:
    """Junction and inductive energy scales, dimensionless with E_J = 1.

    stiffness_loop and stiffness_alpha are the trapping-loop and alpha-loop
    constraint prefactors Phi0^2/(4*L_eff*E_J) and Phi0^2/(4*(L_K+L_g)*E_J),
    taken as direct inputs rather than derived from physical inductances.
    """

    E_J: float = 1.0
    Et_J: float = 2.0
    E_C: float = 0.025
    stiffness_loop: float = 1000.0
    stiffness_alpha: float = 3000.0

    def __post_init__(self):
        for name in ("E_J", "Et_J", "E_C", "stiffness_loop", "stiffness_alpha"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def ratio(self) -> float:
        return self.Et_J / self.E_J


@dataclass(frozen=True)
class PhaseState:
    """Junction phases.  phiP1/phiP2 are the extra-junction phases of the
    six-junction variant and stay zero in the main four-junction model."""

    phi1: float = 0.0
    phi2: float = 0.0
    phi3: float = 0.0
    phi4: float = 0.0
    phiP1: float = 0.0
    phiP2: float = 0.0

    @property
    def phi_p(self) -> float:
        return 0.5 * (self.phi1 + self.phi2)

    @property
    def phi_m(self) -> float:
        return 0.5 * (self.phi1 - self.phi2)

    @property
    def phit_p(self) -> float:
        return 0.5 * (self.phi3 + self.phi4)

    @property
    def phit_m(self) -> float:
        return 0.5 * (self.phi3 - self.phi4)

    @classmethod
    def from_transformed(cls, phi_p, phi_m, phit_p, phit_m,
                         phiP1=0.0, phiP2=0.0) -> "PhaseState":
        return cls(phi1=phi_p + phi_m, phi2=phi_p - phi_m,
                   phi3=phit_p + phit_m, phi4=phit_p - phit_m,
                   phiP1=phiP1, phiP2=phiP2)

    def raw(self) -> np.ndarray:
        return np.array([self.phi1, self.phi2, self.phi3, self.phi4])

    def raw6(self) -> np.ndarray:
        return np.array([self.phi1, self.phi2, self.phi3, self.phi4,
                         self.phiP1, self.phiP2])


@dataclass(frozen=True)
class DriveParams:
    """Reduced bias currents: beta0 drives the alpha loop, beta_branch drives
    the branch node (the scheme that decouples from the qubit)."""

    beta0: float = 0.0
    beta_branch: float = 0.0


def bias_wave_vector(beta: float, L_eff: float, stiffness_loop: float) -> float:
    """Reduced bias wave vector for a reduced current beta = Phi0*I/(2*pi*E_J).

    Uses I = -Phi0*k (in the 2*pi*L_K/l = 1 convention) together with
    Phi0^2/E_J = 4*L_eff*stiffness_loop.
    """
    return -math.pi * beta / (2.0 * L_eff * stiffness_loop)


@dataclass(frozen=True)
class CircuitParams:
    """Full parameter record of the gradiometric flux qubit circuit."""

    inductances: InductanceSet = field(default_factory=InductanceSet)
    flux: FluxBias = field(default_factory=FluxBias)
    winding: WindingNumbers = field(default_factory=WindingNumbers)
    energies: JunctionEnergies = field(default_factory=JunctionEnergies)

    @classmethod
    def reference(cls) -> "CircuitParams":
        """The reference parameter set: f_alpha = 0.2, Et_J/E_J = 2, f1 = f2,
        m = 0, n = 1, m' = -2, stiffnesses 1000/3000."""
        return cls()


# ---------------------------------------------------------------------------
# constraint residuals (shared helpers)


def loop_residual(flux: FluxBias, wind: WindingNumbers, phases: PhaseState) -> float:
    """m + f2 - f1 - (phi1 + phi2 + 2*phi3 + 2*phi4)/2pi."""
    return (wind.m + flux.f2 - flux.f1
            - (phases.phi1 + phases.phi2 + 2 * phases.phi3 + 2 * phases.phi4) / TWO_PI)


def alpha_residual(flux: FluxBias, wind: WindingNumbers, phases: PhaseState) -> float:
    """n + f_alpha - (phi1 - phi2)/2pi."""
    return wind.n + flux.f_alpha - (phases.phi1 - phases.phi2) / TWO_PI


# ---------------------------------------------------------------------------
# wave vectors


@dataclass(frozen=True)
class WaveVectorSolution:
    """Wave vectors stored as dimensionless phase products (k1*l, k2*l,
    k'1*l', k'2*l', k*lt) together with the raw values in the
    2*pi*L_K/l = 1 convention."""

    k1: float
    k2: float
    kp1: float
    kp2: float
    k: float
    raw: tuple

    @property
    def raw_k1(self):
        return self.raw[0]

    @property
    def raw_k2(self):
        return self.raw[1]

    @property
    def raw_kp1(self):
        return self.raw[2]

    @property
    def raw_kp2(self):
        return self.raw[3]

    @property
    def raw_k(self):
        return self.raw[4]


def _check_denominators(ind: InductanceSet):
    if ind.L_eff <= 0:
        raise ValueError("degenerate circuit: L_eff <= 0")
    if ind.L_K + ind.L_g <= 0:
        raise ValueError("degenerate circuit: L_K + L_g <= 0")
    if abs(ind.Lp_K + ind.Lp_g - ind.Lp_M) < 1e-15:
        raise ValueError("degenerate circuit: L'_K + L'_g - L'_M vanishes")


def _assemble(ind, s12, d12, sp, dp, k):
    k1 = 0.5 * (s12 + d12)
    k2 = 0.5 * (s12 - d12)
    kp1 = 0.5 * (sp + dp)
    kp2 = 0.5 * (sp - dp)
    raw = (k1, k2, kp1, kp2, k)
    return WaveVectorSolution(
        k1=TWO_PI * ind.L_K * k1, k2=TWO_PI * ind.L_K * k2,
        kp1=TWO_PI * ind.Lp_K * kp1, kp2=TWO_PI * ind.Lp_K * kp2,
        k=TWO_PI * ind.Lt_K * k, raw=raw)


def _branch_difference(ind, flux, wind, phases):
    # from the sum of the two trapping-loop boundary conditions
    delta = (phases.phi1 - phases.phi2) / TWO_PI
    y = alpha_residual(flux, wind, phases)
    r = ind.lm_ratio
    num = wind.m_prime + flux.f1 + flux.f2 + delta + (1.0 - r) * y
    return -num / (ind.Lp_K + ind.Lp_g - ind.Lp_M)


def wave_vectors(ind: InductanceSet, flux: FluxBias, wind: WindingNumbers,
                 phases: PhaseState, k0: float = 0.0) -> WaveVectorSolution:
    """Solve the fluxoid boundary conditions with the alpha-loop bias current
    entering through the node condition k + k0 = k1 + k2.

    This is the exact solution of the linear system; it coincides with the
    closed-form expressions for k1, k2, k and the branch sum, while the
    branch difference k'1 - k'2 follows from the sum of the two trapping-loop
    conditions (see loop_currents for the approximate split used for the
    persistent-current estimate).
    """
    _check_denominators(ind)
    x = loop_residual(flux, wind, phases)
    y = alpha_residual(flux, wind, phases)
    k = (x - (ind.L_K + ind.L_g + ind.L_M) * k0) / ind.L_eff
    s12 = k + k0
    d12 = y / (ind.L_K + ind.L_g)
    sp = k
    dp = _branch_difference(ind, flux, wind, phases)
    return _assemble(ind, s12, d12, sp, dp, k)


def wave_vectors_branch(ind: InductanceSet, flux: FluxBias, wind: WindingNumbers,
                        phases: PhaseState, k0_branch: float = 0.0) -> WaveVectorSolution:
    """As wave_vectors but with the branch-node bias current, node conditions
    k'1 + k'2 + k0' = k and k = k1 + k2."""
    _check_denominators(ind)
    x = loop_residual(flux, wind, phases)
    y = alpha_residual(flux, wind, phases)
    k = (x + (ind.Lp_K + ind.Lp_g + ind.Lp_M) * k0_branch) / ind.L_eff
    s12 = k
    d12 = y / (ind.L_K + ind.L_g)
    sp = k - k0_branch
    dp = _branch_difference(ind, flux, wind, phases)
    return _assemble(ind, s12, d12, sp, dp, k)


def boundary_residuals(sol: WaveVectorSolution, ind: InductanceSet, flux: FluxBias,
                       wind: WindingNumbers, phases: PhaseState) -> np.ndarray:
    """Relative residuals of the three loop boundary conditions."""
    k1l, k2l, kp1l, kp2l, klt = sol.k1, sol.k2, sol.kp1, sol.kp2, sol.k
    p1, p2, p3, p4 = phases.phi1, phases.phi2, phases.phi3, phases.phi4
    r1 = (-(1 + ind.L_g / ind.L_K) * k1l - (1 + ind.Lp_g / ind.Lp_K) * kp1l
          - (1 + ind.Lt_g / ind.Lt_K) * klt - (ind.Lp_M / ind.Lp_K) * kp2l
          - (ind.L_M / ind.L_K) * k2l
          - TWO_PI * (wind.n1 + flux.f1 + (p1 + p3 + p4) / TWO_PI))
    r2 = ((1 + ind.L_g / ind.L_K) * k2l + (1 + ind.Lp_g / ind.Lp_K) * kp2l
          + (1 + ind.Lt_g / ind.Lt_K) * klt + (ind.Lp_M / ind.Lp_K) * kp1l
          + (ind.L_M / ind.L_K) * k1l
          - TWO_PI * (wind.n2 + flux.f2 - (p2 + p3 + p4) / TWO_PI))
    r3 = ((1 + ind.L_g / ind.L_K) * (k1l - k2l)
          - TWO_PI * (wind.n + flux.f_alpha - (p1 - p2) / TWO_PI))
    scale = max(1.0, np.max(np.abs([k1l, k2l, kp1l, kp2l, klt])),
                TWO_PI * max(abs(wind.n1 + flux.f1), abs(wind.n2 + flux.f2), 1.0))
    return np.array([r1, r2, r3]) / scale


def node_residuals(sol: WaveVectorSolution, k0: float = 0.0,
                   k0_branch: float = 0.0) -> np.ndarray:
    """Residuals of the two current-conservation node conditions (raw wave
    vectors).  Exactly one of k0 / k0_branch should be nonzero."""
    k1, k2, kp1, kp2, k = sol.raw
    if k0_branch != 0.0:
        return np.array([kp1 + kp2 + k0_branch - k, k - k1 - k2])
    return np.array([k - kp1 - kp2, k + k0 - k1 - k2])


# ---------------------------------------------------------------------------
# effective potentials


def _bias_coefficients(ind: InductanceSet):
    a = ind.Lp_K + ind.Lp_g + 2 * (ind.Lt_K + ind.Lt_g) + ind.Lp_M
    b = ind.L_K + ind.L_g + ind.L_M
    return a, b


def u_eff_terms(params: CircuitParams, phases: PhaseState, beta0: float = 0.0):
    """Inductive, Josephson and bias-coupling parts of the effective
    potential for the alpha-loop bias scheme, each in units of E_J."""
    e = params.energies
    x = loop_residual(params.flux, params.winding, phases)
    y = alpha_residual(params.flux, params.winding, phases)
    u_ind = e.stiffness_loop * x * x + e.stiffness_alpha * y * y
    u_jj = (-e.E_J * (math.cos(phases.phi1) + math.cos(phases.phi2))
            - e.Et_J * (math.cos(phases.phi3) + math.cos(phases.phi4)))
    a, b = _bias_coefficients(params.inductances)
    u_bias = (beta0 * e.E_J / (2.0 * params.inductances.L_eff)
              * (a * (phases.phi1 + phases.phi2) - 2 * b * (phases.phi3 + phases.phi4)))
    return u_ind, u_jj, u_bias


def u_eff(params: CircuitParams, phases: PhaseState, beta0: float = 0.0) -> float:
    """Effective potential of the four-junction model with alpha-loop bias."""
    return sum(u_eff_terms(params, phases, beta0))


def u_eff_grad(params: CircuitParams, phases: PhaseState,
               beta0: float = 0.0) -> np.ndarray:
    """Analytic gradient of u_eff with respect to (phi1..phi4)."""
    e = params.energies
    x = loop_residual(params.flux, params.winding, phases)
    y = alpha_residual(params.flux, params.winding, phases)
    coeff_x = -2.0 * e.stiffness_loop * x / TWO_PI
    coeff_y = -2.0 * e.stiffness_alpha * y / TWO_PI
    a, b = _bias_coefficients(params.inductances)
    cb = beta0 * e.E_J / (2.0 * params.inductances.L_eff)
    return np.array([
        coeff_x + coeff_y + e.E_J * math.sin(phases.phi1) + cb * a,
        coeff_x - coeff_y + e.E_J * math.sin(phases.phi2) + cb * a,
        2 * coeff_x + e.Et_J * math.sin(phases.phi3) - 2 * cb * b,
        2 * coeff_x + e.Et_J * math.sin(phases.phi4) - 2 * cb * b,
    ])


def u_eff_transformed(params: CircuitParams, phi_p, phi_m, phit_p, phit_m,
                      beta0: float = 0.0):
    """Effective potential in the (phi_p, phi_m, phit_p, phit_m) coordinates.
    Accepts scalars or numpy arrays."""
    e = params.energies
    f, w = params.flux, params.winding
    x = w.m + f.f2 - f.f1 - (2 * phi_p + 4 * phit_p) / TWO_PI
    y = w.n + f.f_alpha - phi_m / math.pi
    u_ind = e.stiffness_loop * x * x + e.stiffness_alpha * y * y
    u_jj = (-2 * e.E_J * np.cos(phi_p) * np.cos(phi_m)
            - 2 * e.Et_J * np.cos(phit_p) * np.cos(phit_m))
    a, b = _bias_coefficients(params.inductances)
    u_bias = (beta0 * e.E_J / params.inductances.L_eff) * (a * phi_p - 2 * b * phit_p)
    return u_ind + u_jj + u_bias


def u_eff_transformed_grad(params: CircuitParams, phi_p, phi_m, phit_p, phit_m,
                           beta0: float = 0.0) -> np.ndarray:
    e = params.energies
    f, w = params.flux, params.winding
    x = w.m + f.f2 - f.f1 - (2 * phi_p + 4 * phit_p) / TWO_PI
    y = w.n + f.f_alpha - phi_m / math.pi
    a, b = _bias_coefficients(params.inductances)
    cb = beta0 * e.E_J / params.inductances.L_eff
    return np.array([
        -2 * e.stiffness_loop * x * (2 / TWO_PI)
        + 2 * e.E_J * np.sin(phi_p) * np.cos(phi_m) + cb * a,
        -2 * e.stiffness_alpha * y / math.pi
        + 2 * e.E_J * np.cos(phi_p) * np.sin(phi_m),
        -2 * e.stiffness_loop * x * (4 / TWO_PI)
        + 2 * e.Et_J * np.sin(phit_p) * np.cos(phit_m) - 2 * cb * b,
        2 * e.Et_J * np.cos(phit_p) * np.sin(phit_m),
    ])


def v_reduced(ej_ratio: float, flux: FluxBias, wind: WindingNumbers,
              phi_p, phit_m, beta0: float = 0.0):
    """Constraint-reduced double-well potential V(phi_p, phit_m) in units of
    E_J, with the bias entering as the linear tilt beta0 * phi_p.
    Accepts scalars or numpy arrays."""
    half = 0.5 * (math.pi * (wind.m + flux.f2 - flux.f1) - np.asarray(phi_p))
    v = (-2.0 * math.cos(math.pi * (wind.n + flux.f_alpha)) * np.cos(phi_p)
         - 2.0 * ej_ratio * np.cos(half) * np.cos(phit_m)
         + beta0 * np.asarray(phi_p))
    return v if getattr(v, "ndim", 0) else float(v)


def v_reduced_grad(ej_ratio: float, flux: FluxBias, wind: WindingNumbers,
                   phi_p, phit_m, beta0: float = 0.0) -> np.ndarray:
    half = 0.5 * (math.pi * (wind.m + flux.f2 - flux.f1) - np.asarray(phi_p))
    d_pp = (2.0 * math.cos(math.pi * (wind.n + flux.f_alpha)) * np.sin(phi_p)
            - ej_ratio * np.sin(half) * np.cos(phit_m) + beta0)
    d_tm = 2.0 * ej_ratio * np.cos(half) * np.sin(phit_m)
    return np.array([d_pp, d_tm])


def u_eff_branch_terms(params: CircuitParams, phases: PhaseState,
                       beta_branch: float = 0.0):
    """Potential terms for the branch-node bias scheme; the coupling term is
    proportional to phi1 + phi2 + 2*phi3 + 2*phi4 and is constant on the
    trapping-loop constraint surface."""
    u_ind, u_jj, _ = u_eff_terms(params, phases, beta0=0.0)
    ind = params.inductances
    c = (beta_branch * params.energies.E_J
         * (ind.Lp_K + ind.Lp_g + ind.Lp_M) / (2.0 * ind.L_eff))
    u_bias = c * (phases.phi1 + phases.phi2 + 2 * phases.phi3 + 2 * phases.phi4)
    return u_ind, u_jj, u_bias


def u_eff_branch(params: CircuitParams, phases: PhaseState,
                 beta_branch: float = 0.0) -> float:
    return sum(u_eff_branch_terms(params, phases, beta_branch))


def branch_stiffness(params: CircuitParams) -> float:
    """Phi0^2/(4*(L'_K+L'_g)*E_J), from stiffness_alpha and the inductance
    ratio (L_K+L_g)/(L'_K+L'_g)."""
    ind = params.inductances
    return (params.energies.stiffness_alpha
            * (ind.L_K + ind.L_g) / (ind.Lp_K + ind.Lp_g))


def extra_loop_residual(params: CircuitParams, phases: PhaseState) -> float:
    """m' + f1 + f2 + (1 - L_M/(L_K+L_g))*f_alpha - (phi'1 - phi'2)/2pi."""
    f, w = params.flux, params.winding
    return (w.m_prime + f.f1 + f.f2
            + (1.0 - params.inductances.lm_ratio) * f.f_alpha
            - (phases.phiP1 - phases.phiP2) / TWO_PI)


def u_eff_six_junction(params: CircuitParams, phases: PhaseState) -> float:
    """Effective potential of the six-junction variant with the extra
    trapping-loop junctions phi'1, phi'2 and the third inductive term."""
    e = params.energies
    f, w = params.flux, params.winding
    x = (w.m + f.f2 - f.f1
         - (phases.phi1 + phases.phi2 + 2 * phases.phi3 + 2 * phases.phi4
            - phases.phiP1 - phases.phiP2) / TWO_PI)
    y = alpha_residual(f, w, phases)
    z = extra_loop_residual(params, phases)
    u_ind = (e.stiffness_loop * x * x + e.stiffness_alpha * y * y
             + branch_stiffness(params) * z * z)
    u_jj = (-e.E_J * (math.cos(phases.phi1) + math.cos(phases.phi2))
            - e.Et_J * (math.cos(phases.phi3) + math.cos(phases.phi4)))
    return u_ind + u_jj


def u_eff_six_junction_grad(params: CircuitParams, phases: PhaseState) -> np.ndarray:
    """Analytic gradient of u_eff_six_junction with respect to all six phases."""
    e = params.energies
    f, w = params.flux, params.winding
    x = (w.m + f.f2 - f.f1
         - (phases.phi1 + phases.phi2 + 2 * phases.phi3 + 2 * phases.phi4
            - phases.phiP1 - phases.phiP2) / TWO_PI)
    y = alpha_residual(f, w, phases)
    z = extra_loop_residual(params, phases)
    cx = -2.0 * e.stiffness_loop * x / TWO_PI
    cy = -2.0 * e.stiffness_alpha * y / TWO_PI
    cz = -2.0 * branch_stiffness(params) * z / TWO_PI
    return np.array([
        cx + cy + e.E_J * math.sin(phases.phi1),
        cx - cy + e.E_J * math.sin(phases.phi2),
        2 * cx + e.Et_J * math.sin(phases.phi3),
        2 * cx + e.Et_J * math.sin(phases.phi4),
        -cx + cz,
        -cx - cz,
    ])


def optimal_mprime(f1: float, f2: float, f_alpha: float, lm_ratio: float) -> int:
    """Integer m' minimizing [m' + f1 + f2 + (1 - lm_ratio)*f_alpha]^2.
    Exact ties resolve to the smaller integer."""
    if not 0.0 <= lm_ratio < 1.0:
        raise ValueError("lm_ratio must lie in [0, 1)")
    target = f1 + f2 + (1.0 - lm_ratio) * f_alpha
    lo = -math.ceil(target)
    best = lo
    for cand in (lo - 1, lo, lo + 1):
        da, db = abs(cand + target), abs(best + target)
        if da < db - 1e-15 or (abs(da - db) <= 1e-15 and cand < best):
            best = cand
    return int(best)
