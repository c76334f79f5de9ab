"""Simulation library for a current-biased gradiometric flux qubit:
circuit potentials and wave vectors, potential-landscape minimization,
tunneling-gap spectrum, loop-current and coupling observables, and
qubit-resonator dynamics."""

from .circuit import (CircuitParams, DriveParams, FluxBias, InductanceSet,
                      JunctionEnergies, PhaseState, WaveVectorSolution,
                      WindingNumbers, effective_inductance, optimal_mprime,
                      u_eff, u_eff_six_junction, u_eff_branch, u_eff_transformed,
                      v_reduced, wave_vectors, wave_vectors_branch)
from .errors import (ConfigurationError, DispersiveInvalid, GfqError,
                     NoDoubleWell, WellsMerged)
from .landscape import (CutResult, LocalMinimum, PotentialLandscape,
                        analytic_minima, double_well_cut, find_minima,
                        grid_scan, tilt)
from .observables import (LoopCurrents, PhysicalConstants, coupling_strength,
                          g_curve, loop_currents, to_si)
from .operators import OperatorMatrix, annihilation, identity, tensor
from .spectrum import (GapResult, QubitSpectrum, alpha_param,
                       kinetic_prefactors, splitting_2d, tight_binding_h,
                       to_energy_basis, tunneling_gap_1d)
from .cqed import (ResonatorParams, TwoQubitParams, bias_amplitude,
                   build_qubit_resonator_h, build_rwa_h,
                   current_mode_amplitude, dispersive_two_qubit_h,
                   evolve_driven, mode_frequency, time_evolve)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
