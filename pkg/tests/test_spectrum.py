import math

import numpy as np
import pytest

from gfqsim import circuit, spectrum
from gfqsim.circuit import FluxBias, WindingNumbers
from gfqsim.errors import NoDoubleWell

WIND = WindingNumbers(-1, -1, 1)
EJ_OVER_H_GHZ = 200.0


def cut_potential(ratio=2.0, f_alpha=0.2):
    flux = FluxBias(0, 0, f_alpha)
    return lambda pp: circuit.v_reduced(ratio, flux, WIND, pp, 0.0)


class TestAlphaParam:
    def test_reference(self):
        assert spectrum.alpha_param(2.0, 0.2) == pytest.approx(1.809114,
                                                               abs=1e-5)

    def test_boundary(self):
        with pytest.raises(NoDoubleWell):
            spectrum.alpha_param(4.0, 0.0)

    def test_exact_value(self):
        assert spectrum.alpha_param(2.0, 0.25) == pytest.approx(math.pi / 2,
                                                                abs=1e-12)


class TestGap1D:
    def test_reference_band(self):
        gap = spectrum.tunneling_gap_1d(cut_potential(), 0.025, 2.0)
        ghz = gap.delta * EJ_OVER_H_GHZ
        assert 0.3 <= ghz <= 3.0
        assert gap.t_q == pytest.approx(gap.delta / 2)
        assert gap.doublet_isolated

    def test_grid_refinement(self):
        g1 = spectrum.tunneling_gap_1d(cut_potential(), 0.025, 2.0,
                                       npoints=2001)
        g2 = spectrum.tunneling_gap_1d(cut_potential(), 0.025, 2.0,
                                       npoints=4001)
        assert abs(g2.delta - g1.delta) <= 0.005 * g1.delta

    def test_monotone_in_f_alpha(self):
        deltas = [spectrum.tunneling_gap_1d(cut_potential(2.0, fa),
                                            0.025, 2.0, npoints=1201).delta
                  for fa in (0.1, 0.15, 0.2, 0.25)]
        assert all(b > a for a, b in zip(deltas, deltas[1:]))

    def test_point_floor(self):
        with pytest.raises(ValueError):
            spectrum.tunneling_gap_1d(cut_potential(), 0.025, 2.0, npoints=50)


class TestSplitting2D:
    def test_harmonic_calibration(self):
        kp, km = spectrum.kinetic_prefactors(0.025, 2.0)
        res = spectrum.splitting_2d(lambda x, y: 0.5 * (x**2 + y**2), kp, km,
                                    window=((-4, 4), (-4, 4)),
                                    shape=(301, 301))
        ex, ey = math.sqrt(2 * kp), math.sqrt(2 * km)
        levels = np.sort(res.levels)
        assert levels[0] == pytest.approx(0.5 * (ex + ey), rel=1e-3)
        assert levels[1] - levels[0] == pytest.approx(min(ex, ey), rel=1e-3)

    def test_agrees_with_1d_within_factor_two(self):
        kp, km = spectrum.kinetic_prefactors(0.025, 2.0)
        flux = FluxBias(0, 0, 0.2)
        pot = lambda pp, tm: circuit.v_reduced(2.0, flux, WIND, pp, tm)
        d2 = spectrum.splitting_2d(pot, kp, km).delta
        d1 = spectrum.tunneling_gap_1d(cut_potential(), 0.025, 2.0).delta
        assert 0.5 <= d1 / d2 <= 2.0

    def test_deep_barrier_smaller(self):
        kp, km = spectrum.kinetic_prefactors(0.025, 2.0)
        ref = spectrum.splitting_2d(
            lambda pp, tm: circuit.v_reduced(2.0, FluxBias(0, 0, 0.2), WIND,
                                             pp, tm), kp, km,
            shape=(121, 121)).delta
        deep = spectrum.splitting_2d(
            lambda pp, tm: circuit.v_reduced(2.0, FluxBias(0, 0, 0.05), WIND,
                                             pp, tm), kp, km,
            shape=(121, 121)).delta
        assert deep < ref


class TestTightBinding:
    def spec(self, e=0.0, t_q=0.003):
        return spectrum.qubit_spectrum(e, e, t_q, spectrum.alpha_param(2.0,
                                                                       0.2))

    def test_degenerate_eigenvalues(self):
        s = self.spec(e=-2.854102)
        h = spectrum.tight_binding_h(s)
        assert h.is_hermitian()
        evals = h.eigenvalues()
        assert evals[1] - evals[0] == pytest.approx(s.delta, abs=1e-12)

    def test_energy_basis_diagonal(self):
        s = self.spec(e=0.0)
        he = spectrum.to_energy_basis(spectrum.tight_binding_h(s))
        m = he.matrix
        assert abs(m[0, 1]) <= 1e-14 and abs(m[1, 0]) <= 1e-14
        assert m[0, 0].real == pytest.approx(-s.delta / 2, abs=1e-14)
        assert m[1, 1].real == pytest.approx(+s.delta / 2, abs=1e-14)

    def test_bias_appears_as_sigma_x(self):
        s = self.spec(e=0.0)
        beta0 = 0.01
        he = spectrum.to_energy_basis(spectrum.tight_binding_h(s, beta0))
        # the static drive shows up purely off-diagonally with weight
        # beta0*alpha, the coupling g per unit Phi0*I0/(2pi E_J)
        assert abs(he.matrix[0, 1]) == pytest.approx(beta0 * s.alpha,
                                                     abs=1e-12)

    def test_zero_tunneling_bare_wells(self):
        s = spectrum.qubit_spectrum(-1.0, -1.0, 0.0, 1.8)
        h = spectrum.tight_binding_h(s, beta0=0.5)
        assert abs(h.matrix[0, 1]) == 0
        evals = np.sort(np.real(np.diag(h.matrix)))
        assert np.allclose(np.sort(h.eigenvalues()), evals)


class TestKineticPrefactors:
    def test_positive_and_ordered(self):
        kp, km = spectrum.kinetic_prefactors(0.025, 2.0)
        assert kp > 0 and km > 0
        assert kp == pytest.approx(0.1 / 1.5)
        assert km == pytest.approx(0.05)
