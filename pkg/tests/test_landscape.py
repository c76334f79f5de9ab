import math

import numpy as np
import pytest

from gfqsim import circuit, landscape
from gfqsim.circuit import CircuitParams, FluxBias, WindingNumbers
from gfqsim.errors import NoDoubleWell, WellsMerged

TWO_PI = 2.0 * math.pi
WINDOW = ((-TWO_PI, TWO_PI), (-math.pi, math.pi))
FLUX = FluxBias(0, 0, 0.2)
WIND = WindingNumbers(-1, -1, 1)


def reduced(ratio=2.0, flux=FLUX, wind=WIND, beta0=0.0):
    pot = lambda x: circuit.v_reduced(ratio, flux, wind, x[0], x[1], beta0)
    grad = lambda x: circuit.v_reduced_grad(ratio, flux, wind, x[0], x[1],
                                            beta0)
    return pot, grad


class TestAnalyticMinima:
    def test_reference(self):
        (lo, hi), tm = landscape.analytic_minima(2.0, 0.2)
        assert tm == 0.0
        assert hi == pytest.approx(1.809114, abs=1e-5)
        assert lo == -hi

    def test_boundary_raises(self):
        with pytest.raises(NoDoubleWell):
            landscape.analytic_minima(4.0, 0.0)

    def test_exact_quarter(self):
        (_, hi), _ = landscape.analytic_minima(2.0, 0.25)
        assert hi == pytest.approx(math.pi / 2, abs=1e-12)

    def test_even_n_raises(self):
        with pytest.raises(NoDoubleWell):
            landscape.analytic_minima(2.0, 0.2, n=0)


class TestFindMinima:
    def test_reference_double_well(self):
        pot, grad = reduced()
        seeds = landscape.seed_grid(WINDOW, 9)
        minima = landscape.find_minima(pot, seeds, WINDOW, grad=grad)
        assert len(minima) == 2
        assert minima[0].label == "down" and minima[1].label == "up"
        assert minima[1].position[0] == pytest.approx(1.80911, abs=1e-4)
        assert minima[0].position[0] == pytest.approx(-1.80911, abs=1e-4)
        assert abs(minima[0].position[1]) <= 1e-8
        assert minima[0].energy == pytest.approx(minima[1].energy, abs=1e-10)

    def test_even_winding_single_minimum(self):
        pot, grad = reduced(wind=WindingNumbers(0, 0, 0))
        seeds = landscape.seed_grid(WINDOW, 9)
        minima = landscape.find_minima(pot, seeds, WINDOW, grad=grad)
        assert len(minima) == 1
        assert minima[0].position[0] == pytest.approx(0.0, abs=1e-8)

    def test_matches_analytic_over_region(self):
        rng = np.random.default_rng(20)
        seeds = landscape.seed_grid(WINDOW, 7)
        checked = 0
        while checked < 50:
            ratio = rng.uniform(0.5, 3.0)
            fa = rng.uniform(0.02, 0.3)
            if ratio / (4 * math.cos(math.pi * fa)) >= 0.98:
                continue
            flux = FluxBias(0, 0, fa)
            pot, grad = reduced(ratio, flux)
            minima = landscape.find_minima(pot, seeds, WINDOW, grad=grad)
            (lo, hi), _ = landscape.analytic_minima(ratio, fa)
            assert len(minima) == 2
            assert minima[0].position[0] == pytest.approx(lo, abs=1e-6)
            assert minima[1].position[0] == pytest.approx(hi, abs=1e-6)
            checked += 1

    def test_empty_result_not_exception(self):
        # a strictly increasing potential has no interior minimum
        pot = lambda x: float(x[0] + 2 * x[1])
        grad = lambda x: np.array([1.0, 2.0])
        minima = landscape.find_minima(pot, landscape.seed_grid(WINDOW, 5),
                                       WINDOW, grad=grad)
        assert minima == []

    def test_deterministic(self):
        pot, grad = reduced()
        seeds = landscape.seed_grid(WINDOW, 9)
        a = landscape.find_minima(pot, seeds, WINDOW, grad=grad)
        b = landscape.find_minima(pot, seeds, WINDOW, grad=grad)
        assert a == b


class TestFullPotentialMinima:
    def test_within_two_percent_of_constrained_limit(self):
        params = CircuitParams()
        flux, wind = params.flux, params.winding
        phi_m0 = math.pi * (wind.n + flux.f_alpha)
        window = ((-TWO_PI, TWO_PI),
                  (phi_m0 - math.pi / 2, phi_m0 + math.pi / 2),
                  (-TWO_PI, TWO_PI), (-math.pi, math.pi))
        seeds = landscape.constraint_seed_grid(flux, wind, per_axis=13)
        pot = lambda x: circuit.u_eff_transformed(params, *x)
        grad = lambda x: circuit.u_eff_transformed_grad(params, *x)
        minima = landscape.find_minima(pot, seeds, window, grad=grad)
        assert len(minima) == 2
        (_, hi), _ = landscape.analytic_minima(2.0, 0.2)
        for m, sign in zip(minima, (-1, 1)):
            assert m.position[0] == pytest.approx(sign * hi, rel=0.02)
            assert abs(m.position[3]) <= 1e-3


class TestDoubleWellCut:
    def test_barrier_height(self):
        flux, wind = FLUX, WIND
        pot = lambda p, tm: circuit.v_reduced(2.0, flux, wind, p, tm)
        cut = landscape.double_well_cut(pot)
        assert cut.barrier_height == pytest.approx(0.472136, abs=1e-5)
        assert len(cut.minima) >= 2
        lo = min(m.position[0] for m in cut.minima)
        hi = max(m.position[0] for m in cut.minima)
        assert cut.phi_p[0] < lo and cut.phi_p[-1] > hi

    def test_tilted_cut_linear_asymmetry(self):
        b0 = 0.05
        pot = lambda p, tm: circuit.v_reduced(2.0, FLUX, WIND, p, tm, b0)
        cut = landscape.double_well_cut(pot)
        asym = pot(2.0, 0.0) - pot(-2.0, 0.0)
        assert asym == pytest.approx(2 * b0 * 2.0, abs=1e-12)
        assert cut.minima[0].energy < cut.minima[-1].energy

    def test_single_well_raises(self):
        pot = lambda p, tm: circuit.v_reduced(
            2.0, FLUX, WindingNumbers(0, 0, 0), p, tm)
        with pytest.raises(NoDoubleWell):
            landscape.double_well_cut(pot)


class TestTilt:
    def base_minima(self, beta0=0.0):
        pot, grad = reduced(beta0=beta0)
        seeds = landscape.seed_grid(WINDOW, 9)
        return landscape.find_minima(pot, seeds, WINDOW, grad=grad)

    def test_zero_bias_zero_tilt(self):
        base = self.base_minima()
        pot, grad = reduced()
        assert landscape.tilt(pot, base, grad=grad) == pytest.approx(
            0.0, abs=1e-10)

    def test_first_order_tilt(self):
        base = self.base_minima()
        b0 = 1e-3
        pot, grad = reduced(beta0=b0)
        eps = landscape.tilt(pot, base, grad=grad)
        alpha = 1.809114
        assert abs(eps) == pytest.approx(2 * alpha * b0, rel=0.05)

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    @pytest.mark.parametrize("beta0", [0.8, 2.5])
    def test_wells_merged(self, beta0):
        base = self.base_minima()
        pot, grad = reduced(beta0=beta0)
        with pytest.raises(WellsMerged):
            landscape.tilt(pot, base, grad=grad)


class TestGridScan:
    def test_reference_grid(self):
        pot = lambda p, tm: circuit.v_reduced(2.0, FLUX, WIND, p, tm)
        grad = lambda x: circuit.v_reduced_grad(2.0, FLUX, WIND, x[0], x[1])
        scan = landscape.grid_scan(pot, grad=grad)
        assert scan.energy.shape == (201, 201)
        assert scan.energy.min() == pytest.approx(-2.854102, abs=1e-3)
        assert len(scan.minima) == 2
        # phi_p parity symmetry of the sampled grid
        assert np.allclose(scan.energy, scan.energy[::-1, :], atol=1e-12)

    def test_bias_breaks_symmetry(self):
        pot = lambda p, tm: circuit.v_reduced(2.0, FLUX, WIND, p, tm, 0.05)
        scan = landscape.grid_scan(pot, resolution=(65, 65), seeds_per_axis=7)
        diff = scan.energy - scan.energy[::-1, :]
        # the asymmetry is the pure tilt 2*beta0*phi_p, monotone in phi_p
        assert np.all(np.diff(diff[:, 0]) > 0)

    def test_resolution_floor(self):
        pot = lambda p, tm: circuit.v_reduced(2.0, FLUX, WIND, p, tm)
        with pytest.raises(ValueError):
            landscape.grid_scan(pot, resolution=(16, 64))
