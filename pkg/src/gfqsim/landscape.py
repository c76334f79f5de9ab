"""Location of potential minima, double-well cuts, tilt and grid scans.

All searches are deterministic: seed grids are fixed, seeds are visited in
order, and results are merged by sorted position.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import NoDoubleWell, WellsMerged

TWO_PI = 2.0 * math.pi
DEFAULT_WINDOW_2D = ((-TWO_PI, TWO_PI), (-math.pi, math.pi))


@dataclass(frozen=True)
class LocalMinimum:
    position: tuple
    energy: float
    label: str          # "down" for phi_p < 0, "up" otherwise
    grad_norm: float

    @property
    def phi_p(self) -> float:
        return self.position[0]


@dataclass(frozen=True)
class PotentialLandscape:
    """Sampled grid of a 2D potential with its minima and the phit_m = 0 cut."""

    phi_p_axis: np.ndarray
    phit_m_axis: np.ndarray
    energy: np.ndarray          # shape (len(phi_p_axis), len(phit_m_axis))
    minima: tuple
    cut_phi_p: np.ndarray
    cut_energy: np.ndarray


@dataclass(frozen=True)
class CutResult:
    phi_p: np.ndarray
    energy: np.ndarray
    minima: tuple               # LocalMinimum pair, sorted by phi_p
    barrier_height: float


def seed_grid(window, per_axis: int = 17) -> np.ndarray:
    """Regular grid of seed points over a rectangular window."""
    axes = [np.linspace(lo, hi, per_axis) for lo, hi in window]
    return np.array(list(itertools.product(*axes)))


def constraint_seed_grid(flux, wind, window=DEFAULT_WINDOW_2D,
                         per_axis: int = 17) -> np.ndarray:
    """Seeds for the four-coordinate potential: a (phi_p, phit_m) grid with
    phi_m and phit_p started on the inductive-constraint values."""
    seeds2 = seed_grid(window, per_axis)
    phi_m0 = math.pi * (wind.n + flux.f_alpha)
    out = np.empty((len(seeds2), 4))
    out[:, 0] = seeds2[:, 0]
    out[:, 1] = phi_m0
    out[:, 2] = 0.5 * (math.pi * (wind.m + flux.f2 - flux.f1) - seeds2[:, 0])
    out[:, 3] = seeds2[:, 1]
    return out


def _fd_gradient(f, x, h=1e-6):
    g = np.empty(len(x))
    for i in range(len(x)):
        e = np.zeros(len(x))
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def _fd_hessian(f, x, h=1e-4):
    d = len(x)
    hess = np.empty((d, d))
    for i in range(d):
        for j in range(i, d):
            ei = np.zeros(d)
            ej = np.zeros(d)
            ei[i] = h
            ej[j] = h
            hess[i, j] = hess[j, i] = (
                f(x + ei + ej) - f(x + ei - ej)
                - f(x - ei + ej) + f(x - ei - ej)) / (4 * h * h)
    return hess


def _polish(f, grad, x, iters=4):
    # Newton steps on the gradient, finite-difference Hessian
    for _ in range(iters):
        g = grad(x)
        h = _fd_hessian(f, x)
        try:
            step = np.linalg.solve(h, g)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)) or np.linalg.norm(step) > 0.5:
            break
        x = x - step
    return x


def _descend(f, g, seed, gtol=1e-10):
    # overflow in the line search just means a runaway seed; keep it quiet
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return optimize.minimize(f, np.asarray(seed, dtype=float), jac=g,
                                 method="BFGS",
                                 options={"gtol": gtol, "maxiter": 500})


def find_minima(potential, seeds, window, grad=None, grad_tol=1e-8,
                dedup_tol=1e-6, boundary_margin=1e-3) -> list:
    """Distinct local minima of `potential` reached from a deterministic seed
    grid.  Minima on the window boundary (periodic images of interior wells)
    are discarded; returns an empty list when nothing converges."""
    f = lambda x: float(potential(np.asarray(x, dtype=float)))
    g = grad if grad is not None else (lambda x: _fd_gradient(f, np.asarray(x)))
    found = []
    for seed in seeds:
        res = _descend(f, g, seed)
        if not np.all(np.isfinite(res.x)):
            continue
        x = _polish(f, g, res.x)
        gn = float(np.linalg.norm(g(x)))
        if gn > grad_tol:
            continue
        inside = all(lo + boundary_margin < xi < hi - boundary_margin
                     for xi, (lo, hi) in zip(x, window))
        if not inside:
            continue
        hess = _fd_hessian(f, x)
        eigs = np.linalg.eigvalsh(hess)
        if eigs[0] <= 1e-8 * max(1.0, abs(eigs[-1])):
            continue
        if any(np.linalg.norm(x - np.asarray(m.position)) < dedup_tol
               for m in found):
            continue
        label = "down" if x[0] < 0 else "up"
        found.append(LocalMinimum(position=tuple(float(v) for v in x),
                                  energy=f(x), label=label, grad_norm=gn))
    found.sort(key=lambda m: m.position)
    return found


def analytic_minima(ej_ratio: float, f_alpha: float, n: int = 1):
    """Closed-form double-well minima of the reduced potential for f1 = f2,
    m = 0: phit_m = 0 and cos(phi_p/2) = ratio / (4 cos(pi f_alpha))."""
    if n % 2 == 0:
        raise NoDoubleWell("even alpha-loop winding gives a single well")
    c = math.cos(math.pi * f_alpha)
    if c <= 0:
        raise NoDoubleWell("cos(pi f_alpha) <= 0: no double-well regime")
    arg = ej_ratio / (4.0 * c)
    if arg >= 1.0:
        raise NoDoubleWell(
            f"ratio/(4 cos(pi f_alpha)) = {arg:.6g} >= 1: single-well regime")
    phi_p = 2.0 * math.acos(arg)
    return (-phi_p, phi_p), 0.0


def double_well_cut(potential, npoints: int = 801,
                    window=(-TWO_PI, TWO_PI)) -> CutResult:
    """Sample the phit_m = 0 cut of a 2D potential and locate the two wells.

    `potential` takes (phi_p, phit_m); raises NoDoubleWell when fewer than
    two interior minima exist on the cut."""
    phi = np.linspace(window[0], window[1], npoints)
    v = np.asarray(potential(phi, np.zeros_like(phi)), dtype=float)
    f1d = lambda x: float(potential(float(x), 0.0))
    minima = []
    for i in range(1, npoints - 1):
        if v[i] < v[i - 1] and v[i] < v[i + 1]:
            res = optimize.minimize_scalar(
                f1d, bracket=(phi[i - 1], phi[i], phi[i + 1]),
                options={"xtol": 1e-12})
            x = float(res.x)
            if any(abs(x - m.position[0]) < 1e-6 for m in minima):
                continue
            label = "down" if x < 0 else "up"
            minima.append(LocalMinimum(position=(x, 0.0), energy=float(res.fun),
                                       label=label, grad_norm=0.0))
    minima.sort(key=lambda m: m.position[0])
    if len(minima) < 2:
        raise NoDoubleWell("fewer than two minima on the phit_m = 0 cut")
    barrier = f1d(0.0) - min(m.energy for m in minima)
    return CutResult(phi_p=phi, energy=v, minima=tuple(minima),
                     barrier_height=float(barrier))


def tilt(potential, base_minima, grad=None, merge_tol=1e-3) -> float:
    """Well-energy asymmetry E(up) - E(down) of a biased potential, tracked
    from the unbiased minima positions."""
    if len(base_minima) != 2:
        raise ValueError("tilt needs exactly two reference minima")
    f = lambda x: float(potential(np.asarray(x, dtype=float)))
    g = grad if grad is not None else (lambda x: _fd_gradient(f, np.asarray(x)))
    refined = []
    for m in base_minima:
        res = _descend(f, g, m.position, gtol=1e-12)
        x = res.x
        if np.all(np.isfinite(x)):
            x = _polish(f, g, x)
        if (not np.all(np.isfinite(x))
                or np.linalg.norm(x - np.asarray(m.position)) > TWO_PI):
            raise WellsMerged(
                "a well disappeared under the applied bias (runaway descent)")
        refined.append((x, f(x)))
    if np.linalg.norm(refined[0][0] - refined[1][0]) < merge_tol:
        raise WellsMerged("the two wells merged under the applied bias")
    by_phi_p = sorted(refined, key=lambda t: t[0][0])
    return by_phi_p[1][1] - by_phi_p[0][1]


def grid_scan(potential, ranges=DEFAULT_WINDOW_2D, resolution=(201, 201),
              grad=None, seeds_per_axis=17, cut_points=801) -> PotentialLandscape:
    """Dense grid of a 2D potential plus its minima and phit_m = 0 cut."""
    if min(resolution) < 32:
        raise ValueError("resolution must be at least 32 per axis")
    xs = np.linspace(ranges[0][0], ranges[0][1], resolution[0])
    ys = np.linspace(ranges[1][0], ranges[1][1], resolution[1])
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    energy = np.asarray(potential(xx, yy), dtype=float)
    pot_vec = lambda x: potential(x[0], x[1])
    minima = find_minima(pot_vec, seed_grid(ranges, seeds_per_axis), ranges,
                         grad=grad)
    cut_phi = np.linspace(ranges[0][0], ranges[0][1], cut_points)
    cut_v = np.asarray(potential(cut_phi, np.zeros_like(cut_phi)), dtype=float)
    return PotentialLandscape(phi_p_axis=xs, phit_m_axis=ys, energy=energy,
                              minima=tuple(minima), cut_phi_p=cut_phi,
                              cut_energy=cut_v)
