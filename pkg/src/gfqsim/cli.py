"""Command-line front end.

Each subcommand wires the run configuration into the computational modules
and writes its artifacts into --outdir: a JSON or CSV report plus, for the
table-producing commands, a rendered figure next to the delimited output.

Exit codes: 0 success, 1 scorecard failure, 2 physics/configuration status,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import circuit, cqed, landscape, observables, spectrum
from .config import RunConfig, _FIELDS, _to_key, load_config
from .errors import (ConfigurationError, DispersiveInvalid, GfqError,
                     NoDoubleWell, WellsMerged)
from .report import (render_curves, render_cut, render_landscape, write_csv,
                     write_json)

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# shared helpers


def _full_minima(cfg: RunConfig, beta0: float = 0.0, per_axis: int = 13):
    """Minima of the four-coordinate effective potential."""
    params = cfg.circuit_params()
    flux, wind = params.flux, params.winding
    phi_m0 = math.pi * (wind.n + flux.f_alpha)
    window = ((-TWO_PI, TWO_PI), (phi_m0 - 0.5 * math.pi, phi_m0 + 0.5 * math.pi),
              (-TWO_PI, TWO_PI), (-math.pi, math.pi))
    seeds = landscape.constraint_seed_grid(flux, wind, per_axis=per_axis)
    pot = lambda x: circuit.u_eff_transformed(params, x[0], x[1], x[2], x[3],
                                              beta0)
    grad = lambda x: circuit.u_eff_transformed_grad(params, x[0], x[1], x[2],
                                                    x[3], beta0)
    return landscape.find_minima(pot, seeds, window, grad=grad), params


def _reduced_potential(cfg: RunConfig, beta0: float = None):
    params = cfg.circuit_params()
    b0 = cfg.beta0 if beta0 is None else beta0
    return lambda pp, tm: circuit.v_reduced(params.energies.ratio,
                                            params.flux, params.winding,
                                            pp, tm, b0)


def _minimum_record(m: landscape.LocalMinimum) -> dict:
    keys = ("phi_p", "phi_m", "phit_p", "phit_m")[:len(m.position)]
    rec = dict(zip(keys, m.position))
    rec.update(label=m.label, energy=m.energy, grad_norm=m.grad_norm)
    return rec


def _out(args, name: str) -> str:
    import os
    return os.path.join(args.outdir, name)


# ---------------------------------------------------------------------------
# subcommands


def cmd_minima(cfg: RunConfig, args) -> int:
    minima, params = _full_minima(cfg, beta0=cfg.beta0)
    payload = {"minima": [_minimum_record(m) for m in minima],
               "count": len(minima)}
    status = "ok"
    exit_code = 0
    try:
        (pm, pp), tm = landscape.analytic_minima(params.energies.ratio,
                                                 cfg.f_alpha, cfg.n)
        payload["analytic"] = {"phi_p_down": pm, "phi_p_up": pp, "phit_m": tm}
    except NoDoubleWell as exc:
        payload["analytic"] = None
        if cfg.n % 2 == 0:
            status = "single-well"
        else:
            status = "no-double-well"
            payload["reason"] = str(exc)
            exit_code = 2
    payload["status"] = status
    write_json(_out(args, "minima.json"), payload, cfg)
    return exit_code


def cmd_landscape(cfg: RunConfig, args) -> int:
    pot = _reduced_potential(cfg)
    params = cfg.circuit_params()
    grad = lambda x: circuit.v_reduced_grad(params.energies.ratio, params.flux,
                                            params.winding, x[0], x[1],
                                            cfg.beta0)
    res = (cfg.grid_resolution, cfg.grid_resolution)
    scan = landscape.grid_scan(pot, resolution=res, grad=grad,
                               cut_points=cfg.cut_points)
    rows = [(float(x), float(y), float(scan.energy[i, j]))
            for i, x in enumerate(scan.phi_p_axis)
            for j, y in enumerate(scan.phit_m_axis)]
    write_csv(_out(args, "landscape.csv"),
              ("phi_p", "phitilde_m", "V_over_EJ"), rows, cfg)
    render_landscape(_out(args, "landscape.png"), scan.phi_p_axis,
                     scan.phit_m_axis, scan.energy, scan.minima)
    return 0


def cmd_cut(cfg: RunConfig, args) -> int:
    pot = _reduced_potential(cfg)
    cut = landscape.double_well_cut(pot, npoints=cfg.cut_points)
    rows = list(zip((float(v) for v in cut.phi_p),
                    (float(v) for v in cut.energy)))
    write_csv(_out(args, "cut.csv"), ("phi_p", "V_over_EJ"), rows, cfg)
    write_json(_out(args, "cut.json"),
               {"barrier_height": cut.barrier_height,
                "minima": [_minimum_record(m) for m in cut.minima]}, cfg)
    render_cut(_out(args, "cut.png"), cut.phi_p, cut.energy, cut.minima)
    return 0


def _gap_ghz(cfg: RunConfig, f_alpha: float = None) -> spectrum.GapResult:
    params = cfg.circuit_params()
    flux = params.flux if f_alpha is None else circuit.FluxBias(
        f1=cfg.f1, f2=cfg.f2, f_alpha=f_alpha)
    pot = lambda pp: circuit.v_reduced(params.energies.ratio, flux,
                                       params.winding, pp, 0.0)
    return spectrum.tunneling_gap_1d(pot, params.energies.E_C,
                                     params.energies.ratio,
                                     npoints=cfg.gap_points)


def cmd_gap(cfg: RunConfig, args) -> int:
    gap = _gap_ghz(cfg)
    ghz = gap.delta * cfg.ej_over_h_ghz
    sweep = []
    for fa in np.linspace(0.05, 0.3, 11):
        try:
            g = _gap_ghz(cfg, f_alpha=float(fa))
        except NoDoubleWell:
            continue
        sweep.append((float(fa), g.delta * cfg.ej_over_h_ghz))
    write_json(_out(args, "gap.json"),
               {"delta_over_EJ": gap.delta, "delta_GHz": ghz, "t_q": gap.t_q,
                "doublet_isolated": gap.doublet_isolated,
                "levels": [float(v) for v in gap.levels]}, cfg)
    write_csv(_out(args, "gap.csv"), ("f_alpha", "delta_GHz"), sweep, cfg)
    render_curves(_out(args, "gap.png"), [r[0] for r in sweep],
                  {"delta": [r[1] for r in sweep]},
                  r"$f_\alpha$", r"$\Delta/h$ (GHz)")
    return 0


def cmd_currents(cfg: RunConfig, args) -> int:
    minima, params = _full_minima(cfg)
    if len(minima) < 2:
        raise NoDoubleWell("currents need the double-well minima")
    consts = cfg.physical_constants()
    wells = {}
    for m in minima:
        c = observables.loop_currents(params, m, constants=consts)
        wells[m.label] = {
            "Ip1_reduced": c.Ip1, "Ip2_reduced": c.Ip2,
            "Ialpha_reduced": c.Ialpha,
            "Ip1_nA": c.Ip1_si * 1e9, "Ip2_nA": c.Ip2_si * 1e9,
            "Ialpha_nA": c.Ialpha_si * 1e9,
        }
    note = observables.loop_currents(params, minima[0]).sign_note
    write_json(_out(args, "currents.json"),
               {"wells": wells,
                "m_prime": circuit.optimal_mprime(
                    cfg.f1, cfg.f2, cfg.f_alpha,
                    params.inductances.lm_ratio),
                "sign_note": note}, cfg)
    return 0


def cmd_coupling(cfg: RunConfig, args) -> int:
    ratios = (1.5, 2.0, 2.5)
    fas = np.linspace(0.01, 0.45, 45)
    rows, omitted = observables.g_curve(ratios, fas)
    write_csv(_out(args, "coupling.csv"),
              ("ej_ratio", "f_alpha", "g_over_Phi0Ib"), rows, cfg)
    series = {}
    for ratio in ratios:
        ys = [g for (r, _, g) in rows if r == ratio]
        xs = [fa for (r, fa, _) in rows if r == ratio]
        series[f"ratio {ratio}"] = np.interp(fas, xs, ys,
                                             left=np.nan, right=np.nan)
    render_curves(_out(args, "coupling.png"), fas, series,
                  r"$f_\alpha$", r"$g/\Phi_0 I_b$")
    write_json(_out(args, "coupling.json"),
               {"g_at_reference": observables.coupling_strength(
                   cfg.ej_ratio, cfg.f_alpha),
                "rows": len(rows), "omitted": omitted}, cfg)
    return 0


def _populations(states: np.ndarray, fock_cutoff: int) -> np.ndarray:
    psi = states.reshape(len(states), 2, fock_cutoff)
    return np.sum(np.abs(psi[:, 1, :]) ** 2, axis=1)


def cmd_rabi(cfg: RunConfig, args) -> int:
    omega2 = cfg.omega2
    g = cfg.g_over_omega2 * omega2
    nf = cfg.fock_cutoff
    h_rwa = cqed.build_rwa_h(omega2, g, omega2, nf)
    h_full = cqed.build_qubit_resonator_h(omega2, g, omega2, nf)
    period = math.pi / g
    times = np.linspace(0.0, cfg.rabi_periods * period, 601)
    psi0 = np.zeros(2 * nf, dtype=complex)
    psi0[nf] = 1.0  # |excited qubit, vacuum>
    states_rwa = np.array([cqed.time_evolve(h_rwa, psi0, t) for t in times])
    states_full = np.array([cqed.time_evolve(h_full, psi0, t) for t in times])
    p_rwa = _populations(states_rwa, nf)
    p_full = _populations(states_full, nf)
    rows = [(float(t), float(a), float(b))
            for t, a, b in zip(times, p_rwa, p_full)]
    write_csv(_out(args, "rabi.csv"),
              ("t", "p_excited_rwa", "p_excited_full"), rows, cfg)
    render_curves(_out(args, "rabi.png"), times,
                  {"RWA": p_rwa, "full": p_full}, "t", "excited population")
    write_json(_out(args, "rabi.json"),
               {"vacuum_rabi_period": period, "g": g, "omega2": omega2,
                "max_rwa_full_mismatch": float(np.max(np.abs(p_rwa - p_full))),
                "top_fock_population": cqed.top_fock_population(
                    states_full[-1], nf)}, cfg)
    return 0


def cmd_twoqubit(cfg: RunConfig, args) -> int:
    params = cqed.TwoQubitParams(delta_l=cfg.tq_delta, delta_r=cfg.tq_delta,
                                 g_l=cfg.tq_g, g_r=cfg.tq_g,
                                 omega1=cfg.tq_omega1)
    nf = cfg.fock_cutoff
    h_eff = cqed.dispersive_two_qubit_h(params, nf)
    j = params.exchange
    period = math.pi / abs(j)
    times = np.linspace(0.0, 2.0 * period, 601)
    psi0 = np.zeros(4 * nf, dtype=complex)
    psi0[2 * nf] = 1.0  # |left excited, right ground, vacuum>
    states = np.array([cqed.time_evolve(h_eff, psi0, t) for t in times])
    psi = states.reshape(len(times), 2, 2, nf)
    p_left = np.sum(np.abs(psi[:, 1, :, :]) ** 2, axis=(1, 2))
    p_right = np.sum(np.abs(psi[:, :, 1, :]) ** 2, axis=(1, 2))
    rows = [(float(t), float(a), float(b))
            for t, a, b in zip(times, p_left, p_right)]
    write_csv(_out(args, "twoqubit.csv"), ("t", "p_left", "p_right"), rows, cfg)
    render_curves(_out(args, "twoqubit.png"), times,
                  {"left": p_left, "right": p_right}, "t", "population")
    write_json(_out(args, "twoqubit.json"),
               {"J": j, "swap_period": period,
                "exact_splitting": cqed.exchange_splitting_exact(params, nf),
                "dispersive_valid": params.dispersive_valid}, cfg)
    return 0


def _score(name, value, lo, hi) -> dict:
    ok = bool(lo <= value <= hi) and math.isfinite(value)
    return {"name": name, "value": value, "lo": lo, "hi": hi,
            "pass": ok}


def cmd_reproduce(cfg: RunConfig, args) -> int:
    entries = []
    minima, params = _full_minima(cfg)
    alpha_ref = spectrum.alpha_param(params.energies.ratio, cfg.f_alpha)
    if len(minima) == 2:
        up = minima[-1]
        entries.append(_score("phi_p_up", up.position[0],
                              alpha_ref - 0.04, alpha_ref + 0.04))
        entries.append(_score("phitilde_m", abs(up.position[3]), 0.0, 1e-3))
        phases = circuit.PhaseState.from_transformed(*up.position)
        u_ind, u_jj, _ = circuit.u_eff_terms(params, phases)
        entries.append(_score("U_JJ_over_EJ", u_jj, -2.886 - 0.02,
                              -2.886 + 0.02))
        entries.append(_score("U_ind_over_EJ", u_ind, 0.006 - 0.003,
                              0.006 + 0.003))
        cur_params = circuit.CircuitParams(
            inductances=params.inductances,
            flux=circuit.FluxBias(f1=0.94, f2=0.94, f_alpha=cfg.f_alpha),
            winding=params.winding, energies=params.energies)
        consts = cfg.physical_constants()
        c = observables.loop_currents(cur_params, up, constants=consts)
        entries.append(_score("Ip_reduced", abs(c.Ip1),
                              0.00123 * 0.97, 0.00123 * 1.03))
        entries.append(_score("Ialpha_reduced_mag", abs(c.Ialpha),
                              0.00022 * 0.95, 0.00022 * 1.05))
        entries.append(_score("Ip_nA", abs(c.Ip1_si) * 1e9,
                              170 * 0.97, 170 * 1.03))
        entries.append(_score("Ialpha_nA", abs(c.Ialpha_si) * 1e9,
                              30 * 0.97, 30 * 1.03))
    else:
        entries.append(_score("minima_count", float(len(minima)), 2.0, 2.0))
    entries.append(_score(
        "g_over_Phi0Ib",
        observables.coupling_strength(cfg.ej_ratio, cfg.f_alpha),
        0.288 - 0.015, 0.288 + 0.015))
    entries.append(_score(
        "m_prime", float(circuit.optimal_mprime(0.94, 0.94, cfg.f_alpha,
                                                0.4)), -2.0, -2.0))
    gap = _gap_ghz(cfg)
    entries.append(_score("Delta_GHz", gap.delta * cfg.ej_over_h_ghz,
                          0.3, 3.0))
    failed = [e["name"] for e in entries if not e["pass"]]
    payload = {"entries": entries, "failed": failed,
               "all_pass": not failed, "version": "1.0.0"}
    write_json(_out(args, "reproduce.json"), payload, cfg)
    return 1 if failed else 0


_COMMANDS = {
    "minima": cmd_minima,
    "landscape": cmd_landscape,
    "cut": cmd_cut,
    "gap": cmd_gap,
    "currents": cmd_currents,
    "coupling": cmd_coupling,
    "rabi": cmd_rabi,
    "twoqubit": cmd_twoqubit,
    "reproduce": cmd_reproduce,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gfq",
        description="Current-biased gradiometric flux qubit simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", default=None,
                        help="configuration file (overrides GFQ_CONFIG)")
        sp.add_argument("--outdir", default=".",
                        help="directory for output files")
        for field in sorted(_FIELDS):
            sp.add_argument(f"--{_to_key(field)}", dest=f"cfg_{field}",
                            default=None, metavar="V")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {name: getattr(args, f"cfg_{name}")
                 for name in _FIELDS
                 if getattr(args, f"cfg_{name}", None) is not None}
    try:
        cfg = load_config(args.config, overrides)
        return _COMMANDS[args.command](cfg, args)
    except (ConfigurationError, NoDoubleWell, WellsMerged,
            DispersiveInvalid, GfqError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
