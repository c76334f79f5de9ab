import hashlib
import json
import os

import pytest

from gfqsim.cli import main
from gfqsim.config import (RunConfig, canonical_echo, load_config,
                           parse_config_text)
from gfqsim.errors import ConfigurationError


def run(tmp_path, *argv):
    return main(list(argv) + ["--outdir", str(tmp_path)])


def read_json(tmp_path, name):
    with open(os.path.join(str(tmp_path), name)) as fh:
        return json.load(fh)


def sha(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


class TestConfig:
    def test_defaults_round_trip(self):
        cfg = RunConfig()
        echoed = parse_config_text(canonical_echo(cfg))
        assert RunConfig(**echoed) == cfg

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigurationError):
            parse_config_text("[run]\nbogus-key = 1\n")

    def test_file_and_override(self, tmp_path):
        p = tmp_path / "run.cfg"
        p.write_text("[flux]\nf-alpha = 0.15\nf1 = 0.2\n")
        cfg = load_config(str(p), overrides={"f-alpha": "0.25"})
        assert cfg.f_alpha == 0.25 and cfg.f1 == 0.2

    def test_env_var(self, tmp_path, monkeypatch):
        p = tmp_path / "env.cfg"
        p.write_text("[energies]\nej-ratio = 1.5\n")
        monkeypatch.setenv("GFQ_CONFIG", str(p))
        assert load_config().ej_ratio == 1.5

    def test_bad_value(self):
        with pytest.raises(ConfigurationError):
            load_config(overrides={"n": "one"})

    def test_bad_format(self):
        with pytest.raises(ConfigurationError):
            load_config(overrides={"format": "xml"})


class TestMinimaCommand:
    def test_default_two_minima(self, tmp_path):
        assert run(tmp_path, "minima") == 0
        d = read_json(tmp_path, "minima.json")
        assert d["count"] == 2 and d["status"] == "ok"
        spread = d["minima"][1]["phi_p"] - d["minima"][0]["phi_p"]
        assert abs(spread - 3.61822) <= 2e-2
        assert "config" in d

    def test_no_double_well_exit_2(self, tmp_path):
        assert run(tmp_path, "minima", "--f-alpha", "0.0",
                   "--ej-ratio", "4.0") == 2
        d = read_json(tmp_path, "minima.json")
        assert d["status"] == "no-double-well"

    def test_even_winding_single_minimum(self, tmp_path):
        assert run(tmp_path, "minima", "--n", "0") == 0
        d = read_json(tmp_path, "minima.json")
        assert d["count"] == 1 and d["status"] == "single-well"


class TestLandscapeAndCut:
    def test_landscape_outputs(self, tmp_path):
        assert run(tmp_path, "landscape", "--grid-resolution", "65") == 0
        csv = (tmp_path / "landscape.csv").read_text()
        lines = [ln for ln in csv.splitlines() if not ln.startswith("#")]
        assert lines[0] == "phi_p,phitilde_m,V_over_EJ"
        assert len(lines) == 1 + 65 * 65
        values = [float(ln.split(",")[2]) for ln in lines[1:]]
        assert abs(min(values) - (-2.854)) <= 2e-3
        assert (tmp_path / "landscape.png").stat().st_size > 0

    def test_cut_outputs_and_determinism(self, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        assert run(a, "cut") == 0
        assert run(b, "cut") == 0
        assert sha(a / "cut.csv") == sha(b / "cut.csv")
        barrier = json.load(open(a / "cut.json"))["barrier_height"]
        assert abs(barrier - 0.472136) <= 1e-4

    def test_tilted_cut_sign(self, tmp_path):
        assert run(tmp_path, "cut", "--beta0", "0.02") == 0
        csv = (tmp_path / "cut.csv").read_text()
        rows = [ln.split(",") for ln in csv.splitlines()
                if not ln.startswith("#")][1:]
        first, last = float(rows[0][1]), float(rows[-1][1])
        assert last - first > 0  # positive beta0 raises the phi_p > 0 side


class TestOtherCommands:
    def test_gap(self, tmp_path):
        assert run(tmp_path, "gap") == 0
        d = read_json(tmp_path, "gap.json")
        assert 0.3 <= d["delta_GHz"] <= 3.0
        assert d["doublet_isolated"] is True

    def test_currents(self, tmp_path):
        assert run(tmp_path, "currents", "--f1", "0.94",
                   "--f2", "0.94") == 0
        d = read_json(tmp_path, "currents.json")
        assert d["m_prime"] == -2
        up = d["wells"]["up"]
        assert abs(abs(up["Ip1_reduced"]) - 0.00123) <= 0.03 * 0.00123

    def test_coupling(self, tmp_path):
        assert run(tmp_path, "coupling") == 0
        d = read_json(tmp_path, "coupling.json")
        assert abs(d["g_at_reference"] - 0.2879) <= 1e-3
        assert (tmp_path / "coupling.csv").exists()
        assert (tmp_path / "coupling.png").stat().st_size > 0

    def test_rabi(self, tmp_path):
        assert run(tmp_path, "rabi") == 0
        d = read_json(tmp_path, "rabi.json")
        assert d["max_rwa_full_mismatch"] <= 0.05
        assert d["top_fock_population"] <= 1e-6

    def test_twoqubit(self, tmp_path):
        assert run(tmp_path, "twoqubit") == 0
        d = read_json(tmp_path, "twoqubit.json")
        assert d["dispersive_valid"] is True
        assert abs(d["exact_splitting"] - 2 * abs(d["J"])) <= \
            0.01 * 2 * abs(d["J"])

    def test_twoqubit_invalid_exit_2(self, tmp_path):
        assert run(tmp_path, "twoqubit", "--tq-delta", "1.01") == 2


class TestReproduce:
    def test_scorecard_passes(self, tmp_path):
        assert run(tmp_path, "reproduce") == 0
        d = read_json(tmp_path, "reproduce.json")
        assert d["all_pass"] is True and d["failed"] == []
        names = {e["name"] for e in d["entries"]}
        assert {"U_JJ_over_EJ", "U_ind_over_EJ", "Ip_reduced",
                "Ialpha_reduced_mag", "Ip_nA", "Ialpha_nA", "g_over_Phi0Ib",
                "m_prime", "Delta_GHz"} <= names

    def test_byte_identical(self, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        assert run(a, "reproduce") == 0
        assert run(b, "reproduce") == 0
        assert sha(a / "reproduce.json") == sha(b / "reproduce.json")

    def test_failing_entry_exit_1(self, tmp_path):
        # an absurd coupling setpoint pushes g out of its scorecard band
        assert run(tmp_path, "reproduce", "--ej-ratio", "3.0") == 1
        d = read_json(tmp_path, "reproduce.json")
        assert d["failed"]
