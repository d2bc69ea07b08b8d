import json
import math
from pathlib import Path

from ris_subarray import coherence_factor, phase_slopes
from ris_subarray.cli import main

from helpers import REF_ANGLES, small_config

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"
DEFAULT = str(CONFIG_DIR / "default.json")
ORACLE_SMALL = str(CONFIG_DIR / "oracle_small.json")
HEADER = "scheme,var_name,var_value,se_mc,se_mc_stderr,se_ub,ee"


def write_small(tmp_path, **extra) -> str:
    raw = {
        "M": 4, "Nx": 4, "Ny": 4, "Lx": 2, "Ly": 2,
        "angles": {
            "theta_d1": REF_ANGLES.theta_d1,
            "theta_a1": REF_ANGLES.theta_a1,
            "phi_a1": REF_ANGLES.phi_a1,
            "theta_d2": REF_ANGLES.theta_d2,
            "phi_d2": REF_ANGLES.phi_d2,
        },
        "K1": 10.0, "K2": 10.0, "P": 10.0,
    }
    raw.update(extra)
    path = tmp_path / "small.json"
    path.write_text(json.dumps(raw))
    return str(path)


def test_validate_ok(capsys):
    assert main(["validate", "--config", DEFAULT]) == 0
    out = capsys.readouterr().out
    assert "config ok" in out
    assert "M=64" in out and "N=1024" in out and "Q=256" in out


def test_validate_override_reflected(capsys):
    assert main(["validate", "--config", DEFAULT, "--M", "8"]) == 0
    assert "M=8" in capsys.readouterr().out


def test_validate_bad_override(capsys):
    assert main(["validate", "--config", DEFAULT, "--Lx", "3"]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert "divide" in err


def test_missing_config_file(capsys):
    assert main(["validate", "--config", "/nonexistent/cfg.json"]) == 1
    assert "error:" in capsys.readouterr().err


def test_eta_matches_library(capsys):
    assert main(["eta", "--config", DEFAULT]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    values = {}
    for line in lines:
        key, _, text = line.partition(" = ")
        values[key.strip()] = float(text)
    cfg = small_config(M=64, Nx=32, Ny=32)
    p1, p2 = phase_slopes(cfg)
    eta = coherence_factor(cfg)
    assert values["p1"] == float(f"{p1:.12g}")
    assert values["p2"] == float(f"{p2:.12g}")
    assert math.isclose(values["eta"], eta, rel_tol=1e-10)
    assert math.isclose(values["-log2(eta)"], -math.log2(eta), rel_tol=1e-10)


def test_sweep_k_writes_csv(tmp_path, capsys):
    cfg_path = write_small(tmp_path)
    out_path = tmp_path / "k.csv"
    rc = main(["sweep-k", "--config", cfg_path, "--k-grid", "0,5",
               "--samples", "32", "--seed", "7", "--out", str(out_path)])
    assert rc == 0
    assert f"wrote 4 rows to {out_path}" in capsys.readouterr().out
    lines = out_path.read_text().strip().split("\n")
    assert lines[0] == HEADER
    assert len(lines) == 5
    assert lines[1].startswith("element,K,0,")


def test_sweep_k_stdout(tmp_path, capsys):
    cfg_path = write_small(tmp_path)
    rc = main(["sweep-k", "--config", cfg_path, "--k-grid", "1",
               "--samples", "16"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.startswith(HEADER)


def test_sweep_k_seed_determinism(tmp_path):
    cfg_path = write_small(tmp_path)
    paths = [tmp_path / name for name in ("a.csv", "b.csv", "c.csv")]
    for path, seed in zip(paths, ("3", "3", "4")):
        rc = main(["sweep-k", "--config", cfg_path, "--k-grid", "0,10",
                   "--samples", "24", "--seed", seed, "--out", str(path)])
        assert rc == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].read_bytes() != paths[2].read_bytes()


def test_sweep_q_quick(tmp_path, capsys):
    cfg_path = write_small(tmp_path)
    rc = main(["sweep-q", "--config", cfg_path, "--draws", "3",
               "--l0-grid", "1,2"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == HEADER
    schemes = {ln.split(",")[0] for ln in lines[1:]}
    assert schemes == {"element", "subarray"}
    for ln in lines[1:]:
        assert ln.split(",")[6] != ""  # EE column populated


def test_sweep_n_quick(tmp_path, capsys):
    cfg_path = write_small(tmp_path)
    rc = main(["sweep-n", "--config", cfg_path, "--n-grid", "4,16",
               "--l0-set", "2", "--draws", "3"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().split("\n")
    schemes = {ln.split(",")[0] for ln in lines[1:]}
    assert schemes == {"element", "subarray_L2"}


def test_sweep_n_rejects_non_square(tmp_path, capsys):
    cfg_path = write_small(tmp_path)
    rc = main(["sweep-n", "--config", cfg_path, "--n-grid", "8", "--draws", "2"])
    assert rc == 1
    assert "perfect square" in capsys.readouterr().err


def test_oracle_agrees(capsys):
    rc = main(["oracle", "--config", ORACLE_SMALL, "--levels", "8"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "closed form is optimal on this grid" in out
    assert "closed_form_gain" in out and "grid_search_gain" in out
