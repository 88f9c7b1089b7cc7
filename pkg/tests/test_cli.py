import csv

import numpy as np
import pytest

from qemhj.cli import format_value, main
from qemhj.swanson import SwansonParams, case_ii_eta

MORSE = """
[run]
case = morse
n_max = 2
[params]
A = 3
B = 1
alpha = 0
beta = -1
"""

PT = """
[run]
case = pt
n_max = 1
[params]
V1 = -9
V2 = 0
alpha = 1
beta = -12
"""

SW2 = """
[run]
case = swanson_ii
n_max = 2
[params]
omega = 2
alpha_s = 0.9
beta_s = 0.1
gamma_s = -1.2
delta_s = -0.8
"""


def _cfg(tmp_path, text, name="run.ini"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def _read(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def _run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_format_value():
    assert format_value(3) == "3"
    assert format_value(-0.0) == "0"
    assert format_value(0.1) == "0.10000000000000001"
    assert format_value(float("inf")) == "inf"
    assert format_value("+-") == "+-"


def test_spectrum_morse(tmp_path, capsys):
    code, out, err = _run(capsys, "spectrum", "--config", _cfg(tmp_path, MORSE), "--out", str(tmp_path / "o"))
    assert code == 0 and err == ""
    head, rows = _read(tmp_path / "o" / "spectrum.csv")
    assert head == ["n", "energy", "quantized_parameter", "residue_plus", "residue_minus", "branch_used"]
    assert [r[2] for r in rows] == ["8", "3", "0"]
    assert {r[1] for r in rows} == {"-1"}
    assert out.strip().endswith("spectrum.csv")


def test_spectrum_is_byte_deterministic(tmp_path, capsys):
    cfg = _cfg(tmp_path, SW2)
    blobs = []
    for k in range(2):
        assert _run(capsys, "spectrum", "--config", cfg, "--out", str(tmp_path / f"o{k}"))[0] == 0
        blobs.append((tmp_path / f"o{k}" / "spectrum.csv").read_bytes())
    assert blobs[0] == blobs[1] and b"\r" not in blobs[0]


def test_verify_morse_passes_and_counts(tmp_path, capsys):
    code, _, err = _run(capsys, "verify", "--config", _cfg(tmp_path, MORSE), "--out", str(tmp_path))
    assert code == 0, err
    head, rows = _read(tmp_path / "verify.csv")
    assert head[-2:] == ["node_count", "action_J"]
    for r in rows:
        d = dict(zip(head, r))
        assert float(d["abs_diff"]) <= 1e-3 and float(d["max_residual"]) <= 1e-6
        assert d["node_count"] == d["action_J"] == d["n"]


def test_energy_shift_fails_verification(tmp_path, capsys):
    cfg = _cfg(tmp_path, MORSE + "[verify]\nenergy_shift = 0.1\n")
    code, _, err = _run(capsys, "verify", "--config", cfg, "--out", str(tmp_path))
    assert code == 4
    assert err.startswith("error: verification tolerance exceeded") and err.count("\n") == 1
    assert (tmp_path / "verify.csv").exists()


def test_pt_simple_pole_violation(tmp_path, capsys):
    cfg = _cfg(tmp_path, PT + "epsilon = 0.5\n")
    code, _, err = _run(capsys, "spectrum", "--config", cfg, "--out", str(tmp_path))
    assert code == 3 and "simple-pole constraint V2=epsilon violated" in err


def test_pt_bound_states_verify(tmp_path, capsys):
    code, _, err = _run(capsys, "verify", "--config", _cfg(tmp_path, PT), "--out", str(tmp_path))
    assert code == 0, err
    _, rows = _read(tmp_path / "verify.csv")
    assert [r[-1] for r in rows] == ["0", "1"]


def test_config_errors_exit_2(tmp_path, capsys):
    code, _, err = _run(capsys, "spectrum", "--config", str(tmp_path / "none.ini"))
    assert code == 2 and err.startswith("error: cannot read config")
    code, _, err = _run(capsys, "spectrum", "--config", _cfg(tmp_path, MORSE.replace("B = 1\n", "")))
    assert code == 2 and "needs [params] B" in err
    code, _, _ = _run(capsys, "spectrum")
    assert code == 2
    code, _, _ = _run(capsys, "spectrum", "--config", _cfg(tmp_path, MORSE), "--case", "nope")
    assert code == 2
    code, _, err = _run(capsys, "spectrum", "--config", _cfg(tmp_path, SW2.replace("omega = 2", "omega = -2")),
                        "--out", str(tmp_path))
    assert code == 2 and err.startswith("error: invalid parameters")


def test_unbound_swanson_exits_3(tmp_path, capsys):
    text = SW2.replace("alpha_s = 0.9", "alpha_s = 0.3").replace("gamma_s = -1.2", "gamma_s = 0.2") \
        .replace("delta_s = -0.8", "delta_s = 0.1")
    code, _, err = _run(capsys, "spectrum", "--config", _cfg(tmp_path, text), "--out", str(tmp_path))
    assert code == 3 and err.startswith("error:")


def test_swanson_i_verify_refused(tmp_path, capsys):
    text = "[run]\ncase = swanson_i\nn_min = 2\nn_max = 2\n[params]\nalpha_s = 0.3\nbeta_s = 0.1\n"
    cfg = _cfg(tmp_path, text)
    assert _run(capsys, "spectrum", "--config", cfg, "--out", str(tmp_path))[0] == 0
    _, rows = _read(tmp_path / "spectrum.csv")
    assert float(rows[0][2]) == pytest.approx(0.435966, abs=1e-6)
    assert _run(capsys, "verify", "--config", cfg, "--out", str(tmp_path))[0] == 3


def test_grid_and_level_shape(tmp_path, capsys):
    cfg = _cfg(tmp_path, MORSE.replace("n_max = 2", "n_max = 0") + "[grid]\nn_points = 5\n")
    assert _run(capsys, "spectrum", "--config", cfg, "--out", str(tmp_path))[0] == 0
    assert len(_read(tmp_path / "spectrum.csv")[1]) == 1
    assert _run(capsys, "wavefunction", "--config", cfg, "--out", str(tmp_path))[0] == 0
    head, rows = _read(tmp_path / "wavefunction_n0.csv")
    assert head == ["x", "re_phi", "im_phi", "re_p", "im_p"] and len(rows) == 5


def test_morse_ground_state_single_signed(tmp_path, capsys):
    cfg = _cfg(tmp_path, MORSE)
    assert _run(capsys, "wavefunction", "--config", cfg, "--out", str(tmp_path), "--n", "0")[0] == 0
    _, rows = _read(tmp_path / "wavefunction_n0.csv")
    phi = np.array([float(r[1]) for r in rows])
    assert np.all(phi >= 0) and phi.max() > 0
    assert np.all(np.array([float(r[2]) for r in rows]) == 0)
    assert not (tmp_path / "wavefunction_n1.csv").exists()


def test_wavefunction_rejects_negative_level(tmp_path, capsys):
    code, _, err = _run(capsys, "wavefunction", "--config", _cfg(tmp_path, MORSE), "--out", str(tmp_path), "--n", "-1")
    assert code == 2 and "--n" in err


def test_swanson_ii_eta_column(tmp_path, capsys):
    cfg = _cfg(tmp_path, SW2 + "[grid]\nx_lo = -4\nx_hi = 8\nn_points = 401\n")
    assert _run(capsys, "wavefunction", "--config", cfg, "--out", str(tmp_path), "--n", "1")[0] == 0
    head, rows = _read(tmp_path / "wavefunction_n1.csv")
    assert head[-1] == "eta"
    x = np.array([float(r[0]) for r in rows])
    eta = np.array([float(r[-1]) for r in rows])
    ref = case_ii_eta(SwansonParams.exponential(2, 0.9, 0.1, -1.2, -0.8), x)
    ratio = eta / ref
    assert np.max(np.abs(ratio / ratio[200] - 1)) <= 1e-6


def test_figures(tmp_path, capsys):
    cfg = _cfg(tmp_path, MORSE.replace("n_max = 2", "n_max = 1"))
    for cmd in ("spectrum", "verify", "wavefunction"):
        assert _run(capsys, cmd, "--config", cfg, "--out", str(tmp_path), "--figures")[0] == 0
    for name in ("spectrum.png", "verify.png", "wavefunction_n0.png", "wavefunction_n1.png"):
        assert (tmp_path / name).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


@pytest.mark.parametrize("potential, energies", [("box", ["1", "4", "9"]), ("harmonic", ["1", "3", "5"])])
def test_custom_potentials(tmp_path, capsys, potential, energies):
    text = f"[run]\ncase = custom\nn_max = 2\n[params]\npotential = {potential}\n[grid]\nn_points = 4001\n"
    cfg = _cfg(tmp_path, text)
    assert _run(capsys, "spectrum", "--config", cfg, "--out", str(tmp_path))[0] == 0
    _, rows = _read(tmp_path / "spectrum.csv")
    assert [float(r[1]) for r in rows] == pytest.approx([float(e) for e in energies], rel=1e-14)
    code, _, err = _run(capsys, "verify", "--config", cfg, "--out", str(tmp_path))
    assert code == 0, err
