import csv
import io
import json
import subprocess
import sys

import pytest

from cylrad.cli import HEADERS, RunConfig, build_parser, config_from_args, main
from cylrad.errors import ConfigError


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_spectrum_csv(capsys):
    code, out, _ = _run(["spectrum", "--material", "sic", "--radius", "1e-8",
                         "--temperature", "300", "--omega", "0.09:0.13:5"], capsys)
    assert code == 0
    rows = _rows(out)
    assert rows[0] == ["omega_ev", "lambda_um", "h_n", "h_m", "h_total", "i_omega"]
    assert len(rows) == 6
    assert float(rows[1][0]) == 0.09
    # shortest round-trip representation
    assert all(repr(float(v)) == v for v in rows[2])


def test_wavelength_grid_and_output_file(tmp_path, capsys):
    path = tmp_path / "s.csv"
    code, out, _ = _run(["spectrum", "--material", "tungsten-298", "--radius", "5e-6",
                         "--temperature", "298", "--wavelengths", "5:30:12",
                         "--output", str(path)], capsys)
    assert code == 0 and out == ""
    rows = _rows(path.read_text())
    lam = [float(r[1]) for r in rows[1:]]
    assert len(lam) == 12
    assert abs(min(lam) - 5) < 1e-9 and abs(max(lam) - 30) < 1e-9
    i = [float(r[5]) for r in rows[1:]]
    flips = sum((a < 0) != (b < 0) for a, b in zip(i, i[1:]))
    assert flips == 1


def test_sweep_and_total_share_schema(capsys):
    code, out, _ = _run(["sweep-radius", "--material", "gold-drude", "--temperature", "300",
                         "--radius-sweep", "1e-7:1e-6:3"], capsys)
    assert code == 0
    rows = _rows(out)
    assert rows[0] == HEADERS["sweep-radius"]
    assert len(rows) == 4
    code, out2, _ = _run(["total", "--material", "gold-drude", "--temperature", "300",
                          "--radius", repr(float(rows[2][0]))], capsys)
    assert _rows(out2)[1] == rows[2]


def test_plate_csv(capsys):
    code, out, _ = _run(["plate", "--material", "sic", "--temperature", "300",
                         "--tolerance", "1e-4"], capsys)
    assert code == 0
    rows = _rows(out)
    assert rows[0] == ["s_m", "s_n", "s_total", "i_plate"]
    s_m, s_n, s, i = map(float, rows[1])
    assert abs(s_m + s_n - s) < 1e-12 * s


@pytest.mark.parametrize("argv", [
    ["total", "--material", "sic", "--radius", "0", "--temperature", "300"],
    ["total", "--material", "sic", "--radius", "-1e-6", "--temperature", "300"],
    ["total", "--material", "sic", "--radius", "1e-6", "--temperature", "-3"],
    ["total", "--material", "nope", "--radius", "1e-6", "--temperature", "300"],
    ["sweep-radius", "--material", "sic", "--temperature", "300", "--radius-sweep", "1e-6:1e-7:4"],
    ["sweep-radius", "--material", "sic", "--temperature", "300", "--radius-sweep", "1e-7:1e-6:1"],
    ["sweep-radius", "--material", "sic", "--temperature", "300", "--radius-sweep", "1e-7:1e-6"],
    ["total", "--radius", "1e-6", "--temperature", "300"],
    ["bogus"],
])
def test_config_errors_exit_2(argv, capsys):
    code, out, _ = _run(argv, capsys)
    assert code == 2
    assert out == ""


def test_window_violation_exit_4(capsys):
    code, out, err = _run(["plate", "--material", "graphite-uniaxial", "--temperature", "300"], capsys)
    assert code == 4
    assert "extrapolation" in err


def test_nonconvergence_exit_3(tmp_path, capsys):
    # a kink in the tabulated data cannot be resolved to 1e-15 within the round budget
    data = tmp_path / "kink.txt"
    data.write_text("0.0001 3 0.5\n0.05 5 2\n2.0 3 0.5\n")
    code, _, err = _run(["total", "--data-file", str(data), "--radius", "1e-9",
                         "--temperature", "300", "--tolerance", "1e-15"], capsys)
    assert code == 3
    assert "achieved" in err


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"material": "sic", "radius": 1e-7, "temperature": 300,
                               "omega": "0.1:0.12:3"}))
    code, out, _ = _run(["spectrum", "--config", str(cfg)], capsys)
    assert code == 0 and len(_rows(out)) == 4
    code, out, _ = _run(["spectrum", "--config", str(cfg), "--omega", "0.1:0.12:4"], capsys)
    assert code == 0 and len(_rows(out)) == 5
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": "red"}))
    code, _, _ = _run(["spectrum", "--config", str(bad)], capsys)
    assert code == 2


def test_tabulated_data_file(tmp_path, capsys):
    data = tmp_path / "eps.txt"
    data.write_text("# energy re im\n0.001 3 0.5\n1.0 3 0.5\n")
    code, out, _ = _run(["spectrum", "--data-file", str(data), "--radius", "1e-8",
                         "--temperature", "300", "--omega", "0.01:0.1:3"], capsys)
    assert code == 0
    code, _, _ = _run(["total", "--material", str(data), "--radius", "1e-8",
                       "--temperature", "300"], capsys)
    assert code == 4  # thermal band leaves the table


def test_selfcheck_pass_and_fault_injection(capsys):
    code, out, _ = _run(["selfcheck"], capsys)
    assert code == 0
    names = [line.split()[1] for line in out.splitlines() if line.startswith(("PASS", "FAIL"))]
    assert names == ["oracle-equivalence", "wronskian", "dual-formula", "isotropic-reduction"]
    code2, out2, _ = _run(["selfcheck"], capsys)
    assert out2 == out
    code, out, _ = _run(["selfcheck", "--debug-eps-offset", "1e-6"], capsys)
    assert code == 1
    assert "FAIL oracle-equivalence" in out


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig("total", material="sic", radius=1e-6, temperature=0.0).validate()
    RunConfig("total", material="sic", radius=1e-6, temperature=0.0, env_temperature=300.0).validate()
    args = build_parser().parse_args(["total", "--material", "sic", "--radius", "1e-6",
                                      "--temperature", "300"])
    cfg = config_from_args(args)
    assert cfg.env_temperature == 0.0 and cfg.radius == 1e-6


def test_worker_count_does_not_change_output(tmp_path):
    argv = ["spectrum", "--material", "gold-drude", "--radius", "2e-6", "--temperature", "300",
            "--omega", "0.01:0.3:9"]
    outs = []
    for w in ("1", "2"):
        res = subprocess.run([sys.executable, "-m", "cylrad", *argv, "--workers", w],
                             capture_output=True, text=True, check=True)
        outs.append(res.stdout)
    assert outs[0] == outs[1]
