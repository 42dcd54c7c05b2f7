import os
import subprocess

import pytest

BIN = os.environ.get("NSCONV_SWEEP_BIN")

pytestmark = pytest.mark.skipif(BIN is None, reason="NSCONV_SWEEP_BIN not set")


def run(*args, **kw):
    return subprocess.run([BIN, *args], capture_output=True, text=True, **kw)


def test_point_row(tmp_path):
    r = run("point", "--n", "1", "--F", "1", "--mu", "3.2", "--nu", "0.3",
            "--N", "32", "--steps", "20")
    assert r.returncode == 0, r.stderr
    lines = r.stdout.strip().splitlines()
    assert lines[0].startswith("n,k,F,mu,nu,mu_border,")
    fields = lines[1].split(",")
    assert len(fields) == 11
    assert fields[0] == "1"
    assert float(fields[9]) >= 0  # ratio


def test_borders_files(tmp_path):
    out = tmp_path / "curves"
    r = run("borders", "--out", str(out))
    assert r.returncode == 0, r.stderr
    files = sorted(p.name for p in out.iterdir())
    assert len(files) == 6
    assert "border_0.01.csv" in files and "border_1.5.csv" in files
    head = (out / "border_0.01.csv").read_text().splitlines()
    assert head[0] == "F,mu_border"
    assert head[1].startswith("0.2,")


def test_run_and_rerun_identical(tmp_path):
    cfg = tmp_path / "tiny.cfg"
    cfg.write_text(
        "resolution = 32\n"
        "steps = 20\n"
        "modes = 1\n"
        "exponents = 0\n"
        "viscosities = 0.3,1.0\n"
        "margin = 1.05\n"
        "profile_radii = 0,1\n"
        "profile_angles = 5\n"
    )
    out = tmp_path / "a"
    r1 = run("run", "--config", str(cfg), "--out", str(out))
    assert r1.returncode == 0, r1.stderr
    first = {p.name: p.read_bytes() for p in out.iterdir()}
    r2 = run("run", "--config", str(cfg), "--out", str(out))
    assert r2.returncode == 0, r2.stderr
    second = {p.name: p.read_bytes() for p in out.iterdir()}
    assert "records.csv" in first and "manifest.txt" in first
    assert first == second


def test_config_error_exit_code(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("no_such_key = 1\n")
    r = run("run", "--config", str(cfg), "--out", str(tmp_path / "o"))
    assert r.returncode == 1
    assert "unknown key" in r.stderr


def test_missing_out_is_config_error():
    r = run("run")
    assert r.returncode == 1


def test_plot_from_borders(tmp_path):
    out = tmp_path / "curves"
    assert run("borders", "--out", str(out)).returncode == 0
    r = run("plot", "--in", str(out))
    assert r.returncode == 0, r.stderr
    assert (out / "borders.svg").exists()
