import json
import subprocess
import sys

import numpy as np
import pytest

from multiwav.cli import main
from multiwav.filters import build_haar_schauder_bank, pr_defect
from multiwav.io import read_signal_csv, write_signal_csv


@pytest.fixture
def random_csv(tmp_path):
    rng = np.random.default_rng(21)
    t = np.linspace(0, 3, 64)
    return write_signal_csv(tmp_path / "r.csv", t, rng.standard_normal((2, 64)))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_naqe_of_identical_files_is_zero(capsys, random_csv):
    code, out, _ = run(capsys, "naqe", "--a", random_csv, "--b", random_csv)
    assert code == 0 and float(out) == 0.0


def test_decompose_reconstruct_round_trip(capsys, tmp_path, random_csv):
    pyr = tmp_path / "p.json"
    code, out, _ = run(capsys, "decompose", "--input", random_csv, "--levels", 2, "--out", pyr)
    assert code == 0
    reported = float(out.split()[-1])
    rec = tmp_path / "rec.csv"
    code, out, _ = run(capsys, "reconstruct", "--pyramid", pyr, "--reference", random_csv, "--out", rec)
    assert code == 0
    assert float(out.split()[-1]) == reported
    assert reported <= 10 * pr_defect(build_haar_schauder_bank(), 64)
    assert read_signal_csv(rec).n == 64
    code, _, _ = run(capsys, "reconstruct", "--pyramid", pyr, "--grid", 17, "--out", rec)
    assert code == 0 and read_signal_csv(rec).n == 17


def test_decompose_output_is_byte_identical(capsys, tmp_path, random_csv):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "decompose", "--input", random_csv, "--levels", 3, "--out", a)
    run(capsys, "decompose", "--input", random_csv, "--levels", 3, "--out", b)
    assert a.read_bytes() == b.read_bytes()


def test_filters_show(capsys):
    code, out, _ = run(capsys, "filters", "show", "--bank", "haar-schauder")
    doc = json.loads(out)
    assert code == 0 and list(doc) == ["H", "G"] and "-1" in doc["H"]
    code, out, _ = run(capsys, "filters", "show", "--bank", "haar-schauder-printed")
    assert json.loads(out)["H"]["1"][0][0] == 0.0


def test_basis_eval(capsys, tmp_path):
    pts = tmp_path / "pts.csv"
    pts.write_text("x\n0.1\n0.3\n0.75\n")
    code, out, _ = run(capsys, "basis", "eval", "--function", "haar-psi", "--level", 1, "--shift", 0,
                       "--points", pts)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x,value"
    assert [float(l.split(",")[1]) for l in lines[1:]] == pytest.approx([np.sqrt(2), -np.sqrt(2), 0.0])


def test_fourier_demo(capsys, tmp_path):
    ov = tmp_path / "overlay.csv"
    code, out, _ = run(capsys, "fourier-demo", "--n", 50, "--j", 1, "--out", ov)
    assert code == 0 and "multiwavelet-filters" in out
    assert open(ov).readline().strip() == "t,F,A_J,F_J"
    code, _, _ = run(capsys, "fourier-demo", "--n", 2, "--j", 1)
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["fourier-demo", "--n", "50", "--j", "0"],
    ["fourier-demo", "--n", "1"],
    ["bench", "--reps", "1"],
    ["bench", "--methods", "nope"],
    ["decompose"],
    ["frobnicate"],
    ["filters", "show", "--bank", "db2"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_input_errors_exit_3(capsys, tmp_path):
    one = tmp_path / "one.csv"
    one.write_text("t,ch0\n0,1\n")
    code, _, err = run(capsys, "ecg", "--input", one)
    assert code == 3 and "at least 2" in err
    bad = tmp_path / "bad.csv"
    bad.write_text("t,ch0\n0,1\n1,x\n")
    code, _, err = run(capsys, "naqe", "--a", bad, "--b", bad)
    assert code == 3 and ":3:" in err
    prot = tmp_path / "p.txt"
    prot.write_text("MXZ")
    assert run(capsys, "protein", "tmh", "--in", prot)[0] == 3
    assert run(capsys, "reconstruct", "--pyramid", tmp_path / "none.json", "--out", tmp_path / "o.csv")[0] == 3


def test_numeric_error_exit_4(capsys, tmp_path):
    z = write_signal_csv(tmp_path / "z.csv", np.linspace(0, 1, 5), np.zeros(5))
    code, _, err = run(capsys, "naqe", "--a", z, "--b", z)
    assert code == 4 and "zero" in err


def test_no_output_file_on_failure(capsys, tmp_path):
    out = tmp_path / "seg.json"
    prot = tmp_path / "p.txt"
    prot.write_text("MPIB")
    run(capsys, "protein", "tmh", "--in", prot, "--out", out)
    assert not out.exists()
    assert list(tmp_path.iterdir()) == [prot]


def test_ecg_table(capsys, tmp_path):
    out = tmp_path / "ecg.json"
    code, _, _ = run(capsys, "ecg", "--jmax", 2, "--out", out, "--recon-dir", tmp_path / "rec")
    doc = json.loads(out.read_text())
    assert code == 0 and doc["levels"] == [1, 2]
    assert list(doc["naqe"]) == ["haar", "schauder", "multiwavelet-filters"]
    assert len(list((tmp_path / "rec").iterdir())) == 6


def test_ecg_two_channels_average(capsys, tmp_path):
    t = np.linspace(0, 4, 200)
    chans = np.vstack([np.sin(3 * t), np.cos(t) + 0.5])
    two = write_signal_csv(tmp_path / "two.csv", t, chans)
    singles = [write_signal_csv(tmp_path / f"c{i}.csv", t, chans[i]) for i in range(2)]
    tables = []
    for path in (two, *singles):
        out = tmp_path / (path.stem + ".json")
        assert run(capsys, "ecg", "--input", path, "--jmax", 2, "--out", out)[0] == 0
        tables.append(json.loads(out.read_text())["naqe"])
    for m in tables[0]:
        for j in ("1", "2"):
            assert tables[0][m][j] == pytest.approx(0.5 * (tables[1][m][j] + tables[2][m][j]), rel=1e-12)


def test_protein_commands(capsys, tmp_path):
    prof = tmp_path / "profile.csv"
    assert run(capsys, "protein", "hydropathy", "--window", 19, "--out", prof)[0] == 0
    lines = prof.read_text().splitlines()
    assert lines[0] == "position,residue,hydropathy" and len(lines) == 1 + 1256 - 18
    seg = tmp_path / "seg.json"
    assert run(capsys, "protein", "tmh", "--out", seg)[0] == 0
    doc = json.loads(seg.read_text())
    assert doc["length"] == 1256 and doc["parameters"]["window"] == 19
    assert all(s["start"] <= s["end"] for s in doc["segments"])


def test_bench_json(capsys, tmp_path):
    out = tmp_path / "b.json"
    code, _, _ = run(capsys, "bench", "--sin", 64, "--levels", 2, "--reps", 3, "--out", out)
    doc = json.loads(out.read_text())
    assert code == 0 and [r["method"] for r in doc["results"]] == ["multiwavelet-filters", "schauder-wavelet"]
    assert sorted(r["rank"] for r in doc["results"]) == [1, 2]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "multiwav.cli", "filters", "show"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and '"H"' in proc.stdout
