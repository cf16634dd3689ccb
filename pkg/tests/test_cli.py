import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from aftkit.cli import SCHEMA, parse_records, parse_trigpoly, run


@pytest.fixture(autouse=True)
def small_sieve(monkeypatch):
    monkeypatch.setenv("AFT_SIEVE_LIMIT", "200000")


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return parse_records(text)


class TestExamples:
    def test_fourier_cos(self, capsys):
        code, out, _ = invoke(capsys, "fourier", "--signal", "catalog:cos", "--n", "1", "--K", "20")
        assert code == 0
        (rec,) = records(out)
        assert rec["value"] == pytest.approx(1.0, abs=1e-12)
        assert rec["abs_error"] < 1e-12
        assert set(["n", "value", "K_used", "bound", "additions", "multiplications", "oracle_value", "abs_error"]) <= set(rec)

    def test_mobius_query(self, capsys):
        code, out, _ = invoke(capsys, "mobius", "--limit", "30", "--query", "30")
        assert code == 0
        assert records(out)[0]["value"] == -1

    def test_davenport_checkpoints(self, capsys):
        code, out, _ = invoke(capsys, "davenport", "--theta", "0.25", "--checkpoints", "3,4,5")
        assert code == 0
        rows = records(out)
        assert [r["K_used"] for r in rows] == [10**3, 10**4, 10**5]
        dev = [abs(r["value"] + 1 / math.pi) for r in rows]
        assert dev[0] > dev[1] > dev[2]


class TestCommands:
    def test_taylor(self, capsys):
        code, out, _ = invoke(capsys, "taylor", "--signal", "geom_disk:0.5", "--n", "1,2,3", "--K", "40")
        assert code == 0
        for rec in records(out):
            assert abs(rec["value"] - 0.5 ** rec["n"]) < 1e-8

    def test_taylor_radius(self, capsys):
        code, out, _ = invoke(capsys, "taylor", "--signal", "expm1", "--n", "3", "--K", "30", "--radius", "0.7")
        assert code == 0
        assert abs(records(out)[0]["value"] - 1 / 6) < 1e-8

    def test_ztrans(self, capsys):
        code, out, _ = invoke(capsys, "ztrans", "--signal", "geom_disk:0.4", "--n", "1,2", "--K", "40")
        assert code == 0
        for rec in records(out):
            assert abs(rec["value"] - 0.4 ** rec["n"]) < 1e-9

    def test_step(self, capsys):
        code, out, _ = invoke(capsys, "step", "--signal", "step:1.0", "--n", "1,2", "--K", "1000")
        assert code == 0
        for rec in records(out):
            assert rec["oracle_value"] == pytest.approx(2 / (rec["n"] * math.pi) * math.sin(rec["n"]))
            assert rec["abs_error"] < 0.01

    def test_muregular(self, capsys, tmp_path):
        spec = tmp_path / "mr.json"
        spec.write_text(json.dumps({"mu_param": 1.0, "coeffs": [0, [0.3, 0.1], 0.2]}))
        code, out, _ = invoke(capsys, "muregular", "--signal", f"muregular:{spec}", "--n", "1,2", "--K", "40")
        assert code == 0
        assert all(r["abs_error"] < 1e-6 for r in records(out))

    def test_filterbank_and_bench(self, capsys, tmp_path):
        spec = tmp_path / "h.json"
        spec.write_text(json.dumps({"amplitudes": [1.0, 0.5, 2.0], "phases": [0.1, -1.0, 2.0]}))
        code, out, _ = invoke(capsys, "filterbank", "--signal", f"harmonic:{spec}")
        assert code == 0
        assert all(r["abs_error"] < 1e-9 for r in records(out))
        code, out, _ = invoke(capsys, "bench", "--n", "16", "--seed", "3")
        (rec,) = records(out)
        assert rec["multiplications"] < rec["dft_multiplications"]

    def test_irrational(self, capsys):
        code, out, _ = invoke(capsys, "fourier", "--signal", "cos", "--n", "1", "--irrational", "golden", "--K", "10000")
        assert code == 0
        assert abs(records(out)[0]["value"] - 0.5) < 0.02

    def test_diagnose_pnt(self, capsys):
        code, out, _ = invoke(capsys, "diagnose-pnt", "--K", "10000")
        assert code == 0
        assert records(out)[0]["bound_holds"]

    def test_trigpoly_spec(self):
        assert parse_trigpoly("a0=2,a2=1,b1=-0.5") == ([0.0, 1.0], [-0.5, 0.0], 2.0)


class TestOutput:
    def test_schema_and_round_trip(self, capsys):
        _, out, _ = invoke(capsys, "taylor", "--signal", "geom_disk:0.5", "--n", "1,2", "--K", "20")
        doc = json.loads(out)
        assert doc["schema"] == SCHEMA
        again = json.dumps(json.loads(out), indent=2) + "\n"
        assert again == out
        recs = records(out)
        assert isinstance(recs[0]["value"], complex)

    def test_deterministic_files(self, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for p in paths:
            assert run(["bench", "--n", "12", "--seed", "9", "--output", str(p)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_csv(self, capsys):
        code, out, _ = invoke(capsys, "fourier", "--signal", "cosk:2", "--n", "1,2", "--K", "10", "--format", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [int(r["n"]) for r in rows] == [1, 2]
        assert float(rows[1]["value"]) == pytest.approx(1.0, abs=1e-12)


class TestSampleFile:
    @pytest.mark.parametrize("G", [64, 256, 1024])
    def test_within_interpolation_budget(self, tmp_path, capsys, G):
        # linear interpolation of cos(2 pi x) errs by at most (2 pi / G)^2 / 8;
        # each of the nonzero-Mobius averages can carry that error
        path = tmp_path / "s.csv"
        np.savetxt(path, np.cos(2 * np.pi * np.arange(G) / G))
        K = 8
        code, out, _ = invoke(capsys, "fourier", "--file", str(path), "--n", "1", "--K", str(K))
        assert code == 0
        budget = 6 * (2 * np.pi / G) ** 2 / 8
        assert abs(records(out)[0]["value"] - 1.0) <= budget


class TestExitCodes:
    def test_unreadable_file(self, capsys):
        code, _, err = invoke(capsys, "fourier", "--file", "/nonexistent/x.csv", "--n", "1")
        assert code == 2
        assert "cannot read" in err

    def test_sieve_limit(self, capsys):
        code, _, err = invoke(capsys, "fourier", "--signal", "cos", "--n", "3", "--K", "100000")
        assert code == 2
        assert "sieve limit" in err

    def test_env_overrides_sieve(self, capsys, monkeypatch):
        monkeypatch.setenv("AFT_SIEVE_LIMIT", "50")
        code, _, _ = invoke(capsys, "fourier", "--signal", "cos", "--n", "3", "--K", "20")
        assert code == 2

    @pytest.mark.parametrize("argv", [
        ["fourier", "--signal", "cos"],
        ["fourier", "--signal", "nonsense", "--n", "1"],
        ["taylor", "--signal", "step:1.0", "--n", "1"],
        ["fourier", "--signal", "cos", "--n", "1", "--K", "5", "--adaptive-tol", "1e-3"],
    ])
    def test_validation(self, capsys, argv):
        assert invoke(capsys, *argv)[0] == 2

    def test_argparse_errors_exit_2(self, capsys):
        with pytest.raises(SystemExit) as info:
            run(["fourier", "--n", "x"])
        assert info.value.code == 2

    def test_nonconvergence(self, capsys):
        code, out, _ = invoke(capsys, "fourier", "--signal", "geom_disk:0.95", "--n", "1",
                              "--adaptive-tol", "1e-15", "--Kmax", "20")
        assert code == 3
        doc = json.loads(out)
        assert doc["status"] == "no-convergence"
        assert len(doc["records"][0]["partials"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "aftkit", "mobius", "--limit", "30", "--query", "6"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["records"][0]["value"] == 1
