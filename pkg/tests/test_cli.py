import csv
import io
import json
import subprocess
import sys

import mpmath
import pytest

from twobridge import cli
from twobridge.cli import Alpha0Cache, RunConfig, UsageError, _int_list, main
from twobridge.errors import SolverFailure
from twobridge.reference import TABLE1, TABLE2


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestParsing:
    def test_int_list(self):
        assert _int_list("1..3,-2") == (1, 2, 3, -2)
        assert _int_list("-1..-3") == (-1, -2, -3)

    def test_run_config_rules(self):
        with pytest.raises(UsageError):
            RunConfig(panels=101)
        with pytest.raises(UsageError):
            RunConfig(bits=32)
        assert RunConfig().panels_or(100) == 100

    @pytest.mark.parametrize("argv", [
        ["alpha0", "--n", "0"],
        ["cs", "--n", "1", "--k", "2"],
        ["table2", "--n", "1", "--k", "2..4"],
        ["alpha0", "--n", "1", "--format", "xml"],
        ["alpha0", "--n", "1", "--panels", "7"],
        ["alpha0", "--n", "1", "--bits", "16"],
        ["profile", "--n", "1", "--from", "0", "--to", "3", "--points", "4"],
        ["profile", "--n", "1", "--from", "1", "--to", "3", "--points", "1"],
        ["volume", "--n", "1"],
        [],
    ])
    def test_usage_errors(self, capsys, argv):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code
        assert code == 3
        assert capsys.readouterr().out == ""

    def test_spherical_volume_is_usage_error(self, capsys):
        code, out, err = run(capsys, "volume", "--n", "1", "--alpha", "3.0", "--panels", "100")
        assert code == 3 and "not hyperbolic" in err

    def test_flags_after_verb(self, capsys):
        code, out, _ = run(capsys, "alpha0", "--n", "1", "--bits", "128", "--format", "json")
        assert code == 0 and json.loads(out)["bits"] == 128


class TestVerbs:
    def test_table1_row(self, capsys):
        code, out, _ = run(capsys, "table1", "--n", "1,-2", "--panels", "400")
        assert code == 0
        assert out.splitlines()[0] == "twist,alpha0,cs"
        got = rows(out)
        assert [r["twist"] for r in got] == ["2", "-4"]
        for r, n in zip(got, (1, -2)):
            assert abs(mpmath.mpf(r["alpha0"]) - mpmath.mpf(TABLE1[n][0])) < 1e-8
            assert abs(mpmath.mpf(r["cs"]) - mpmath.mpf(TABLE1[n][1])) < 5e-5

    def test_table2_cells(self, capsys):
        code, out, _ = run(capsys, "table2", "--n", "1,2,-3", "--k", "6,8")
        assert code == 0
        assert out.splitlines()[0] == "n,k,cs,cs_cover"
        got = {(int(r["n"]), int(r["k"])): r for r in rows(out)}
        assert len(got) == 6
        for (n, k), r in got.items():
            orb, cover = TABLE2[n][k]
            assert abs(float(r["cs"]) - float(orb)) < 1e-4
            assert abs(float(r["cs_cover"]) - float(cover)) < 1e-4

    def test_table2_json(self, capsys):
        code, out, _ = run(capsys, "table2", "--n", "2", "--k", "3", "--format", "json")
        data = json.loads(out)
        assert code == 0 and data[0]["n"] == 2 and mpmath.mpf(data[0]["cs"]) < 1e-6

    def test_parallel_matches_serial(self, capsys):
        _, serial, _ = run(capsys, "table2", "--n", "1,-1", "--k", "3,4")
        _, parallel, _ = run(capsys, "table2", "--n", "1,-1", "--k", "3,4", "--jobs", "2")
        assert serial == parallel

    def test_solver_failure_row(self, capsys, monkeypatch):
        def boom(*a, **kw):
            raise SolverFailure("forced")

        monkeypatch.setattr(cli, "cyclic_cover", boom)
        code, out, err = run(capsys, "table2", "--n", "1", "--k", "3,4")
        assert code == 2
        assert "forced" in err
        assert all(r["cs"] == "-" for r in rows(out))

    def test_cs_json_schema(self, capsys):
        code, out, _ = run(capsys, "cs", "--n", "1", "--k", "4", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert set(data) == {"n", "k", "alpha0", "vol", "cs", "cs_modulus", "bits", "panels", "version"}
        assert data["cs_modulus"] == "1/4"
        assert abs(float(data["cs"]) - 0.105075) < 1e-6

    def test_cs_csv_has_cover(self, capsys):
        code, out, _ = run(capsys, "cs", "--n", "1", "--k", "4")
        (r,) = rows(out)
        assert code == 0 and abs(float(r["cs_cover"]) - 0.420301) < 1e-6
        assert abs(mpmath.mpf(r["vol_cover"]) - 4 * mpmath.mpf(r["vol"])) < 1e-60

    def test_volume_by_k(self, capsys):
        code, out, _ = run(capsys, "volume", "--n", "1", "--k", "3", "--panels", "1000")
        (r,) = rows(out)
        assert code == 0 and abs(float(r["vol"]) - 0.6542458859281551) < 1e-12

    def test_profile(self, capsys):
        code, out, _ = run(capsys, "profile", "--n", "1", "--from", "0.5", "--to", str(mpmath.pi), "--points", "9")
        assert code == 0
        assert out.splitlines()[0] == "alpha,re_x,im_x,log_abs_L,l_alpha,vol_partial,beta,regime"
        got = rows(out)
        assert all(mpmath.mpf(r["im_x"]) <= 0 for r in got)
        assert mpmath.mpf(got[-1]["vol_partial"]) == 0
        regimes = [r["regime"] for r in got]
        assert regimes[0] == "hyperbolic" and regimes[-1] == "spherical"
        lengths = [mpmath.mpf(r["l_alpha"]) for r in got]
        assert lengths[0] > 0 and lengths[-1] < 1e-60

    def test_verify_reports_failure(self, capsys, monkeypatch):
        import twobridge.verify as verify

        monkeypatch.setattr(verify, "run_checks", lambda cfg, n_values=None: [("fake", False, "x")])
        code, out, _ = run(capsys, "verify")
        assert code == 1 and out.startswith("FAIL fake")

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "twobridge", "--version"], capture_output=True, text=True)
        assert proc.returncode == 0 and "twobridge" in proc.stdout


class TestDeterminismAndFormat:
    def test_byte_identical(self, capsys):
        argv = ("cs", "--n", "-2", "--k", "5", "--format", "json")
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b

    def test_cells_round_trip(self, capsys):
        _, out, _ = run(capsys, "cs", "--n", "3", "--k", "10")
        (r,) = rows(out)
        for key in ("alpha0", "vol", "cs", "cs_cover", "vol_cover"):
            with mpmath.workprec(272):
                assert cli.decimal(mpmath.mpf(r[key]), 256) == r[key]

    def test_env_precision(self, capsys, monkeypatch):
        monkeypatch.setenv(cli.BITS_ENV, "128")
        code, out, _ = run(capsys, "alpha0", "--n", "1", "--format", "json")
        assert code == 0 and json.loads(out)["bits"] == 128
        monkeypatch.setenv(cli.BITS_ENV, "lots")
        code, _, _ = run(capsys, "alpha0", "--n", "1")
        assert code == 3


class TestCache:
    def test_written_and_reused(self, capsys, tmp_path):
        path = tmp_path / "alpha0.json"
        code, out, _ = run(capsys, "alpha0", "--n", "1", "--cache", str(path))
        assert code == 0
        (entry,) = json.loads(path.read_text())["entries"]
        assert entry["n"] == 1 and entry["bits"] == 256
        # plant a marker: a matching key must be served from the cache
        entry["alpha0"] = "2.5"
        path.write_text(json.dumps({"entries": [entry]}))
        _, out, _ = run(capsys, "alpha0", "--n", "1", "--cache", str(path))
        assert rows(out)[0]["alpha0"] == "2.5"

    def test_mismatched_key_recomputes(self, capsys, tmp_path):
        path = tmp_path / "alpha0.json"
        path.write_text(json.dumps({"entries": [{"n": 1, "alpha0": "2.5", "bits": 128, "tol": "5.42101e-20"}]}))
        _, out, _ = run(capsys, "alpha0", "--n", "1", "--cache", str(path))
        assert rows(out)[0]["alpha0"].startswith("2.5741407781")
        entries = json.loads(path.read_text())["entries"]
        assert len(entries) == 2

    def test_store_replaces_same_key(self, tmp_path):
        c = Alpha0Cache(tmp_path / "c.json")
        c.store({"n": 1, "alpha0": "1", "bits": 64, "tol": "t"})
        c.store({"n": 1, "alpha0": "2", "bits": 64, "tol": "t"})
        assert c.lookup(1, 64, "t") == "2" and len(c.entries) == 1
        assert c.lookup(1, 64, "u") is None

    def test_table1_populates_cache(self, capsys, tmp_path):
        path = tmp_path / "alpha0.json"
        run(capsys, "table1", "--n", "2", "--panels", "100", "--cache", str(path))
        (entry,) = json.loads(path.read_text())["entries"]
        assert entry["n"] == 2
