"""Command-line harness: backend grammar, subcommands, exit codes."""

import csv

import numpy as np
import pytest
import scipy.io as sio

from sincint.cli import main, parse_backend
from sincint.integrators import (
    BlowUpError,
    DenseBackend,
    ExpSumBackend,
    RationalKrylovBackend,
)
from sincint.problems import laplacian_1d


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


class TestBackendGrammar:
    def test_dense(self):
        assert parse_backend("dense") == DenseBackend()

    def test_fixed_degree(self):
        b = parse_backend("ratkrylov:Lbar:n6")
        assert b == RationalKrylovBackend(family="Lbar", n=6)

    def test_tolerance_mode(self):
        b = parse_backend("ratkrylov:E:1e-10")
        assert b == RationalKrylovBackend(family="E", tol=1e-10)

    def test_raw_pole_flag(self):
        b = parse_backend("ratkrylov:E:n4:raw")
        assert b == RationalKrylovBackend(family="E", n=4, map_poles=False)

    def test_expsum(self):
        assert parse_backend("expsum:8:12") == ExpSumBackend(nu=8, k=12)
        assert parse_backend("expsum:8:12:dense") == ExpSumBackend(
            nu=8, k=12, inner="dense")

    @pytest.mark.parametrize("text", [
        "bogus", "ratkrylov", "ratkrylov:E", "ratkrylov:Q:n4",
        "ratkrylov:E:n4:fancy", "expsum:8", "expsum:a:b", "dense:extra",
    ])
    def test_rejects_malformed(self, text):
        import argparse

        with pytest.raises(argparse.ArgumentTypeError):
            parse_backend(text)


class TestPolesCommand:
    def test_writes_deterministic_csv(self, tmp_path):
        out = tmp_path / "p.csv"
        rc = main(["poles", "--family", "E", "--n", "2",
                   "--out", str(out), "--quiet"])
        assert rc == 0
        rows = _rows(out)
        assert len(rows) == 5
        again = tmp_path / "q.csv"
        main(["poles", "--family", "E", "--n", "2", "--out", str(again),
              "--quiet"])
        assert out.read_text() == again.read_text()

    def test_values_match_library(self, tmp_path):
        from sincint.poles import poles_Lbar

        out = tmp_path / "p.csv"
        main(["poles", "--family", "Lbar", "--n", "3", "--out", str(out),
              "--quiet"])
        got = [complex(float(r["re"]), float(r["im"])) for r in _rows(out)]
        assert np.allclose(got, poles_Lbar(3).values)


class TestMatrixCommand:
    def test_matrix_market_roundtrip(self, tmp_path):
        out = tmp_path / "lap.mtx"
        rc = main(["matrix", "--name", "lap1d", "--n", "16",
                   "--out", str(out), "--quiet"])
        assert rc == 0
        back = sio.mmread(out).tocsr()
        assert (back != laplacian_1d(16)).nnz == 0


class TestBenchCommands:
    def test_pole_benchmark_small(self, tmp_path):
        out = tmp_path / "b.csv"
        rc = main(["poles-bench", "--matrix", "lap1d", "--families", "E,L",
                   "--n-max", "3", "--small", "--out", str(out), "--quiet"])
        assert rc == 0
        rows = _rows(out)
        assert rows and set(rows[0]) == {
            "matrix", "family", "n", "k", "rel_error", "seconds", "stagnated"}
        assert {r["family"] for r in rows} == {"E", "L"}
        errs = [float(r["rel_error"]) for r in rows if r["family"] == "E"]
        assert errs[-1] < errs[0]

    def test_expsum_benchmark_small(self, tmp_path):
        out = tmp_path / "e.csv"
        rc = main(["expsum-bench", "--matrix", "lap1d", "--nu-max", "6",
                   "--small", "--out", str(out), "--quiet"])
        assert rc == 0
        rows = _rows(out)
        assert set(rows[0]) == {"matrix", "nu", "k", "inner", "rel_error",
                                "seconds"}
        assert [int(r["nu"]) for r in rows] == list(range(1, 7))
        assert float(rows[-1]["rel_error"]) < float(rows[0]["rel_error"])


class TestConvergeCommand:
    def test_schema_and_monotone_degrees(self, tmp_path):
        out = tmp_path / "c.csv"
        rc = main(["converge", "--N", "20", "--T", "0.5",
                   "--h-list", "0.1,0.05,0.025",
                   "--backend", "ratkrylov:E:1e-10",
                   "--out", str(out), "--quiet"])
        assert rc == 0
        rows = _rows(out)
        assert set(rows[0]) == {"h", "n_poles", "rel_error", "observed_order",
                                "seconds"}
        degrees = [int(r["n_poles"]) for r in rows]
        assert degrees == sorted(degrees, reverse=True)
        errs = [float(r["rel_error"]) for r in rows]
        assert errs[-1] < errs[0]
        assert rows[0]["observed_order"] == ""
        assert 1.5 <= float(rows[-1]["observed_order"]) <= 2.5


class TestWaveCommand:
    def test_writes_solution_and_energy(self, tmp_path):
        rc = main(["wave", "--small", "--h", "0.05", "--T", "0.5",
                   "--out-prefix", str(tmp_path / "w"), "--quiet"])
        assert rc == 0
        sol = _rows(tmp_path / "w_solution.csv")
        en = _rows(tmp_path / "w_energy.csv")
        assert set(sol[0]) == {"vertex", "x", "y", "u"}
        assert set(en[0]) == {"t", "E"}
        assert len(sol) == 81
        assert len(en) == 11
        E = np.array([float(r["E"]) for r in en])
        assert np.all(E > 0)
        assert E[-1] / E[0] == pytest.approx(1.0, abs=0.05)


class TestExitCodes:
    def test_usage_error_is_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["poles", "--family", "E"])
        assert exc.value.code == 2

    def test_guard_violation_is_3(self, tmp_path, capsys):
        rc = main(["poles", "--family", "E", "--n", "0",
                   "--out", str(tmp_path / "x.csv"), "--quiet"])
        assert rc == 3
        assert "error=guard" in capsys.readouterr().err

    def test_io_failure_is_5(self, tmp_path, capsys):
        rc = main(["poles", "--family", "E", "--n", "1",
                   "--out", str(tmp_path / "no" / "dir" / "x.csv"),
                   "--quiet"])
        assert rc == 5
        assert "error=io" in capsys.readouterr().err

    def test_numerical_failure_is_4(self, monkeypatch, capsys):
        import sincint.cli as cli

        def boom(args):
            raise BlowUpError("solution norm left the representable range")

        monkeypatch.setattr(cli, "cmd_poles", boom)
        rc = main(["poles", "--family", "E", "--n", "1", "--quiet"])
        assert rc == 4
        assert "error=numerical" in capsys.readouterr().err
