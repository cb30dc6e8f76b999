"""CLI harness: artifacts, exit codes, determinism of outputs."""

import json
import xml.etree.ElementTree as ET

import pytest

from varmin.cli import main
from varmin.report import TRACE_HEADER, RunResult


def run_cli(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


class TestRun:
    def test_artifacts_written(self, tmp_path, capsys):
        out = tmp_path / "run"
        rc, stdout, _ = run_cli(
            capsys,
            "run", "--problem", "newton", "--iters", "500", "--seed", "3",
            "--out", str(out),
        )
        assert rc == 0
        for name in ("trace.csv", "result.json", "trace.svg"):
            assert (out / name).exists()
        payload = json.loads(stdout)
        assert payload["problem"] == "newton"
        assert payload["seed"] == 3
        assert payload["iterations"] == 500
        assert payload["best_objective"] <= payload["interpolant_objective"] * 1.5
        # json on disk matches json on stdout
        assert json.loads((out / "result.json").read_text()) == payload
        # result.json round-trips through the record type
        RunResult.from_dict(payload)
        lines = (out / "trace.csv").read_text().splitlines()
        assert lines[0] == TRACE_HEADER
        assert len(lines) > 2
        ET.fromstring((out / "trace.svg").read_text())

    def test_outputs_deterministic(self, tmp_path, capsys):
        args = ["run", "--problem", "ramm", "--iters", "400", "--seed", "5"]
        rc1, _, _ = run_cli(capsys, *args, "--out", str(tmp_path / "a"))
        rc2, _, _ = run_cli(capsys, *args, "--out", str(tmp_path / "b"))
        assert rc1 == rc2 == 0
        # the trace is byte-identical across reruns
        assert (tmp_path / "a/trace.csv").read_bytes() == (
            tmp_path / "b/trace.csv"
        ).read_bytes()
        # result.json is identical except for the wall-clock measurement
        ra = json.loads((tmp_path / "a/result.json").read_text())
        rb = json.loads((tmp_path / "b/result.json").read_text())
        ra.pop("wall_time")
        rb.pop("wall_time")
        assert ra == rb

    def test_unwritable_output_dir(self, tmp_path, capsys):
        blocker = tmp_path / "blocker"
        blocker.write_text("")  # a file where the directory should go
        rc, _, err = run_cli(
            capsys,
            "run", "--problem", "newton", "--iters", "10",
            "--out", str(blocker / "sub"),
        )
        assert rc == 1
        assert "error" in err

    def test_unknown_problem_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["run", "--problem", "sisyphus", "--out", "ignored"])
        assert exc.value.code == 2

    def test_bad_sigma_exits_1(self, tmp_path, capsys):
        rc, _, err = run_cli(
            capsys,
            "run", "--problem", "newton", "--iters", "10",
            "--sigma", "-0.5", "--out", str(tmp_path / "x"),
        )
        assert rc == 1


class TestExact:
    def test_brachistochrone(self, capsys):
        rc, stdout, _ = run_cli(capsys, "exact", "--problem", "brachistochrone")
        assert rc == 0
        payload = json.loads(stdout)
        assert payload["time"] == pytest.approx(1.84421, abs=1e-3)
        assert payload["theta_end"] == pytest.approx(2.41201, abs=1e-3)

    def test_ramm_includes_composite_time(self, capsys):
        rc, stdout, _ = run_cli(capsys, "exact", "--problem", "ramm", "--b", "2.0")
        payload = json.loads(stdout)
        assert rc == 0
        assert payload["case_id"] == 3
        assert payload["T_br"] == pytest.approx(0.8066, abs=5e-4)

    def test_newton(self, capsys):
        rc, stdout, _ = run_cli(capsys, "exact", "--problem", "newton")
        payload = json.loads(stdout)
        assert payload["resistance"] == pytest.approx(0.0802, abs=5e-4)

    def test_thermal(self, capsys):
        rc, stdout, _ = run_cli(capsys, "exact", "--problem", "thermal")
        payload = json.loads(stdout)
        assert payload["resistance"] == pytest.approx(0.681, abs=1e-9)

    def test_thermal_unsupported_height_exits_1(self, capsys):
        rc, _, err = run_cli(
            capsys, "exact", "--problem", "thermal", "--body-height", "3.0"
        )
        assert rc == 1


class TestTable:
    def test_table_artifacts(self, tmp_path, capsys):
        out = tmp_path / "table"
        rc, stdout, _ = run_cli(
            capsys,
            "table", "--iters", "200", "--seeds", "1,2,3", "--out", str(out),
        )
        assert rc == 0
        csv_lines = (out / "table.csv").read_text().splitlines()
        assert len(csv_lines) == 5  # header + four problems
        assert csv_lines[0].startswith("problem,")
        txt = (out / "table.txt").read_text()
        for name in ("brachistochrone", "ramm", "newton", "thermal"):
            assert name in txt

    def test_empty_seed_list_exits_2(self, tmp_path, capsys):
        rc, _, _ = run_cli(
            capsys, "table", "--seeds", ",", "--out", str(tmp_path / "t")
        )
        assert rc == 2


class TestBench:
    def test_bench_reports_both_backends(self, capsys):
        rc, stdout, _ = run_cli(
            capsys,
            "bench", "--problem", "newton", "--iters", "300",
            "--iters-python", "20",
        )
        assert rc == 0
        payload = json.loads(stdout)
        assert payload["numba"]["iterations"] == 300
        assert payload["python"]["iterations"] == 20
        assert payload["numba"]["seconds"] > 0.0
        assert payload["speedup"] > 0.0
