"""End-to-end command-line checks: exit codes, trace verification, projections."""

import io
import json

import pytest

from mirrorboost.cli import main
from mirrorboost.trace_io import read_trace
from mirrorboost.verify import verify_trace


def _train(tmp_path, *extra, trace=None, model=None):
    argv = list(extra)
    if trace:
        argv += ["--trace", trace]
    if model:
        argv += ["--model", model]
    return main(["train", *argv])


class TestTrain:
    def test_separable_run_reaches_zero(self, tmp_path, capsys):
        code = main([
            "train", "--algo", "maboost-active", "--geometry", "entropy",
            "--gen", "blobs:0:100:0.5", "--rounds", "50",
        ])
        out = capsys.readouterr().out
        assert code == 0
        assert "train_error=0.0" in out
        assert out.startswith("rounds=1 ")

    def test_infeasible_k_exits_one(self):
        assert main([
            "train", "--algo", "smooth", "--k", "0.5",
            "--gen", "blobs:0:100:0.5", "--rounds", "10",
        ]) == 1

    def test_forced_geometry_conflict_exits_one(self):
        assert main([
            "train", "--algo", "mada", "--geometry", "quadratic",
            "--gen", "blobs:0:100:0.5", "--rounds", "10",
        ]) == 1

    def test_no_weak_learnability_exits_two(self, tmp_path):
        p = tmp_path / "flat.csv"
        p.write_text("label,f1\n1,1.0\n-1,1.0\n")
        assert main([
            "train", "--algo", "maboost-active", "--data", str(p), "--rounds", "10",
        ]) == 2

    def test_bad_gen_spec_exits_one(self):
        assert main([
            "train", "--algo", "maboost-active", "--gen", "spiral:1:2", "--rounds", "5",
        ]) == 1

    def test_data_and_gen_mutually_exclusive(self):
        assert main(["train", "--algo", "maboost-active", "--rounds", "5"]) == 1


class TestVerify:
    def _trained_trace(self, tmp_path, algo, extra=()):
        trace = str(tmp_path / "trace.jsonl")
        argv = [
            "train", "--algo", algo, "--gen", "noisy:0:100:0.1",
            "--rounds", "60", "--trace", trace, *extra,
        ]
        assert main(argv) == 0
        return trace

    @pytest.mark.parametrize(
        "algo,extra",
        [
            ("maboost-active", ()),
            ("maboost-lazy", ()),
            ("smooth", ("--k", "10")),
            ("sparse", ("--alpha-mode", "zero")),
            ("sparse", ("--alpha-mode", "half")),
            ("mada", ()),
            ("maxmargin", ()),
        ],
    )
    def test_fresh_traces_pass(self, tmp_path, capsys, algo, extra):
        trace = self._trained_trace(tmp_path, algo, extra)
        assert main(["verify", trace]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_corrupted_trace_fails_with_round(self, tmp_path, capsys):
        trace = self._trained_trace(tmp_path, "maboost-active")
        lines = open(trace).read().splitlines()
        rec = json.loads(lines[2])
        rec["train_error"] = 0.99
        lines[2] = json.dumps(rec, sort_keys=True)
        open(trace, "w").write("\n".join(lines) + "\n")
        capsys.readouterr()
        assert main(["verify", trace]) == 1
        out = capsys.readouterr().out
        assert "FAIL" in out and f"round {rec['t']}" in out

    def test_empty_trace_passes_with_warning(self, tmp_path, capsys):
        trace = str(tmp_path / "empty.jsonl")
        open(trace, "w").write(
            '{"algorithm": "maboost-active", "geometry": "entropy", "n": 10, "schema": 1}\n'
        )
        assert main(["verify", trace]) == 0
        out = capsys.readouterr().out
        assert "WARNING" in out and "PASS" in out

    def test_malformed_trace_exits_one(self, tmp_path):
        trace = str(tmp_path / "bad.jsonl")
        open(trace, "w").write("not json\n")
        assert main(["verify", trace]) == 1

    def test_nonconsecutive_rounds_rejected(self, tmp_path):
        trace = str(tmp_path / "gap.jsonl")
        with open(trace, "w") as fh:
            fh.write('{"schema": 1, "algorithm": "maboost-active", "geometry": "entropy", "n": 4}\n')
            fh.write('{"t": 2, "gamma": 0.5, "eta": 0.5, "train_error": 0.1, "bound": 0.9, "max_weight": 0.3, "nnz": 4}\n')
        assert main(["verify", trace]) == 1

    def test_verify_trace_reports_round_trip(self, tmp_path):
        trace = self._trained_trace(tmp_path, "maboost-active")
        reports = verify_trace(read_trace(trace))
        assert all(r.passed for r in reports)
        assert all(r.line().startswith("PASS") for r in reports)


class TestProject:
    def _project(self, monkeypatch, capsys, geometry, set_spec, vec):
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(vec)))
        code = main(["project", "--geometry", geometry, "--set", set_spec])
        out = capsys.readouterr().out.strip()
        return code, json.loads(out) if code == 0 else None

    def test_entropy_simplex(self, monkeypatch, capsys):
        code, out = self._project(monkeypatch, capsys, "entropy", "simplex", [2, 2])
        assert code == 0 and out == [0.5, 0.5]

    def test_entropy_hypercube(self, monkeypatch, capsys):
        code, out = self._project(monkeypatch, capsys, "entropy", "hypercube", [0.5, 3])
        assert code == 0 and out == [0.5, 1.0]

    def test_quadratic_simplex(self, monkeypatch, capsys):
        code, out = self._project(monkeypatch, capsys, "quadratic", "simplex", [0.8, 0.4])
        assert code == 0
        assert out[0] == pytest.approx(0.7, abs=1e-9)
        assert out[1] == pytest.approx(0.3, abs=1e-9)

    def test_capped_and_orthant(self, monkeypatch, capsys):
        code, out = self._project(monkeypatch, capsys, "entropy", "capped:0.5", [4, 1, 1])
        assert code == 0
        assert out == pytest.approx([0.5, 0.25, 0.25], abs=1e-9)
        code, out = self._project(
            monkeypatch, capsys, "quadratic", "orthant-l1:0.05", [0.2, -0.1]
        )
        assert code == 0 and out == pytest.approx([0.15, 0.0], abs=1e-12)

    def test_domain_error_exits_one(self, monkeypatch, capsys):
        code, _ = self._project(monkeypatch, capsys, "entropy", "hypercube", [-1, 2])
        assert code == 1

    def test_unknown_set_exits_one(self, monkeypatch, capsys):
        code, _ = self._project(monkeypatch, capsys, "entropy", "ball", [1, 2])
        assert code == 1

    def test_bad_stdin_exits_one(self, monkeypatch, capsys):
        monkeypatch.setattr("sys.stdin", io.StringIO("not json"))
        assert main(["project", "--geometry", "entropy", "--set", "simplex"]) == 1


class TestBench:
    def test_criterion_filter_runs_single_check(self, capsys):
        code = main(["bench", "--criterion", "adaboost-degeneration"])
        out = capsys.readouterr().out
        assert code == 0
        assert "adaboost-degeneration" in out
        assert "bench: ALL PASS" in out
        assert len(out.strip().splitlines()) == 2  # one criterion row + summary

    def test_unknown_criterion_exits_one(self):
        assert main(["bench", "--criterion", "no-such-check"]) == 1

    def test_deterministic_tables(self, capsys):
        main(["bench", "--criterion", "adaboost-degeneration"])
        first = capsys.readouterr().out
        main(["bench", "--criterion", "adaboost-degeneration"])
        assert capsys.readouterr().out == first


class TestDeterminism:
    def test_train_outputs_byte_identical(self, tmp_path, capsys):
        blobs = []
        for tag in ("a", "b"):
            trace = str(tmp_path / f"t{tag}.jsonl")
            model = str(tmp_path / f"m{tag}.txt")
            assert main([
                "train", "--algo", "maboost-active", "--geometry", "entropy",
                "--gen", "noisy:0:100:0.1", "--rounds", "40",
                "--trace", trace, "--model", model,
            ]) == 0
            blobs.append(open(trace, "rb").read() + open(model, "rb").read())
        assert blobs[0] == blobs[1]
