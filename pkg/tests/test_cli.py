"""Command-line surface: formats, exit codes, determinism."""
import json

import pytest

from bethe_xxz.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEnumerate:
    def test_json_payload(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", "--n", "8", "--zeta", "0.6"
        )
        assert code == 0
        payload = json.loads(out)
        assert set(payload) == {"params", "records", "summary"}
        assert payload["params"] == {"n": 8, "zeta": 0.6}
        assert payload["summary"]["count"] == 28
        assert len(payload["records"]) == 28
        assert payload["records"][0]["j1"].count("/") <= 1

    def test_json_round_trip_is_idempotent(self, capsys):
        _, out, _ = run(capsys, "enumerate", "--n", "8", "--zeta", "0.6")
        reserialized = json.dumps(json.loads(out), indent=2) + "\n"
        assert reserialized == out

    def test_csv_shape(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", "--n", "8", "--zeta", "0.6",
            "--format", "csv",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,zeta,j1,j2,class"
        assert len(lines) == 29

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "pairs.json"
        code, out, _ = run(
            capsys, "enumerate", "--n", "8", "--zeta", "0.6",
            "--output", str(target),
        )
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["summary"]["count"] == 28


class TestSolve:
    def test_single_pair(self, capsys):
        code, out, _ = run(
            capsys, "solve", "--n", "12", "--zeta", "0.57",
            "--j1", "11/2", "--j2", "11/2",
        )
        assert code == 0
        records = json.loads(out)["records"]
        assert [r["class"] for r in records] == ["extra_two_string"]
        assert records[0]["status"] == "ok"
        assert records[0]["lambda1_im"] > 0.0

    def test_shared_label_emits_both_classes(self, capsys):
        # (5/2, 7/2) is carried by both the infinite real family and a wide
        # complex pair; both variants must be emitted.
        code, out, _ = run(
            capsys, "solve", "--n", "8", "--zeta", "0.6",
            "--j1", "5/2", "--j2", "7/2",
        )
        assert code == 0
        classes = {r["class"] for r in json.loads(out)["records"]}
        assert classes == {"infinite_family_real", "wide_pair_complex"}

    def test_unknown_pair_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, "solve", "--n", "8", "--zeta", "0.6",
            "--j1", "1/2", "--j2", "1/2",
        )
        assert code == 2
        assert "not an enumerated pair" in err

    def test_missing_labels_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "solve", "--n", "8", "--zeta", "0.6")
        assert code == 2


class TestSolveAll:
    def test_complete_inventory(self, capsys):
        code, out, _ = run(
            capsys, "solve-all", "--n", "8", "--zeta", "0.6",
            "--format", "csv",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 29
        assert all(",ok," in line for line in lines[1:])

    def test_deterministic_across_jobs(self, capsys):
        _, serial, _ = run(
            capsys, "solve-all", "--n", "8", "--zeta", "0.6"
        )
        _, parallel, _ = run(
            capsys, "solve-all", "--n", "8", "--zeta", "0.6",
            "--jobs", "4",
        )
        assert serial == parallel

    def test_sorted_by_labels(self, capsys):
        _, out, _ = run(capsys, "solve-all", "--n", "8", "--zeta", "0.6")
        records = json.loads(out)["records"]
        from fractions import Fraction

        keys = [
            (Fraction(r["j1"]), Fraction(r["j2"]), r["class"])
            for r in records
        ]
        assert keys == sorted(keys)


class TestVerify:
    def test_complete_spectrum(self, capsys):
        code, out, _ = run(capsys, "verify", "--n", "8", "--zeta", "0.6")
        assert code == 0
        assert out.startswith("28/28 matched;")

    def test_dimension_cap(self, capsys):
        code, _, err = run(
            capsys, "verify", "--n", "40", "--zeta", "0.6",
            "--max-dim", "100",
        )
        assert code == 2
        assert "exceeds" in err


class TestRegimeMap:
    def test_labels_agree(self, capsys):
        code, out, _ = run(
            capsys, "regime-map", "--n-range", "8:16:2",
            "--zeta-grid", "0.1:1.0:5",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["summary"]["disagreements"] == 0
        assert payload["summary"]["count"] == 25


class TestXxxTrace:
    def test_trace_rows(self, capsys):
        code, out, _ = run(
            capsys, "xxx-trace", "--n", "8", "--j1", "7/2", "--j2", "1/2",
            "--zeta-schedule", "0.3,0.1,0.03,0.01",
        )
        assert code == 0
        records = json.loads(out)["records"]
        reduced = [r["lambda1_over_zeta"] for r in records]
        assert reduced == sorted(reduced)
        assert len(records) == 4

    def test_non_family_pair_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, "xxx-trace", "--n", "8", "--j1", "1/2", "--j2", "3/2",
            "--zeta-schedule", "0.3,0.1",
        )
        assert code == 2
        assert "infinite family" in err


class TestUsage:
    def test_odd_size_rejected(self, capsys):
        code, _, err = run(capsys, "enumerate", "--n", "7", "--zeta", "0.5")
        assert code == 2
        assert "even" in err

    def test_missing_required_parameters(self, capsys):
        code, _, _ = run(capsys, "enumerate", "--zeta", "0.5")
        assert code == 2

    def test_unknown_subcommand(self, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 2
