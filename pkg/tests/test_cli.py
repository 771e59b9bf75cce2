import json

import pytest

from collatz_lab import cli
from collatz_lab.coeffs import Dyadic, coeffs_of_seed
from collatz_lab.parity import ParityVector


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


class TestSubcommands:
    def test_classify_seed_seven(self, capsys):
        data = run_json(capsys, "classify", "7")
        assert data["label"] == "R[A0-][B-][S-][M-]"
        assert data["b_inf"] == 1
        assert data["grade"] == "definite"

    def test_unit_110(self, capsys):
        data = run_json(capsys, "unit", "110")
        assert data["verdict"] == "diverges"
        assert data["label"] == "NR[A+][B+][S+][M+]"

    def test_unit_100(self, capsys):
        data = run_json(capsys, "unit", "100")
        assert data["verdict"] == "converges"
        assert data["b_inf"] == "1/5"

    def test_parity_solve(self, capsys):
        data = run_json(capsys, "parity", "solve", "1100")
        assert data["residue"] == 3
        assert data["modulus"] == 16
        assert data["minimal_seed"] == 3

    def test_parity_encode_round_trip(self, capsys):
        data = run_json(capsys, "parity", "encode", "7", "4")
        assert ParityVector.from_string(data["parity"]) == ParityVector((1, 1, 1, 0))

    def test_parity_probe(self, capsys):
        data = run_json(capsys, "parity", "probe", "1", "11", "111", "1110", "11101")
        assert data["verdict"] == "inconclusive" or data["verdict"] == "stabilizes"
        assert data["minimal_seeds"][0] == 1

    def test_traj(self, capsys):
        data = run_json(capsys, "traj", "7", "--steps", "11")
        assert data["terms"] == [7, 11, 17, 26, 13, 20, 10, 5, 8, 4, 2, 1]

    def test_coeffs_round_trips_through_parsers(self, capsys):
        data = run_json(capsys, "coeffs", "661", "11")
        offset = Dyadic.from_json(data["offset"])
        assert offset == coeffs_of_seed(661, 11).offset
        assert Dyadic.parse(data["offset"]["value"]) == offset
        assert data["terminal"] == 242

    def test_cycle(self, capsys):
        data = run_json(capsys, "cycle", "7")
        assert data["min_member"] == 1
        assert sorted(data["members"]) == [1, 2]

    def test_cycle_budget(self, capsys):
        data = run_json(capsys, "cycle", "27", "--max-steps", "5")
        assert data["no_cycle"] == "budget-exhausted"

    def test_series_json(self, capsys):
        data = run_json(capsys, "series", "--family", "zeros-ones", "--max", "5")
        assert data["members"][4]["seed"] == 661
        assert data["limits"]["label"].startswith("NR[")

    def test_series_table(self, capsys):
        code, out, _ = run(capsys, "--format", "table", "series",
                           "--family", "ones-zeros", "--max", "4")
        assert code == 0
        assert out.splitlines()[0].split() == [
            "member", "seed", "scale", "offset", "terminal",
        ]

    def test_proportions(self, capsys):
        data = run_json(capsys, "proportions", "--order", "4", "--mode", "enum")
        assert data["counts"]["a_plus"] == 5

    def test_proportions_csv(self, capsys):
        code, out, _ = run(capsys, "--format", "csv", "proportions", "--order", "8")
        assert code == 0
        assert out.splitlines()[1] == "8,37,256,37,256"

    def test_proportions_sweep(self, capsys):
        data = run_json(capsys, "proportions", "--sweep", "--orders", "4,8,16",
                        "--target", "a")
        assert data["verdict"] == "decreasing"
        assert data["values"][0] == "5/16"

    def test_matrix_json(self, capsys, tmp_path):
        out_file = tmp_path / "m4.json"
        data = run_json(capsys, "matrix", "--generator", "1", "--order", "4",
                        "--out", str(out_file))
        assert data["rows"] == 16
        table = json.loads(out_file.read_text(encoding="utf-8"))
        rows = {r["seed"]: r for r in table["rows"]}
        assert rows[31]["iterates"] == [47, 71, 107, 161]
        assert rows[1]["iterates"] == [2, 1, 2, 1]
        for row in table["rows"]:
            ParityVector.from_string(row["parity"])  # parses cleanly

    def test_matrix_csv(self, capsys, tmp_path):
        out_file = tmp_path / "m3.csv"
        data = run_json(capsys, "--format", "csv", "matrix", "--generator", "2",
                        "--order", "3", "--out", str(out_file))
        assert data["rows"] == 8
        lines = out_file.read_text(encoding="utf-8").strip().splitlines()
        assert lines[0] == "seed,T1,T2,T3"
        assert lines[1] == "2,1,2,1"

    def test_classify_range_streams_one_line_per_seed(self, capsys):
        code, out, err = run(capsys, "classify", "--range", "1..100")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 100
        labels = {json.loads(line)["label"] for line in lines}
        assert labels == {"R[A0-][B-][S-][M-]"}
        assert "WATCH" not in err


class TestExitCodes:
    def test_usage_error_is_two(self, capsys):
        assert run(capsys, "traj", "zzz", "--steps", "3")[0] == 2
        assert run(capsys, "nonsense")[0] == 2
        assert run(capsys, "classify")[0] == 2  # neither seed nor range
        assert run(capsys, "proportions", "--sweep")[0] == 2

    def test_cap_violation_is_three(self, capsys):
        code, _, err = run(capsys, "matrix", "--generator", "1", "--order", "25",
                           "--out", "/tmp/unused.json")
        assert code == 3
        assert "cap" in err
        assert run(capsys, "proportions", "--order", "21", "--mode", "enum")[0] == 3
        assert run(capsys, "series", "--family", "ones-zeros", "--max", "100")[0] == 3

    def test_env_cap_override(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.CAP_ENV_VAR, "6")
        code, _, _ = run(capsys, "matrix", "--generator", "1", "--order", "7",
                         "--out", str(tmp_path / "x.json"))
        assert code == 3  # lowered cap now rejects order 7
        out_file = tmp_path / "m6.csv"
        code, _, _ = run(capsys, "--format", "csv", "matrix", "--generator", "1",
                         "--order", "6", "--out", str(out_file))
        assert code == 0
        assert len(out_file.read_text(encoding="utf-8").strip().splitlines()) == 65
