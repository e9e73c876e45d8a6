import json
import subprocess
import sys

import pytest

from fuss_schroder import formulas
from fuss_schroder.cli import main
from fuss_schroder.formulas import CountResult


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCount:
    def test_small_census(self, capsys):
        code, out, _ = run(capsys, "count", "--k", "2", "--r", "2", "--n", "2", "--class", "small")
        assert code == 0
        assert out.strip() == '{"[1]":1,"[1,1]":2,"[2]":1}'

    def test_single_type(self, capsys):
        assert run(capsys, "count", "--k", "1", "--r", "1", "--n", "2", "--class", "large", "--type", "[1]")[1] == "3\n"

    def test_set(self, capsys):
        out = run(capsys, "count", "--k", "2", "--set", "1,2", "--n", "1", "--class", "large", "--type", "[]")[1]
        assert out == "1\n"

    def test_r_equals_set(self, capsys):
        a = run(capsys, "count", "--k", "3", "--r", "3", "--n", "3")[1]
        b = run(capsys, "count", "--k", "3", "--set", "3", "--n", "3")[1]
        assert a == b

    @pytest.mark.parametrize("method", ["formula", "bruteforce", "series"])
    def test_methods_agree(self, capsys, method):
        args = ["count", "--k", "2", "--set", "1,2", "--n", "3", "--class", "diag"]
        assert run(capsys, *args, "--method", method)[1] == run(capsys, *args)[1]

    def test_series_method_without_k(self, capsys):
        args = ["count", "--k", "3", "--set", "1,2", "--n", "3"]
        for cls in ("small", "large", "diag"):
            assert run(capsys, *args, "--class", cls, "--method", "series")[1] == run(capsys, *args, "--class", cls)[1]

    @pytest.mark.parametrize("cls, expected", [("small", '{"[]":1}'), ("large", '{"[]":1}'), ("diag", "{}")])
    def test_series_method_n0(self, capsys, cls, expected):
        out = run(capsys, "count", "--k", "2", "--r", "2", "--n", "0", "--class", cls, "--method", "series")[1]
        assert out.strip() == expected

    def test_bruteforce_out_of_bounds(self, capsys):
        code, _, err = run(capsys, "count", "--k", "1", "--r", "1", "--n", "9", "--method", "bruteforce")
        assert code == 1
        assert "n <= 8" in err

    def test_bound_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("FUSS_SCHRODER_MAX_N", "2")
        assert run(capsys, "count", "--k", "1", "--r", "1", "--n", "3", "--method", "bruteforce")[0] == 1
        assert run(capsys, "count", "--k", "1", "--r", "1", "--n", "3", "--method", "bruteforce", "--bound-n", "3")[0] == 0

    def test_formula_mismatch_fails_loudly(self, capsys, monkeypatch):
        monkeypatch.setattr(formulas, "count_large_kS", lambda k, d, n, lam: CountResult(0, "broken"))
        code, _, err = run(capsys, "count", "--k", "2", "--r", "2", "--n", "2")
        assert code == 1
        assert "disagrees" in err

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["count", "--k", "2", "--n", "2"])
        assert exc.value.code == 2

    def test_bad_residue_set(self, capsys):
        assert run(capsys, "count", "--k", "2", "--set", "3", "--n", "2")[0] == 1


class TestEnumerate:
    def test_k2(self, capsys):
        assert run(capsys, "enumerate", "--k", "2", "--r", "2", "--n", "1", "--class", "large")[1] == "ND\nNNE\n"

    def test_empty(self, capsys):
        assert run(capsys, "enumerate", "--k", "1", "--r", "1", "--n", "0")[1] == "\n"

    def test_small_schroder(self, capsys):
        out = run(capsys, "enumerate", "--k", "1", "--r", "1", "--n", "2", "--class", "small")[1]
        assert out.split() == ["NDE", "NENE", "NNEE"]

    def test_json(self, capsys):
        out = run(capsys, "enumerate", "--k", "2", "--r", "2", "--n", "1", "--format", "json")[1]
        assert json.loads(out.splitlines()[0]) == {"steps": "ND", "n": 1, "k": 2, "S": [2]}


class TestConvert:
    def test_from_sequence(self, capsys):
        code, out, _ = run(capsys, "convert", "--from", "sequence", "--input", "[0,4,5,5]", "--k", "2", "--r", "2", "--n", "4")
        doc = json.loads(out)
        assert code == 0
        assert doc["forest"] == [[[], [], []], [[[], [], [], [], [], []], [], []]]
        assert doc["type"] == [2, 1]
        assert doc["path"] == "NNNNNEEDNNE"
        assert doc["classes"] == ["large"]

    def test_from_path(self, capsys):
        doc = json.loads(run(capsys, "convert", "--from", "path", "--input", "NNE", "--k", "2", "--r", "2", "--n", "1")[1])
        assert doc["sequence"] == [0]

    def test_from_forest(self, capsys):
        doc = json.loads(run(capsys, "convert", "--from", "forest", "--input", "[[],[]]", "--k", "2", "--r", "2", "--n", "0")[1])
        assert doc["path"] == ""
        assert doc["classes"] == ["large", "small"]

    @pytest.mark.parametrize(
        "source, value",
        [("path", "NND"), ("sequence", "[5]"), ("forest", "[[[],[]],[]]"), ("sequence", "not json")],
    )
    def test_invalid(self, capsys, source, value):
        code, out, err = run(capsys, "convert", "--from", source, "--input", value, "--k", "2", "--r", "2", "--n", "1")
        assert code == 1
        assert out == "" and err.startswith("error:")


class TestSeries:
    def test_A(self, capsys):
        doc = json.loads(run(capsys, "series", "--k", "2", "--d", "1", "--N", "2", "--which", "A")[1])
        assert doc[2] == {"[1]": "1", "[1,1]": "2", "[2]": "1"}

    def test_B(self, capsys):
        assert json.loads(run(capsys, "series", "--k", "2", "--d", "1", "--N", "1", "--which", "B")[1])[1] == {"[]": "1"}

    def test_constant(self, capsys):
        assert json.loads(run(capsys, "series", "--k", "1", "--d", "1", "--N", "0", "--which", "AB")[1]) == [{"[]": "1"}]

    def test_bound(self, capsys):
        assert run(capsys, "series", "--k", "1", "--N", "9")[0] == 1

    def test_byte_stable(self, capsys):
        args = ("series", "--k", "3", "--d", "2", "--N", "5")
        assert run(capsys, *args)[1] == run(capsys, *args)[1]


class TestVerify:
    def test_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-k", "2", "--max-n", "4")
        assert code == 0
        assert out.strip().endswith("ALL PASS")
        assert "k=2 S={1,2}" in out

    def test_k1_n6(self, capsys):
        assert run(capsys, "verify", "--max-k", "1", "--max-n", "6")[0] == 0

    def test_singleton_family(self, capsys):
        out = run(capsys, "verify", "--max-k", "2", "--max-n", "3", "--families", "kr")[1]
        assert "S={1,2}" not in out

    def test_corrupted_formula(self, capsys, monkeypatch):
        real = formulas.count_large_kS

        def off_by_one(k, d, n, lam):
            value = real(k, d, n, lam)
            return CountResult(value + 1, "broken") if n == 3 else value

        monkeypatch.setattr(formulas, "count_large_kS", off_by_one)
        code, out, _ = run(capsys, "verify", "--max-k", "2", "--max-n", "3")
        assert code == 1
        assert "MISMATCH oracle-vs-formula: k=1 S={1} n=3 large" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fuss_schroder", "count", "--k", "1", "--r", "1", "--n", "2", "--type", "[1]"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "3\n"
