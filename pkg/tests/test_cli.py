import csv
import io
import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from gendawson.cli import build_grid, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def value_of(text):
    return float(dict(line.split(" ", 1) for line in text.strip().splitlines())["value"])


class TestEval:
    def test_quad_classical(self):
        code, out, _ = call("eval", "--b", "mono:1,2", "--x", "1", "--method", "quad")
        assert code == 0
        assert value_of(out) == pytest.approx(0.5380795069, abs=1e-10)
        assert "est_error" in out

    def test_zero_b(self):
        code, out, _ = call("eval", "--b", "poly:0", "--x", "2.5")
        assert code == 0 and value_of(out) == 2.5

    @pytest.mark.parametrize("method", ["series", "ode"])
    def test_other_methods(self, method):
        code, out, _ = call("eval", "--b", "poly:0,2", "--x", "0.5", "--method", method,
                            "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["method"] == {"series": "series", "ode": "ode"}[method]
        assert data["value"] == pytest.approx(0.4244363835, abs=1e-8)

    def test_family(self):
        code, out, _ = call("eval", "--family", "1,1,1,1", "--x", "0.7")
        assert code == 0
        assert value_of(out) == pytest.approx(0.50341469620859, abs=1e-12)

    def test_overflow_exit_one_json(self):
        code, out, err = call("eval", "--b", "poly:0,-2", "--x", "40", "--format", "json")
        assert code == 1
        assert json.loads(out)["error"] == "NumericalOverflowError"
        assert "NumericalOverflowError" in err

    def test_overflow_exit_one_text(self):
        code, out, err = call("eval", "--b", "poly:0,-2", "--x", "40")
        assert code == 1 and out == "" and err

    @pytest.mark.parametrize("argv", [
        ("eval", "--x", "1"),
        ("eval", "--b", "poly:0", "--family", "1,2,1,2", "--x", "1"),
        ("eval", "--b", "bogus", "--x", "1"),
        ("eval", "--b", "poly:0", "--x", "abc"),
        ("eval", "--b", "poly:0", "--x", "1", "--tol", "3"),
        ("eval", "--family", "1,2,1", "--x", "1"),
        ("nosuch",),
        (),
    ])
    def test_usage_errors(self, argv):
        code, out, err = call(*argv)
        assert code == 2 and "usage" in err and out == ""


class TestTable:
    def test_csv_rows_and_roundtrip(self):
        code, out, _ = call("table", "--b", "poly:0,2", "--from", "0", "--to", "1", "--step", "0.25")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [float(r["x"]) for r in rows] == [0.0, 0.25, 0.5, 0.75, 1.0]
        for r in rows[1:]:
            _, single, _ = call("eval", "--b", "poly:0,2", "--x", r["x"])
            assert value_of(single) == float(r["value"])

    def test_json(self):
        code, out, _ = call("table", "--b", "poly:1", "--from", "-1", "--to", "1", "--step", "0.5",
                            "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["b_spec"] == "poly:1" and len(data["rows"]) == 5

    def test_deterministic(self):
        argv = ("table", "--b", "poly:0,0,3", "--from", "-1", "--to", "1", "--step", "0.1")
        assert call(*argv)[1] == call(*argv)[1]

    def test_bad_direction(self):
        assert call("table", "--b", "poly:0", "--from", "1", "--to", "0", "--step", "0.1")[0] == 2


class TestGrid:
    def test_inclusive_end(self):
        assert build_grid(0.0, 1.0, 0.1)[-1] == 1.0
        assert len(build_grid(0.0, 1.0, 0.1)) == 11

    def test_end_not_on_grid(self):
        assert build_grid(0.0, 1.0, 0.3) == [0.0, 0.3, 0.6, 0.8999999999999999]

    def test_single_point(self):
        assert build_grid(0.5, 0.5, 0.1) == [0.5]

    def test_descending(self):
        assert build_grid(1.0, 0.0, -0.5) == [1.0, 0.5, 0.0]


class TestSeries:
    def test_rational(self):
        code, out, _ = call("series", "--b", "poly:0,2", "--order", "5", "--rational")
        data = json.loads(out)
        assert code == 0
        assert data["derivatives"] == ["0", "1", "0", "-4", "0", "32"]
        assert data["taylor_coefficients"][3] == "-2/3"
        assert data["b_spec"] == "poly:0,2" and data["order"] == 5

    def test_floating(self):
        code, out, _ = call("series", "--b", "poly:0,2", "--order", "5")
        data = json.loads(out)
        assert data["derivatives"] == ["0.0", "1.0", "0.0", "-4.0", "0.0", "32.0"]
        assert float(data["taylor_coefficients"][5]) == 32 / 120

    def test_default_order(self):
        data = json.loads(call("series", "--b", "mono:1,3")[1])
        assert data["order"] == 16 and len(data["derivatives"]) == 17


class TestCofactor:
    def test_closed_form_only(self):
        code, out, _ = call("cofactor", "--matrix", str(FIXTURES / "m3_small.txt"), "--i", "1", "--n", "2")
        assert code == 0 and out == "closed_form 9\n"  # 2*7 - 5

    @pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.txt")), ids=lambda p: p.name)
    def test_fixture_corpus_all_equal(self, path):
        k = int(path.read_text().split()[0]) if not path.read_text().startswith("#") else 4
        for i in range(1, k):
            for n in range(1, k - i + 1):
                code, out, _ = call("cofactor", "--matrix", str(path), "--i", str(i), "--n", str(n),
                                    "--oracle")
                assert code == 0
                assert out.strip().splitlines()[-1] == "verdict EQUAL"

    def test_bad_index(self):
        code, _, err = call("cofactor", "--matrix", str(FIXTURES / "m3_small.txt"), "--i", "3", "--n", "1")
        assert code == 2 and err

    def test_missing_file(self, tmp_path):
        assert call("cofactor", "--matrix", str(tmp_path / "none.txt"), "--i", "1", "--n", "1")[0] == 2

    def test_invalid_matrix(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("2\n1 1\n0 1\n")
        assert call("cofactor", "--matrix", str(bad), "--i", "1", "--n", "1")[0] == 2


class TestVerify:
    def test_csv(self):
        code, out, _ = call("verify", "--b", "poly:0,2", "--grid", "0.25:1:0.25")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and len(rows) == 4
        assert all(r["flag"] == "ok" for r in rows)
        assert list(rows[0]) == ["x", "quad", "ode", "series", "resid_ode", "resid_series",
                                 "resid_identity", "flag"]

    def test_json_with_error_row(self):
        code, out, _ = call("verify", "--b", "poly:0,-2", "--grid", "0:40:20", "--format", "json")
        data = json.loads(out)
        assert code == 0 and len(data) == 3
        assert data[2]["flag"].startswith("error") and data[0]["flag"] == "ok"

    def test_bad_grid(self):
        assert call("verify", "--b", "poly:0", "--grid", "0:1")[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gendawson.cli", "series", "--b", "poly:0", "--order", "2",
                           "--rational"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["derivatives"] == ["0", "1", "0"]
