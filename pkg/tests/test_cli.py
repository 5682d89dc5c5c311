"""Tests for cli.py -- subcommands, output formats and exit codes."""

from __future__ import annotations

import json

import pytest

from xlaguerre.cli import build_parser, main, parse_floats, parse_int_range, parse_int_range_list, read_gen_csv
from xlaguerre.core import parse_xpoly
from xlaguerre.errors import UsageError
from xlaguerre.exceptional import xlag3


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestArgumentHelpers:
    def test_int_range(self):
        assert parse_int_range("3") == [3]
        assert parse_int_range("1..4") == [1, 2, 3, 4]

    @pytest.mark.parametrize("text", ["4..1", "a", "1..x"])
    def test_bad_int_range(self, text):
        with pytest.raises(UsageError):
            parse_int_range(text)

    def test_range_list_and_floats(self):
        assert parse_int_range_list("10,20,50..52") == [10, 20, 50, 51, 52]
        assert parse_floats("-0.5, -0.25") == [-0.5, -0.25]
        with pytest.raises(UsageError):
            parse_floats("0.5,x")

    def test_parser_errors_raise(self):
        with pytest.raises(UsageError):
            build_parser().parse_args(["gen", "--family", "III"])


class TestGen:
    def test_single_polynomial(self, capsys):
        code, out, _ = _run(capsys, "gen", "--family", "III", "--m", "1", "--n", "2")
        assert code == 0
        assert out == "x^2 - 2*a*x + a*(a+1)\n"

    def test_range_skips_excluded_degrees(self, capsys):
        code, out, _ = _run(capsys, "gen", "--family", "III", "--m", "1", "--n", "0..3")
        assert code == 0
        lines = out.splitlines()
        assert [line.split(":")[0] for line in lines] == ["n=0", "n=2", "n=3"]
        assert lines[0] == "n=0: 1"

    def test_excluded_degree_exit_2(self, capsys):
        code, out, err = _run(capsys, "gen", "--family", "III", "--m", "2", "--n", "1")
        assert code == 2
        assert out == ""
        assert "degree 1 excluded for Type III, m=2" in err

    def test_unknown_family_exit_2(self, capsys):
        code, _, err = _run(capsys, "gen", "--family", "IV", "--m", "1", "--n", "2")
        assert code == 2
        assert "unknown family" in err

    def test_json(self, capsys):
        code, out, _ = _run(capsys, "gen", "--family", "I", "--m", "1", "--n", "1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["family"] == "I"
        assert payload["polynomials"][0]["n"] == 1
        assert parse_xpoly(payload["polynomials"][0]["text"]) == parse_xpoly("1 + a + x")

    def test_csv_reads_back(self, capsys):
        code, out, _ = _run(capsys, "gen", "--family", "III", "--m", "2", "--n", "3..5", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "family,m,n,power,coefficient"
        table = read_gen_csv(out)
        assert set(table) == {("III", 2, 3), ("III", 2, 4), ("III", 2, 5)}
        for (_, m, n), p in table.items():
            assert p == xlag3(m, n)

    def test_expanded(self, capsys):
        _, out, _ = _run(capsys, "gen", "--family", "III", "--m", "1", "--n", "2", "--expanded")
        assert out == "x^2 - 2*a*x + (a^2+a)\n"

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "p.txt"
        code, out, _ = _run(capsys, "gen", "--family", "III", "--m", "1", "--n", "2", "--out", str(path))
        assert code == 0
        assert out == ""
        assert path.read_text() == "x^2 - 2*a*x + a*(a+1)\n"


class TestVerify:
    def test_appendix_suite(self, capsys, no_color):
        code, out, _ = _run(capsys, "verify", "--suite", "appendix")
        assert code == 0
        lines = out.splitlines()
        assert lines[-1] == "15 passed, 0 failed, 0 skipped"
        assert lines[0] == "PASS appendix/m=1/n=00"
        assert "\033[" not in out

    def test_json_report(self, capsys):
        code, out, _ = _run(capsys, "verify", "--suite", "appendix", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True
        assert report["command"] == "verify"
        assert len(report["records"]) == 15

    def test_output_is_stable_across_worker_counts(self, capsys):
        _, one, _ = _run(capsys, "verify", "--suite", "appendix", "--format", "json", "--jobs", "1")
        _, many, _ = _run(capsys, "verify", "--suite", "appendix", "--format", "json", "--jobs", "4")
        assert one == many

    def test_csv_report(self, capsys):
        _, out, _ = _run(capsys, "verify", "--suite", "appendix", "--format", "csv")
        rows = out.splitlines()
        assert rows[0] == "name,status,details"
        assert rows[1].startswith("appendix/m=1/n=00,pass,")

    def test_norms_alias(self, capsys):
        code, out, _ = _run(
            capsys, "norms", "--family", "III", "--m", "1", "--alpha", "-0.5", "--nmax", "3", "--format", "json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["command"] == "norms"
        assert [r["name"] for r in report["records"]] == [
            "norms/III/m=1/a=-0.5/n=00",
            "norms/III/m=1/a=-0.5/n=02",
            "norms/III/m=1/a=-0.5/n=03",
        ]

    def test_metrics_out(self, capsys, tmp_path):
        path = tmp_path / "m.prom"
        code, _, _ = _run(capsys, "verify", "--suite", "appendix", "--metrics-out", str(path))
        assert code == 0
        assert "xlaguerre_checks_total" in path.read_text()

    def test_unknown_suite_exit_2(self, capsys):
        code, _, err = _run(capsys, "verify", "--suite", "bogus")
        assert code == 2
        assert "error:" in err


class TestRoots:
    def test_type3_json(self, capsys):
        code, out, _ = _run(capsys, "roots", "--m", "1", "--k", "1", "--alpha", "-0.5", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["verdict"] == "pass"
        assert report["positive_roots"] == pytest.approx([0.2071067811865475], abs=1e-12)
        assert report["negative_roots"] == pytest.approx([-1.2071067811865475], abs=1e-12)

    def test_text(self, capsys):
        code, out, _ = _run(capsys, "roots", "--m", "2", "--k", "1..2", "--alpha", "-0.25")
        assert code == 0
        assert out.splitlines()[0] == "Type III m=2 n=3 a=-0.25: pass"

    def test_alpha_outside_range_exit_2(self, capsys):
        code, _, err = _run(capsys, "roots", "--m", "1", "--k", "1", "--alpha", "0.5")
        assert code == 2
        assert "Type III" in err


class TestSpectral:
    def test_text(self, capsys):
        code, out, _ = _run(capsys, "spectral", "--op", "T_III", "--m", "1", "--alpha", "-0.5", "--cutoff", "4")
        assert code == 0
        assert out.splitlines() == [
            "operator: T_III (m=1, a=-0.5)",
            "endpoint 0: LC",
            "endpoint inf: LP",
            "deficiency index: (1,1)",
            "indicial roots: 0, 0.5",
            "boundary condition: lim x^{a+1} f' = 0",
            "spectrum: -1.5 (n=0), 0.5 (n=2), 1.5 (n=3), 2.5 (n=4), ...",
        ]

    def test_json(self, capsys):
        _, out, _ = _run(capsys, "spectral", "--op", "S_I", "--m", "1", "--alpha", "0.5", "--format", "json")
        data = json.loads(out)
        assert data["boundary_condition"] == "lim (x f' + a f) = 0"
        assert [s["eigenvalue"] for s in data["spectrum"]][:3] == [-1.5, 0.5, 1.5]

    def test_csv(self, capsys):
        _, out, _ = _run(capsys, "spectral", "--op", "T_I", "--m", "3", "--alpha", "2", "--cutoff", "3", "--format", "csv")
        assert out.splitlines() == [
            "operator,m,alpha,n,eigenvalue",
            "T_I,3,2.0,3,0",
            "T_I,3,2.0,4,1",
            "T_I,3,2.0,5,2",
        ]

    def test_unknown_operator_exit_2(self, capsys):
        code, _, err = _run(capsys, "spectral", "--op", "T_V", "--m", "1", "--alpha", "0.5")
        assert code == 2
        assert "unknown operator" in err

    def test_alpha_zero_exit_2(self, capsys):
        code, _, _ = _run(capsys, "spectral", "--op", "T_II", "--m", "0", "--alpha", "0")
        assert code == 2


class TestSchema:
    def test_prints_schema(self, capsys):
        code, out, _ = _run(capsys, "schema")
        assert code == 0
        assert json.loads(out)["title"] == "Report"
