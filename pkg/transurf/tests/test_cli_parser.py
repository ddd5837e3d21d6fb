import json

import pytest

from transurf.cli import transurf_cli, transurf_parser
from transurf.expr_io import format_poly, parse_poly
from transurf.tests import samples


def run(capsys, *argv):
    """Run the cli; return (exit code, stdout, stderr)."""
    with pytest.raises(SystemExit) as exc:
        transurf_cli(list(argv))
    out = capsys.readouterr()
    return exc.value.code, out.out, out.err


class TestTransurfParser:
    def test_parser_initialization(self):
        """Verify that the parser correctly initializes with the program name 'TranSurf'"""
        parser = transurf_parser()
        assert parser.prog == "TranSurf", "The program name should be initialized as 'TranSurf'"

    def test_missing_command(self):
        parser = transurf_parser()
        with pytest.raises(SystemExit):
            parser.parse_args([])

    def test_verify_needs_both_curves(self):
        parser = transurf_parser()
        with pytest.raises(SystemExit):
            parser.parse_args(["verify", samples.QUADRIC, "--p1", samples.QUADRIC_P1])

    def test_bad_vars(self):
        """Names that are not three distinct identifiers are returned as None."""
        parser = transurf_parser()
        args = parser.parse_args(["analyze", "x+y", "--vars", "x,y,x"])
        assert args.vars is None

    def test_repeated_vector(self):
        parser = transurf_parser()
        args = parser.parse_args(["analyze", "x1", "--vector", "1,1,1", "--vector", "0,0,1"])
        assert args.vector == ["1,1,1", "0,0,1"]


class TestTransurfCli:
    @pytest.mark.parametrize(
        "f, p1, p2",
        [
            (samples.QUADRIC, samples.QUADRIC_P1, samples.QUADRIC_P2),
            (samples.SEPTIC, samples.SEPTIC_P1, samples.SEPTIC_P2),
        ],
    )
    def test_verify(self, capsys, f, p1, p2):
        code, out, _ = run(capsys, "verify", f, "--p1", p1, "--p2", p2)
        assert (code, out) == (0, "true\n")

    def test_verify_wrong_pair(self, capsys):
        code, out, err = run(capsys, "verify", samples.QUADRIC, "--p1", samples.QUADRIC_P1, "--p2", "t2,t2^2,0")
        assert (code, out) == (0, "false\n")
        assert "does not vanish" in err

    def test_analyze_cylinder(self, capsys):
        code, out, _ = run(capsys, "analyze", samples.CYLINDER, "--format", "structured")
        doc = json.loads(out)
        assert code == 0
        assert doc["classification"] == "cylinder"
        assert doc["direction"] == ["0", "0", "1"]

    def test_analyze_with_vector(self, capsys):
        code, out, _ = run(capsys, "analyze", samples.QUADRIC, "--vector", "1,1,1", "--format", "structured")
        doc = json.loads(out)
        assert code == 0
        assert doc["classification"] == "translational"
        assert doc["certificate"] == {"vector": ["1", "1", "1"], "s1": "1", "s2": "-3", "shift": "0"}

    def test_analyze_from_file(self, capsys, tmp_path):
        fp = tmp_path / "plane.txt"
        fp.write_text(samples.PLANE + "\n")
        code, out, _ = run(capsys, "analyze", "--file", str(fp))
        assert code == 0
        assert out.startswith("classification: plane\n")

    def test_other_variable_names(self, capsys):
        code, out, _ = run(capsys, "analyze", "(a-c)^2+b^2-1", "--vars", "a,b,c")
        assert code == 0
        assert out.startswith("classification: cylinder\n")

    @pytest.mark.parametrize(
        "argv",
        [
            ["analyze", "x1+*x2"],
            ["analyze", "x1^2*x2"],
            ["analyze"],
            ["analyze", "x1", "--vars", "a,a,b"],
            ["analyze", "x1", "--vector", "0,0,0"],
            ["analyze", "--file", "no/such/file.txt"],
        ],
    )
    def test_input_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2
        assert err

    def test_structured_error(self, capsys):
        code, out, _ = run(capsys, "analyze", "x1+*x2", "--format", "structured")
        assert code == 2
        assert json.loads(out)["error"] == "ExprSyntaxError"

    def test_not_a_curve(self, capsys):
        code, _, err = run(capsys, "curve-param", "x1-1", "x1+1")
        assert code == 3
        assert err.startswith("NotACurve")

    def test_curve_param(self, capsys):
        code, out, _ = run(capsys, "curve-param", "x2-x1^2", "x3-x1^3")
        assert (code, out) == (0, "curve: t, t^2, t^3\n")

    def test_implicitize_generic_parameter(self, capsys):
        code, out, _ = run(capsys, "implicitize", "--p1", "t,t,t^2", "--p2", "t,t^2,t^3")
        assert code == 0
        assert out == format_poly(parse_poly(samples.QUARTIC)) + "\n"

    def test_selftest(self, capsys):
        code, out, _ = run(capsys, "selftest", "--count", "1", "--seed", "2", "--format", "structured")
        doc = json.loads(out)
        assert code == 0
        assert doc["report"]["count"] == 1
        assert "seconds" not in doc["report"]

    @pytest.mark.parametrize(
        "argv",
        [
            ["analyze", samples.QUADRIC, "--vector", "1,1,1", "--format", "structured"],
            ["analyze", samples.QUADRIC, "--vector", "1,1,1", "--route", "both"],
            ["selftest", "--count", "2", "--seed", "5", "--format", "structured"],
        ],
    )
    def test_same_argv_same_output(self, capsys, argv):
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first[0] == 0
        assert first[1] == second[1]
