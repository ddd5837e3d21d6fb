#!/usr/bin/env python

from fractions import Fraction
import json

from hypothesis import given, settings
import pytest

from transurf.errors import ExprSyntaxError, InputRejected
from transurf.expr_io import (
    ExprSource,
    ResultDocument,
    format_curve,
    format_poly,
    format_ratfn,
    parse_param_triple,
    parse_poly,
    parse_ratfn,
    parse_vector,
    render,
)
from transurf.polycore import MPoly, VarSet
from transurf.tests import samples
from transurf.tests.strategies import expressions, polys


class TestParse:
    def test_canonical_text(self):
        assert format_poly(parse_poly(samples.QUADRIC)) == samples.QUADRIC_CANONICAL

    def test_precedence(self):
        assert parse_poly("2^3^2") == parse_poly("512")
        assert parse_poly("-x1^2") == parse_poly("0-x1*x1")
        assert parse_poly("x1--x2") == parse_poly("x1+x2")
        assert parse_poly("6/4*x1") == parse_poly("3*x1/2")

    def test_whitespace(self):
        assert parse_poly(" x1 *  x2 +\n3 ") == parse_poly("x1*x2+3")

    def test_other_names(self):
        p = parse_poly(ExprSource("a*b-c", ("a", "b", "c")))
        assert p.vars == VarSet(("a", "b", "c"))
        assert format_poly(p) == "a*b-c"

    def test_unknown_variable(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse_poly("x1+y")
        assert exc.value.col == 4

    @pytest.mark.parametrize("text", ["x1+", "2x1", "(x1", "x1**2", ""])
    def test_syntax_errors(self, text):
        with pytest.raises(ExprSyntaxError):
            parse_ratfn(text)

    @pytest.mark.parametrize("text", ["x1^x2", "x1^-1", "x1^(1/2)", "1/(x1-x1)"])
    def test_rejected_values(self, text):
        with pytest.raises(ExprSyntaxError):
            parse_ratfn(text)

    def test_not_a_polynomial(self):
        with pytest.raises(InputRejected):
            parse_poly("1/x1")
        assert parse_ratfn("1/x1").den == parse_poly("x1")


class TestTriplesAndVectors:
    def test_param_triple(self):
        p = parse_param_triple(samples.SEPTIC_P1, "t1")
        assert p.param == "t1"
        assert format_curve(p) == "t1, (t1^2+1)/(t1^2), (1)/(t1)"

    def test_constant_triple_is_data(self):
        p = parse_param_triple("0,0,0")
        assert p.is_constant

    def test_triple_arity(self):
        with pytest.raises(ExprSyntaxError):
            parse_param_triple("t,t")

    def test_vector(self):
        assert parse_vector("1, 1/2, 0") == (1, Fraction(1, 2), 0)
        for bad in ("0,0,0", "1,2", "1,a,2", "1/0,1,1"):
            with pytest.raises(InputRejected):
                parse_vector(bad)


class TestFormat:
    def test_rational_coefficients(self):
        r = parse_ratfn("-(2*t^2+2*t+1)/2", VarSet(("t",)))
        assert format_ratfn(r) == "-t^2-t-1/2"

    def test_zero(self):
        assert format_poly(MPoly.zero(VarSet(("t",)))) == "0"

    def test_render_structured(self):
        r = parse_ratfn("(x1+1)/(2*x2)")
        assert json.loads(render(r, "structured")) == {"num": "1/2*x1+1/2", "den": "x2"}
        assert render(r) == "(1/2*x1+1/2)/(x2)"


class TestResultDocument:
    def test_key_order(self):
        doc = ResultDocument(
            classification="translational",
            p1=(("t1", "1"),) * 3,
            p2=(("t2", "1"),) * 3,
            certificate={"vector": ["1", "1", "1"], "s1": "1", "s2": "-3", "shift": "0"},
            diagnostics=["vector (1, 1, 1): accepted (shortcut)"],
        )
        data = json.loads(doc.to_json())
        assert list(data) == ["schema_version", "command", "classification", "p1", "p2", "certificate", "diagnostics"]
        assert list(data["certificate"]) == ["vector", "s1", "s2", "shift"]
        assert data["p1"][0] == {"num": "t1", "den": "1"}

    def test_from_json(self):
        doc = ResultDocument(command="verify", p1=(("t1", "1"),) * 3, p2=(("t2", "1"),) * 3, verified=False,
                             diagnostics=["f does not vanish identically on p1 + p2"])
        assert ResultDocument.from_json(doc.to_json()) == doc

    def test_text(self):
        doc = ResultDocument(command="verify", verified=True)
        assert doc.to_text() == "true\n"
        cyl = ResultDocument(classification="cylinder", direction=("0", "0", "1"))
        assert cyl.to_text() == "classification: cylinder\ndirection: 0, 0, 1\n"

    def test_json_is_stable(self):
        doc = ResultDocument(
            classification="translational",
            p1=(("t1", "1"), ("2*t1+1/2", "1"), ("-t1^2-t1-1/2", "1")),
            p2=(("t2", "1"), ("t2", "1"), ("-t2^2+t2", "1")),
            certificate={"vector": ["1", "1", "1"], "s1": "1", "s2": "-3", "shift": "0"},
            report={"count": 3, "passed": 2, "failed": 1, "failing_seeds": [7]},
            diagnostics=["vector (1, 1, 1), C1 component 0: accepted (shortcut)"],
        )
        text = doc.to_json()
        assert ResultDocument.from_json(text).to_json() == text


class TestRoundTrip:
    @settings(max_examples=100, deadline=None)
    @given(expressions)
    def test_render_then_parse(self, text):
        r = parse_ratfn(text)
        assert parse_ratfn(render(r)) == r
        assert render(parse_ratfn(render(r))) == render(r)

    @settings(max_examples=50, deadline=None)
    @given(polys(max_degree=4))
    def test_canonical_text_is_fixed(self, p):
        text = format_poly(p)
        assert parse_poly(text) == p
        assert format_poly(parse_poly(text)) == text
