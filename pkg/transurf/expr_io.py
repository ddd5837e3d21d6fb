#!/usr/bin/env python

__doc__ = """
Module: expr_io.py

Text in and text out.

Grammar (whitespace is insignificant, `*` is explicit):
    expr    :: term [ ('+' | '-') term ]*
    term    :: unary [ ('*' | '/') unary ]*
    unary   :: [ '+' | '-' ]* power
    power   :: atom [ '^' unary ]          (right associative)
    atom    :: integer | name | '(' expr ')'
    name    :: [A-Za-z][A-Za-z0-9_]*

Rational literals are quotients of integers ("3/4"). Exponents must evaluate to
nonnegative integer constants.

Canonical text lists terms in descending graded-lex order, e.g.
"5*x1^2-6*x1*x2+2*x2^2+x3"; a rational function with a nonconstant denominator
is written "(num)/(den)".

The structured output is a JSON document (ResultDocument) whose keys always come
in the same order; see README.md for the schema.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import json
import logging
from typing import List, Optional, Sequence, Tuple, Union

import pyparsing as pp

from transurf.curvelib import CurveParam
from transurf.errors import ExprSyntaxError, InputRejected, TransurfError
from transurf.polycore import SURFACE_VARS, MPoly, RatFn, VarSet
from transurf.translational import Cylinder, Plane, Translational


logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()


SCHEMA_VERSION = 1
IDENT_PATTERN = r"[A-Za-z][A-Za-z0-9_]*"


@dataclass(frozen=True)
class ExprSource:
    """Expression text with the variable names it may use.
    Attributes:
      text (str): the expression.
      var_names (tuple): allowed variable names, in VarSet order.
    """

    text: str
    var_names: Tuple[str, ...] = SURFACE_VARS.names

    @property
    def vars(self) -> VarSet:
        return VarSet(tuple(self.var_names))


Source = Union[ExprSource, str]


def _as_source(src: Source, default: VarSet) -> ExprSource:
    if isinstance(src, ExprSource):
        return src
    return ExprSource(src, default.names)


# grammar -----------------------------------------------------------------
def _fold(s, loc, toks):
    acc = toks[0]
    for op, rhs in zip(toks[1::2], toks[2::2]):
        try:
            if op == "+":
                acc = acc + rhs
            elif op == "-":
                acc = acc - rhs
            elif op == "*":
                acc = acc * rhs
            else:
                acc = acc / rhs
        except TransurfError:
            raise pp.ParseFatalException(s, loc, "division by zero") from None
    return acc


def _signs(s, loc, toks):
    value = toks[-1]
    for sign in toks[:-1]:
        if sign == "-":
            value = -value
    return value


def _power(s, loc, toks):
    if len(toks) == 1:
        return toks[0]
    base, exponent = toks
    if not exponent.is_constant:
        raise pp.ParseFatalException(s, loc, "exponent must be a constant")
    k = exponent.constant_value()
    if k.denominator != 1 or k < 0:
        raise pp.ParseFatalException(s, loc, f"negative or non-integer exponent {k}")
    return base ** int(k)


@lru_cache(maxsize=32)
def _grammar(vars: VarSet) -> Tuple[pp.ParserElement, pp.ParserElement]:
    """(single expression, comma separated triple) parsers over `vars`."""

    def number(s, loc, toks):
        return RatFn.const(vars, int(toks[0]))

    def variable(s, loc, toks):
        name = toks[0]
        if name not in vars.names:
            raise pp.ParseFatalException(s, loc, f"unknown variable {name!r}; expected one of {', '.join(vars.names)}")
        return RatFn.var(vars, vars.names.index(name))

    integer = pp.Regex(r"\d+").set_parse_action(number)
    ident = pp.Regex(IDENT_PATTERN).set_parse_action(variable)
    lpar, rpar = pp.Suppress("("), pp.Suppress(")")

    expr = pp.Forward()
    unary = pp.Forward()
    atom = integer | ident | (lpar + expr + rpar)
    power = (atom + pp.Optional(pp.Suppress("^") + unary)).set_parse_action(_power)
    unary <<= (pp.ZeroOrMore(pp.one_of("+ -")) + power).set_parse_action(_signs)
    term = (unary + pp.ZeroOrMore(pp.one_of("* /") + unary)).set_parse_action(_fold)
    expr <<= (term + pp.ZeroOrMore(pp.one_of("+ -") + term)).set_parse_action(_fold)

    comma = pp.Suppress(",")
    return expr, expr + comma + expr + comma + expr


def _parse(grammar: pp.ParserElement, src: ExprSource) -> List[RatFn]:
    try:
        return list(grammar.parse_string(src.text, parse_all=True))
    except pp.ParseBaseException as err:
        logger.error(f"Cannot parse {src.text!r}: {err.msg}")
        raise ExprSyntaxError(err.msg, line=err.lineno, col=err.col, text=src.text) from None


def parse_ratfn(src: Source, vars: VarSet = SURFACE_VARS) -> RatFn:
    src = _as_source(src, vars)
    return _parse(_grammar(src.vars)[0], src)[0]


def parse_poly(src: Source, vars: VarSet = SURFACE_VARS) -> MPoly:
    """Polynomial over the source's variables (x1, x2, x3 unless stated)."""
    value = parse_ratfn(src, vars)
    if not value.is_polynomial:
        src = _as_source(src, vars)
        msg = f"{src.text!r} is not a polynomial."
        logger.error(msg)
        raise InputRejected(msg)
    return value.num * (1 / value.den.constant_value())


def parse_param_triple(src: Source, param: str = "t") -> CurveParam:
    """Three comma separated rational functions of the single parameter `param`."""
    tv = VarSet((param,))
    src = ExprSource(src.text if isinstance(src, ExprSource) else src, tv.names)
    return CurveParam(tuple(_parse(_grammar(tv)[1], src)))


def parse_vector(text: str) -> Tuple[Fraction, Fraction, Fraction]:
    """'1,1/2,0' -> (1, 1/2, 0)."""
    parts = [p.strip() for p in text.split(",")]
    try:
        vec = tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError):
        vec = ()
    if len(vec) != 3 or not any(vec):
        msg = f"Expected three rationals, not all zero; got {text!r}."
        logger.error(msg)
        raise InputRejected(msg)
    return vec


# canonical text ----------------------------------------------------------
def format_rational(q) -> str:
    return str(Fraction(q))


def format_poly(p: MPoly) -> str:
    if p.is_zero:
        return "0"
    out = ""
    for m, c in p.terms.items():
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(p.vars.names, m) if e)
        if not mono:
            body = format_rational(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{format_rational(abs(c))}*{mono}"
        out += ("-" if c < 0 else "+") + body
    return out[1:] if out[0] == "+" else out


def format_ratfn(r: RatFn) -> str:
    if r.den.is_constant:
        return format_poly(r.num * (1 / r.den.constant_value()))
    return f"({format_poly(r.num)})/({format_poly(r.den)})"


def format_curve(p: CurveParam) -> str:
    return ", ".join(format_ratfn(c) for c in p.coords)


def curve_pairs(p: CurveParam) -> Tuple[Tuple[str, str], ...]:
    return tuple((format_poly(c.num), format_poly(c.den)) for c in p.coords)


def _pair_text(pair: Sequence[str]) -> str:
    num, den = pair
    return num if den == "1" else f"({num})/({den})"


# structured documents ----------------------------------------------------
CERTIFICATE_KEYS = ("vector", "s1", "s2", "shift")


@dataclass
class ResultDocument:
    """Serializable outcome of one cli command.
    Attributes:
      command (str): the command that produced the document.
      classification (str): plane | cylinder | translational | undecided (analyze only).
      p1, p2 (tuple): coordinate (num, den) pairs of the parametrization, canonical text.
      direction (tuple): cylinder direction, three rational strings.
      certificate (dict): vector, s1, s2 (None on the general route) and shift.
      verified (bool): verdict of verify.
      polynomial (str): implicit polynomial of implicitize.
      curve (tuple): parametrization of curve-param, (num, den) pairs.
      report (dict): selftest summary.
      diagnostics (list): evidence and chosen components, one string each.
    """

    command: str = "analyze"
    classification: Optional[str] = None
    p1: Optional[Tuple[Tuple[str, str], ...]] = None
    p2: Optional[Tuple[Tuple[str, str], ...]] = None
    direction: Optional[Tuple[str, str, str]] = None
    certificate: Optional[dict] = None
    verified: Optional[bool] = None
    polynomial: Optional[str] = None
    curve: Optional[Tuple[Tuple[str, str], ...]] = None
    report: Optional[dict] = None
    diagnostics: List[str] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        out = {"schema_version": self.schema_version, "command": self.command}
        if self.classification is not None:
            out["classification"] = self.classification
        for key in ("p1", "p2", "curve"):
            value = getattr(self, key)
            if value is not None:
                out[key] = [{"num": num, "den": den} for num, den in value]
        if self.direction is not None:
            out["direction"] = list(self.direction)
        if self.certificate is not None:
            cert = {k: self.certificate.get(k) for k in CERTIFICATE_KEYS}
            cert["vector"] = list(cert["vector"])
            out["certificate"] = cert
        if self.verified is not None:
            out["verified"] = self.verified
        if self.polynomial is not None:
            out["polynomial"] = self.polynomial
        if self.report is not None:
            out["report"] = self.report
        out["diagnostics"] = list(self.diagnostics)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ResultDocument":
        data = json.loads(text)

        def pairs(key):
            value = data.get(key)
            return None if value is None else tuple((d["num"], d["den"]) for d in value)

        direction = data.get("direction")
        return cls(
            command=data.get("command", "analyze"),
            classification=data.get("classification"),
            p1=pairs("p1"),
            p2=pairs("p2"),
            direction=None if direction is None else tuple(direction),
            certificate=data.get("certificate"),
            verified=data.get("verified"),
            polynomial=data.get("polynomial"),
            curve=pairs("curve"),
            report=data.get("report"),
            diagnostics=list(data.get("diagnostics", [])),
            schema_version=data.get("schema_version", SCHEMA_VERSION),
        )

    def to_text(self) -> str:
        lines = []
        if self.classification is not None:
            lines.append(f"classification: {self.classification}")
        for key in ("p1", "p2", "curve"):
            value = getattr(self, key)
            if value is not None:
                lines.append(f"{key}: " + ", ".join(_pair_text(p) for p in value))
        if self.direction is not None:
            lines.append("direction: " + ", ".join(self.direction))
        if self.certificate is not None:
            cert = self.certificate
            lines.append("vector: " + ", ".join(cert["vector"]))
            if cert.get("s1") is not None:
                lines.append(f"pair: {cert['s1']}, {cert['s2']}")
            lines.append(f"shift: {cert['shift']}")
        if self.verified is not None:
            lines.append("true" if self.verified else "false")
        if self.polynomial is not None:
            lines.append(self.polynomial)
        if self.report is not None:
            lines.extend(f"{k}: {v}" for k, v in self.report.items())
        return "\n".join(lines) + "\n"


def document_from_classification(result) -> ResultDocument:

    doc = ResultDocument(command="analyze", classification=result.tag, diagnostics=list(result.diagnostics))
    if isinstance(result, (Plane, Translational)):
        doc.p1 = curve_pairs(result.surface.p1)
        doc.p2 = curve_pairs(result.surface.p2)
    if isinstance(result, Cylinder):
        doc.direction = tuple(format_rational(a) for a in result.direction)
    if isinstance(result, Translational):
        cert = result.certificate
        doc.certificate = {
            "vector": [format_rational(a) for a in cert.vector],
            "s1": None if cert.s1 is None else format_rational(cert.s1),
            "s2": None if cert.s2 is None else format_rational(cert.s2),
            "shift": format_rational(cert.shift),
        }
    return doc


def report_document(report) -> ResultDocument:
    """selftest summary; `report` is a genlab.RoundtripReport."""
    return ResultDocument(command="selftest", report=report.summary(), diagnostics=list(report.failures()))


def render(value, fmt: str = "text") -> str:
    """Canonical text or JSON of an MPoly, RatFn, CurveParam or ResultDocument."""
    if isinstance(value, ResultDocument):
        return value.to_json() if fmt == "structured" else value.to_text()
    if isinstance(value, MPoly):
        value = RatFn.from_poly(value)
    if isinstance(value, RatFn):
        if fmt == "structured":
            return json.dumps({"num": format_poly(value.num), "den": format_poly(value.den)})
        return format_ratfn(value)
    if isinstance(value, CurveParam):
        if fmt == "structured":
            return json.dumps([{"num": n, "den": d} for n, d in curve_pairs(value)])
        return format_curve(value)
    raise TypeError(f"Cannot render {type(value).__name__}.")
