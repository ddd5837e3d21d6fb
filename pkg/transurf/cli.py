#!/usr/bin/env python

__doc__ = """
Command line interface for the TranSurf tool, which decides whether an algebraic
surface f(x1, x2, x3) = 0 admits a translational parametrization
P(t1, t2) = P1(t1) + P2(t2), and computes one with its certificate.

Commands:
 * analyze <f>: classify f as plane, cylinder, translational or undecided.
 * verify <f> --p1 <triple> --p2 <triple>: check f(P1(t1) + P2(t2)) == 0 exactly.
 * implicitize --p1 <triple> --p2 <triple>: implicit equation of P1 + P2.
 * curve-param <g1> <g2>: rational parametrization of the space curve g1 = g2 = 0.
 * selftest: round trip over seeded random translational instances.

Options (all commands):
  --format (text): 'text' or 'structured' (JSON document, see README.md).
  --vars (x1,x2,x3): comma-separated names of the three surface variables.
  --vector-budget (25), --pair-budget (10), --degree-budget (40),
  --conic-height (20): search budgets.
  --seed (0): seed of every pseudo-random stream.
  --route (shortcut): C2 route, one of shortcut, general, both.
  --vector a1,a2,a3: force a candidate vector; repeatable.
 Input options:
  --file: read the polynomial from a file instead of the argument.
  --p1, --p2: comma-separated coordinate triples in t1 (resp. t2); 't' is accepted too.
 selftest options:
  --count (10): number of instances.
  --family1, --family2 (polynomial-graph): instance families.

Exit codes: 0 = completed (the classification is in the output), 2 = input error,
3 = unsupported input or exhausted budget, 4 = internal error.

Usage:
 >TranSurf analyze "x3+5*x1^2-6*x1*x2+2*x2^2"
 >TranSurf verify "x3+5*x1^2-6*x1*x2+2*x2^2" --p1 "t1,(4*t1+1)/2,-(2*t1^2+2*t1+1)/2" --p2 "t2,t2,-t2^2+t2"
 >TranSurf implicitize --p1 "t,t,t^2" --p2 "t,t^2,t^3" --format structured
 >TranSurf curve-param "x2-x1^2" "x3-x1^3"
 >TranSurf selftest --count 20 --seed 7
"""


from argparse import ArgumentParser, Namespace, RawDescriptionHelpFormatter
import json
import logging
from pathlib import Path
import sys
from typing import Tuple, Union

from transurf import cli_opts
from transurf.config import DEFAULT_CONFIG, ROUTES, Config
from transurf.curvelib import CurveParam, parametrize_space_curve, surface_system
from transurf.errors import ExprSyntaxError, InputRejected, TransurfError
from transurf.expr_io import (
    ExprSource,
    ResultDocument,
    curve_pairs,
    document_from_classification,
    format_poly,
    parse_param_triple,
    parse_poly,
    parse_vector,
    report_document,
)
from transurf.genlab import FAMILIES, InstanceSpec, implicitize, roundtrip_check
from transurf.polycore import SURFACE_VARS, MPoly, VarSet
from transurf.translational import SurfaceParam, classify_surface, has_surface_rank, verify_surface_param


CLI_NAME = "TranSurf"
logger = logging.getLogger(__name__)


# error msg as fstring:
ERR_NO_POLY = "No input polynomial: pass it as an argument or with --file."
ERR_BOTH_POLY = "Pass the polynomial either as an argument or with --file, not both."
ERR_FILE_NOT_FOUND = "File not found: {}"
ERR_VARS = "--vars expects three distinct comma-separated names."


def arg_var_names(text: str) -> Union[VarSet, None]:
    """Return None if `text` is not three distinct names."""
    names = tuple(n.strip() for n in text.split(","))
    if len(names) != 3 or len(set(names)) != 3 or not all(n.isidentifier() for n in names):
        return None
    return VarSet(names)


def config_from_args(args: Namespace) -> Config:
    return DEFAULT_CONFIG.with_changes(
        vector_budget=args.vector_budget,
        pair_budget=args.pair_budget,
        degree_budget=args.degree_budget,
        conic_point_height=args.conic_height,
        seed=args.seed,
        route=args.route,
        vectors=tuple(parse_vector(v) for v in args.vector or ()),
    )


def read_poly_text(args: Namespace) -> str:
    """Polynomial text from the positional argument or from --file."""
    inline = getattr(args, "poly", None)
    if args.file is not None:
        if inline is not None:
            logger.error(ERR_BOTH_POLY)
            raise InputRejected(ERR_BOTH_POLY)
        fp = Path(args.file)
        if not fp.exists():
            logger.error(ERR_FILE_NOT_FOUND.format(fp))
            raise InputRejected(ERR_FILE_NOT_FOUND.format(fp))
        return fp.read_text().strip()

    if inline is None:
        logger.error(ERR_NO_POLY)
        raise InputRejected(ERR_NO_POLY)
    return inline


def _user_poly(text: str, vars: VarSet) -> MPoly:
    """Parse over the user's names; the result lives over x1, x2, x3."""
    p = parse_poly(ExprSource(text, vars.names), vars)
    return p.embed(SURFACE_VARS, dict(zip(vars.names, SURFACE_VARS.names)))


def _user_text(p: MPoly, vars: VarSet) -> str:
    return format_poly(p.embed(vars, dict(zip(SURFACE_VARS.names, vars.names))))


def read_triple(text: str, param: str) -> CurveParam:
    """Triple in `param`, or in the generic 't' renamed to `param`."""
    try:
        return parse_param_triple(text, param)
    except ExprSyntaxError as err:
        try:
            return parse_param_triple(text, "t").rename(param)
        except ExprSyntaxError:
            raise err


def read_surface_param(args: Namespace) -> SurfaceParam:
    return SurfaceParam(read_triple(args.p1, "t1"), read_triple(args.p2, "t2"))


# commands ----------------------------------------------------------------------
def analyze(args: Namespace, config: Config) -> ResultDocument:
    f = _user_poly(read_poly_text(args), args.vars)
    return document_from_classification(classify_surface(f, config))


def verify(args: Namespace, config: Config) -> ResultDocument:
    f = _user_poly(read_poly_text(args), args.vars)
    sp = read_surface_param(args)
    ok = verify_surface_param(f, sp)
    doc = ResultDocument(command="verify", verified=ok)
    if not ok:
        if has_surface_rank(sp):
            doc.diagnostics.append("f does not vanish identically on p1 + p2")
        else:
            doc.diagnostics.append("the Jacobian of p1 + p2 has rank < 2")
    return doc


def implicit(args: Namespace, config: Config) -> ResultDocument:
    sp = read_surface_param(args)
    f = implicitize(sp, config.degree_budget, config)
    return ResultDocument(command="implicitize", polynomial=_user_text(f, args.vars))


def curve_param(args: Namespace, config: Config) -> ResultDocument:
    system = surface_system(_user_poly(args.g1, args.vars), _user_poly(args.g2, args.vars))
    cp = parametrize_space_curve(system, config=config)
    return ResultDocument(command="curve-param", curve=curve_pairs(cp))


def selftest(args: Namespace, config: Config) -> ResultDocument:
    spec = InstanceSpec(family1=args.family1, family2=args.family2, seed=args.seed,
                        degree_budget=args.degree_budget)
    report = roundtrip_check(spec, args.count, config)
    return report_document(report)


HANDLERS = {
    "analyze": analyze,
    "verify": verify,
    "implicitize": implicit,
    "curve-param": curve_param,
    "selftest": selftest,
}


def run_command(args: Union[Namespace, dict]) -> ResultDocument:
    """Validate the options, run the command and return its document.
    Expected keys in args: command and the options of transurf_parser.
    """
    if isinstance(args, dict):
        args = Namespace(**args)

    if args.vars is None:
        logger.error(ERR_VARS)
        raise InputRejected(ERR_VARS)

    config = config_from_args(args)
    logger.info(f"{args.command}: {config}")
    return HANDLERS[args.command](args, config)


def emit(doc: ResultDocument, fmt: str) -> Tuple[str, str]:
    """(stdout, stderr) texts of a document."""
    if fmt == "structured":
        return doc.to_json(), ""
    err = "".join(f"{d}\n" for d in doc.diagnostics)
    return doc.to_text(), err


# parser ------------------------------------------------------------------------
def common_options() -> ArgumentParser:
    p = ArgumentParser(add_help=False)
    p.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="Output format; default: %(default)s.",
    )
    p.add_argument(
        "--vars",
        metavar="n1,n2,n3",
        type=arg_var_names,
        default=SURFACE_VARS,
        help="Names of the surface variables; default: x1,x2,x3.",
    )
    p.add_argument("--vector-budget", type=int, default=DEFAULT_CONFIG.vector_budget,
                   help="Maximum number of candidate vectors; default: %(default)s.")
    p.add_argument("--pair-budget", type=int, default=DEFAULT_CONFIG.pair_budget,
                   help="Maximum number of (s1, s2) pairs per vector; default: %(default)s.")
    p.add_argument("--degree-budget", type=int, default=DEFAULT_CONFIG.degree_budget,
                   help="Cap on the degree of elimination intermediates; default: %(default)s.")
    p.add_argument("--conic-height", type=int, default=DEFAULT_CONFIG.conic_point_height,
                   help="Height bound of the conic rational point search; default: %(default)s.")
    p.add_argument("--seed", type=int, default=DEFAULT_CONFIG.seed,
                   help="Seed of the pseudo-random streams; default: %(default)s.")
    p.add_argument("--route", choices=ROUTES, default=DEFAULT_CONFIG.route,
                   help="C2 route; default: %(default)s.")
    p.add_argument(
        "--vector",
        metavar="a1,a2,a3",
        action="append",
        help="""Candidate vector to try instead of the default stream; repeatable.
        Example: --vector 1,1,1 --vector 1,0,1/2""",
    )
    return p


def transurf_parser():
    common = common_options()
    p = ArgumentParser(
        prog=f"{CLI_NAME}",
        description=__doc__,
        formatter_class=RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    an = sub.add_parser("analyze", parents=[common], help="Classify a surface.")
    an.add_argument("poly", nargs="?", help="Polynomial f in the surface variables.")
    an.add_argument("--file", help="Read f from this file.")

    ve = sub.add_parser("verify", parents=[common], help="Verify a translational parametrization.")
    ve.add_argument("poly", nargs="?", help="Polynomial f in the surface variables.")
    ve.add_argument("--file", help="Read f from this file.")
    ve.add_argument("--p1", required=True, help="P1 coordinates in t1, comma-separated.")
    ve.add_argument("--p2", required=True, help="P2 coordinates in t2, comma-separated.")

    im = sub.add_parser("implicitize", parents=[common], help="Implicit equation of P1 + P2.")
    im.add_argument("--p1", required=True, help="P1 coordinates in t1, comma-separated.")
    im.add_argument("--p2", required=True, help="P2 coordinates in t2, comma-separated.")

    cp = sub.add_parser("curve-param", parents=[common], help="Parametrize the space curve g1 = g2 = 0.")
    cp.add_argument("g1", help="First generator.")
    cp.add_argument("g2", help="Second generator.")

    st = sub.add_parser("selftest", parents=[common], help="Round trip over random instances.")
    st.add_argument("--count", type=int, default=10, help="Number of instances; default: %(default)s.")
    st.add_argument("--family1", choices=FAMILIES, default=FAMILIES[0],
                    help="Family of P1; default: %(default)s.")
    st.add_argument("--family2", choices=FAMILIES, default=FAMILIES[0],
                    help="Family of P2; default: %(default)s.")

    return p


def transurf_cli(argv=None):
    """Cli 'main' function: runs one command and exits with its code."""

    cli_parser = transurf_parser()
    args = cli_parser.parse_args(argv)
    cli_opts.update(vars(args))
    logger.info(cli_opts)

    try:
        doc = run_command(args)
    except TransurfError as err:
        logger.error(f"{type(err).__name__}: {err.message}")
        if args.format == "structured":
            print(json.dumps(err.payload(), indent=2))
        else:
            print(f"{type(err).__name__}: {err.message}", file=sys.stderr)
        sys.exit(err.exit_code)
    except Exception as err:
        logger.exception("Internal error.")
        print(f"Internal error: {err}", file=sys.stderr)
        sys.exit(4)

    out, err = emit(doc, args.format)
    sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    sys.exit(0)


if __name__ == "__main__":
    transurf_cli(sys.argv[1:])
