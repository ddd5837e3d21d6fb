#!/usr/bin/env python

__doc__ = """
transurf: exact detection and construction of translational parametrizations
P(t1, t2) = P1(t1) + P2(t2) of algebraic surfaces f(x1, x2, x3) = 0.

Modules:
 * polycore: exact polynomial and rational-function arithmetic (sympy backed).
 * expr_io: expression parsing and canonical text / JSON rendering.
 * curvelib: rational space-curve parametrization by projection and lifting.
 * translational: the decision procedure and certificate checks.
 * genlab: implicitization, random instances and the round-trip harness.
 * cli: the TranSurf command line tool.
"""

import logging
from transurf._version import version_tuple


# Config for root logger:
DT_FMT = "%Y-%m-%d %H:%M:%S"
BODY = "[%(levelname)s]: %(name)s, %(funcName)s:\n\t%(message)s"
logging.basicConfig(
    level=logging.INFO,
    format=BODY,
    datefmt=DT_FMT,
    filename="transurf.log",
    encoding="utf-8",
)
logger = logging.getLogger("TranSurf")
logger.info(f"Version :{version_tuple}")


class Opts:
    def __init__(self, cli_name: str = "TranSurf", **kwargs):
        """Record of the command line options, shared with the modules that log them."""

        self.cli_name = cli_name
        self.all = kwargs

    def update(self, options: dict):
        """Keep the user-facing options; callables and unset values are dropped."""
        self.all = {k: v for k, v in options.items() if v is not None and not callable(v)}

    def __str__(self):
        out = f"{self.cli_name} - options: "
        if not self.all:
            return out + "(defaults)"

        return out + "; ".join(f"{k}={v!r}" for k, v in sorted(self.all.items()))

    def __repr__(self):
        return self.__str__()


cli_opts = Opts()
