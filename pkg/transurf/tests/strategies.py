#!/usr/bin/env python

"""
Hypothesis strategies shared by the test modules.
"""

import itertools
from typing import Sequence

from hypothesis import strategies as st

from transurf.polycore import SURFACE_VARS, MPoly, RatFn, VarSet


XT = VarSet(("x1", "x2", "x3", "t1"))
T = VarSet(("t",))


def polys(vars: VarSet = SURFACE_VARS, max_degree: int = 4, among: Sequence[int] = None,
          max_terms: int = 5, height: int = 4):
    """Nonzero polynomials of total degree <= max_degree in the variables `among` (default: all)."""
    among = tuple(range(vars.arity)) if among is None else tuple(among)
    monos = []
    for exps in itertools.product(range(max_degree + 1), repeat=len(among)):
        if sum(exps) <= max_degree:
            m = [0] * vars.arity
            for i, e in zip(among, exps):
                m[i] = e
            monos.append(tuple(m))
    coeffs = st.integers(-height, height).filter(bool)
    return st.dictionaries(st.sampled_from(monos), coeffs, min_size=1, max_size=max_terms).map(
        lambda terms: MPoly.from_terms(vars, terms)
    )


def curves(max_degree: int = 2):
    """Polynomial parametrizations (P1(t), P2(t), P3(t)) as RatFn triples over T."""
    coord = st.lists(st.integers(-3, 3), min_size=1, max_size=max_degree + 1).map(
        lambda cs: RatFn.from_poly(MPoly.from_terms(T, {(k,): c for k, c in enumerate(cs)}))
    )
    return st.tuples(coord, coord, coord)


def _atom():
    variable = st.sampled_from(SURFACE_VARS.names)
    power = st.tuples(variable, st.integers(0, 3)).map(lambda ve: f"{ve[0]}^{ve[1]}")
    number = st.integers(0, 9).map(str)
    fraction = st.tuples(st.integers(0, 9), st.integers(1, 9)).map(lambda nd: f"{nd[0]}/{nd[1]}")
    return st.one_of(variable, power, number, fraction)


def _combine(children):
    binary = st.tuples(children, st.sampled_from(["+", "-", "*"]), children).map(lambda x: f"{x[0]}{x[1]}{x[2]}")
    grouped = children.map(lambda e: f"({e})")
    negated = children.map(lambda e: f"(-({e}))")
    return st.one_of(binary, grouped, negated)


# polynomial expressions in x1, x2, x3 with literal division only
expressions = st.recursive(_atom(), _combine, max_leaves=8)
