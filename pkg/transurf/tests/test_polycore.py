#!/usr/bin/env python

from fractions import Fraction

from hypothesis import assume, example, given, settings
from hypothesis import strategies as st
import pytest

from transurf.errors import StructuralError, UndefinedElimination, VarSetMismatch, ZeroDenominator
from transurf.expr_io import parse_poly
from transurf.polycore import (
    SURFACE_VARS,
    MPoly,
    RatFn,
    VarSet,
    arith,
    content_primitive,
    content_primitive_block,
    diff,
    gcd,
    is_squarefree,
    power,
    psi_decompose_core,
    rational_roots,
    resultant,
    squarefree_part,
    substitute,
    univariate_factors,
)
from transurf.tests import samples
from transurf.tests.strategies import T, XT, curves, polys


def P(text: str, vars: VarSet = SURFACE_VARS) -> MPoly:
    return parse_poly(text, vars)


def univariate(coeffs) -> MPoly:
    """sum coeffs[k] * x1^k over (x1, x2, x3)."""
    return MPoly.from_terms(SURFACE_VARS, {(k, 0, 0): c for k, c in enumerate(coeffs)})


# low degree x1-polynomials with a nonzero leading coefficient
coeff_lists = st.lists(st.integers(-4, 4), min_size=2, max_size=4).filter(lambda cs: cs[-1] != 0)


class TestVarSet:
    def test_duplicate_names(self):
        with pytest.raises(ValueError):
            VarSet(("x", "x"))

    def test_index(self):
        assert SURFACE_VARS.index("x3") == 2
        with pytest.raises(VarSetMismatch):
            SURFACE_VARS.index("t")


class TestMPoly:
    def test_terms_order(self):
        f = P(samples.QUADRIC)
        assert list(f.terms) == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 1)]
        assert f.leading_coefficient() == 5

    def test_degrees(self):
        f = P(samples.QUARTIC)
        assert f.total_degree() == 4
        assert f.degree_list() == (4, 3, 2)
        assert MPoly.zero(SURFACE_VARS).degree(0) == -1

    def test_varset_mismatch(self):
        with pytest.raises(VarSetMismatch):
            P("x1") + P("x1", VarSet(("x1", "y")))

    def test_monic_and_evaluate(self):
        f = P("2*x1^2-4*x3+6")
        assert f.monic() == P("x1^2-2*x3+3")
        assert f.evaluate((1, 0, Fraction(1, 2))) == 6

    def test_embed_by_name(self):
        p = P("x1*x3+1").embed(XT)
        assert p.vars == XT
        assert p.terms == {(1, 0, 1, 0): 1, (0, 0, 0, 0): 1}

    def test_coefficients_in(self):
        cf = P("x1^2*x2+3*x2+x1").coefficients_in(1)
        assert cf == {0: P("x1"), 1: P("x1^2+3")}

    def test_arith(self):
        p, q = P("x1+x2"), P("x1-x2")
        assert arith("add", p, q) == P("2*x1")
        assert arith("sub", p, q) == P("2*x2")
        assert arith("mul", p, q) == P("x1^2-x2^2")
        with pytest.raises(ValueError):
            arith("div", p, q)
        assert power(p, 0) == P("1")
        assert power(q, 2) == P("x1^2-2*x1*x2+x2^2")

    def test_diff(self):
        f = P(samples.QUADRIC)
        assert diff(f, 0) == P("10*x1-6*x2")
        assert diff(f, 2) == P("1")


class TestGcdResultant:
    def test_gcd(self):
        p = P("(x1-1)*(x1+x2)")
        q = P("(x1-1)*(x2+2)")
        assert gcd(p, q) == P("x1-1")
        assert gcd(MPoly.zero(SURFACE_VARS), P("2*x2+4")) == P("x2+2")

    def test_resultant_of_directional_derivative(self):
        """Resultant in x3 of the quadric and its derivative along (1, 1, 1)."""
        f = P(samples.QUADRIC)
        g = f.diff(0) + f.diff(1) + f.diff(2)
        assert resultant(f, g, 2) == P("4*x1-2*x2+1")

    def test_resultant_undefined(self):
        with pytest.raises(UndefinedElimination):
            resultant(P("x1"), P("x2+1"), 2)

    def test_resultant_eliminates(self):
        r = resultant(P("x3-x1^2"), P("x3-x2"), 2)
        assert not r.depends_on(2)
        assert squarefree_part(r) == P("x1^2-x2")

    @example([1, 1], [1, 0, 1], [0, 0, 0, 1])
    @settings(max_examples=40, deadline=None)
    @given(coeff_lists, coeff_lists, coeff_lists)
    def test_product_formula(self, a, b, c):
        p, q, r = univariate(a), univariate(b), univariate(c)
        assert resultant(p * q, r, 0) == resultant(p, r, 0) * resultant(q, r, 0)

    def test_resultant_lower_degree_first(self):
        assert resultant(P("x1+1"), P("x1^3"), 0) == P("-1")
        assert resultant(P("x1+1"), P("x1^3+x1"), 0) == P("-2")
        assert resultant(P("x1^3+x1"), P("x1+1"), 0) == P("2")
        # even degree product keeps the sign
        assert resultant(P("x1^2+1"), P("x1^3-x1"), 0) == resultant(P("x1^3-x1"), P("x1^2+1"), 0)

    @settings(max_examples=25, deadline=None)
    @given(polys(max_degree=1), polys(max_degree=1), polys(max_degree=2))
    def test_product_formula_multivariate(self, p, q, r):
        assume(r.degree(2) > 0)
        assert resultant(p * q, r, 2) == resultant(p, r, 2) * resultant(q, r, 2)

    @settings(max_examples=25, deadline=None)
    @given(polys(max_degree=2), polys(max_degree=2), polys(max_degree=2))
    def test_shared_factor_kills_resultant(self, p, q, r):
        assume(r.degree(2) > 0)
        assert resultant(p * r, q * r, 2).is_zero

    @settings(max_examples=25, deadline=None)
    @given(polys(max_degree=2), polys(max_degree=2))
    def test_zero_resultant_means_shared_factor(self, p, q):
        assume(p.degree(2) > 0 or q.degree(2) > 0)
        assert resultant(p, q, 2).is_zero == (gcd(p, q).degree(2) > 0)

    @settings(max_examples=40, deadline=None)
    @given(coeff_lists, coeff_lists, st.integers(-5, 5))
    def test_common_root(self, a, b, root):
        lin = P("x1") - root
        assert resultant(lin * univariate(a), lin * univariate(b), 0).is_zero

    @settings(max_examples=40, deadline=None)
    @given(coeff_lists, coeff_lists, coeff_lists)
    def test_gcd_divides(self, a, b, c):
        p, q, r = univariate(a), univariate(b), univariate(c)
        g = gcd(p * r, q * r)
        assert g.leading_coefficient() == 1
        assert (p * r).exquo(g) * g == p * r
        # r divides the gcd
        assert g.exquo(r.monic()) * r.monic() == g

    @settings(max_examples=25, deadline=None)
    @given(polys(max_degree=2), polys(max_degree=2), polys(max_degree=2))
    def test_gcd_with_common_factor(self, p, q, r):
        assert gcd(p * r, q * r) == (r * gcd(p, q)).monic()


class TestFactorHelpers:
    def test_squarefree_part(self):
        f = P("(x1-1)^2*(x2+1)")
        assert squarefree_part(f) == P("x1*x2+x1-x2-1")
        assert not is_squarefree(f)
        assert is_squarefree(P(samples.SEPTIC))

    def test_squarefree_zero(self):
        with pytest.raises(StructuralError):
            squarefree_part(MPoly.zero(SURFACE_VARS))

    def test_rational_roots(self):
        assert rational_roots(P("2*x2^2-3*x2+1"), 1) == [Fraction(1, 2), Fraction(1)]
        assert rational_roots(P("x2^2+1"), 1) == []

    def test_univariate_factors(self):
        facs = univariate_factors(P("(x1-2)^2*(x1^2+1)"), 0)
        assert facs == [(P("x1-2"), 2), (P("x1^2+1"), 1)]

    def test_content_primitive(self):
        content, prim = content_primitive(P("x1^2*x3+x1*x3+x1^2*x2+x1*x2"), 2)
        assert content == P("x1^2+x1")
        assert prim == P("x3+x2")


class TestRatFn:
    def test_make_reduces(self):
        r = RatFn.make(P("x1^2-1"), P("2*x1-2"))
        assert r.is_polynomial
        assert r.num == P("x1/2+1/2")

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            RatFn.make(P("x1"), MPoly.zero(SURFACE_VARS))
        with pytest.raises(ZeroDenominator):
            RatFn.from_poly(P("x1")) / 0

    def test_field_operations(self):
        x = RatFn.var(SURFACE_VARS, 0)
        r = (x + 1) / (x - 1)
        assert (r * (x - 1) - 1).num == P("x1")
        assert r.diff(0) == RatFn.make(P("-2"), P("(x1-1)^2"))
        assert (r**-1) * r == RatFn.const(SURFACE_VARS, 1)
        assert r.evaluate((3, 0, 0)) == 2

    @settings(max_examples=40, deadline=None)
    @given(polys(max_degree=2), polys(max_degree=2), polys(max_degree=1))
    def test_make_is_idempotent(self, num, den, common):
        r = RatFn.make(num * common, den * common)
        assert RatFn.make(r.num, r.den) == r
        assert r.den.leading_coefficient() == 1


class TestSubstitute:
    def test_quadric_on_translational_pair(self):
        tv = VarSet(("t1", "t2"))
        t1, t2 = RatFn.var(tv, 0), RatFn.var(tv, 1)
        coords = {
            0: t1 + t2,
            1: (t1 * 4 + 1) / 2 + t2,
            2: -(t1 * t1 * 2 + t1 * 2 + 1) / 2 - t2 * t2 + t2,
        }
        assert substitute(P(samples.QUADRIC), coords, tv).is_zero

    def test_carries_unbound_variables(self):
        r = substitute(P("x1*x3+x2"), {0: RatFn.var(XT, 3)}, XT)
        assert r.num == P("t1*x3+x2", XT)

    def test_target_mismatch(self):
        with pytest.raises(VarSetMismatch):
            substitute(P("x1"), {0: RatFn.var(XT, 3)}, SURFACE_VARS)

    @settings(max_examples=25, deadline=None)
    @given(polys(max_degree=3), curves())
    def test_chain_rule(self, f, coords):
        bindings = dict(enumerate(coords))
        lhs = substitute(f, bindings, T).diff(0)
        rhs = RatFn.const(T, 0)
        for i, c in enumerate(coords):
            rhs = rhs + substitute(f.diff(i), bindings, T) * c.diff(0)
        assert lhs == rhs


class TestPsiCore:
    def test_split(self):
        H = P("(x1+1)*(x1*t1+x2)*(t1+2)", XT)
        core = psi_decompose_core(H)
        assert core.h_tilde == P("x1+1", XT)
        assert core.psi == P("x1*t1+x2", XT)
        assert core.p_hat == P("t1+2", XT)
        assert core.h_tilde * core.psi * core.p_hat == H

    def test_zero(self):
        with pytest.raises(StructuralError):
            psi_decompose_core(MPoly.zero(XT))

    @settings(max_examples=25, deadline=None)
    @given(polys(XT, max_degree=1, among=(0, 1, 2)), polys(XT, max_degree=2), polys(XT, max_degree=1, among=(3,)))
    def test_reconstruction_and_coprimality(self, hx, mixed, pt):
        H = hx * mixed * pt
        core = psi_decompose_core(H)
        assert core.h_tilde * core.psi * core.p_hat == H
        assert not core.h_tilde.depends_on(3)
        assert not any(core.p_hat.depends_on(i) for i in range(3))
        # what is left has no content in t1 and no content in x
        assert content_primitive(core.psi, 3)[0].is_constant
        assert content_primitive_block(core.psi, (0, 1, 2))[0].is_constant
