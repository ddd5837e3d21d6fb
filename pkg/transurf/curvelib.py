#!/usr/bin/env python

__doc__ = """
Module: curvelib.py

Rational parametrization of space curves given by two equations
{g1(x1, x2, x3) = 0, g2(x1, x2, x3) = 0}.

Pipeline, per projection direction (x3, then x2, then x1):
 1. project: squarefree part of the resultant of the generators,
 2. plane_components: contents, rational lines and factors linear in one
    variable are split off the plane curve,
 3. plane_parametrize: supported plane curve classes are lines, curves linear in
    one variable, conics with a rational point of bounded height and binomials
    c*u^m + e*v^n with gcd(m, n) = 1,
 4. lift: the eliminated coordinate is the root of the (degree 1) gcd of the
    generators restricted to the plane parametrization,
 5. validate_on_curve and properness_degree close the loop.
"""

from dataclasses import dataclass
from fractions import Fraction
import itertools
import logging
import math
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import sympy

from transurf.config import DEFAULT_CONFIG, Config, small_rationals
from transurf.errors import (
    CurveError,
    EmptyProjection,
    InconsistentSystem,
    LiftFailed,
    NotACurve,
    StructuralError,
    UndefinedElimination,
    UnsupportedCurveClass,
    UnsupportedSpaceCurve,
    ZeroResultant,
)
from transurf.polycore import (
    SURFACE_VARS,
    MPoly,
    RatFn,
    VarSet,
    content_primitive,
    gcd,
    gcd_all,
    rational_roots,
    resultant,
    squarefree_part,
    substitute,
    univariate_factors,
)


logger = logging.getLogger(__name__)


PARAM = "t"
# Fixed projection order: eliminate x3 first, then x2, then x1.
PROJECTION_ORDER = (2, 1, 0)


@dataclass(frozen=True)
class SpaceCurveSystem:
    """Two generators over (x1, x2, x3) whose common zeros form the curve."""

    gens: Tuple[MPoly, MPoly]

    def __post_init__(self):
        gens = tuple(self.gens)
        object.__setattr__(self, "gens", gens)
        if len(gens) != 2:
            raise StructuralError(f"A space curve system needs two generators; got {len(gens)}.")
        g1, g2 = gens
        if g1.vars != g2.vars or g1.vars.arity != 3:
            raise StructuralError(f"Generators must share a 3-variable set; got {g1.vars} and {g2.vars}.")
        if g1.is_zero or g2.is_zero:
            raise StructuralError("Space curve generators must be nonzero.")
        if g1.is_constant and g2.is_constant:
            raise StructuralError("At least one space curve generator must be nonconstant.")

    @property
    def vars(self) -> VarSet:
        return self.gens[0].vars

    def __str__(self):
        return "{" + f"{self.gens[0]}, {self.gens[1]}" + "}"


@dataclass(frozen=True)
class PlaneCurve:
    """Projection of a space curve; `poly` does not involve the variable `elim_var`."""

    poly: MPoly
    elim_var: int

    def __post_init__(self):
        if self.poly.is_constant:
            raise StructuralError(f"A plane curve needs a nonconstant polynomial; got {self.poly}.")
        if self.poly.depends_on(self.elim_var):
            raise StructuralError(f"{self.poly} involves the eliminated variable.")

    @property
    def plane_vars(self) -> Tuple[int, int]:
        u, v = (i for i in range(self.poly.vars.arity) if i != self.elim_var)
        return u, v


@dataclass(frozen=True)
class CurveParam:
    """Triple of rational functions in one named parameter.
    A constant triple is valid data; the pipeline rejects it where a curve is needed.
    """

    coords: Tuple[RatFn, RatFn, RatFn]

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != 3:
            raise StructuralError(f"A curve parametrization has three coordinates; got {len(coords)}.")
        vs = {c.vars for c in coords}
        if len(vs) != 1 or next(iter(vs)).arity != 1:
            raise StructuralError(f"Coordinates must share a single parameter; got {sorted(map(str, vs))}.")

    @classmethod
    def from_coords(cls, coords: Sequence[Union[RatFn, MPoly, int, Fraction]], param: str = PARAM) -> "CurveParam":
        tv = VarSet((param,))
        out = []
        for c in coords:
            if isinstance(c, MPoly):
                c = RatFn.from_poly(c)
            elif not isinstance(c, RatFn):
                c = RatFn.const(tv, c)
            out.append(c)
        return cls(tuple(out))

    @property
    def vars(self) -> VarSet:
        return self.coords[0].vars

    @property
    def param(self) -> str:
        return self.vars.names[0]

    @property
    def is_constant(self) -> bool:
        return all(c.is_constant for c in self.coords)

    def evaluate(self, value) -> Tuple[Fraction, Fraction, Fraction]:
        """Point of the curve at parameter `value`; ZeroDenominator outside the domain."""
        return tuple(c.evaluate((value,)) for c in self.coords)

    def derivative(self) -> Tuple[RatFn, RatFn, RatFn]:
        return tuple(c.diff(0) for c in self.coords)

    def derivative_at(self, value) -> Tuple[Fraction, Fraction, Fraction]:
        return tuple(c.evaluate((value,)) for c in self.derivative())

    def translate(self, vector: Sequence) -> "CurveParam":
        return CurveParam(tuple(c + Fraction(a) for c, a in zip(self.coords, vector)))

    def shift(self, c) -> "CurveParam":
        """Reparametrize by t -> t + c."""
        binding = {0: RatFn.var(self.vars, 0) + Fraction(c)}
        return CurveParam(tuple(_compose(rf, binding, self.vars) for rf in self.coords))

    def rename(self, param: str) -> "CurveParam":
        if param == self.param:
            return self
        target = VarSet((param,))
        return CurveParam(tuple(c.embed(target, {self.param: param}) for c in self.coords))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


# evidence of dimension_evidence -----------------------------------------
@dataclass(frozen=True)
class FiniteEvidence:
    """Projections whose resultant is a nonzero constant: no affine common zero."""

    witnesses: Tuple[Tuple[str, MPoly], ...]


@dataclass(frozen=True)
class CurveFound:
    param: CurveParam


@dataclass(frozen=True)
class Unknown:
    reason: str


DimensionEvidence = Union[FiniteEvidence, CurveFound, Unknown]


# helpers -----------------------------------------------------------------
def _compose(rf: RatFn, bindings, target: VarSet) -> RatFn:
    return substitute(rf.num, bindings, target) / substitute(rf.den, bindings, target)


def _in_param(p: MPoly, y: int, tvars: VarSet) -> MPoly:
    """Rewrite p, a polynomial in the single variable y, over the parameter set."""
    return MPoly.from_terms(tvars, {(m[y],): c for m, c in p.terms.items()})


def _aux_vars(tvars: VarSet) -> VarSet:
    param = tvars.names[0]
    return VarSet((param, "w" if param != "w" else "w_aux"))


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    rn, exact_n = sympy.integer_nthroot(x.numerator, 2)
    rd, exact_d = sympy.integer_nthroot(x.denominator, 2)
    if exact_n and exact_d:
        return Fraction(int(rn), int(rd))
    return None


def _quadratic_roots(a2: Fraction, a1: Fraction, a0: Fraction) -> List[Fraction]:
    """Distinct rational roots of a2*x^2 + a1*x + a0 (degree may drop)."""
    if a2 == 0:
        return [-a0 / a1] if a1 != 0 else []
    s = _rational_sqrt(a1 * a1 - 4 * a2 * a0)
    if s is None:
        return []
    return sorted({(-a1 + s) / (2 * a2), (-a1 - s) / (2 * a2)})


# projection and factor isolation -----------------------------------------
def project(system: SpaceCurveSystem, elim_var: int) -> PlaneCurve:
    """Squarefree monic resultant of the generators with respect to `elim_var`."""
    g1, g2 = system.gens
    name = system.vars.names[elim_var]
    if not (g1.depends_on(elim_var) or g2.depends_on(elim_var)):
        raise UndefinedElimination(f"Both generators are constant in {name}.", var=name)
    r = resultant(g1, g2, elim_var)
    if r.is_zero:
        msg = f"Zero resultant in {name}: the generators share a factor involving {name}."
        logger.debug(msg)
        raise ZeroResultant(msg, var=name)
    if r.is_constant:
        msg = f"Resultant in {name} is the nonzero constant {r}."
        logger.debug(msg)
        raise EmptyProjection(msg, var=name, witness=r)
    return PlaneCurve(squarefree_part(r), elim_var)


def _divisors(p: MPoly, v: int, cap: int) -> List[MPoly]:
    """Monic divisors of a polynomial univariate in v, at most `cap` of them."""
    one = MPoly.const(p.vars, 1)
    factors = univariate_factors(p, v)
    out = []
    for exps in itertools.product(*(range(k + 1) for _, k in factors)):
        d = one
        for (fac, _), e in zip(factors, exps):
            if e:
                d = d * fac**e
        out.append(d)
        if len(out) >= cap:
            break
    return out


def _scale_roots(coeffs: Dict[int, MPoly], d: int, N: MPoly, D: MPoly, b: int) -> List[Fraction]:
    """Nonzero rationals c such that u = c*N/D is a root of sum_k coeffs[k] * u^k."""
    cvars = VarSet(("c",))
    rows: Dict[int, Dict[Tuple[int], Fraction]] = {}
    for k, ck in coeffs.items():
        term = ck * N**k * D ** (d - k)
        for m, coef in term.terms.items():
            row = rows.setdefault(m[b], {})
            row[(k,)] = row.get((k,), 0) + coef
    polys = [p for p in (MPoly.from_terms(cvars, r) for r in rows.values()) if not p.is_zero]
    if not polys:
        return []
    return [r for r in rational_roots(gcd_all(polys), 0) if r != 0]


def _linear_factor(F: MPoly, a: int, b: int, budget: int) -> Optional[MPoly]:
    """A factor D(b)*x_a - c*N(b) of F, found among divisor pairs of F's trailing and leading coefficients."""
    coeffs = F.coefficients_in(a)
    d = max(coeffs)
    if 0 not in coeffs:
        return MPoly.var(F.vars, a)
    nums = _divisors(coeffs[0], b, budget)
    dens = _divisors(coeffs[d], b, budget)
    pairs = sorted(itertools.product(nums, dens), key=lambda nd: nd[0].total_degree() + nd[1].total_degree())
    for N, D in pairs[:budget]:
        if not gcd(N, D).is_constant:
            continue
        for c in _scale_roots(coeffs, d, N, D, b):
            return (D * MPoly.var(F.vars, a) - N * c).monic()
    return None


def _peel_linear_factors(F: MPoly, u: int, v: int, budget: int) -> Tuple[List[MPoly], MPoly]:
    peeled = []
    while F.degree(u) > 1 and F.degree(v) > 1:
        found = _linear_factor(F, u, v, budget) or _linear_factor(F, v, u, budget)
        if found is None:
            break
        logger.debug(f"Split factor {found} off {F}.")
        peeled.append(found)
        F = F.exquo(found)
    return peeled, F


def plane_components(curve: PlaneCurve, config: Config = DEFAULT_CONFIG) -> List[PlaneCurve]:
    """Pieces of the plane curve the class taxonomy can work on, by increasing total degree."""
    u, v = curve.plane_vars
    F = squarefree_part(curve.poly)
    cu, F = content_primitive(F, u)
    cv, F = content_primitive(F, v)

    pieces = []
    if not F.is_constant:
        peeled, rest = _peel_linear_factors(F, u, v, config.root_candidate_budget)
        pieces.extend(peeled)
        if not rest.is_constant:
            pieces.append(rest)
    for r in rational_roots(cu, v):
        pieces.append(MPoly.var(F.vars, v) - r)
    for r in rational_roots(cv, u):
        pieces.append(MPoly.var(F.vars, u) - r)

    comps = [PlaneCurve(p.monic(), curve.elim_var) for p in pieces]
    return sorted(comps, key=lambda c: c.poly.total_degree())


# plane curve classes ------------------------------------------------------
def _line_param(F: MPoly, u: int, v: int, tvars: VarSet) -> Tuple[RatFn, RatFn]:
    def coef(i):
        m = [0] * F.vars.arity
        m[i] = 1
        return F.terms.get(tuple(m), Fraction(0))

    a, b = coef(u), coef(v)
    c = F.terms.get((0,) * F.vars.arity, Fraction(0))
    t = RatFn.var(tvars, 0)
    if b != 0:
        return t, (t * (-a) - c) / b
    return RatFn.const(tvars, -c / a), t


def _linear_param(F: MPoly, u: int, v: int, tvars: VarSet) -> Optional[Tuple[RatFn, RatFn]]:
    t = RatFn.var(tvars, 0)
    for x, y in ((v, u), (u, v)):
        if F.degree(x) != 1:
            continue
        cf = F.coefficients_in(x)
        A, B = cf[1], cf.get(0, MPoly.zero(F.vars))
        g = gcd(A, B)
        if not g.is_constant:
            A, B = A.exquo(g), B.exquo(g)
        sol = RatFn.make(-_in_param(B, y, tvars), _in_param(A, y, tvars))
        return (t, sol) if x == v else (sol, t)
    return None


def _solve_pencil(F: MPoly, u: int, v: int, bu: RatFn, bv: RatFn, tvars: VarSet,
                  through_point: bool) -> Optional[Tuple[RatFn, RatFn]]:
    aux = bu.vars
    w = MPoly.var(aux, 1)
    N = substitute(F, {u: bu, v: bv}, aux).num
    if through_point:
        if N.is_zero or 0 in N.coefficients_in(1):
            return None
        N = N.exquo(w)
    if N.degree(1) != 1:
        return None
    cf = N.coefficients_in(1)
    sol = RatFn.make(-cf.get(0, MPoly.zero(aux)), cf[1]).embed(tvars)
    qu = _compose(bu, {1: sol}, tvars)
    qv = _compose(bv, {1: sol}, tvars)
    if qu.is_constant and qv.is_constant:
        return None
    return qu, qv


def _conic_param(F: MPoly, u: int, v: int, tvars: VarSet, height: int) -> Tuple[RatFn, RatFn]:
    def coef(eu, ev):
        m = [0] * F.vars.arity
        m[u] += eu
        m[v] += ev
        return F.terms.get(tuple(m), Fraction(0))

    A, B, C = coef(2, 0), coef(1, 1), coef(0, 2)
    D, E, K = coef(1, 0), coef(0, 1), coef(0, 0)
    aux = _aux_vars(tvars)
    t, w = RatFn.var(aux, 0), RatFn.var(aux, 1)

    # points at infinity: rational roots (p : q) of the quadratic part
    directions = [(Fraction(1), Fraction(0))] if A == 0 else []
    directions += [(p, Fraction(1)) for p in _quadratic_roots(A, B, C)]
    for p, q in directions:
        if p != 0:
            bu, bv = w, (w * q - t) / p
        else:
            bu, bv = t / q, w
        found = _solve_pencil(F, u, v, bu, bv, tvars, through_point=False)
        if found is not None:
            logger.debug(f"Conic {F} parametrized by the lines through the point at infinity ({p} : {q}).")
            return found

    for u0 in small_rationals(height):
        for v0 in _quadratic_roots(C, B * u0 + E, A * u0 * u0 + D * u0 + K):
            found = _solve_pencil(F, u, v, w + u0, -(t * w) + v0, tvars, through_point=True)
            if found is not None:
                logger.debug(f"Conic {F} parametrized by the lines through ({u0}, {v0}).")
                return found

    msg = f"No rational point of height <= {height} found on the conic {F}."
    logger.warning(msg)
    raise UnsupportedCurveClass(msg, reason=UnsupportedCurveClass.NO_RATIONAL_POINT, curve=F)


def _binomial_param(F: MPoly, u: int, v: int, tvars: VarSet) -> Optional[Tuple[RatFn, RatFn]]:
    """c*u^m + e*v^n = 0 with gcd(m, n) = 1 -> (lam*t^n, mu*t^m)."""
    if len(F.terms) != 2:
        return None
    pure = {}
    for mono, c in F.terms.items():
        if mono[u] > 0 and mono[v] == 0 and sum(mono) == mono[u]:
            pure[u] = (mono[u], c)
        elif mono[v] > 0 and mono[u] == 0 and sum(mono) == mono[v]:
            pure[v] = (mono[v], c)
    if len(pure) != 2:
        return None
    (m, c), (n, e) = pure[u], pure[v]
    if math.gcd(m, n) != 1:
        return None
    r = -e / c
    # b*m - a*n = 1, so r^(b*m) = r * (r^a)^n
    b = pow(m, -1, n) if n > 1 else 1
    a = (b * m - 1) // n
    t = MPoly.var(tvars, 0)
    return RatFn.from_poly(t**n * r**b), RatFn.from_poly(t**m * r**a)


def plane_parametrize(curve: PlaneCurve, config: Config = DEFAULT_CONFIG, param: str = PARAM) -> Tuple[RatFn, RatFn]:
    """Proper parametrization (q_u(t), q_v(t)) of a plane curve of a supported class."""
    F = curve.poly
    u, v = curve.plane_vars
    tvars = VarSet((param,))

    if F.total_degree() == 1:
        found, kind = _line_param(F, u, v, tvars), "line"
    elif F.degree(u) == 1 or F.degree(v) == 1:
        found, kind = _linear_param(F, u, v, tvars), "linear in one variable"
    elif F.total_degree() == 2:
        found, kind = _conic_param(F, u, v, tvars, config.conic_point_height), "conic"
    else:
        found, kind = _binomial_param(F, u, v, tvars), "binomial"

    if found is None:
        msg = f"Plane curve {F} is outside the supported classes."
        logger.debug(msg)
        raise UnsupportedCurveClass(msg, reason=UnsupportedCurveClass.NO_CLASS, curve=F)
    if not substitute(F, {u: found[0], v: found[1]}, tvars).is_zero:
        msg = f"The {kind} parametrization does not satisfy {F}."
        logger.error(msg)
        raise UnsupportedCurveClass(msg, reason=UnsupportedCurveClass.NO_CLASS, curve=F)

    logger.debug(f"Plane curve {F} ({kind}) -> ({found[0]}, {found[1]}).")
    return found


# lifting and checks --------------------------------------------------------
def lift(plane_param: Tuple[RatFn, RatFn], system: SpaceCurveSystem, elim_var: int) -> CurveParam:
    """Recover the eliminated coordinate as the root of the gcd of the restricted generators."""
    q_u, q_v = plane_param
    tvars = q_u.vars
    u, v = (i for i in range(3) if i != elim_var)
    name = system.vars.names[elim_var]
    target = VarSet((tvars.names[0], name))
    bu, bv = q_u.embed(target), q_v.embed(target)

    prims = []
    for g in system.gens:
        n = substitute(g, {u: bu, v: bv}, target).num
        if not n.is_zero:
            prims.append(content_primitive(n, 1)[1])
    if not prims:
        msg = f"Both generators vanish identically on the plane parametrization ({q_u}, {q_v})."
        logger.debug(msg)
        raise InconsistentSystem(msg)

    N = gcd_all(prims)
    deg = N.degree(1)
    if deg != 1:
        msg = f"Lifting gcd has degree {deg} in {name}; a degree-1 gcd is needed."
        logger.debug(msg)
        raise LiftFailed(msg, degree=deg, var=name)

    cf = N.coefficients_in(1)
    sol = RatFn.make(-cf.get(0, MPoly.zero(target)), cf[1]).embed(tvars)
    coords = [None] * 3
    coords[u], coords[v], coords[elim_var] = q_u, q_v, sol
    return CurveParam(tuple(coords))


def validate_on_curve(p: CurveParam, system: SpaceCurveSystem) -> bool:
    bindings = dict(enumerate(p.coords))
    return all(substitute(g, bindings, p.vars).is_zero for g in system.gens)


def properness_degree(p: CurveParam) -> int:
    """Degree in t of gcd_i(num_i(t) den_i(s) - num_i(s) den_i(t)); 1 for proper parametrizations."""
    if p.is_constant:
        msg = f"Properness of the constant parametrization {p} is undefined."
        logger.error(msg)
        raise StructuralError(msg)
    name = p.param
    tv = VarSet((name, name + "_s"))
    twin = {name: name + "_s"}
    hs = []
    for c in p.coords:
        if c.is_constant:
            continue
        H = c.num.embed(tv) * c.den.embed(tv, twin) - c.num.embed(tv, twin) * c.den.embed(tv)
        hs.append(content_primitive(H, 0)[1])
    return content_primitive(gcd_all(hs), 0)[1].degree(0)


def is_line(p: CurveParam) -> bool:
    """True when every coordinate is an affine function of one nonconstant coordinate."""
    moving = [c for c in p.coords if not c.is_constant]
    if len(moving) < 2:
        return True
    base = moving[0].diff(0)
    return all((c.diff(0) / base).is_constant for c in moving[1:])


def space_curve_candidates(system: SpaceCurveSystem, param: str = PARAM, config: Config = DEFAULT_CONFIG,
                           accept: Callable[[CurveParam], bool] = None) -> Iterator[CurveParam]:
    """Every proper, validated parametrization over the projections x3, x2, x1, in search order.

    `accept` lets callers reject a component (e.g. a line) and keep searching.
    Raises NotACurve or UnsupportedSpaceCurve once the search ends without yielding anything.
    """
    attempts = []
    witnesses = []
    defined = 0
    found = 0
    for e in PROJECTION_ORDER:
        name = system.vars.names[e]
        try:
            curve = project(system, e)
        except UndefinedElimination:
            attempts.append(f"{name}: both generators are constant in {name}")
            continue
        except ZeroResultant as err:
            defined += 1
            attempts.append(f"{name}: {err.message}")
            continue
        except EmptyProjection as err:
            defined += 1
            witnesses.append((name, err.details["witness"]))
            attempts.append(f"{name}: {err.message}")
            continue
        defined += 1

        for comp in plane_components(curve, config):
            label = f"{name}: component {comp.poly}"
            try:
                cp = lift(plane_parametrize(comp, config, param=param), system, e)
            except (UnsupportedCurveClass, LiftFailed, InconsistentSystem) as err:
                attempts.append(f"{label}: {err.message}")
                continue
            if cp.is_constant or not validate_on_curve(cp, system):
                attempts.append(f"{label}: lifted parametrization is not on the curve")
                continue
            deg = properness_degree(cp)
            if deg != 1:
                attempts.append(f"{label}: improper parametrization (degree {deg})")
                continue
            if accept is not None and not accept(cp):
                attempts.append(f"{label}: rejected by caller")
                continue
            logger.info(f"Space curve {system}: projection along {name}, component {comp.poly} -> {cp}")
            found += 1
            yield cp

    if found:
        return
    if witnesses and len(witnesses) == defined:
        msg = f"Every projection of {system} has a nonzero constant resultant."
        logger.warning(msg)
        raise NotACurve(msg, witnesses="; ".join(f"{n}: {r}" for n, r in witnesses))
    msg = f"No supported parametrization of {system}."
    logger.warning(msg)
    raise UnsupportedSpaceCurve(msg, attempts=" | ".join(attempts))


def parametrize_space_curve(system: SpaceCurveSystem, param: str = PARAM, config: Config = DEFAULT_CONFIG,
                            accept: Callable[[CurveParam], bool] = None) -> CurveParam:
    """First candidate of space_curve_candidates."""
    return next(space_curve_candidates(system, param, config, accept))


def finite_evidence(system: SpaceCurveSystem) -> Optional[FiniteEvidence]:
    """Projections whose resultant is a nonzero constant, if any; such a system has no curve."""
    witnesses = []
    g1, g2 = system.gens
    for e in PROJECTION_ORDER:
        if not (g1.depends_on(e) or g2.depends_on(e)):
            continue
        r = resultant(g1, g2, e)
        if r.is_constant and not r.is_zero:
            witnesses.append((system.vars.names[e], r))
    return FiniteEvidence(tuple(witnesses)) if witnesses else None


def dimension_evidence(system: SpaceCurveSystem, config: Config = DEFAULT_CONFIG) -> DimensionEvidence:
    evidence = finite_evidence(system)
    if evidence is not None:
        return evidence
    try:
        return CurveFound(parametrize_space_curve(system, config=config))
    except CurveError as err:
        return Unknown(err.message)


def surface_system(g1: MPoly, g2: MPoly) -> SpaceCurveSystem:
    """System over (x1, x2, x3), with both generators moved there by name."""
    return SpaceCurveSystem((g1.embed(SURFACE_VARS), g2.embed(SURFACE_VARS)))
