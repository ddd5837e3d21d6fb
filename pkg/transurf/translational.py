#!/usr/bin/env python

__doc__ = """
Module: translational.py

Decision procedure for translational surfaces f(x) = 0, i.e. surfaces with a
parametrization P(t1, t2) = P1(t1) + P2(t2).

classify_surface screens planes and cylinders, then walks the candidate vectors a:
 * C1: a proper, non-line parametrization P1(t1) of a component of the curve
   {f = 0, a1*f_x1 + a2*f_x2 + a3*f_x3 = 0} outside the singular locus of f;
   when a component leads nowhere the next one is tried;
 * Psi: f(P1(t1) + x) = h_tilde(x) * Psi(x, t1) * p_hat(t1) / den(t1);
 * C2: a parametrization P2(t2) of a curve on which every t1-coefficient of Psi
   vanishes, obtained from two specializations t1 = s1, s2 (shortcut route) or
   from two Psi coefficients (general route);
 * standard form: P2(0) = 0, P2'(0) != 0, the offset moved into P1;
 * exact verification of the result and of the certificate.

A failed vector search proves nothing: the outcome is then Undecided, never
"not translational".
"""

from dataclasses import dataclass
from fractions import Fraction
import itertools
import logging
from typing import ClassVar, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from transurf.config import DEFAULT_CONFIG, SAMPLE_PAIRS, VECTOR_LADDER, Config, small_rationals
from transurf.curvelib import (
    CurveFound,
    CurveParam,
    FiniteEvidence,
    SpaceCurveSystem,
    dimension_evidence,
    finite_evidence,
    is_line,
    parametrize_space_curve,
    properness_degree,
    space_curve_candidates,
    validate_on_curve,
)
from transurf.errors import (
    AllPairsExhausted,
    CurveError,
    InputRejected,
    InsufficientPsiCoefficients,
    NormalizationFailed,
    StructuralError,
    TransurfError,
    VectorRejected,
    ZeroDenominator,
)
from transurf.polycore import (
    SURFACE_VARS,
    MPoly,
    PsiDecomposition,
    RatFn,
    VarSet,
    gcd,
    is_squarefree,
    psi_decompose_core,
    substitute,
)


logger = logging.getLogger(__name__)


CandidateVector = Tuple[Fraction, Fraction, Fraction]

BASE_VECTORS = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1))
# shift ladder height of normalize_standard; the number of sampled parameters of the C1 != C2 check
NORMALIZE_HEIGHT = 5
DISTINCT_SAMPLES = 10
RANDOM_VECTOR_RANGE = (-5, 6)


@dataclass(frozen=True)
class SurfaceParam:
    """P(t1, t2) = p1(t1) + p2(t2)."""

    p1: CurveParam
    p2: CurveParam

    def __post_init__(self):
        if self.p1.param == self.p2.param:
            raise StructuralError(f"p1 and p2 need distinct parameters; both use {self.p1.param!r}.")
        if self.p1.is_constant or self.p2.is_constant:
            raise StructuralError("Neither curve of a translational parametrization may be constant.")

    @property
    def vars(self) -> VarSet:
        return VarSet((self.p1.param, self.p2.param))

    def coordinates(self) -> Tuple[RatFn, RatFn, RatFn]:
        """The three coordinates of P over (t1, t2)."""
        tv = self.vars
        return tuple(a.embed(tv) + b.embed(tv) for a, b in zip(self.p1.coords, self.p2.coords))


@dataclass(frozen=True)
class Certificate:
    """How a translational parametrization was obtained; enough to replay it.
    Attributes:
      vector (tuple): candidate vector a defining C1.
      s1, s2 (Fraction): sample points of the shortcut route; None on the general route.
      shift (Fraction): parameter t2^0 moved to 0 by normalize_standard.
      c1_defining (SpaceCurveSystem): {f, grad(f).a}.
      c2_defining (SpaceCurveSystem): the two generators C2 was parametrized from.
      p1_raw, p2_raw (CurveParam): the curves before normalization.
      route (str): 'shortcut' or 'general'.
      component (int): index of p1_raw among the C1 candidates of the vector.
    """

    vector: CandidateVector
    s1: Optional[Fraction]
    s2: Optional[Fraction]
    shift: Fraction
    c1_defining: SpaceCurveSystem
    c2_defining: SpaceCurveSystem
    p1_raw: CurveParam
    p2_raw: CurveParam
    route: str = "shortcut"
    component: int = 0


class Classification:
    tag: ClassVar[str] = ""


@dataclass(frozen=True)
class Plane(Classification):
    tag: ClassVar[str] = "plane"
    surface: SurfaceParam
    diagnostics: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Cylinder(Classification):
    tag: ClassVar[str] = "cylinder"
    direction: CandidateVector
    diagnostics: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Translational(Classification):
    tag: ClassVar[str] = "translational"
    surface: SurfaceParam
    certificate: Certificate
    diagnostics: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Undecided(Classification):
    tag: ClassVar[str] = "undecided"
    evidence: Tuple[str, ...] = ()

    @property
    def diagnostics(self) -> Tuple[str, ...]:
        return self.evidence


def _vec_str(a: Sequence) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in a) + ")"


def _normalize_vector(a: Sequence) -> CandidateVector:
    vec = tuple(Fraction(x) for x in a)
    if len(vec) != 3 or not any(vec):
        raise InputRejected(f"Invalid candidate vector {a}.")
    return vec


# screening -----------------------------------------------------------------
def cylinder_test(f: MPoly) -> Optional[CandidateVector]:
    """Kernel vector a of the coefficient matrix of (f_x1, f_x2, f_x3), if any."""
    if f.is_constant:
        raise InputRejected(f"Cylinder test needs a nonconstant polynomial; got {f}.")
    partials = [f.diff(i) for i in range(3)]
    monos = sorted({m for p in partials for m in p.terms})
    matrix = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator)
                            for c in (p.terms.get(m, Fraction(0)) for p in partials)] for m in monos])
    kernel = matrix.nullspace()
    if not kernel:
        return None
    vec = [Fraction(int(x.p), int(x.q)) for x in (sympy.Rational(e) for e in kernel[0])]
    lead = next(x for x in vec if x != 0)
    return tuple(x / lead for x in vec)


def plane_param(f: MPoly) -> SurfaceParam:
    """Translational parametrization of m1*x1 + m2*x2 + m3*x3 + m4 = 0."""
    if f.total_degree() != 1:
        msg = f"{f} is not linear."
        logger.error(msg)
        raise InputRejected(msg)
    m = [f.terms.get(tuple(int(j == i) for j in range(3)), Fraction(0)) for i in range(3)]
    m4 = f.terms.get((0, 0, 0), Fraction(0))
    k = next(i for i in (2, 1, 0) if m[i] != 0)
    i, j = (x for x in range(3) if x != k)

    t1 = RatFn.var(VarSet(("t1",)), 0)
    t2 = RatFn.var(VarSet(("t2",)), 0)
    c1 = [t1 * 0] * 3
    c1[i], c1[k] = t1, (t1 * (-m[i]) - m4) / m[k]
    c2 = [t2 * 0] * 3
    c2[j], c2[k] = t2, t2 * (-m[j] / m[k])
    return SurfaceParam(CurveParam(tuple(c1)), CurveParam(tuple(c2)))


def _default_vectors(config: Config) -> Iterator[CandidateVector]:
    for a in BASE_VECTORS:
        yield a
    for q in VECTOR_LADDER:
        yield from ((1, q, 0), (1, 0, q), (0, 1, q), (q, 1, 0), (q, 0, 1), (0, q, 1))
    rng = np.random.default_rng(config.seed)
    lo, hi = RANDOM_VECTOR_RANGE
    while True:
        nums = rng.integers(lo, hi, size=3)
        dens = rng.integers(1, 4, size=3)
        if any(nums):
            yield tuple(Fraction(int(n), int(d)) for n, d in zip(nums, dens))


def candidate_vectors(config: Config = DEFAULT_CONFIG) -> List[CandidateVector]:
    """Deterministic list of at most `vector_budget` distinct candidate vectors."""
    stream = iter(config.vectors) if config.vectors else _default_vectors(config)
    out, seen = [], set()
    for a in stream:
        if len(out) >= config.vector_budget:
            break
        vec = _normalize_vector(a)
        if vec not in seen:
            seen.add(vec)
            out.append(vec)
    return out


# C1 --------------------------------------------------------------------------
def c1_system(f: MPoly, a: Sequence) -> SpaceCurveSystem:
    a = _normalize_vector(a)
    g = f.diff(0) * a[0] + f.diff(1) * a[1] + f.diff(2) * a[2]
    if g.is_constant:
        msg = f"grad(f).a is constant for a = {_vec_str(a)}."
        logger.debug(msg)
        raise VectorRejected(msg, vector=_vec_str(a))
    return SpaceCurveSystem((f, g))


def _singular_on(f: MPoly, p: CurveParam) -> bool:
    """True when f_x1, f_x2 and f_x3 all vanish identically on p."""
    return _vanishes_on([f.diff(i) for i in range(3)], p)


def _c1_accept(f: MPoly):
    return lambda cp: not is_line(cp) and not _singular_on(f, cp)


def c1_candidates(f: MPoly, a: Sequence, config: Config = DEFAULT_CONFIG) -> Iterator[CurveParam]:
    """Proper parametrizations P1(t1) of {f = 0, grad(f).a = 0}, at most config.component_budget.

    Lines and components inside the singular locus of f are skipped.
    """
    system = c1_system(f, a)
    try:
        yield from itertools.islice(
            space_curve_candidates(system, param="t1", config=config, accept=_c1_accept(f)), config.component_budget
        )
    except CurveError as err:
        err.details["vector"] = _vec_str(a)
        raise


def compute_c1(f: MPoly, a: Sequence, config: Config = DEFAULT_CONFIG) -> CurveParam:
    """First of c1_candidates."""
    return next(c1_candidates(f, a, config))


# Psi -------------------------------------------------------------------------
def _translated(f: MPoly, offset: Sequence[RatFn], target: VarSet) -> RatFn:
    """f(x + offset) over `target`, whose first three variables are x1, x2, x3."""
    bindings = {i: RatFn.var(target, i) + offset[i] for i in range(3)}
    return substitute(f, bindings, target)


def psi_decompose(f: MPoly, p1: CurveParam) -> PsiDecomposition:
    param = p1.param
    T = VarSet(SURFACE_VARS.names + (param,))
    tv = p1.vars
    h = _translated(f, [c.embed(T) for c in p1.coords], T)
    core = psi_decompose_core(h.num, (0, 1, 2), 3)
    by_power = core.psi.coefficients_in(3)
    n = max(by_power)
    zero = MPoly.zero(T)
    return PsiDecomposition(
        h_tilde=core.h_tilde.embed(SURFACE_VARS),
        psi=core.psi,
        psi_coeffs=tuple(by_power.get(k, zero).embed(SURFACE_VARS) for k in range(n + 1)),
        p_hat=core.p_hat.embed(tv),
        den_cleared=h.den.embed(tv),
    )


def _vanishes_on(polys: Sequence[MPoly], p: CurveParam) -> bool:
    bindings = dict(enumerate(p.coords))
    return all(substitute(h, bindings, p.vars).is_zero for h in polys)


def _c2_accept(psi: PsiDecomposition):
    return lambda cp: not is_line(cp) and _vanishes_on(psi.psi_coeffs, cp)


# C2 --------------------------------------------------------------------------
def shortcut_system(f: MPoly, p1: CurveParam, s1, s2) -> Optional[SpaceCurveSystem]:
    """{g1, g2} with g_i = f(P1(s_i) + x) / gcd; None when the pair is unusable.
    Raises ZeroDenominator when P1 is undefined at s1 or s2.
    """
    F1, F2 = (_translated(f, p1.evaluate(s), SURFACE_VARS).num for s in (s1, s2))
    G = gcd(F1, F2)
    g1, g2 = F1.exquo(G), F2.exquo(G)
    if g1.is_constant or g2.is_constant or g1.monic() == g2.monic():
        return None
    return SpaceCurveSystem((g1, g2))


def compute_c2_shortcut(f: MPoly, p1: CurveParam, config: Config = DEFAULT_CONFIG,
                        psi: PsiDecomposition = None) -> Tuple[CurveParam, Fraction, Fraction, SpaceCurveSystem]:
    """P2(t2) from the two-specialization system of the first workable sample pair."""
    psi = psi or psi_decompose(f, p1)
    evidence, systems = [], []
    tried = 0
    for s1, s2 in SAMPLE_PAIRS:
        if tried >= config.pair_budget:
            break
        label = f"pair ({s1}, {s2})"
        try:
            system = shortcut_system(f, p1, s1, s2)
        except ZeroDenominator:
            evidence.append(f"{label}: p1 undefined")
            continue
        tried += 1
        if system is None:
            evidence.append(f"{label}: specializations constant or associate")
            continue
        systems.append(system)
        try:
            p2 = parametrize_space_curve(system, param="t2", config=config, accept=_c2_accept(psi))
        except CurveError as err:
            evidence.append(f"{label}: {err.message}")
            continue
        logger.info(f"C2 from {label}: {p2}")
        return p2, Fraction(s1), Fraction(s2), system

    msg = f"No sample pair gave a usable C2 after {tried} pairs."
    logger.debug(msg)
    raise AllPairsExhausted(msg, evidence="; ".join(evidence), systems=tuple(systems))


def compute_c2_general(f: MPoly, p1: CurveParam, config: Config = DEFAULT_CONFIG,
                       psi: PsiDecomposition = None) -> Tuple[CurveParam, SpaceCurveSystem]:
    """P2(t2) from two independent Psi coefficients, lowest indices first."""
    psi = psi or psi_decompose(f, p1)
    coeffs = [h for h in psi.psi_coeffs if not h.is_zero]
    if any(h.is_constant for h in coeffs):
        msg = "A Psi coefficient is a nonzero constant: their common zero set is empty."
        raise InsufficientPsiCoefficients(msg, count=len(coeffs))
    errors = []
    for h1, h2 in itertools.combinations(coeffs, 2):
        if h1.monic() == h2.monic():
            continue
        system = SpaceCurveSystem((h1, h2))
        try:
            p2 = parametrize_space_curve(system, param="t2", config=config, accept=_c2_accept(psi))
        except CurveError as err:
            errors.append(err.message)
            continue
        logger.info(f"C2 from Psi coefficients {system}: {p2}")
        return p2, system
    msg = f"Fewer than two usable independent Psi coefficients among {len(coeffs)}."
    logger.debug(msg)
    raise InsufficientPsiCoefficients(msg, count=len(coeffs), evidence="; ".join(errors))


# standard form and verification ----------------------------------------------
def normalize_standard(p1: CurveParam, p2: CurveParam) -> Tuple[SurfaceParam, Fraction]:
    """Move a regular point t2^0 of p2 to the origin; returns the pair and t2^0."""
    if p2.is_constant:
        raise NormalizationFailed(f"Cannot normalize the constant curve {p2}.")
    for c in small_rationals(NORMALIZE_HEIGHT):
        try:
            value = p2.evaluate(c)
            slope = p2.derivative_at(c)
        except ZeroDenominator:
            continue
        if not any(slope):
            continue
        q2 = p2.shift(c).translate([-x for x in value])
        return SurfaceParam(p1.translate(value), q2), c
    msg = f"No regular point of {p2} on the shift ladder."
    logger.error(msg)
    raise NormalizationFailed(msg)


def has_surface_rank(sp: SurfaceParam) -> bool:
    tv = sp.vars
    a = [c.diff(0).embed(tv) for c in sp.p1.coords]
    b = [c.diff(0).embed(tv) for c in sp.p2.coords]
    return any(not (a[i] * b[j] - a[j] * b[i]).is_zero for i, j in ((0, 1), (0, 2), (1, 2)))


def verify_surface_param(f: MPoly, sp: SurfaceParam) -> bool:
    """f(p1(t1) + p2(t2)) == 0 exactly and the Jacobian has rank 2."""
    tv = sp.vars
    if not substitute(f, dict(enumerate(sp.coordinates())), tv).is_zero:
        return False
    return has_surface_rank(sp)


def _distinct_curves(p2: CurveParam, c1: SpaceCurveSystem) -> bool:
    sampled = 0
    for t0 in small_rationals(NORMALIZE_HEIGHT):
        if sampled >= DISTINCT_SAMPLES:
            break
        try:
            point = p2.evaluate(t0)
        except ZeroDenominator:
            continue
        sampled += 1
        if any(g.evaluate(point) != 0 for g in c1.gens):
            return True
    return False


def check_certificate(f: MPoly, sp: SurfaceParam, cert: Certificate, psi: PsiDecomposition = None) -> List[str]:
    """Violated certificate conditions; empty when the certificate holds."""
    out = []
    if not verify_surface_param(f, sp):
        out.append("f does not vanish on p1 + p2, or the Jacobian has rank < 2")
    if not validate_on_curve(cert.p1_raw, cert.c1_defining):
        out.append("C1 generators do not vanish on p1")
    if not validate_on_curve(cert.p2_raw, cert.c2_defining):
        out.append("C2 generators do not vanish on p2")
    psi = psi or psi_decompose(f, cert.p1_raw)
    if not _vanishes_on(psi.psi_coeffs, cert.p2_raw):
        out.append("some Psi coefficient does not vanish on p2")
    if not (psi.psi.depends_on(3) and any(psi.psi.depends_on(i) for i in range(3))):
        out.append("Psi does not depend on both t1 and x")
    if not _distinct_curves(cert.p2_raw, cert.c1_defining):
        out.append("C2 coincides with C1 on every sampled point")
    for name, p in (("p1", cert.p1_raw), ("p2", cert.p2_raw)):
        if is_line(p):
            out.append(f"{name} is a line")
        elif properness_degree(p) != 1:
            out.append(f"{name} is not proper")
    try:
        origin = sp.p2.evaluate(0)
        slope = sp.p2.derivative_at(0)
    except ZeroDenominator:
        origin, slope = None, ()
    if origin != (0, 0, 0) or not any(slope):
        out.append("p2 is not in standard form")
    return out


def replay_certificate(f: MPoly, cert: Certificate, config: Config = DEFAULT_CONFIG) -> SurfaceParam:
    """Rebuild the parametrization from the recorded vector, component, pair and route."""
    p1 = next(itertools.islice(c1_candidates(f, cert.vector, config), cert.component, None), None)
    if p1 is None:
        raise StructuralError(f"C1 component {cert.component} of vector {_vec_str(cert.vector)} is out of reach.")
    psi = psi_decompose(f, p1)
    if cert.s1 is not None:
        system = shortcut_system(f, p1, cert.s1, cert.s2)
        if system is None:
            raise AllPairsExhausted(f"Recorded pair ({cert.s1}, {cert.s2}) is unusable.")
        p2 = parametrize_space_curve(system, param="t2", config=config, accept=_c2_accept(psi))
    else:
        p2, _ = compute_c2_general(f, p1, config, psi)
    sp, shift = normalize_standard(p1, p2)
    if shift != cert.shift:
        raise StructuralError(f"Replayed shift {shift} differs from the recorded {cert.shift}.")
    return sp


# pipeline ----------------------------------------------------------------------
def _describe(evidence) -> str:
    if isinstance(evidence, FiniteEvidence):
        return "finite intersection: " + "; ".join(f"res_{n} = {r}" for n, r in evidence.witnesses)
    if isinstance(evidence, CurveFound):
        return f"curve found: {evidence.param}"
    return f"unknown: {evidence.reason}"


# "both" falls back to the general route and cross-checks a shortcut success against it
_ROUTES = {"shortcut": ("shortcut",), "general": ("general",), "both": ("shortcut", "general")}


def _c2(f: MPoly, p1: CurveParam, route: str, config: Config, psi: PsiDecomposition):
    """(p2, s1, s2, system) of one route; s1 and s2 are None on the general route."""
    if route == "shortcut":
        return compute_c2_shortcut(f, p1, config, psi)
    p2, system = compute_c2_general(f, p1, config, psi)
    return p2, None, None, system


def routes_agree(p2: CurveParam, system: SpaceCurveSystem, other_p2: CurveParam, other_system: SpaceCurveSystem) -> bool:
    """Each route's p2 lies on the other route's defining system."""
    return validate_on_curve(p2, other_system) and validate_on_curve(other_p2, system)


def _cross_check(f: MPoly, p1: CurveParam, config: Config, psi: PsiDecomposition,
                 p2: CurveParam, system: SpaceCurveSystem) -> str:
    try:
        other_p2, other_system = compute_c2_general(f, p1, config, psi)
    except TransurfError as err:
        return f"general route failed: {err.message}"
    if routes_agree(p2, system, other_p2, other_system):
        return "routes agree"
    logger.warning(f"Shortcut C2 {p2} and general C2 {other_p2} lie on different curves.")
    return f"routes disagree: general route gave {other_p2}"


def _try_component(f: MPoly, a: CandidateVector, k: int, p1: CurveParam, config: Config,
                   evidence: List[str], c2_systems: List[SpaceCurveSystem]) -> Optional[Translational]:
    """Run C2, normalization and the certificate check on one C1 component."""
    label = f"vector {_vec_str(a)}, C1 component {k}"
    psi = psi_decompose(f, p1)
    for route in _ROUTES[config.route]:
        try:
            p2, s1, s2, system2 = _c2(f, p1, route, config, psi)
            sp, shift = normalize_standard(p1, p2)
        except AllPairsExhausted as err:
            evidence.append(f"{label}: C2 ({route}): {err.message}")
            c2_systems.extend(err.details.get("systems", ()))
            continue
        except TransurfError as err:
            evidence.append(f"{label}: C2 ({route}): {err.message}")
            continue
        c2_systems.append(system2)

        cert = Certificate(a, s1, s2, shift, c1_system(f, a), system2, p1, p2, route, k)
        violations = check_certificate(f, sp, cert, psi)
        if violations:
            evidence.append(f"{label}: certificate rejected ({route}): {'; '.join(violations)}")
            continue
        if config.route == "both" and route == "shortcut":
            evidence.append(f"{label}: {_cross_check(f, p1, config, psi, p2, system2)}")
        logger.info(f"Translational certificate for {f}: {label}, route {route}, shift {shift}.")
        evidence.append(f"{label}: accepted ({route}), p1 = {p1}")
        return Translational(sp, cert, tuple(evidence))
    return None


def _dimension_notes(c2_systems: Sequence[SpaceCurveSystem], config: Config) -> List[str]:
    """Finite-intersection witnesses of every distinct C2 system tried; falls back to the
    full dimension evidence of the first one when none of them is finite.
    """
    unique = list(dict.fromkeys(c2_systems))
    notes = []
    for system in unique:
        found = finite_evidence(system)
        if found is not None:
            notes.append(f"dimension evidence of {system}: {_describe(found)}")
    if unique and not notes:
        notes.append(f"dimension evidence of {unique[0]}: {_describe(dimension_evidence(unique[0], config))}")
    return notes


def classify_surface(f: MPoly, config: Config = DEFAULT_CONFIG) -> Classification:
    if f.vars != SURFACE_VARS:
        f = f.embed(SURFACE_VARS)
    if f.is_constant:
        msg = f"A surface needs a nonconstant polynomial; got {f}."
        logger.error(msg)
        raise InputRejected(msg)
    if not is_squarefree(f):
        msg = f"{f} is not squarefree."
        logger.error(msg)
        raise InputRejected(msg)

    if f.total_degree() == 1:
        sp = plane_param(f)
        if not verify_surface_param(f, sp):
            raise StructuralError(f"Plane parametrization of {f} does not verify.")
        logger.info(f"{f} is a plane.")
        return Plane(sp)

    direction = cylinder_test(f)
    if direction is not None:
        logger.info(f"{f} is a cylinder with direction {_vec_str(direction)}.")
        return Cylinder(direction)

    evidence = []
    c2_systems = []
    for a in candidate_vectors(config):
        try:
            for k, p1 in enumerate(c1_candidates(f, a, config)):
                result = _try_component(f, a, k, p1, config, evidence, c2_systems)
                if result is not None:
                    return result
        except (VectorRejected, CurveError) as err:
            evidence.append(f"vector {_vec_str(a)}: C1: {err.message}")

    evidence.extend(_dimension_notes(c2_systems, config))
    logger.warning(f"Budget exhausted for {f} after {len(evidence)} recorded attempts.")
    return Undecided(tuple(evidence))
