#!/usr/bin/env python

__doc__ = """
Module: genlab.py

Test instance laboratory:
 * implicitize: implicit equation of a translational parametrization, by
   iterated resultants (t1 first, then t2), coprime refinement of the
   candidates and selection of the factor vanishing at sampled points;
 * random_instance: seeded translational pair from the supported families,
   with its implicit equation;
 * roundtrip_check: classify generated instances and tabulate the outcome
   (pandas DataFrame, one row per seed).

Families (P1 in t1, P2 in t2 in standard form with P2'(0) among the first seven
candidate vectors):
 * polynomial-graph: P1 = (t, a(t), b(t)); P2 = a*t + c2*t^2 + ...
 * rational-graph: P1 = (t, a(t)/(t - r), b(t)); P2 = (a*t + c*t^2)/(1 + r*t)
 * monomial: coordinates c*t^e with e in {1, 2, 3}
 * conic-based: (2t/(1+t^2), 2t^2/(1+t^2), c*t), permuted for P2
"""

from dataclasses import dataclass, replace
from fractions import Fraction
import logging
import time
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd

from transurf.config import DEFAULT_CONFIG, Config
from transurf.curvelib import CurveParam, is_line, properness_degree
from transurf.errors import (
    AmbiguousFactor,
    BudgetExceeded,
    NotASurface,
    RetryCapExhausted,
    SpecError,
    TransurfError,
    ZeroDenominator,
)
from transurf.polycore import (
    SURFACE_VARS,
    MPoly,
    RatFn,
    VarSet,
    content_primitive_block,
    gcd,
    resultant,
    squarefree_part,
)
from transurf.translational import (
    BASE_VECTORS,
    SurfaceParam,
    Translational,
    classify_surface,
    has_surface_rank,
    verify_surface_param,
)


logger = logging.getLogger(__name__)


FAMILIES = ("polynomial-graph", "rational-graph", "monomial", "conic-based")
ELIM_VARS = VarSet(("x1", "x2", "x3", "t1", "t2"))
T1, T2 = 3, 4
REPORT_COLUMNS = ["seed", "passed", "classification", "seconds", "message"]
# resampling attempts for one curve before giving up on a seed
CURVE_ATTEMPTS = 20


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe of a random translational instance.
    Attributes:
      family1, family2 (str): families of P1 and P2, see FAMILIES.
      height (int): bound on the absolute value of sampled integers.
      degree1, degree2 (int): degree bounds of P1 and P2, at least 2.
      seed (int): seed of the instance.
      retries (int): attempts before RetryCapExhausted.
      degree_budget (int): cap on the total degree of elimination intermediates.
    """

    family1: str = "polynomial-graph"
    family2: str = "polynomial-graph"
    height: int = 3
    degree1: int = 3
    degree2: int = 3
    seed: int = 0
    retries: int = 5
    degree_budget: int = 40

    def validate(self) -> "InstanceSpec":
        for fam in (self.family1, self.family2):
            if fam not in FAMILIES:
                raise SpecError(f"Unknown family {fam!r}; expected one of {FAMILIES}.")
        if self.degree1 < 2 or self.degree2 < 2:
            raise SpecError(f"Degree bounds must be at least 2 (lines are excluded); got {self.degree1}, {self.degree2}.")
        if self.height < 1 or self.retries < 1:
            raise SpecError("height and retries must be positive.")
        if 2 * self.degree1 * self.degree2 > self.degree_budget:
            raise SpecError(f"Degrees {self.degree1}, {self.degree2} exceed the elimination budget {self.degree_budget}.")
        return self


# sampling -------------------------------------------------------------------
def _rand_int(rng: np.random.Generator, height: int, nonzero: bool = False) -> int:
    while True:
        k = int(rng.integers(-height, height + 1))
        if k or not nonzero:
            return k


def _rand_poly(rng, t: MPoly, height: int, degree: int) -> MPoly:
    """Random polynomial of exact degree `degree` in t."""
    out = t**degree * _rand_int(rng, height, nonzero=True)
    for k in range(degree):
        out = out + t**k * _rand_int(rng, height)
    return out


def _sample_p1(family: str, rng, height: int, degree: int) -> CurveParam:
    tv = VarSet(("t1",))
    t = MPoly.var(tv, 0)
    T = RatFn.var(tv, 0)
    if family == "polynomial-graph":
        coords = (T, RatFn.from_poly(_rand_poly(rng, t, height, degree)),
                  RatFn.from_poly(_rand_poly(rng, t, height, max(1, degree - 1))))
    elif family == "rational-graph":
        r = _rand_int(rng, height)
        a = _rand_poly(rng, t, height, 2)
        while a.evaluate((r,)) == 0:
            a = a + 1
        coords = (T, RatFn.make(a, t - r), RatFn.from_poly(_rand_poly(rng, t, height, max(1, degree - 1))))
    elif family == "monomial":
        exps = [1, int(rng.integers(2, min(3, degree) + 1)), int(rng.integers(1, min(3, degree) + 1))]
        order = rng.permutation(3)
        coords = tuple(RatFn.from_poly(t ** exps[int(i)] * _rand_int(rng, height, nonzero=True)) for i in order)
    else:
        den = t * t + 1
        coords = (RatFn.make(t * 2, den), RatFn.make(t * t * 2, den), T * _rand_int(rng, height, nonzero=True))
    return CurveParam(coords)


def _sample_p2(family: str, rng, height: int, degree: int) -> CurveParam:
    """Standard form: P2(0) = 0 and P2'(0) is one of the first seven candidate vectors."""
    tv = VarSet(("t2",))
    t = MPoly.var(tv, 0)
    if family == "monomial":
        a = BASE_VECTORS[int(rng.integers(0, 6))]
        coords = tuple(RatFn.from_poly(t) if ai else
                       RatFn.from_poly(t ** int(rng.integers(2, min(3, degree) + 1)) * _rand_int(rng, height, nonzero=True))
                       for ai in a)
        return CurveParam(coords)
    if family == "conic-based":
        den = t * t + 1
        base = [RatFn.make(t, den), RatFn.make(t * t, den), RatFn.from_poly(t * int(rng.integers(0, 2)))]
        return CurveParam(tuple(base[int(i)] for i in rng.permutation(3)))

    a = BASE_VECTORS[int(rng.integers(0, 7))]
    coords = []
    for ai in a:
        num = t * ai
        for k in range(2, degree + 1):
            num = num + t**k * _rand_int(rng, height)
        coords.append(num)
    if family == "rational-graph":
        den = t * _rand_int(rng, height, nonzero=True) + 1
        return CurveParam(tuple(RatFn.make(n, den) for n in coords))
    return CurveParam(tuple(RatFn.from_poly(n) for n in coords))


def _usable(p: CurveParam) -> bool:
    return not p.is_constant and not is_line(p) and properness_degree(p) == 1


def sample_surface(spec: InstanceSpec, rng: np.random.Generator) -> SurfaceParam:
    for _ in range(CURVE_ATTEMPTS):
        p1 = _sample_p1(spec.family1, rng, spec.height, spec.degree1)
        p2 = _sample_p2(spec.family2, rng, spec.height, spec.degree2)
        if _usable(p1) and _usable(p2):
            sp = SurfaceParam(p1, p2)
            if has_surface_rank(sp):
                return sp
    raise NotASurface(f"No usable pair sampled for {spec}.")


def sample_surface_points(sp: SurfaceParam, count: int, seed: int = 0) -> List[Tuple[Fraction, Fraction, Fraction]]:
    """`count` points P(t1, t2) at random small rational parameters where P is defined."""
    rng = np.random.default_rng(seed)
    coords = sp.coordinates()
    points = []
    for _ in range(20 * count):
        if len(points) >= count:
            break
        params = tuple(Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 6))) for _ in range(2))
        try:
            points.append(tuple(c.evaluate(params) for c in coords))
        except ZeroDenominator:
            continue
    return points


# implicitization ----------------------------------------------------------------
def coprime_pieces(polys: Sequence[MPoly]) -> List[MPoly]:
    """Pairwise coprime monic squarefree polynomials with the same zero set as the product of `polys`."""
    pieces: List[MPoly] = []
    stack = [squarefree_part(p) for p in polys if not p.is_constant]
    while stack:
        x = stack.pop()
        if x.is_constant:
            continue
        for i, q in enumerate(pieces):
            g = gcd(x, q)
            if not g.is_constant:
                del pieces[i]
                stack.extend((q.exquo(g), g, x.exquo(g)))
                break
        else:
            pieces.append(x.monic())
    return sorted(pieces, key=lambda p: (p.total_degree(), list(p.terms.items())))


def _equations(sp: SurfaceParam) -> List[MPoly]:
    """x_i * den_i - num_i over (x1, x2, x3, t1, t2)."""
    sp = SurfaceParam(sp.p1.rename("t1"), sp.p2.rename("t2"))
    return [MPoly.var(ELIM_VARS, i) * c.den.embed(ELIM_VARS) - c.num.embed(ELIM_VARS)
            for i, c in enumerate(sp.coordinates())]


def _check_budget(p: MPoly, budget: int, stage: str):
    if p.total_degree() > budget:
        msg = f"{stage}: total degree {p.total_degree()} exceeds the budget {budget}."
        logger.warning(msg)
        raise BudgetExceeded(msg, degree=p.total_degree(), budget=budget)


def _x_part(p: MPoly) -> MPoly:
    """p without its factors free of x1, x2, x3."""
    return content_primitive_block(p, (0, 1, 2))[1]


def _eliminate(eqs: List[MPoly], pivot: int, budget: int) -> List[MPoly]:
    E = eqs[pivot]
    rs = []
    for q, Eq in enumerate(eqs):
        if q == pivot:
            continue
        R = resultant(E, Eq, T1) if Eq.depends_on(T1) else Eq
        if R.is_zero:
            return []
        R = _x_part(R)
        _check_budget(R, budget, "t1 elimination")
        rs.append(R)

    Ra, Rb = rs
    G = gcd(Ra, Rb)
    if G.depends_on(T2):
        Ra, Rb = Ra.exquo(G), Rb.exquo(G)
    if not (Ra.depends_on(T2) or Rb.depends_on(T2)):
        out = [r for r in (Ra, Rb) if not r.is_constant]
    else:
        F = resultant(Ra, Rb, T2)
        out = [] if F.is_zero else [_x_part(F)]
    for F in out:
        _check_budget(F, budget, "t2 elimination")
    return [F.embed(SURFACE_VARS) for F in out if not F.is_constant]


def implicitize(sp: SurfaceParam, budget: int = DEFAULT_CONFIG.degree_budget, config: Config = DEFAULT_CONFIG) -> MPoly:
    """Monic implicit equation f with f(p1(t1) + p2(t2)) == 0."""
    if not has_surface_rank(sp):
        msg = "The parametrization has Jacobian rank < 2."
        logger.error(msg)
        raise NotASurface(msg)

    eqs = _equations(sp)
    candidates = []
    for pivot in range(3):
        if eqs[pivot].depends_on(T1):
            candidates.extend(_eliminate(eqs, pivot, budget))
    if not candidates:
        msg = "Elimination produced no candidate polynomial."
        logger.warning(msg)
        raise AmbiguousFactor(msg)

    pieces = coprime_pieces(candidates)
    points = sample_surface_points(sp, config.sample_points, config.seed)
    survivors = [p for p in pieces if all(p.evaluate(pt) == 0 for pt in points)]
    if len(survivors) != 1:
        msg = f"{len(survivors)} of {len(pieces)} candidate factors vanish on the sampled points."
        logger.warning(msg)
        raise AmbiguousFactor(msg, survivors="; ".join(map(str, survivors)))

    f = survivors[0].monic()
    if not verify_surface_param(f, sp):
        msg = f"Selected factor {f} does not vanish identically on the parametrization."
        logger.warning(msg)
        raise AmbiguousFactor(msg)
    logger.info(f"Implicit equation: {f}")
    return f


# instances and the round trip ---------------------------------------------------
def random_instance(spec: InstanceSpec) -> Tuple[MPoly, SurfaceParam]:
    spec.validate()
    config = DEFAULT_CONFIG.with_changes(seed=spec.seed)
    errors = []
    for attempt in range(spec.retries):
        rng = np.random.default_rng([spec.seed, attempt])
        try:
            sp = sample_surface(spec, rng)
            return implicitize(sp, spec.degree_budget, config), sp
        except (BudgetExceeded, AmbiguousFactor, NotASurface) as err:
            logger.debug(f"seed {spec.seed}, attempt {attempt}: {err.message}")
            errors.append(err.message)
    msg = f"No instance for seed {spec.seed} after {spec.retries} attempts."
    logger.warning(msg)
    raise RetryCapExhausted(msg, errors="; ".join(errors))


@dataclass
class RoundtripReport:
    """Outcome of roundtrip_check, one row per seed (see REPORT_COLUMNS)."""

    frame: pd.DataFrame

    @property
    def count(self) -> int:
        return len(self.frame)

    @property
    def passed(self) -> int:
        return int(self.frame["passed"].astype(bool).sum())

    @property
    def failed(self) -> int:
        return self.count - self.passed

    @property
    def total_seconds(self) -> float:
        return float(self.frame["seconds"].astype(float).sum())

    @property
    def failing_seeds(self) -> List[int]:
        return [int(s) for s in self.frame.loc[~self.frame["passed"].astype(bool), "seed"]]

    def summary(self) -> dict:
        """Deterministic part of the report (timings are logged, not serialized)."""
        return {"count": self.count, "passed": self.passed, "failed": self.failed,
                "failing_seeds": self.failing_seeds}

    def failures(self) -> List[str]:
        bad = self.frame.loc[~self.frame["passed"].astype(bool)]
        return [f"seed {int(r.seed)}: {r.classification}: {r.message}" for r in bad.itertuples()]


def roundtrip_check(spec: InstanceSpec, count: int, config: Config = DEFAULT_CONFIG) -> RoundtripReport:
    """Generate `count` instances (seeds spec.seed, spec.seed + 1, ...) and classify each."""
    rows = []
    for k in range(count):
        s = replace(spec, seed=spec.seed + k)
        start = time.perf_counter()
        try:
            f, _ = random_instance(s)
            result = classify_surface(f, config)
            passed = isinstance(result, Translational) and verify_surface_param(f, result.surface)
            tag, message = result.tag, "" if passed else "; ".join(result.diagnostics[-3:])
        except TransurfError as err:
            passed, tag, message = False, "error", err.message
        rows.append({"seed": s.seed, "passed": passed, "classification": tag,
                     "seconds": time.perf_counter() - start, "message": message})

    report = RoundtripReport(pd.DataFrame(rows, columns=REPORT_COLUMNS))
    logger.info(f"Round trip: {report.passed}/{report.count} passed in {report.total_seconds:.1f} s; "
                f"failing seeds: {report.failing_seeds}")
    return report
