#!/usr/bin/env python

__doc__ = """
Module: polycore.py

Exact multivariate polynomial (MPoly) and rational function (RatFn) arithmetic
over the rationals.

The heavy lifting (multiplication, gcd, subresultant resultants, univariate
factor lists) is done by sympy's Poly over the QQ domain; this module fixes the
conventions the rest of the package relies on:
 * variable identity is positional inside a VarSet; names only matter when a
   polynomial is moved to another VarSet (`embed`) or printed;
 * "up to a nonzero constant" is made canonical by `MPoly.monic`: the leading
   coefficient under the graded-lex order (first variable largest) is 1;
 * a RatFn is always reduced with a monic denominator, so equal rational
   functions are equal dataclasses;
 * the resultant of a pair in which exactly one member is constant in the
   eliminated variable is that constant raised to the other's degree.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
import logging
from typing import Dict, List, Mapping, Sequence, Tuple, Union

import sympy
from sympy import Poly, QQ

from transurf.errors import StructuralError, UndefinedElimination, VarSetMismatch, ZeroDenominator


logger = logging.getLogger(__name__)


Scalar = Union[int, Fraction]
Monomial = Tuple[int, ...]


def _to_sympy(c: Scalar) -> sympy.Rational:
    c = Fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _grlex_key(m: Monomial):
    return (sum(m), m)


@dataclass(frozen=True)
class VarSet:
    """Ordered variable names; equal VarSets share the same names in the same order."""

    names: Tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("A VarSet needs at least one variable.")
        if any(not n for n in names):
            raise ValueError(f"Empty variable name in {names}.")
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate variable names in {names}.")

    @property
    def arity(self) -> int:
        return len(self.names)

    @cached_property
    def symbols(self) -> Tuple[sympy.Symbol, ...]:
        return tuple(sympy.Symbol(n) for n in self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise VarSetMismatch(f"Variable {name!r} not in {self}.") from None

    def __str__(self):
        return "(" + ", ".join(self.names) + ")"


SURFACE_VARS = VarSet(("x1", "x2", "x3"))


@dataclass(frozen=True)
class MPoly:
    """Polynomial with rational coefficients over a VarSet.
    Attributes:
      vars (VarSet): the variables, in order.
      poly (sympy.Poly): the sympy representation, over QQ with gens == vars.symbols.
    """

    vars: VarSet
    poly: Poly

    # constructors ------------------------------------------------------
    @classmethod
    def from_terms(cls, vars: VarSet, terms: Mapping[Monomial, Scalar]) -> "MPoly":
        rep = {}
        for m, c in terms.items():
            if len(m) != vars.arity:
                raise StructuralError(f"Exponent vector {m} does not match {vars}.")
            if c != 0:
                rep[tuple(int(e) for e in m)] = _to_sympy(c)
        if not rep:
            return cls.zero(vars)
        return cls(vars, Poly.from_dict(rep, *vars.symbols, domain=QQ))

    @classmethod
    def zero(cls, vars: VarSet) -> "MPoly":
        return cls(vars, Poly(0, *vars.symbols, domain=QQ))

    @classmethod
    def const(cls, vars: VarSet, c: Scalar) -> "MPoly":
        return cls.from_terms(vars, {(0,) * vars.arity: c})

    @classmethod
    def var(cls, vars: VarSet, i: int) -> "MPoly":
        m = [0] * vars.arity
        m[i] = 1
        return cls.from_terms(vars, {tuple(m): 1})

    def _wrap(self, poly: Poly) -> "MPoly":
        return MPoly(self.vars, poly)

    # inspection --------------------------------------------------------
    @cached_property
    def terms(self) -> Dict[Monomial, Fraction]:
        """Exponent vector -> coefficient, in descending graded-lex order."""
        raw = {tuple(m): _to_fraction(c) for m, c in self.poly.terms() if c != 0}
        return {m: raw[m] for m in sorted(raw, key=_grlex_key, reverse=True)}

    @property
    def is_zero(self) -> bool:
        return bool(self.poly.is_zero)

    @property
    def is_constant(self) -> bool:
        return bool(self.poly.is_ground)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant.")
        return next(iter(self.terms.values()), Fraction(0))

    def leading_coefficient(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return next(iter(self.terms.values()))

    def degree(self, v: int) -> int:
        """Degree in variable v; -1 for the zero polynomial."""
        if not 0 <= v < self.vars.arity:
            raise IndexError(f"Variable index {v} out of range for {self.vars}.")
        if self.is_zero:
            return -1
        return max(m[v] for m in self.terms)

    def degree_list(self) -> Tuple[int, ...]:
        return tuple(self.degree(v) for v in range(self.vars.arity))

    def total_degree(self) -> int:
        if self.is_zero:
            return -1
        return max(sum(m) for m in self.terms)

    def depends_on(self, v: int) -> bool:
        return self.degree(v) > 0

    # arithmetic --------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise VarSetMismatch(f"VarSet mismatch: {self.vars} vs {other.vars}.")
            return other.poly
        if isinstance(other, (int, Fraction)):
            return Poly(_to_sympy(other), *self.vars.symbols, domain=QQ)
        return NotImplemented

    def __add__(self, other):
        q = self._coerce(other)
        if q is NotImplemented:
            return q
        return self._wrap(self.poly + q)

    __radd__ = __add__

    def __sub__(self, other):
        q = self._coerce(other)
        if q is NotImplemented:
            return q
        return self._wrap(self.poly - q)

    def __rsub__(self, other):
        q = self._coerce(other)
        if q is NotImplemented:
            return q
        return self._wrap(q - self.poly)

    def __mul__(self, other):
        q = self._coerce(other)
        if q is NotImplemented:
            return q
        return self._wrap(self.poly * q)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.poly)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"Exponent must be a nonnegative integer; got {k!r}.")
        return self._wrap(self.poly**k)

    def exquo(self, other: "MPoly") -> "MPoly":
        """Exact division; raises sympy's ExactQuotientFailed when other does not divide self."""
        return self._wrap(self.poly.exquo(self._coerce(other)))

    def diff(self, v: int) -> "MPoly":
        if not 0 <= v < self.vars.arity:
            raise IndexError(f"Variable index {v} out of range for {self.vars}.")
        if self.is_zero:
            return self
        return self._wrap(self.poly.diff(self.vars.symbols[v]))

    def monic(self) -> "MPoly":
        lc = self.leading_coefficient()
        if lc in (0, 1):
            return self
        return self * (1 / lc)

    # evaluation and moves ----------------------------------------------
    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.vars.arity:
            raise StructuralError(f"Point {point} does not match {self.vars}.")
        values = [Fraction(p) for p in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for x, e in zip(values, m):
                if e:
                    term *= x**e
            total += term
        return total

    def embed(self, target: VarSet, rename: Mapping[str, str] = None) -> "MPoly":
        """Same polynomial over `target`, variables matched by (renamed) name."""
        rename = rename or {}
        slots = {}
        for i, name in enumerate(self.vars.names):
            if self.degree(i) > 0:
                slots[i] = target.index(rename.get(name, name))
        out = {}
        for m, c in self.terms.items():
            e = [0] * target.arity
            for i, j in slots.items():
                e[j] += m[i]
            out[tuple(e)] = c
        return MPoly.from_terms(target, out)

    def coefficients_in(self, v: int) -> Dict[int, "MPoly"]:
        """Coefficients of self seen as a polynomial in variable v (v-exponent zeroed)."""
        groups: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            rest = m[:v] + (0,) + m[v + 1:]
            groups.setdefault(m[v], {})[rest] = c
        return {k: MPoly.from_terms(self.vars, groups[k]) for k in sorted(groups)}

    def __str__(self):
        return str(self.poly.as_expr())

    def __repr__(self):
        return f"MPoly({self}, vars={self.vars.names})"


def _check_same(p: MPoly, q: MPoly):
    if p.vars != q.vars:
        raise VarSetMismatch(f"VarSet mismatch: {p.vars} vs {q.vars}.")


def arith(op: str, p: MPoly, q: MPoly) -> MPoly:
    _check_same(p, q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"Unknown operation {op!r}.")


def power(p: MPoly, k: int) -> MPoly:
    return p**k


def diff(p: MPoly, v: int) -> MPoly:
    return p.diff(v)


def gcd(p: MPoly, q: MPoly) -> MPoly:
    """Monic gcd; gcd(0, q) is monic q and gcd(0, 0) is 0."""
    _check_same(p, q)
    if p.is_zero:
        return q.monic()
    if q.is_zero:
        return p.monic()
    if p.is_constant or q.is_constant:
        return MPoly.const(p.vars, 1)
    return p._wrap(p.poly.gcd(q.poly)).monic()


def gcd_all(polys: Sequence[MPoly]) -> MPoly:
    def step(acc, p):
        if acc.is_constant and not acc.is_zero:
            return acc
        return gcd(acc, p)

    return reduce(step, polys[1:], polys[0].monic())


def resultant(p: MPoly, q: MPoly, v: int) -> MPoly:
    """Resultant of p and q with respect to variable v (sympy subresultant PRS)."""
    _check_same(p, q)
    dp, dq = p.degree(v), q.degree(v)
    if dp <= 0 and dq <= 0:
        msg = f"Both polynomials are constant in {p.vars.names[v]}: elimination is undefined."
        logger.error(msg)
        raise UndefinedElimination(msg, var=p.vars.names[v])
    if dq <= 0:
        return q**dp
    if dp <= 0:
        return p**dq
    if dp < dq:
        # sympy's PRS needs deg p >= deg q; res(p, q) = (-1)^(dp*dq) res(q, p)
        swapped = resultant(q, p, v)
        return -swapped if (dp * dq) % 2 else swapped

    vars = p.vars
    order = (v,) + tuple(i for i in range(vars.arity) if i != v)
    gens = [vars.symbols[i] for i in order]

    def reordered(r: MPoly) -> Poly:
        return Poly.from_dict({tuple(m[i] for i in order): _to_sympy(c) for m, c in r.terms.items()}, *gens, domain=QQ)

    res = reordered(p).resultant(reordered(q))
    if not isinstance(res, Poly):
        return MPoly.const(vars, _to_fraction(sympy.Rational(res)))

    out = {}
    for m, c in res.terms():
        if c == 0:
            continue
        e = [0] * vars.arity
        for slot, i in enumerate(order[1:]):
            e[i] = m[slot]
        out[tuple(e)] = _to_fraction(c)
    return MPoly.from_terms(vars, out)


def content_primitive_block(p: MPoly, block: Sequence[int]) -> Tuple[MPoly, MPoly]:
    """Content of p seen as a polynomial in the `block` variables, and the cofactor."""
    if p.is_zero:
        return p, p
    block = tuple(block)
    groups: Dict[Monomial, Dict[Monomial, Fraction]] = {}
    for m, c in p.terms.items():
        key = tuple(m[i] for i in block)
        rest = tuple(0 if i in block else e for i, e in enumerate(m))
        groups.setdefault(key, {})[rest] = c
    coeffs = [MPoly.from_terms(p.vars, g) for g in groups.values()]
    content = gcd_all(coeffs)
    return content, p.exquo(content)


def content_primitive(p: MPoly, v: int) -> Tuple[MPoly, MPoly]:
    return content_primitive_block(p, (v,))


def squarefree_part(p: MPoly) -> MPoly:
    """Monic product of the distinct irreducible factors of p."""
    if p.is_zero:
        msg = "The squarefree part of the zero polynomial is undefined."
        logger.error(msg)
        raise StructuralError(msg)
    if p.is_constant:
        return MPoly.const(p.vars, 1)
    g = p
    for v in range(p.vars.arity):
        if p.degree(v) > 0:
            g = gcd(g, p.diff(v))
            if g.is_constant:
                break
    return p.exquo(g).monic()


def is_squarefree(p: MPoly) -> bool:
    return squarefree_part(p).total_degree() == p.total_degree()


def _univariate(p: MPoly, v: int) -> Poly:
    if any(e for m in p.terms for i, e in enumerate(m) if i != v):
        raise StructuralError(f"{p} is not univariate in {p.vars.names[v]}.")
    return Poly.from_dict({(m[v],): _to_sympy(c) for m, c in p.terms.items()} or {(0,): 0},
                          p.vars.symbols[v], domain=QQ)


def rational_roots(p: MPoly, v: int) -> List[Fraction]:
    """Sorted distinct rational roots of a polynomial univariate in v."""
    if p.is_constant:
        return []
    roots = _univariate(p, v).ground_roots()
    return sorted(_to_fraction(sympy.Rational(r)) for r in roots)


def univariate_factors(p: MPoly, v: int) -> List[Tuple[MPoly, int]]:
    """Monic irreducible factors (with multiplicity) of a polynomial univariate in v."""
    if p.is_constant:
        return []
    _, factors = _univariate(p, v).factor_list()
    out = []
    for fac, k in factors:
        terms = {}
        for (e,), c in fac.terms():
            m = [0] * p.vars.arity
            m[v] = e
            terms[tuple(m)] = _to_fraction(c)
        out.append((MPoly.from_terms(p.vars, terms).monic(), int(k)))
    return sorted(out, key=lambda fk: (fk[0].total_degree(), list(fk[0].terms.items())))


@dataclass(frozen=True)
class RatFn:
    """Reduced rational function num/den; den is monic under graded-lex."""

    num: MPoly
    den: MPoly

    @classmethod
    def make(cls, num: MPoly, den: MPoly) -> "RatFn":
        _check_same(num, den)
        if den.is_zero:
            msg = f"Zero denominator for numerator {num}."
            logger.error(msg)
            raise ZeroDenominator(msg)
        if num.is_zero:
            return cls(num, MPoly.const(num.vars, 1))
        if not den.is_constant:
            g = gcd(num, den)
            if not g.is_constant:
                num, den = num.exquo(g), den.exquo(g)
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        return cls(num, den)

    @classmethod
    def from_poly(cls, p: MPoly) -> "RatFn":
        return cls(p, MPoly.const(p.vars, 1))

    @classmethod
    def const(cls, vars: VarSet, c: Scalar) -> "RatFn":
        return cls.from_poly(MPoly.const(vars, c))

    @classmethod
    def var(cls, vars: VarSet, i: int) -> "RatFn":
        return cls.from_poly(MPoly.var(vars, i))

    @property
    def vars(self) -> VarSet:
        return self.num.vars

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def _coerce(self, other) -> "RatFn":
        if isinstance(other, RatFn):
            if other.vars != self.vars:
                raise VarSetMismatch(f"VarSet mismatch: {self.vars} vs {other.vars}.")
            return other
        if isinstance(other, MPoly):
            return RatFn.from_poly(other) if other.vars == self.vars else self._coerce(RatFn.from_poly(other))
        if isinstance(other, (int, Fraction)):
            return RatFn.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFn.make(self.num + o.num, self.den)
        return RatFn.make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFn.make(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero:
            msg = f"Division of {self} by zero."
            logger.error(msg)
            raise ZeroDenominator(msg)
        return RatFn.make(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ValueError(f"Exponent must be an integer; got {k!r}.")
        if k < 0:
            return RatFn.const(self.vars, 1) / self ** (-k)
        return RatFn.make(self.num**k, self.den**k)

    def diff(self, v: int) -> "RatFn":
        n, d = self.num, self.den
        if d.is_constant:
            return RatFn.make(n.diff(v), d)
        return RatFn.make(n.diff(v) * d - n * d.diff(v), d * d)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDenominator(f"Denominator of {self} vanishes at {tuple(point)}.")
        return self.num.evaluate(point) / d

    def embed(self, target: VarSet, rename: Mapping[str, str] = None) -> "RatFn":
        return RatFn.make(self.num.embed(target, rename), self.den.embed(target, rename))

    def __str__(self):
        if self.den.is_constant:
            return str(self.num)
        return f"({self.num})/({self.den})"


Binding = Union[RatFn, MPoly, int, Fraction]


def _powers(q: MPoly, n: int) -> List[MPoly]:
    out = [MPoly.const(q.vars, 1)]
    for _ in range(n):
        out.append(out[-1] * q)
    return out


def substitute(p: MPoly, bindings: Mapping[int, Binding], target: VarSet) -> RatFn:
    """Compose p with `bindings` (variable index -> value over `target`).
    Unbound variables of p are carried over to the variable of `target` with the same name.
    """
    values: Dict[int, RatFn] = {}
    for i, b in bindings.items():
        if not 0 <= i < p.vars.arity:
            raise IndexError(f"Variable index {i} out of range for {p.vars}.")
        if isinstance(b, MPoly):
            b = RatFn.from_poly(b)
        if isinstance(b, RatFn):
            if b.vars != target:
                raise VarSetMismatch(f"Binding over {b.vars} does not match target {target}.")
        else:
            b = RatFn.const(target, b)
        values[i] = b

    degs = p.degree_list()
    carried = {}
    for i, d in enumerate(degs):
        if i not in values and d > 0:
            carried[i] = target.index(p.vars.names[i])

    num_pows = {i: _powers(values[i].num, degs[i]) for i in values if degs[i] > 0}
    den_pows = {i: _powers(values[i].den, degs[i]) for i in values if degs[i] > 0}

    total = MPoly.zero(target)
    for m, c in p.terms.items():
        e = [0] * target.arity
        for i, j in carried.items():
            e[j] += m[i]
        term = MPoly.from_terms(target, {tuple(e): c})
        for i in num_pows:
            term = term * num_pows[i][m[i]] * den_pows[i][degs[i] - m[i]]
        total = total + term

    den = MPoly.const(target, 1)
    for i in den_pows:
        den = den * den_pows[i][degs[i]]
    return RatFn.make(total, den)


@dataclass(frozen=True)
class PsiCore:
    h_tilde: MPoly
    psi: MPoly
    p_hat: MPoly


@dataclass(frozen=True)
class PsiDecomposition:
    """f(P1(t1) + x) = h_tilde(x) * psi(x, t1) * p_hat(t1) / den_cleared(t1).
    Attributes:
      h_tilde (MPoly): content in x, over (x1, x2, x3).
      psi (MPoly): primitive mixed part, over (x1, x2, x3, t1).
      psi_coeffs (tuple): coefficients of t1^0 .. t1^n in psi, over (x1, x2, x3).
      p_hat (MPoly): content in t1, over (t1,).
      den_cleared (MPoly): denominator cleared from the substitution, over (t1,).
    """

    h_tilde: MPoly
    psi: MPoly
    psi_coeffs: Tuple[MPoly, ...]
    p_hat: MPoly
    den_cleared: MPoly


def psi_decompose_core(H: MPoly, block: Sequence[int] = (0, 1, 2), t: int = 3) -> PsiCore:
    """Split H(x, t) as h_tilde(x) * psi(x, t) * p_hat(t); all three stay over H's VarSet."""
    if H.is_zero:
        msg = "Cannot decompose the zero polynomial."
        logger.error(msg)
        raise StructuralError(msg)
    p_hat, rest = content_primitive_block(H, block)
    h_tilde, psi = content_primitive(rest, t)
    return PsiCore(h_tilde=h_tilde, psi=psi, p_hat=p_hat)
