"""The four-parameter deformation machinery.

A parameter matrix U = (p q; r s) determines a unique function f with
f(1) = 1 satisfying

    f(1 + x)       = p f(x) + q f(1/x)
    f(x / (1 + x)) = r f(x) + s f(1/x)

on the positive rationals.  The deformation of x is the quotient
f(x) / f(1/x).  Entries may be integers or polynomials in one formal
variable; the recursion is the same either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .contfrac import CFExpansion, cf_expand
from .errors import DegenerateParametersError, DomainError, EvaluationError
from .exactnum import (
    INTEGER_DOMAIN,
    POLYNOMIAL_DOMAIN,
    CoefficientDomain,
    RationalFunction,
    RingPoly,
)

__all__ = [
    "UParams",
    "FPair",
    "SZeroParams",
    "DescendingCF",
    "U_NUM",
    "U_CON",
    "U_SZERO_POLY",
    "U_RZERO_POLY",
    "f_pair",
    "quantize",
    "codenominator",
    "j_quotient",
    "shift_by_integer",
    "szero_cf_form",
    "golden_closed_form",
    "golden_iterate",
    "fibonacci_poly_extend",
    "rzero_descending_cf",
]


class FPair(NamedTuple):
    """The value pair (f(x), f(1/x)) for one parameter matrix."""

    fx: object
    finv: object


@dataclass(frozen=True)
class UParams:
    """Parameter matrix (p q; r s) with nonzero determinant q*s - r*p.

    Entries are ints or RingPoly in a single formal variable.  Degenerate
    matrices are rejected at construction; tests that deliberately need one
    must go through :meth:`unchecked`.
    """

    p: int | RingPoly
    q: int | RingPoly
    r: int | RingPoly
    s: int | RingPoly

    def __post_init__(self):
        for name in ("p", "q", "r", "s"):
            v = getattr(self, name)
            if not isinstance(v, (int, RingPoly)):
                raise TypeError(f"entry {name} must be an int or RingPoly, got {type(v).__name__}")
        d = self.delta
        if (isinstance(d, int) and d == 0) or (isinstance(d, RingPoly) and d.is_zero()):
            raise DegenerateParametersError("determinant q*s - r*p must be nonzero")

    @classmethod
    def unchecked(cls, p, q, r, s) -> "UParams":
        u = object.__new__(cls)
        object.__setattr__(u, "p", p)
        object.__setattr__(u, "q", q)
        object.__setattr__(u, "r", r)
        object.__setattr__(u, "s", s)
        return u

    @classmethod
    def parse(cls, text: str, var: str = "p") -> "UParams":
        """Parse four comma-separated entries, integers or the formal variable."""
        tokens = [t.strip() for t in text.split(",")]
        if len(tokens) != 4:
            raise DomainError(f"expected four comma-separated entries, got {text!r}")
        entries = []
        for tok in tokens:
            if tok == var:
                entries.append(RingPoly.variable())
            else:
                try:
                    entries.append(int(tok))
                except ValueError:
                    raise DomainError(f"entry {tok!r} is neither an integer nor {var!r}") from None
        return cls(*entries)

    @property
    def delta(self):
        return self.q * self.s - self.r * self.p

    @property
    def symbolic(self) -> bool:
        return any(isinstance(v, RingPoly) for v in (self.p, self.q, self.r, self.s))

    @property
    def domain(self) -> CoefficientDomain:
        return POLYNOMIAL_DOMAIN if self.symbolic else INTEGER_DOMAIN

    def entries(self) -> tuple:
        dom = self.domain
        return tuple(dom.coerce(v) for v in (self.p, self.q, self.r, self.s))

    def _zero_entry(self, v) -> bool:
        return v == 0 if isinstance(v, int) else v.is_zero()

    @property
    def s_is_zero(self) -> bool:
        return self._zero_entry(self.s)

    @property
    def r_is_zero(self) -> bool:
        return self._zero_entry(self.r)

    def __str__(self):
        return f"({self.p},{self.q};{self.r},{self.s})"


U_NUM = UParams(1, 1, 1, 0)
U_CON = UParams(1, 1, 0, 1)
U_SZERO_POLY = UParams(RingPoly.variable(), 1, 1, 0)
U_RZERO_POLY = UParams(RingPoly.variable(), 1, 0, 1)


def _terms_of(x) -> tuple[int, ...]:
    if isinstance(x, CFExpansion):
        return x.terms
    if isinstance(x, (list, tuple)):
        return CFExpansion(tuple(x)).terms
    return cf_expand(x).terms


def f_pair(u: UParams, x, seed=(1, 1)) -> FPair:
    """Solve the defining system along the continued fraction of x.

    Ascends from the pair at 1 (the seed, normally (1, 1)) with the two
    moves derived from the defining equations applied to x and 1/x:

        step up by one:   (fx, finv) -> (p fx + q finv, s fx + r finv)
        take reciprocal:  swap the components

    Linear in the term sum of x.  The result is independent of the chosen
    representation of x because the pair at 1 is swap-invariant.
    """
    terms = _terms_of(x)
    dom = u.domain
    p, q, r, s = u.entries()
    fx = dom.coerce(seed[0])
    finv = dom.coerce(seed[1])
    for _ in range(terms[-1] - 1):
        fx, finv = p * fx + q * finv, s * fx + r * finv
    for n in reversed(terms[:-1]):
        fx, finv = finv, fx
        for _ in range(n):
            fx, finv = p * fx + q * finv, s * fx + r * finv
    return FPair(fx, finv)


def quantize(u: UParams, x) -> Fraction | RationalFunction:
    """The deformed value f(x) / f(1/x), reduced.

    Returns a Fraction for integer matrices and a RationalFunction for
    symbolic ones.  Raises EvaluationError when f(1/x) vanishes (possible
    for adversarial integer matrices; the deformation is undefined there).
    """
    pair = f_pair(u, x)
    if u.symbolic:
        if pair.finv.is_zero():
            raise EvaluationError("quantization undefined: f(1/x) = 0")
        return RationalFunction(pair.fx, pair.finv)
    if pair.finv == 0:
        raise EvaluationError("quantization undefined: f(1/x) = 0")
    return Fraction(pair.fx, pair.finv)


def codenominator(x) -> int:
    """The reciprocal-argument companion of the (1,1;0,1) solution.

    Extends the Fibonacci sequence to positive rational arguments: on
    integers n it returns the n-th Fibonacci number, and it satisfies
    F(2 + x) = F(1 + x) + F(x).
    """
    return f_pair(U_CON, x).finv


def j_quotient(x) -> Fraction:
    """The involution x -> con(x) / con(1/x), with con the (1,1;0,1) solution."""
    pair = f_pair(U_CON, x)
    return Fraction(pair.fx, pair.finv)


@dataclass(frozen=True)
class SZeroParams:
    """Derived parameters P = p/r, Q = q/r of a matrix with s = 0."""

    P: Fraction | RationalFunction
    Q: Fraction | RationalFunction

    @classmethod
    def from_matrix(cls, u: UParams) -> "SZeroParams":
        if not u.s_is_zero:
            raise DomainError("formula requires s = 0")
        if u.r_is_zero:
            raise DomainError("formula requires r != 0")
        if u.symbolic:
            dom = POLYNOMIAL_DOMAIN
            return cls(
                RationalFunction(dom.coerce(u.p), dom.coerce(u.r)),
                RationalFunction(dom.coerce(u.q), dom.coerce(u.r)),
            )
        return cls(Fraction(u.p, u.r), Fraction(u.q, u.r))


def _one_like(value):
    return value**0


def _geometric_sum(base, n: int):
    """1 + base + ... + base^(n-1), exact, valid for base = 1 as well."""
    total = _one_like(base) * 0
    cur = _one_like(base)
    for _ in range(n):
        total = total + cur
        cur = cur * base
    return total


def shift_by_integer(u: UParams, value, n: int):
    """Shift a deformed value by an integer: P^n * value + (1+...+P^(n-1)) Q.

    Requires s = 0 and r != 0.  The P = 1 case needs no separate branch,
    the geometric sum degenerates to n there.
    """
    if n < 0:
        raise DomainError("shift distance must be nonnegative")
    sz = SZeroParams.from_matrix(u)
    return value * sz.P**n + _geometric_sum(sz.P, n) * sz.Q


def _deformed_integer(P, Q, n: int):
    # Deformed value of the integer n: P^(n-1) + (1 + ... + P^(n-2)) Q.
    return P ** (n - 1) + _geometric_sum(P, n - 1) * Q


def szero_cf_form(u: UParams, cf) -> Fraction | RationalFunction:
    """Evaluate the s = 0 nested-fraction form of a finite expansion.

    Level i contributes partial quotient (1 + ... + P^(n_i - 1)) Q and
    partial numerator P^(n_i); the innermost level is the deformed value of
    the final term.  For finite expansions this equals ``quantize`` exactly.
    """
    terms = _terms_of(cf)
    sz = SZeroParams.from_matrix(u)
    P, Q = sz.P, sz.Q
    value = _deformed_integer(P, Q, terms[-1])
    for depth in range(len(terms) - 2, -1, -1):
        n = terms[depth]
        try:
            value = _geometric_sum(P, n) * Q + P**n / value
        except ZeroDivisionError:
            raise EvaluationError(
                f"nested fraction hit a zero denominator at depth {depth}", depth=depth
            ) from None
    return value


def golden_closed_form(P, Q) -> float:
    """Positive root of t^2 - Q t - P = 0, as a float."""
    pf, qf = float(P), float(Q)
    disc = qf * qf + 4.0 * pf
    if disc < 0:
        raise DomainError("negative discriminant: no real value")
    return (qf + math.sqrt(disc)) / 2.0


def golden_iterate(P, Q, tol: float = 1e-9, max_iter: int = 60) -> tuple[float, int]:
    """Iterate t <- Q + P/t from t = 1 until successive change <= tol.

    Returns the value and the number of iterations used.  For positive P, Q
    this converges to the positive root of t^2 - Q t - P.
    """
    pf, qf = float(P), float(Q)
    t = 1.0
    for i in range(1, max_iter + 1):
        if t == 0.0:
            raise EvaluationError("iteration hit zero")
        nt = qf + pf / t
        if abs(nt - t) <= tol:
            return nt, i
        t = nt
    raise ArithmeticError(f"iteration did not settle within {max_iter} steps")


def fibonacci_poly_extend(x) -> RingPoly:
    """Rational-argument extension of the Fibonacci polynomials.

    The (p,1;0,1) solution: on integers n >= 1 it reproduces the classical
    recurrence F_n = p F_(n-1) + F_(n-2) with starting values 1 and 1 + p.
    """
    return f_pair(U_RZERO_POLY, x).fx


@dataclass(frozen=True)
class DescendingCF:
    """Descending nested-fraction form of a (p,1;0,1)-deformed value.

    ``levels`` are the partial denominators, each of the shape c*p (with an
    additive 1 on the innermost level); the value is
    levels[0] + 1/(levels[1] + 1/(...)).
    """

    levels: tuple[RingPoly, ...]

    @property
    def p_count(self) -> int:
        return sum(lvl.coeffs[1] for lvl in self.levels)

    def value(self) -> RationalFunction:
        out = RationalFunction(self.levels[-1])
        for lvl in reversed(self.levels[:-1]):
            out = lvl + out.inverse()
        return out

    def __str__(self):
        return " + 1/(".join(str(lvl) for lvl in self.levels) + ")" * (len(self.levels) - 1)


def rzero_descending_cf(x) -> DescendingCF:
    """Build the descending expansion of the (p,1;0,1) deformation of x > 1.

    Expanding one unit at a time turns each term n into n partial
    denominators p, and the block boundaries merge additively, bumping the
    coefficient (consecutive term-1 blocks stack further).  The total count
    of p's is the term sum of x minus one.
    """
    terms = _terms_of(x)
    if CFExpansion(terms).value() <= 1:
        raise DomainError("descending expansion requires x > 1")
    last = terms[-1]
    levels = [[1, 0] for _ in range(last - 2)] + [[1, 1]]
    for n in reversed(terms[:-1]):
        levels[0][0] += 1
        levels = [[1, 0] for _ in range(n - 1)] + levels
    return DescendingCF(tuple(RingPoly((d, c)) for c, d in levels))
