"""The alternating q-bracket deformation of rationals, for comparison.

A continued fraction of even length [a1, ..., a2m] deforms as the tower

    [a1]_q + q^a1 / ([a2]_q' + q^-a2 / ([a3]_q + q^a3 / ( ... / [a2m]_q')))

with [a]_q = 1 + q + ... + q^(a-1) at odd positions and the q -> 1/q
flavour [a]_q' = q^(1-a) [a]_q at even positions.  Odd-length expansions
are first rewritten via [..., n] = [..., n-1, 1], which leaves the value
unchanged; a leading 0 term (values below one) enters the tower as the zero
bracket.  All arithmetic is exact over rational functions in q; the
inverse-flavour levels are cleared to polynomial quotients immediately.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .contfrac import CFExpansion, StreamingCF, cf_expand
from .errors import StabilizationError, TermsExhaustedError
from .exactnum import RationalFunction, RingPoly, TruncatedSeries, series_of_ratfun

__all__ = ["q_int", "q_deform", "q_deform_series", "even_length_terms"]


def q_int(a: int, inverse: bool = False) -> RationalFunction:
    """The bracket [a]_q = 1 + q + ... + q^(a-1), or its q -> 1/q companion
    q^(1-a) [a]_q, cleared to a quotient of polynomials."""
    if a < 0:
        raise ValueError("q-bracket of a negative integer")
    if a == 0:
        return RationalFunction(0)
    numerator = RingPoly((1,) * a)
    if not inverse:
        return RationalFunction(numerator)
    return RationalFunction(numerator, RingPoly.monomial(a - 1))


def even_length_terms(cf) -> tuple[int, ...]:
    """Rewrite to even length via [..., n] = [..., n-1, 1] when needed."""
    terms = cf.terms if isinstance(cf, CFExpansion) else tuple(cf)
    if len(terms) % 2 == 1:
        terms = terms[:-1] + (terms[-1] - 1, 1)
    return terms


def _q_power(exponent: int) -> RationalFunction:
    if exponent >= 0:
        return RationalFunction(RingPoly.monomial(exponent))
    return RationalFunction(1, RingPoly.monomial(-exponent))


def q_deform(cf) -> RationalFunction:
    """Deform a positive rational (given as value or expansion) in q.

    Evaluating the result at q = 1 returns the undeformed value.
    """
    if isinstance(cf, (CFExpansion, list, tuple)):
        terms = even_length_terms(cf)
    else:
        terms = even_length_terms(cf_expand(cf))
    value = q_int(terms[-1], inverse=True)
    for i in range(len(terms) - 2, -1, -1):
        inverse = i % 2 == 1
        sign = -1 if inverse else 1
        value = q_int(terms[i], inverse) + _q_power(sign * terms[i]) / value
    return value


def _stream_series(src: StreamingCF, order: int) -> TruncatedSeries:
    # Compare consecutive prefix deformations until they agree to the
    # requested order; extend past the initial budget if the source allows.
    terms: list[int] = []
    it = src.terms()

    def pull() -> bool:
        try:
            terms.append(next(it))
        except StopIteration:
            raise TermsExhaustedError(
                f"continued fraction terms exhausted: {src.name}"
            ) from None
        return True

    while sum(terms) < order + 2:
        pull()
    pull()
    budget = 8 * (order + 2)
    prev = series_of_ratfun(q_deform(terms[:-1]), order)
    while True:
        cur = series_of_ratfun(q_deform(terms), order)
        if cur == prev:
            return cur
        if sum(terms) > budget:
            raise StabilizationError(
                f"q-deformed convergents of {src.name} did not stabilize to order {order}",
                series_a=prev,
                series_b=cur,
            )
        prev = cur
        pull()


def q_deform_series(source, order: int) -> TruncatedSeries:
    """Taylor coefficients of the q-deformation at q = 0.

    Finite expansions (or rationals) expand exactly; streaming sources go
    through convergent stabilization, requiring two consecutive prefix
    deformations to agree on all order+1 coefficients.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if isinstance(source, StreamingCF):
        return _stream_series(source, order)
    if isinstance(source, (CFExpansion, list, tuple)):
        return series_of_ratfun(q_deform(source), order)
    return series_of_ratfun(q_deform(cf_expand(Fraction(source))), order)
