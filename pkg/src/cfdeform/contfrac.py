"""Simple continued fractions over the positive rationals.

Canonical expansions, exact reconstruction, the term-sum weight ``ell``,
streaming term sources for the builtin irrational constants, and the
rewriting rule that realizes the involution x -> con(x)/con(1/x) directly on
continued-fraction terms.

Text syntax (used by the CLI): a continued fraction is ``[2,1,2,1,1,4]``, a
rational is ``p/q`` or a bare integer literal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import DomainError, TermsExhaustedError

__all__ = [
    "CFExpansion",
    "StreamingCF",
    "PI_CF_TERMS",
    "cf_expand",
    "cf_value",
    "ell",
    "convergents",
    "j_rewrite",
    "canonicalize_terms",
    "reciprocal_terms",
    "parse_rational",
    "parse_cf",
    "format_cf",
]

# Terms of the circle constant's simple continued fraction, stored verbatim.
# The streaming source hard-errors past them; computing further terms is out
# of scope and the series machinery needs far fewer (term sum 439).
PI_CF_TERMS: tuple[int, ...] = (
    3, 7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14, 2, 1, 1, 2, 2, 2, 2, 1, 84,
)


@dataclass(frozen=True)
class CFExpansion:
    """A finite simple continued fraction [n0, n1, ..., nk].

    n0 >= 0 (n0 = 0 exactly when the value is below one), all later terms
    >= 1.  The canonical form produced by cf_expand additionally ends with a
    term >= 2, except for the expansion [1] of the value one.
    """

    terms: tuple[int, ...]

    def __post_init__(self):
        t = self.terms
        if not t:
            raise DomainError("empty continued fraction")
        if t[0] < 0 or any(n < 1 for n in t[1:]):
            raise DomainError(f"invalid continued fraction terms {list(t)}")
        if t == (0,):
            raise DomainError("continued fraction of zero is outside the domain")

    @property
    def is_canonical(self) -> bool:
        return len(self.terms) == 1 or self.terms[-1] >= 2

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def value(self) -> Fraction:
        return cf_value(self)

    def __str__(self):
        return format_cf(self.terms)


def _as_positive_rational(x) -> Fraction:
    x = Fraction(x)
    if x <= 0:
        raise DomainError("domain is the positive rationals")
    return x


def cf_expand(x) -> CFExpansion:
    """Canonical simple continued fraction of a positive rational."""
    x = _as_positive_rational(x)
    num, den = x.numerator, x.denominator
    terms = []
    while den:
        q, r = divmod(num, den)
        terms.append(q)
        num, den = den, r
    if len(terms) > 1 and terms[-1] == 1:
        # The Euclidean tail [., m, 1] collapses to [., m+1].
        terms = terms[:-2] + [terms[-2] + 1]
    return CFExpansion(tuple(terms))


def cf_value(cf: CFExpansion | Sequence[int]) -> Fraction:
    """Exact value of a continued fraction (canonical or not)."""
    terms = cf.terms if isinstance(cf, CFExpansion) else tuple(cf)
    if not isinstance(cf, CFExpansion):
        CFExpansion(terms)  # validate
    num, den = 1, 0
    for t in reversed(terms):
        num, den = t * num + den, num
    if den == 0:
        raise DomainError("continued fraction does not terminate at a rational")
    return Fraction(num, den)


def ell(x) -> int:
    """Sum of the continued-fraction terms of x (its depth under the two
    generating moves x -> 1+x and x -> x/(1+x) starting from 1)."""
    return sum(cf_expand(x).terms)


def canonicalize_terms(terms: Iterable[int]) -> tuple[int, ...]:
    """Merge a trailing 1 so the result is the canonical representative."""
    t = list(terms)
    if len(t) > 1 and t[-1] == 1:
        t = t[:-2] + [t[-2] + 1]
    return tuple(t)


def reciprocal_terms(terms: Sequence[int]) -> tuple[int, ...]:
    """Continued fraction of the reciprocal: strip or prepend a zero term."""
    if tuple(terms) == (1,):
        return (1,)
    if terms[0] == 0:
        return tuple(terms[1:])
    return (0,) + tuple(terms)


class StreamingCF:
    """A source of continued-fraction terms, pulled on demand.

    ``take(m)`` starts a fresh pull each call, so independent prefixes are
    cheap and a single instance never carries hidden position state between
    operations.  Sources: the regular Euler-constant pattern, the embedded
    circle-constant terms (which error when exhausted), periodic expansions
    for quadratic irrationals, and finite literal term lists.
    """

    def __init__(self, name: str, factory: Callable[[], Iterator[int]]):
        self.name = name
        self._factory = factory

    def terms(self) -> Iterator[int]:
        return self._factory()

    def take(self, m: int) -> list[int]:
        out = []
        it = self._factory()
        for _ in range(m):
            try:
                out.append(next(it))
            except StopIteration:
                raise TermsExhaustedError(
                    f"continued fraction terms exhausted: {self.name} has fewer than {m}"
                ) from None
        return out

    @classmethod
    def e_pattern(cls) -> "StreamingCF":
        """2, 1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8, ... (the regular pattern)."""

        def gen():
            yield 2
            k = 1
            while True:
                yield 1
                yield 2 * k
                yield 1
                k += 1

        return cls("e", gen)

    @classmethod
    def pi_embedded(cls) -> "StreamingCF":
        """The embedded finite prefix of the circle constant's expansion."""

        def gen():
            yield from PI_CF_TERMS
            raise TermsExhaustedError(
                "continued fraction terms exhausted: only "
                f"{len(PI_CF_TERMS)} terms of pi are embedded"
            )

        return cls("pi", gen)

    @classmethod
    def periodic(cls, preperiod: Sequence[int], period: Sequence[int]) -> "StreamingCF":
        pre = tuple(preperiod)
        per = tuple(period)
        if not per:
            raise ValueError("period must be nonempty")

        def gen():
            yield from pre
            while True:
                yield from per

        return cls(f"periodic({list(pre)},{list(per)})", gen)

    @classmethod
    def golden(cls) -> "StreamingCF":
        return cls.periodic((), (1,))

    @classmethod
    def literal(cls, terms: Sequence[int]) -> "StreamingCF":
        ts = tuple(terms)

        def gen():
            yield from ts

        return cls(f"literal({list(ts)})", gen)


def convergents(src: StreamingCF | Sequence[int], count: int) -> list[Fraction]:
    """Values of the first ``count`` prefixes of a term source."""
    if isinstance(src, StreamingCF):
        terms = src.take(count)
    else:
        terms = list(src)[:count]
        if len(terms) < count:
            raise TermsExhaustedError(
                f"continued fraction terms exhausted: need {count}, have {len(terms)}"
            )
    out = []
    num, den = 1, 0          # value accumulators, standard two-term recurrence
    pnum, pden = 0, 1
    for t in terms:
        num, den, pnum, pden = t * num + pnum, t * den + pden, num, den
        out.append(Fraction(num, den))
    return out


def j_rewrite(cf: CFExpansion | Sequence[int]) -> CFExpansion:
    """Rewrite a continued fraction into the one for con(x)/con(1/x).

    Works on canonical expansions with at least two terms.  Each term n
    contributes a block of ones (n0 gives n0-1 of them, interior terms n give
    n-2, the final term gives n-1) with a literal 2 between consecutive
    blocks; empty blocks vanish and blocks of length -1 merge their
    neighbours into n+m-1.  Values below one go through the reciprocal
    identity.  Single-term inputs are refused: the blocks for the first and
    last term would coincide, and the quotient form covers that case.
    """
    terms = cf.terms if isinstance(cf, CFExpansion) else tuple(cf)
    exp = cf if isinstance(cf, CFExpansion) else CFExpansion(terms)
    if len(terms) < 2:
        raise DomainError("term rewriting needs at least two terms; use the quotient form")
    if not exp.is_canonical:
        raise DomainError(f"non-canonical continued fraction {list(terms)}")
    if terms[0] == 0:
        inner = terms[1:]
        if len(inner) >= 2:
            rewritten = j_rewrite(inner).terms
        else:
            # Reciprocal of a single term m: the block rule degenerates to a
            # run of m ones (cross-checked against the quotient definition).
            rewritten = canonicalize_terms([1] * inner[0])
        return CFExpansion(reciprocal_terms(rewritten))

    out: list[int] = []
    merge_pending = False

    def emit(value: int):
        nonlocal merge_pending
        if merge_pending:
            out[-1] += value - 1
            merge_pending = False
        else:
            out.append(value)

    def emit_ones(count: int):
        nonlocal merge_pending
        if count >= 1:
            for _ in range(count):
                emit(1)
        elif count == -1:
            merge_pending = True
        # count == 0: neighbouring terms simply stay adjacent

    emit_ones(terms[0] - 1)
    for n in terms[1:-1]:
        emit(2)
        emit_ones(n - 2)
    emit(2)
    emit_ones(terms[-1] - 1)
    return CFExpansion(canonicalize_terms(out))


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or an integer literal into a positive rational."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse rational {text!r}") from exc
    if value <= 0:
        raise DomainError("domain is the positive rationals")
    return value


def parse_cf(text: str) -> CFExpansion:
    """Parse '[2,1,2,1,1,4]' into an expansion."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise DomainError(f"cannot parse continued fraction {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        raise DomainError("empty continued fraction")
    try:
        terms = tuple(int(tok.strip()) for tok in inner.split(","))
    except ValueError as exc:
        raise DomainError(f"cannot parse continued fraction {text!r}") from exc
    return CFExpansion(terms)


def format_cf(terms: Iterable[int]) -> str:
    return "[" + ",".join(str(t) for t in terms) + "]"
