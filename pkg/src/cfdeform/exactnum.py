"""Exact arithmetic building blocks: dense integer polynomials, reduced
rational functions, and truncated power series with rational coefficients.

Integers are plain Python ints (arbitrary precision), rationals are
``fractions.Fraction``.  Polynomials are dense ascending coefficient tuples;
degrees in this package stay small (a few hundred at the very worst), so a
dense representation wins on simplicity.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


class RingPoly:
    """Univariate polynomial over the integers, ascending dense coefficients.

    Canonical form has no trailing zero coefficient; the zero polynomial is
    the empty tuple and its ``degree()`` is ``None``.  Instances are
    immutable and mix freely with ints in arithmetic.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(list(coeffs)))

    @classmethod
    def constant(cls, c: int) -> "RingPoly":
        return cls((c,))

    @classmethod
    def variable(cls) -> "RingPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "RingPoly":
        return cls((0,) * exponent + (coefficient,))

    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, point):
        """Evaluate by Horner's rule; result type follows the point's type."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    @staticmethod
    def _coerce(other) -> "RingPoly | None":
        if isinstance(other, RingPoly):
            return other
        if isinstance(other, int):
            return RingPoly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RingPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return RingPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return RingPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, c in enumerate(a):
            if c:
                for j, d in enumerate(b):
                    out[i + j] += c * d
        return RingPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = RingPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        # Constants hash like the int they equal, so mixed keys stay sane.
        if len(self.coeffs) <= 1:
            return hash(self.constant_term)
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        return format_poly(self.coeffs)

    def __repr__(self):
        return f"RingPoly({list(self.coeffs)!r})"


def format_poly(coeffs: Sequence[int], var: str = "p") -> str:
    """Render ascending coefficients in descending-power display order."""
    if not coeffs:
        return "0"
    parts: list[str] = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else str(mag)
            body = f"{head}{var}" if i == 1 else f"{head}{var}^{i}"
        parts.append(f"{sign}{body}" if not parts else f"{sign} {body}")
    return " ".join(parts) if parts else "0"


def poly_content(a: RingPoly) -> int:
    g = 0
    for c in a.coeffs:
        g = math.gcd(g, c)
    return g


def poly_divexact(a: RingPoly, b: RingPoly) -> RingPoly:
    """Exact division; raises ArithmeticError when b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(a.coeffs)
    out = [0] * (max(len(rem) - len(b.coeffs) + 1, 0))
    bl = b.leading_coefficient
    while len(rem) >= len(b.coeffs) and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(b.coeffs):
            break
        q, r = divmod(rem[-1], bl)
        if r != 0:
            raise ArithmeticError("polynomial division is not exact")
        shift = len(rem) - len(b.coeffs)
        out[shift] = q
        for i, c in enumerate(b.coeffs):
            rem[shift + i] -= q * c
    if any(rem):
        raise ArithmeticError("polynomial division is not exact")
    return RingPoly(out)


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    # Pseudo-remainder of primitive integer polynomials, list form.
    lb = b[-1]
    a = list(a)
    while len(a) >= len(b):
        la = a[-1]
        shift = len(a) - len(b)
        a = [lb * c for c in a]
        for i, c in enumerate(b):
            a[shift + i] -= la * c
        while a and a[-1] == 0:
            a.pop()
        if not a:
            break
    return a


def _primitive(a: list[int]) -> list[int]:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    if g in (0, 1):
        return a
    return [c // g for c in a]


def poly_gcd(a: RingPoly, b: RingPoly) -> RingPoly:
    """Greatest common divisor, primitive with positive leading coefficient.

    Primitive pseudo-remainder sequence; contents are handled separately so
    intermediate coefficients stay subresultant-bounded.
    """
    if a.is_zero() and b.is_zero():
        return RingPoly()
    if a.is_zero():
        a, b = b, a
    if b.is_zero():
        return -a if a.leading_coefficient < 0 else a
    content = math.gcd(poly_content(a), poly_content(b))
    fa = _primitive(list(a.coeffs))
    fb = _primitive(list(b.coeffs))
    if len(fa) < len(fb):
        fa, fb = fb, fa
    while fb:
        fa, fb = fb, _primitive(_pseudo_rem(fa, fb))
    if fa[-1] < 0:
        fa = [-c for c in fa]
    return RingPoly([content * c for c in fa])


class RationalFunction:
    """Reduced quotient of integer polynomials.

    Normal form: numerator and denominator coprime with integer coefficients,
    no shared content, and positive leading coefficient on the denominator.
    Construction from any num/den pair normalizes, so equal values compare
    equal componentwise.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = self._as_poly(num)
        den = self._as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        g = poly_gcd(num, den)
        if not g.is_zero() and g != RingPoly((1,)):
            num = poly_divexact(num, g)
            den = poly_divexact(den, g)
        if den.leading_coefficient < 0:
            num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @staticmethod
    def _as_poly(v) -> RingPoly:
        if isinstance(v, RingPoly):
            return v
        if isinstance(v, int):
            return RingPoly((v,))
        raise TypeError(f"cannot build a rational function from {type(v).__name__}")

    @staticmethod
    def _coerce(other) -> "RationalFunction | None":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (RingPoly, int)):
            return RationalFunction(other, 1)
        return None

    def is_polynomial(self) -> bool:
        return self.den == RingPoly((1,))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def inverse(self) -> "RationalFunction":
        return RationalFunction(self.den, self.num)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, point) -> Fraction:
        d = self.den(point)
        if d == 0:
            raise ZeroDivisionError(f"pole at {point}")
        return Fraction(self.num(point)) / Fraction(d)

    def series(self, order: int) -> "TruncatedSeries":
        return series_of_ratfun(self, order)

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFunction({list(self.num.coeffs)!r}, {list(self.den.coeffs)!r})"


def ratfun_normalize(num: RingPoly, den: RingPoly) -> RationalFunction:
    """Reduce a num/den pair to normal form (thin constructor alias)."""
    return RationalFunction(num, den)


class TruncatedSeries:
    """Taylor expansion at the origin, truncated at a fixed order.

    Coefficients are exact (ints or Fractions); arithmetic between two series
    truncates to the smaller order.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = tuple(coeffs)
        if not cs:
            raise ValueError("a truncated series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(len(self.coeffs), len(other.coeffs))
        return TruncatedSeries(self.coeffs[i] + other.coeffs[i] for i in range(n))

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(len(self.coeffs), len(other.coeffs))
        return TruncatedSeries(self.coeffs[i] - other.coeffs[i] for i in range(n))

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(len(self.coeffs), len(other.coeffs))
        out = [0] * n
        for i in range(n):
            a = self.coeffs[i]
            if a == 0:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(out)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash(tuple(Fraction(c) for c in self.coeffs))

    def is_integral(self) -> tuple[bool, int | None]:
        """Whether every coefficient is an integer, plus the first bad index."""
        for i, c in enumerate(self.coeffs):
            if isinstance(c, Fraction) and c.denominator != 1:
                return False, i
        return True, None

    def render(self, var: str = "p") -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else f"{mag}"
                body = f"{head}{var}" if i == 1 else f"{head}{var}^{i}"
            parts.append(f"{sign} {body}" if parts else f"{sign}{body}")
        rendered = " ".join(parts) if parts else "0"
        return f"{rendered} + O({var}^{self.order + 1})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)!r})"


def series_of_ratfun(f, order: int) -> TruncatedSeries:
    """First ``order + 1`` Taylor coefficients of a rational function at 0.

    Accepts a RationalFunction or a raw (num, den) pair of RingPoly; the pair
    form skips gcd reduction, which matters for the large convergents used by
    the stabilization machinery.  Requires a nonzero constant term in the
    denominator.
    """
    if isinstance(f, RationalFunction):
        num, den = f.num, f.den
    else:
        num, den = f
    if order < 0:
        raise ValueError("order must be nonnegative")
    d0 = den.constant_term
    if d0 == 0:
        raise ZeroDivisionError("no Taylor expansion at origin")
    ncs, dcs = num.coeffs, den.coeffs
    if d0 in (1, -1):
        # Unit constant term: the recurrence stays in the integers.
        out: list = []
        for n in range(order + 1):
            acc = ncs[n] if n < len(ncs) else 0
            for j in range(1, min(n, len(dcs) - 1) + 1):
                acc -= dcs[j] * out[n - j]
            out.append(acc * d0)
        return TruncatedSeries(out)
    out = []
    for n in range(order + 1):
        acc = Fraction(ncs[n] if n < len(ncs) else 0)
        for j in range(1, min(n, len(dcs) - 1) + 1):
            acc -= dcs[j] * out[n - j]
        out.append(acc / d0)
    return TruncatedSeries(out)


def series_is_integral(s: TruncatedSeries) -> tuple[bool, int | None]:
    return s.is_integral()


@dataclass(frozen=True)
class CoefficientDomain:
    """A commutative coefficient ring presented as explicit operations.

    The same deformation recursions run over plain integers and over
    RingPoly entries; this descriptor pins down zero, one and coercion so
    generic code (and the ring-axiom tests) can treat both uniformly.
    """

    name: str
    zero: object
    one: object
    coerce: Callable
    add: Callable = field(default=operator.add)
    mul: Callable = field(default=operator.mul)
    neg: Callable = field(default=operator.neg)
    eq: Callable = field(default=operator.eq)


def _coerce_int(v):
    if not isinstance(v, int):
        raise TypeError("integer domain holds ints only")
    return v


def _coerce_poly(v):
    if isinstance(v, RingPoly):
        return v
    if isinstance(v, int):
        return RingPoly((v,))
    raise TypeError("polynomial domain holds RingPoly or int constants")


INTEGER_DOMAIN = CoefficientDomain("integers", 0, 1, _coerce_int)
POLYNOMIAL_DOMAIN = CoefficientDomain(
    "integer polynomials", RingPoly(), RingPoly((1,)), _coerce_poly
)
