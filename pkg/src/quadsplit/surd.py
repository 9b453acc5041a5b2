"""Exact arithmetic in a real quadratic field and continued-fraction tools.

A :class:`QuadSurd` stores (p + q*sqrt(D)) / r with arbitrary-precision
integers p, q, r and a positive non-square D.  The representation is
canonical: r > 0, gcd(p, q, r) = 1 and D squarefree, so equality is
syntactic and values are hashable.  Comparisons, floor and nearest-integer
are decided by integer arithmetic alone; no floating point is trusted
anywhere in this module.

Iterating the resonance matrix makes integer coordinates grow
geometrically, which is why everything here sticks to Python ints rather
than fixed-width machine integers.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    s = math.isqrt(n)
    return s * s == n


def squarefree_kernel(n: int) -> tuple[int, int]:
    """Split n > 0 as kernel * f**2 with kernel squarefree; returns (kernel, f)."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    f = 1
    d = 2
    while d * d <= n:
        dd = d * d
        while n % dd == 0:
            n //= dd
            f *= d
        d += 1
    return n, f


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


@total_ordering
class QuadSurd:
    """An element (p + q*sqrt(D))/r of the real quadratic field Q(sqrt(D))."""

    __slots__ = ("p", "q", "r", "D")

    def __init__(self, p: int, q: int, r: int, D: int):
        if r == 0:
            raise ZeroDivisionError("denominator r must be nonzero")
        if D <= 0 or is_perfect_square(D):
            raise ValueError(f"D must be positive and not a perfect square, got {D}")
        kernel, f = squarefree_kernel(D)
        q, D = q * f, kernel
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(p, q, r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):  # immutable after construction
        raise AttributeError("QuadSurd is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, n: int, D: int) -> QuadSurd:
        return cls(n, 0, 1, D)

    @classmethod
    def from_fraction(cls, fr: Fraction | int, D: int) -> QuadSurd:
        fr = Fraction(fr)
        return cls(fr.numerator, 0, fr.denominator, D)

    @classmethod
    def sqrt_of(cls, D: int) -> QuadSurd:
        return cls(0, 1, 1, D)

    _PARSE_RE = re.compile(r"^\((-?\d+)([+-]\d+)\*sqrt\((\d+)\)\)/(\d+)$")

    @classmethod
    def parse(cls, text: str) -> QuadSurd:
        """Inverse of str(); accepts the canonical '(p+q*sqrt(D))/r' form."""
        m = cls._PARSE_RE.match(text.replace(" ", ""))
        if m is None:
            raise ValueError(f"not a quadratic surd string: {text!r}")
        p, q, D, r = (int(m.group(i)) for i in range(1, 5))
        return cls(p, q, r, D)

    # -- basic queries -----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    @property
    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def as_fraction(self) -> Fraction:
        if self.q != 0:
            raise ValueError("irrational value has no exact Fraction form")
        return Fraction(self.p, self.r)

    def sign(self) -> int:
        """Sign of the real value, decided by integer comparisons."""
        p, q = self.p, self.q
        if q == 0:
            return _sign(p)
        if p == 0:
            return _sign(q)
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        s = _sign(p * p - q * q * self.D)
        return s if p > 0 else -s

    def conjugate(self) -> QuadSurd:
        return QuadSurd(self.p, -self.q, self.r, self.D)

    # -- arithmetic --------------------------------------------------------

    def _pair(self, other) -> "tuple[QuadSurd, QuadSurd] | None":
        """Bring self and other into one field; None when other's type is foreign."""
        if isinstance(other, (int, Fraction)):
            fr = Fraction(other)
            return self, QuadSurd(fr.numerator, 0, fr.denominator, self.D)
        if not isinstance(other, QuadSurd):
            return None
        if other.D == self.D:
            return self, other
        if other.q == 0:
            return self, QuadSurd(other.p, 0, other.r, self.D)
        if self.q == 0:
            return QuadSurd(self.p, 0, self.r, other.D), other
        raise ValueError(
            f"mixed quadratic fields: sqrt({self.D}) vs sqrt({other.D})"
        )

    def _binary(self, other, op):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return op(*pair)

    def __add__(self, other):
        return self._binary(other, lambda a, b: QuadSurd(
            a.p * b.r + b.p * a.r, a.q * b.r + b.q * a.r, a.r * b.r, a.D))

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: QuadSurd(
            a.p * b.r - b.p * a.r, a.q * b.r - b.q * a.r, a.r * b.r, a.D))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return self._binary(other, lambda a, b: QuadSurd(
            a.p * b.p + a.q * b.q * a.D, a.p * b.q + a.q * b.p, a.r * b.r, a.D))

    __rmul__ = __mul__

    def inverse(self) -> QuadSurd:
        if self.is_zero:
            raise ZeroDivisionError("division by zero surd")
        norm = self.p * self.p - self.q * self.q * self.D
        return QuadSurd(self.r * self.p, -self.r * self.q, norm, self.D)

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a * b.inverse())

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __neg__(self) -> QuadSurd:
        return QuadSurd(-self.p, -self.q, self.r, self.D)

    def __abs__(self) -> QuadSurd:
        return -self if self.sign() < 0 else self

    def __pow__(self, n: int) -> QuadSurd:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadSurd(1, 0, 1, self.D)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        try:
            pair = self._pair(other)
        except ValueError:
            return False  # distinct fields intersect only in the rationals
        if pair is None:
            return NotImplemented
        a, b = pair
        return (a.p, a.q, a.r) == (b.p, b.q, b.r)

    def __lt__(self, other) -> bool:
        diff = self - other
        if diff is NotImplemented:
            return NotImplemented
        return diff.sign() < 0

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.r, self.D))

    # -- integer rounding ----------------------------------------------------

    def floor(self) -> int:
        p, q, r = self.p, self.q, self.r
        if q == 0:
            return p // r
        s = math.isqrt(q * q * self.D)
        num = p + s if q > 0 else p - s - 1
        return num // r

    def rint(self) -> int:
        """Nearest integer; exact half-integer (rational) input is rejected."""
        if self.q == 0 and (2 * self.p + self.r) % (2 * self.r) == 0:
            raise ValueError(f"{self} is a half-integer, nearest integer is ambiguous")
        return QuadSurd(2 * self.p + self.r, 2 * self.q, 2 * self.r, self.D).floor()

    # -- conversion ----------------------------------------------------------

    def __float__(self) -> float:
        """Correctly-rounded-ish conversion, safe against p + q*sqrt(D) cancellation."""
        if self.q == 0:
            return float(Fraction(self.p, self.r))
        guard = 64 + abs(self.p).bit_length() + 2 * abs(self.q).bit_length() \
            + self.D.bit_length() + self.r.bit_length()
        s = math.isqrt(self.D << (2 * guard))
        return float(Fraction((self.p << guard) + self.q * s, self.r << guard))

    # -- text ----------------------------------------------------------------

    def __str__(self) -> str:
        return f"({self.p}{self.q:+d}*sqrt({self.D}))/{self.r}"

    def __repr__(self) -> str:
        return f"QuadSurd({self.p}, {self.q}, {self.r}, {self.D})"


def surd_normalize(p: int, q: int, r: int, D: int) -> QuadSurd:
    """Canonical representative of (p + q*sqrt(D))/r."""
    return QuadSurd(p, q, r, D)


def rint_surd(x: QuadSurd) -> int:
    return x.rint()


@dataclass(frozen=True)
class PeriodicCF:
    """A purely periodic continued fraction [a1, ..., am] with value in (0, 1).

    The leading digit a0 is 0 by convention, so the value is
    1/(a1 + 1/(a2 + ...)) with the block a1..am repeating forever.
    """

    period: tuple[int, ...]

    def __post_init__(self):
        if len(self.period) == 0:
            raise ValueError("period must be nonempty")
        if any((not isinstance(a, int)) or a < 1 for a in self.period):
            raise ValueError(f"period digits must be integers >= 1: {self.period}")

    @property
    def m(self) -> int:
        return len(self.period)

    @classmethod
    def parse(cls, word: str) -> PeriodicCF:
        """Parse a comma-separated word such as '1,2'."""
        try:
            digits = tuple(int(tok) for tok in word.strip().split(","))
        except ValueError:
            raise ValueError(f"malformed continued-fraction word: {word!r}") from None
        return cls(digits)

    def value(self) -> QuadSurd:
        return cf_value(self)

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.period) + "]"


def cf_value(cf: PeriodicCF) -> QuadSurd:
    """Exact value of a purely periodic continued fraction.

    The period block acts on x as a Moebius map x -> (a x + b)/(c x + d);
    the value is the unique fixed point in (0, 1).
    """
    a, b, c, d = 1, 0, 0, 1
    for dig in cf.period:
        a, b, c, d = b, a + b * dig, d, c + d * dig
    # fixed point: c x^2 + (d - a) x - b = 0
    c2, c1, c0 = c, d - a, -b
    disc = c1 * c1 - 4 * c2 * c0
    if disc <= 0 or is_perfect_square(disc):
        raise ValueError(f"degenerate continued fraction {cf}")
    for branch in (1, -1):
        x = QuadSurd(-c1, branch, 2 * c2, disc)
        if x.sign() > 0 and (x - 1).sign() < 0:
            return x
    raise ValueError(f"no fixed point in (0,1) for {cf}")  # pragma: no cover


@dataclass(frozen=True)
class CFExpansion:
    """Continued-fraction digits of a quadratic irrational with detected cycle.

    period_start is 1-based; period_start is None when no repetition of the
    complete quotients occurred within the allowed number of terms (the
    digits are still valid, the cycle is just undetected).
    """

    digits: tuple[int, ...]
    period_start: int | None
    period_length: int | None

    @property
    def detected(self) -> bool:
        return self.period_start is not None

    def periodic_part(self) -> tuple[int, ...]:
        if not self.detected:
            raise ValueError("period was not detected")
        return self.digits[self.period_start - 1: self.period_start - 1 + self.period_length]


def cf_expand(x: QuadSurd, max_terms: int = 64) -> CFExpansion:
    """Expand a quadratic irrational x in (0, 1) into continued-fraction digits.

    Complete quotients are kept exact in Q(sqrt(D)); the cycle is recognised
    by exact repetition of a complete quotient, never by floating-point
    proximity, so a reported period is always correct.
    """
    if x.is_rational:
        raise ValueError("continued-fraction expansion needs an irrational input")
    if not (x.sign() > 0 and (x - 1).sign() < 0):
        raise ValueError("expected a value in the open interval (0, 1)")
    digits: list[int] = []
    seen: dict[QuadSurd, int] = {}
    alpha = x.inverse()
    for i in range(1, max_terms + 1):
        if alpha in seen:
            start = seen[alpha]
            return CFExpansion(tuple(digits), start, i - start)
        seen[alpha] = i
        a = alpha.floor()
        digits.append(a)
        alpha = (alpha - a).inverse()
    return CFExpansion(tuple(digits), None, None)
