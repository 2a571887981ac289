"""Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).

An :class:`ExactScalar` stores ``(p + q*sqrt(d)) / r`` in a canonical form:
``r > 0``, ``gcd(p, q, r) == 1``, ``d`` squarefree and ``q == 0`` exactly when
``d == 0``.  Comparison never touches floating point; the sign of
``A + B*sqrt(d)`` is decided by comparing ``A**2`` with ``B**2 * d``.

Values from two different irrational fields cannot be mixed.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import MixedRadicand, NonpositiveDivisor, ParseError

__all__ = [
    "ExactScalar",
    "Ordering",
    "cmp",
    "floor_ratio",
    "parse_exact",
    "format_exact",
    "as_exact",
    "sqrt",
    "ZERO",
    "ONE",
]


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@lru_cache(maxsize=4096)
def _split_square(d: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``d == s*s*f`` and ``f`` squarefree."""
    s, f = 1, d
    i = 2
    while i * i <= f:
        while f % (i * i) == 0:
            f //= i * i
            s *= i
        i += 1 if i == 2 else 2
    return s, f


def _sign_surd(a: int, b: int, d: int) -> int:
    """Exact sign of ``a + b*sqrt(d)`` for integers a, b and d >= 0."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or d == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: whichever square dominates wins
    lhs, rhs = a * a, b * b * d
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


def _floor_surd(a: int, b: int, d: int) -> int:
    """Exact ``floor(a + b*sqrt(d))`` for squarefree non-square d (or b == 0)."""
    if b == 0 or d == 0:
        return a
    root = math.isqrt(b * b * d)  # floor(|b| sqrt d); never exact for d > 1
    return a + root if b > 0 else a - root - 1


class ExactScalar:
    """An element ``(p + q*sqrt(d)) / r`` of Q or Q(sqrt(d))."""

    __slots__ = ("p", "q", "r", "d")

    def __init__(self, p=0, q=0, r=1, d=0):
        p, q, r, d = int(p), int(q), int(r), int(d)
        if r == 0:
            raise ZeroDivisionError("ExactScalar denominator is zero")
        if d < 0:
            raise ValueError(f"radicand must be nonnegative, got {d}")
        if q == 0 or d == 0:
            q, d = 0, 0
        else:
            s, d = _split_square(d)
            q *= s
            if d == 1:
                p, q, d = p + q, 0, 0
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(p, q, r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        self.p, self.q, self.r, self.d = p, q, r, d

    @classmethod
    def _raw(cls, p, q, r, d):
        # caller guarantees canonical form
        self = object.__new__(cls)
        self.p, self.q, self.r, self.d = p, q, r, d
        return self

    @classmethod
    def from_rational(cls, value) -> "ExactScalar":
        value = Fraction(value)
        return cls._raw(value.numerator, 0, value.denominator, 0)

    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        return parse_exact(text)

    # -- predicates ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    @property
    def is_integer(self) -> bool:
        return self.q == 0 and self.r == 1

    def sign(self) -> int:
        return _sign_surd(self.p, self.q, self.d)

    def to_fraction(self) -> Fraction:
        if self.q:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.p, self.r)

    def conjugate(self) -> "ExactScalar":
        return ExactScalar._raw(self.p, -self.q, self.r, self.d)

    def norm(self) -> Fraction:
        """Field norm ``x * conjugate(x)``, a rational number."""
        return Fraction(self.p * self.p - self.q * self.q * self.d, self.r * self.r)

    def floor(self) -> int:
        return _floor_surd(self.p, self.q, self.d) // self.r

    def ceil(self) -> int:
        return -((-self).floor())

    def scaled_floor(self, bits: int) -> int:
        """Exact ``floor(self * 2**bits)``."""
        shift = 1 << bits
        return _floor_surd(self.p * shift, self.q * shift, self.d) // self.r

    # -- arithmetic ---------------------------------------------------------

    def _field(self, other: "ExactScalar") -> int:
        if self.d == other.d or other.d == 0:
            return self.d
        if self.d == 0:
            return other.d
        raise MixedRadicand(
            f"cannot combine values from Q(sqrt({self.d})) and Q(sqrt({other.d}))"
        )

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._field(other)
        if self.r == other.r:
            return ExactScalar(self.p + other.p, self.q + other.q, self.r, d)
        return ExactScalar(
            self.p * other.r + other.p * self.r,
            self.q * other.r + other.q * self.r,
            self.r * other.r,
            d,
        )

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw(-self.p, -self.q, self.r, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._field(other)
        return ExactScalar(
            self.p * other.p + self.q * other.q * d,
            self.p * other.q + self.q * other.p,
            self.r * other.r,
            d,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "ExactScalar":
        # (p + q r_d)/r inverted by the conjugate: r (p - q r_d) / (p^2 - q^2 d)
        den = self.p * self.p - self.q * self.q * self.d
        if den == 0:
            raise ZeroDivisionError("division by zero ExactScalar")
        return ExactScalar(self.r * self.p, -self.r * self.q, den, self.d)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.reciprocal()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def _cmp(self, other: "ExactScalar") -> int:
        d = self._field(other)
        return _sign_surd(
            self.p * other.r - other.p * self.r,
            self.q * other.r - other.q * self.r,
            d,
        )

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # canonical forms are unique, but let different fields compare unequal
        return (self.p, self.q, self.r, self.d) == (other.p, other.q, other.r, other.d)

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.r, self.d))

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.p != 0 or self.q != 0

    # -- conversion ---------------------------------------------------------

    def __float__(self):
        if self.q == 0:
            return float(Fraction(self.p, self.r))
        # Bracket the value between two dyadic rationals that round to the
        # same double; refine until they agree.
        bits = 64
        while True:
            n = _floor_surd(self.p << bits, self.q << bits, self.d)
            den = self.r << bits
            lo, hi = float(Fraction(n, den)), float(Fraction(n + 1, den))
            if lo == hi and abs(n) >= 1 << 60:
                return lo
            bits += 64

    def __repr__(self):
        return f"ExactScalar({self.p}, {self.q}, {self.r}, {self.d})"

    def __str__(self):
        return format_exact(self)


def _coerce(value):
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, int):
        return ExactScalar._raw(value, 0, 1, 0)
    if isinstance(value, Rational):
        return ExactScalar._raw(value.numerator, 0, value.denominator, 0)
    return NotImplemented


def as_exact(value) -> ExactScalar:
    """Convert ints, Fractions and grammar strings to :class:`ExactScalar`."""
    if isinstance(value, str):
        return parse_exact(value)
    result = _coerce(value)
    if result is NotImplemented:
        raise TypeError(f"cannot convert {type(value).__name__} to ExactScalar")
    return result


def sqrt(n) -> ExactScalar:
    """Exact square root of a nonnegative integer."""
    return ExactScalar(0, 1, 1, int(n))


ZERO = ExactScalar._raw(0, 0, 1, 0)
ONE = ExactScalar._raw(1, 0, 1, 0)


def cmp(x, y) -> Ordering:
    """Exact three-way comparison of two scalars."""
    return Ordering(as_exact(x)._cmp(as_exact(y)))


def floor_ratio(x, y) -> int:
    """Return ``floor(x / y)`` for ``y > 0``, certified by exact comparison."""
    x, y = as_exact(x), as_exact(y)
    x._field(y)
    if y.sign() <= 0:
        raise NonpositiveDivisor(f"floor_ratio requires y > 0, got y = {y}")
    n = (x / y).floor()
    assert n * y <= x < (n + 1) * y
    return n


# -- text grammar -----------------------------------------------------------

def format_exact(x: ExactScalar) -> str:
    """Canonical text: ``p``, ``p/r`` or ``(p+q*sqrt(d))/r``."""
    if x.q == 0:
        return str(x.p) if x.r == 1 else f"{x.p}/{x.r}"
    op = "+" if x.q > 0 else "-"
    return f"({x.p}{op}{abs(x.q)}*sqrt({x.d}))/{x.r}"


class _Parser:
    """Recursive descent over ``+ - * /``, parentheses, integers, decimals
    and ``sqrt(INT)``.  This is a superset of the canonical output grammar."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message, pos=None):
        raise ParseError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token):
        self.skip()
        if not self.text.startswith(token, self.pos):
            self.fail(f"expected {token!r}")
        self.pos += len(token)

    def parse(self) -> ExactScalar:
        if not self.text.strip():
            self.fail("empty input")
        value = self.expr()
        if self.peek():
            self.fail(f"unexpected character {self.peek()!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            at = self.pos
            self.pos += 1
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    self.fail("division by zero", at)
                value = value / rhs
        return value

    def unary(self):
        if self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            value = self.unary()
            return -value if op == "-" else value
        return self.atom()

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if self.text.startswith("sqrt", self.pos):
            self.pos += 4
            self.expect("(")
            self.skip()
            start = self.pos
            radicand = self.integer()
            if radicand < 0:
                self.fail("negative radicand", start)
            self.expect(")")
            return sqrt(radicand)
        if ch.isdigit() or ch == ".":
            return self.number()
        if not ch:
            self.fail("unexpected end of input")
        self.fail(f"unexpected character {ch!r}")

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected integer")
        return int(self.text[start:self.pos])

    def number(self) -> ExactScalar:
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isdigit() or self.text[self.pos] == "."
        ):
            self.pos += 1
        literal = self.text[start:self.pos]
        if literal.count(".") > 1 or literal == ".":
            self.fail("malformed number", start)
        if self.pos < len(self.text) and self.text[self.pos] in "eE":
            self.fail("exponent notation is not supported")
        return ExactScalar.from_rational(Fraction(literal))


def parse_exact(text: str) -> ExactScalar:
    """Parse the exact-scalar text grammar.

    Accepts ``INT``, ``INT/INT``, decimals such as ``0.5``, ``sqrt(INT)``,
    ``(INT+INT*sqrt(INT))/INT`` and any ``+ - * /`` combination of these.
    Non-squarefree radicands are reduced (``sqrt(8)`` is ``2*sqrt(2)``).
    """
    return _Parser(text).parse()
