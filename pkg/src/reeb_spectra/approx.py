"""Constrained best rational approximations and the lattice triangles built
from them.

For irrational ``a > 1`` and ``L >= a`` the pair ``n-/m-`` is the largest
fraction below ``a`` with ``a*m- <= L`` and ``n+/m+`` the smallest fraction
above ``a`` with ``n+ <= L``.  The two always satisfy
``m- * n+ - m+ * n- == 1``, which makes the matrix
``[[-m-, -n-], [-m+, -n+]]`` unimodular and carries the triangle ``T`` bounded
by the two supporting lines onto a right triangle at the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    ContractViolation,
    DegenerateTriangle,
    DeterminantError,
    LTooSmall,
    NotGreaterThanOne,
    RationalInput,
)
from .exactnum import ONE, ZERO, ExactScalar, as_exact, floor_ratio

__all__ = [
    "BestApprox",
    "LatticeTriangle",
    "UnimodularAffineMap",
    "best_approx",
    "brute_best_approx",
    "lattice_count",
    "triangle_T",
    "normalize_T",
    "traynor_width",
]

Point = tuple[ExactScalar, ExactScalar]


@dataclass(frozen=True)
class BestApprox:
    m_minus: int
    n_minus: int
    m_plus: int
    n_plus: int
    a: ExactScalar
    L: ExactScalar

    def __post_init__(self):
        mm, nm, mp, np_ = self.m_minus, self.n_minus, self.m_plus, self.n_plus
        if min(mm, nm, mp, np_) <= 0:
            raise ContractViolation(f"entries must be positive: {self.pairs}")
        if math.gcd(mm, nm) != 1 or math.gcd(mp, np_) != 1:
            raise ContractViolation(f"pairs must be coprime: {self.pairs}")
        if not (nm < self.a * mm and np_ > self.a * mp):
            raise ContractViolation(f"fractions must flank a = {self.a}: {self.pairs}")
        if not (self.a * mm <= self.L and np_ <= self.L):
            raise ContractViolation(f"constraints a*m- <= L, n+ <= L fail: {self.pairs}")
        if self.det != 1:
            raise DeterminantError(f"m- n+ - m+ n- = {self.det}, expected 1")

    @property
    def pairs(self):
        return ((self.m_minus, self.n_minus), (self.m_plus, self.n_plus))

    @property
    def det(self) -> int:
        return self.m_minus * self.n_plus - self.m_plus * self.n_minus


def _check_inputs(a, L):
    a, L = as_exact(a), as_exact(L)
    if a.is_rational:
        raise RationalInput(f"a must be irrational, got {a}")
    if not a > ONE:
        raise NotGreaterThanOne(f"a must exceed 1, got {a}")
    if L < a:
        raise LTooSmall(f"L must be at least a = {a}, got {L}")
    return a, L


def _no_plus_pair(a, L):
    return LTooSmall(
        f"no fraction n/m > a = {a} has n <= L = {L}; need L >= {a.floor() + 1}")


def best_approx(a, L) -> BestApprox:
    """Stern-Brocot descent toward ``a``.

    Mediant denominators and numerators grow monotonically along the
    descent, so the last admissible left fraction (``a*m <= L``) and the last
    admissible right fraction (``n <= L``) are the constrained best
    approximations.  The descent stops once a mediant violates both bounds.
    """
    a, L = _check_inputs(a, L)
    m_max = floor_ratio(L, a)
    n_max = L.floor()
    ln, lm = 0, 1  # left endpoint n/m
    rn, rm = 1, 0  # right endpoint, 1/0
    best_left = (0, 1)
    best_right = None
    while True:
        n, m = ln + rn, lm + rm
        if m > m_max and n > n_max:
            break
        if n < a * m:
            ln, lm = n, m
            if m <= m_max:
                best_left = (n, m)
        else:
            rn, rm = n, m
            if n <= n_max:
                best_right = (n, m)
    if best_right is None:
        raise _no_plus_pair(a, L)
    return BestApprox(best_left[1], best_left[0], best_right[1], best_right[0], a, L)


def brute_best_approx(a, L) -> BestApprox:
    """Exhaustive scan of coprime pairs with ``m <= L/a`` and ``n <= L``."""
    a, L = _check_inputs(a, L)
    m_max = floor_ratio(L, a)
    n_max = L.floor()
    left = right = None
    for m in range(1, m_max + 1):
        am = a * m
        for n in range(1, n_max + 1):
            if math.gcd(m, n) != 1:
                continue
            if n < am:
                # n/m > n'/m'  <=>  n*m' > n'*m
                if left is None or n * left[0] > left[1] * m:
                    left = (m, n)
            elif n > am:
                if right is None or n * right[0] < right[1] * m:
                    right = (m, n)
    if right is None:
        raise _no_plus_pair(a, L)
    return BestApprox(left[0], left[1], right[0], right[1], a, L)


# -- lattice geometry ---------------------------------------------------------

def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class LatticeTriangle:
    v0: Point
    v1: Point
    v2: Point

    def __post_init__(self):
        for name in ("v0", "v1", "v2"):
            p = getattr(self, name)
            object.__setattr__(self, name, (as_exact(p[0]), as_exact(p[1])))
        if not self.doubled_area():
            raise DegenerateTriangle(f"triangle {self.vertices} has zero area")

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return (self.v0, self.v1, self.v2)

    def doubled_area(self) -> ExactScalar:
        """Twice the signed area (positive when counterclockwise)."""
        return _cross(_sub(self.v1, self.v0), _sub(self.v2, self.v0))

    @property
    def is_integral(self) -> bool:
        return all(c.is_integer for p in self.vertices for c in p)


def lattice_count(t: LatticeTriangle) -> tuple[int, int]:
    """``(interior, boundary)`` lattice point counts of an integer triangle.

    Counted by scanning the bounding box with half-plane sign tests; Pick's
    identity ``2*Area == 2*I + B - 2`` is asserted on the result.
    """
    if not t.is_integral:
        raise ContractViolation("lattice_count needs integer vertices")
    pts = [(p[0].p, p[1].p) for p in t.vertices]
    orient = 1 if t.doubled_area().sign() > 0 else -1
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    interior = boundary = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            signs = []
            for i in range(3):
                (x0, y0), (x1, y1) = pts[i], pts[(i + 1) % 3]
                signs.append(orient * ((x1 - x0) * (y - y0) - (y1 - y0) * (x - x0)))
            if min(signs) < 0:
                continue
            if min(signs) == 0:
                boundary += 1
            else:
                interior += 1
    area2 = abs(t.doubled_area().p)
    assert area2 == 2 * interior + boundary - 2, "Pick's identity failed"
    return interior, boundary


@dataclass(frozen=True)
class UnimodularAffineMap:
    """``v -> M v + t`` with ``M`` an integer matrix of determinant +-1."""

    matrix: tuple[tuple[int, int], tuple[int, int]]
    translation: Point = (ZERO, ZERO)

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        object.__setattr__(self, "matrix", ((int(a), int(b)), (int(c), int(d))))
        t = self.translation
        object.__setattr__(self, "translation", (as_exact(t[0]), as_exact(t[1])))
        if self.det not in (1, -1):
            raise DeterminantError(f"matrix {self.matrix} has determinant {self.det}")

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def __call__(self, v) -> Point:
        (a, b), (c, d) = self.matrix
        x, y = as_exact(v[0]), as_exact(v[1])
        return (a * x + b * y + self.translation[0], c * x + d * y + self.translation[1])

    def compose(self, other: "UnimodularAffineMap") -> "UnimodularAffineMap":
        """``self after other``."""
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        m = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        return UnimodularAffineMap(m, self(other.translation))

    def inverse(self) -> "UnimodularAffineMap":
        (a, b), (c, d) = self.matrix
        det = self.det
        m = ((d * det, -b * det), (-c * det, a * det))
        tx, ty = self.translation
        (p, q), (r, s) = m
        return UnimodularAffineMap(m, (-(p * tx + q * ty), -(r * tx + s * ty)))

    def apply_triangle(self, t: LatticeTriangle) -> LatticeTriangle:
        return LatticeTriangle(self(t.v0), self(t.v1), self(t.v2))


def _validated(a, ba: BestApprox) -> ExactScalar:
    a = as_exact(a)
    if ba.det != 1:
        raise DeterminantError(f"m- n+ - m+ n- = {ba.det}, expected 1")
    if a != ba.a:
        raise ContractViolation(f"approximation was computed for a = {ba.a}, not {a}")
    return a


def vertex_p(a, ba: BestApprox) -> Point:
    """Intersection of the two supporting lines of ``T``."""
    a = _validated(a, ba)
    mm, nm, mp, np_ = ba.m_minus, ba.n_minus, ba.m_plus, ba.n_plus
    return (np_ * (a * mm - nm), mm * (np_ - a * mp))


def triangle_T(a, ba: BestApprox) -> LatticeTriangle:
    """The triangle with vertices ``(0, 1)``, ``(a, 0)`` and ``p``.

    ``p`` lies on the line through ``(0, 1)`` of slope ``-m+/n+`` and on
    the line through ``(a, 0)`` of slope ``-m-/n-``; both memberships are
    checked exactly.
    """
    a = _validated(a, ba)
    p = vertex_p(a, ba)
    mm, nm, mp, np_ = ba.m_minus, ba.n_minus, ba.m_plus, ba.n_plus
    assert np_ * (p[1] - 1) + mp * p[0] == ZERO, "p is not on the first line"
    assert nm * p[1] + mm * (p[0] - a) == ZERO, "p is not on the second line"
    return LatticeTriangle((ZERO, ONE), (a, ZERO), p)


def normalize_T(a, ba: BestApprox) -> tuple[UnimodularAffineMap, LatticeTriangle]:
    """Map ``T`` onto ``(0,0), (a m- - n-, 0), (0, n+ - a m+)``."""
    a = _validated(a, ba)
    mm, nm, mp, np_ = ba.m_minus, ba.n_minus, ba.m_plus, ba.n_plus
    amap = UnimodularAffineMap(((-mm, -nm), (-mp, -np_)), (a * mm, as_exact(np_)))
    tri = triangle_T(a, ba)
    image = amap.apply_triangle(tri)
    expected = ((a * mm - nm, ZERO), (ZERO, np_ - a * mp), (ZERO, ZERO))
    assert image.vertices == expected, f"normalization produced {image.vertices}"
    return amap, LatticeTriangle((ZERO, ZERO), expected[0], expected[1])


def traynor_width(ba: BestApprox) -> ExactScalar:
    """``min(a m- - n-, n+ - a m+)``: the size of a ball embedding in ``X_T``."""
    return min(_legs(ba))


def _legs(ba: BestApprox) -> tuple[ExactScalar, ExactScalar]:
    a = ba.a
    return (a * ba.m_minus - ba.n_minus, ba.n_plus - a * ba.m_plus)
