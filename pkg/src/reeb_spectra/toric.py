"""Reeb orbit actions on boundaries of star-shaped toric domains.

A toric domain is modelled by a polygon in the closed first quadrant whose
boundary consists of the two axis segments and a chain of edges (the
upper boundary) from ``(0, b)`` to ``(a, 0)``.  Its simple Reeb orbits are

* the two axis corners, of actions ``a`` and ``b``;
* for every point of the upper boundary whose outward normal is a positive
  multiple of a primitive ``(m, n)`` with ``m, n >= 0``, a torus of orbits of
  action ``m*x + n*y``.

Along an edge with rational slope the normal is fixed, so the action is
constant on the edge.  Edges with irrational slope contribute nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ContractViolation, NotStarShapedModel
from .exactnum import ZERO, ExactScalar, as_exact

__all__ = ["ToricPolygon", "ReebOrbitFamily", "toric_reeb_actions", "primitive_normal"]

Point = tuple[ExactScalar, ExactScalar]


def _point(p) -> Point:
    return (as_exact(p[0]), as_exact(p[1]))


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def primitive_normal(start: Point, end: Point) -> Optional[tuple[int, int]]:
    """Primitive integer outward normal of a counterclockwise edge, or None
    when the edge direction is irrational."""
    start, end = _point(start), _point(end)
    dx, dy = end[0] - start[0], end[1] - start[1]
    nx, ny = dy, -dx  # outward for counterclockwise orientation
    if not nx and not ny:
        raise ContractViolation("zero-length edge")
    if not nx:
        return (0, ny.sign())
    if not ny:
        return (nx.sign(), 0)
    ratio = ny / nx
    if not ratio.is_rational:
        return None
    frac = ratio.to_fraction()
    m, n = frac.denominator, frac.numerator
    s = nx.sign()
    return (s * m, s * n)


@dataclass(frozen=True)
class ReebOrbitFamily:
    """One family of simple Reeb orbits.

    ``kind`` is ``"corner"`` (an axis orbit), ``"edge"`` (a torus family over
    an edge) or ``"vertex"`` (a torus over a rounded vertex of the upper
    boundary); ``location`` holds the point(s) of the moment polygon.
    """

    kind: str
    location: tuple[Point, ...]
    action: ExactScalar
    normal: tuple[int, int]


class ToricPolygon:
    """A moment polygon in the closed first quadrant.

    Vertices may be given in either orientation; they are stored
    counterclockwise.  ``convex`` records whether the polygon is in convex
    position.
    """

    def __init__(self, vertices: Sequence):
        pts = [_point(v) for v in vertices]
        if len(pts) < 3:
            raise ContractViolation("a polygon needs at least three vertices")
        for x, y in pts:
            if x.sign() < 0 or y.sign() < 0:
                raise ContractViolation(f"vertex ({x}, {y}) is outside the first quadrant")
        area2 = sum((_cross(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))), ZERO)
        if not area2:
            raise ContractViolation("degenerate polygon")
        if area2.sign() < 0:
            pts.reverse()
        origin = (ZERO, ZERO)
        if origin in pts:
            i = pts.index(origin)
            pts = pts[i:] + pts[:i]
        self.vertices: tuple[Point, ...] = tuple(pts)
        n = len(pts)
        turns = [
            _cross(
                (pts[(i + 1) % n][0] - pts[i][0], pts[(i + 1) % n][1] - pts[i][1]),
                (pts[(i + 2) % n][0] - pts[(i + 1) % n][0], pts[(i + 2) % n][1] - pts[(i + 1) % n][1]),
            ).sign()
            for i in range(n)
        ]
        self.convex = all(t >= 0 for t in turns)

    @classmethod
    def ellipsoid(cls, a, b) -> "ToricPolygon":
        return cls([(0, 0), (a, 0), (0, b)])

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def axis_corners(self) -> tuple[ExactScalar, ExactScalar]:
        """``(a, b)`` for the corners ``(a, 0)`` and ``(0, b)``."""
        a = [x for x, y in self.vertices if not y and x.sign() > 0]
        b = [y for x, y in self.vertices if not x and y.sign() > 0]
        if len(a) != 1 or len(b) != 1 or (ZERO, ZERO) not in self.vertices:
            raise NotStarShapedModel(
                "polygon must contain (0,0) and exactly one corner on each positive axis")
        return a[0], b[0]

    def upper_boundary(self):
        """The edge chain from ``(0, b)`` to ``(a, 0)``, i.e. the edges not
        on a coordinate axis."""
        def on_axis(s, e):
            return (not s[0] and not e[0]) or (not s[1] and not e[1])

        return [(s, e) for s, e in self.edges() if not on_axis(s, e)]


def _between(n_from, n_to, v) -> bool:
    """Whether direction ``v`` lies strictly inside the turn from ``n_from``
    to ``n_to`` (an angle below pi, in either rotational sense)."""
    turn = _cross(n_from, n_to).sign()
    if turn == 0:
        return False
    return _cross(n_from, v).sign() == turn and _cross(v, n_to).sign() == turn


def toric_reeb_actions(polygon: ToricPolygon, L, include_vertex_fans: bool = False):
    """Simple Reeb orbit families of action at most ``L``.

    With ``include_vertex_fans`` the vertices interior to the upper
    boundary are treated as smoothed corners: every primitive normal strictly
    between the two adjacent edge normals occurs there.
    """
    L = as_exact(L)
    a, b = polygon.axis_corners()
    out = []
    if a <= L:
        out.append(ReebOrbitFamily("corner", ((a, ZERO),), a, (1, 0)))
    if b <= L:
        out.append(ReebOrbitFamily("corner", ((ZERO, b),), b, (0, 1)))

    chain = polygon.upper_boundary()
    for start, end in chain:
        normal = primitive_normal(start, end)
        # direction test is valid for irrational slopes as well
        out_dir = (end[1] - start[1], start[0] - end[0])
        if out_dir[0].sign() < 0 or out_dir[1].sign() < 0:
            raise NotStarShapedModel(
                f"edge {start}->{end} has an outward normal with a negative component")
        if normal is None:
            continue
        m, n = normal
        act0 = m * start[0] + n * start[1]
        act1 = m * end[0] + n * end[1]
        assert act0 == act1, "action must be constant along an edge"
        if act0 <= L:
            out.append(ReebOrbitFamily("edge", (start, end), act0, normal))

    if include_vertex_fans:
        for (s0, e0), (s1, e1) in zip(chain, chain[1:]):
            vertex = e0
            n_in = (e0[1] - s0[1], s0[0] - e0[0])
            n_out = (e1[1] - s1[1], s1[0] - e1[0])
            out.extend(_vertex_fan(vertex, n_in, n_out, L))
    return out


def _vertex_fan(vertex: Point, n_in, n_out, L):
    x, y = vertex
    if x.sign() <= 0 or y.sign() <= 0:
        return []
    found = []
    # m*x + n*y <= L bounds both coordinates of the normal
    for m in range(0, (L / x).floor() + 1):
        rest = L - m * x
        for n in range(0, (rest / y).floor() + 1):
            if (m, n) == (0, 0) or math.gcd(m, n) != 1:
                continue
            if _between(n_in, n_out, (as_exact(m), as_exact(n))):
                found.append(ReebOrbitFamily("vertex", (vertex,), m * x + n * y, (m, n)))
    found.sort(key=lambda f: Fraction(f.normal[1], f.normal[0]) if f.normal[0] else math.inf)
    return found
