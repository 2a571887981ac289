"""Spectral gaps and quantitative closing values.

``Gap^L`` is the minimum of ``c_k - c_{k-1}`` over ``k > 0`` with
``c_k <= L`` (``+inf`` when no such ``k`` exists).  It bounds ``Close^L`` from
above; for irrational ellipsoids ``E(a, 1)`` both equal
``min(a m- - n-, n+ - a m+)``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .approx import BestApprox, _legs, best_approx
from .errors import ContractViolation, LTooSmall, NotGreaterThanOne, SpectrumTooShort
from .exactnum import ONE, ExactScalar, as_exact, floor_ratio
from .spectrum import (
    ActionSpectrum,
    ellipsoid_spectrum_prefix,
    ellipsoid_spectrum_upto,
    ellipsoid_volume,
)

__all__ = [
    "GapReport",
    "CloseReport",
    "gap",
    "gap_table",
    "ellipsoid_gap",
    "ball_close_bound",
    "gap_bound_chain",
    "close_ellipsoid",
    "close_gap_crosscheck",
    "asymptotic_ratio",
    "gap_average_bound",
    "trend_table",
]


@dataclass(frozen=True)
class GapReport:
    """``gap is None`` encodes ``+inf``: no ``k > 0`` has ``c_k <= L``."""

    L: ExactScalar
    gap: Optional[ExactScalar]
    k_star: Optional[int] = None
    c_k_star: Optional[ExactScalar] = None
    c_k_star_minus_1: Optional[ExactScalar] = None

    @property
    def infinite(self) -> bool:
        return self.gap is None


@dataclass(frozen=True)
class CloseReport:
    L: ExactScalar
    value: ExactScalar
    side: Optional[str]  # "minus" or "plus"; None for rational a
    approx: Optional[BestApprox]
    a: Optional[ExactScalar] = None


def _require_covering(spectrum: ActionSpectrum, L: ExactScalar):
    if not spectrum.last > L:
        raise SpectrumTooShort(
            f"spectrum ends at {spectrum.last} <= L = {L}; extend it past L")


def gap(spectrum: ActionSpectrum, L) -> GapReport:
    """Exact spectral gap of a spectrum that extends past ``L``.

    Ties go to the earliest index.
    """
    L = as_exact(L)
    _require_covering(spectrum, L)
    vals = spectrum.values
    best = None
    k_star = None
    k = 1
    while k < len(vals) and vals[k] <= L:
        diff = vals[k] - vals[k - 1]
        if best is None or diff < best:
            best, k_star = diff, k
            if not best:
                break  # zero is minimal; keep the earliest
        k += 1
    if best is None:
        return GapReport(L, None)
    return GapReport(L, best, k_star, vals[k_star], vals[k_star - 1])


def gap_table(spectrum: ActionSpectrum, Ls: Sequence) -> list[GapReport]:
    """``gap`` for many ``L`` at once using prefix minima of the differences."""
    Ls = [as_exact(L) for L in Ls]
    if not Ls:
        return []
    _require_covering(spectrum, max(Ls))
    vals = spectrum.values
    prefix = []  # prefix[i] = (min diff, argmin) over k = 1 .. i+1
    best, k_star = None, None
    for k in range(1, len(vals)):
        diff = vals[k] - vals[k - 1]
        if best is None or diff < best:
            best, k_star = diff, k
        prefix.append((best, k_star))
    out = []
    for L in Ls:
        # number of k >= 1 with c_k <= L
        count = bisect.bisect_right(vals, L) - 1
        if count <= 0:
            out.append(GapReport(L, None))
            continue
        g, ks = prefix[count - 1]
        out.append(GapReport(L, g, ks, vals[ks], vals[ks - 1]))
    return out


def _spectrum_past(a, b, L) -> ActionSpectrum:
    # the value (floor(L/a) + 1) * a lies in (L, L + a]
    return ellipsoid_spectrum_upto(a, b, as_exact(L) + min(as_exact(a), as_exact(b)))


def ellipsoid_gap(a, b, L) -> GapReport:
    """``Gap^L`` of the boundary of ``E(a, b)``."""
    return gap(_spectrum_past(a, b, L), L)


def ball_close_bound(a, L) -> ExactScalar:
    """Upper bound ``2a / (floor(L/a) + 3)`` for a hypersurface inside
    ``B^4(a)``."""
    a, L = as_exact(a), as_exact(L)
    if a.sign() <= 0 or L.sign() <= 0:
        raise ContractViolation(f"a and L must be positive, got a = {a}, L = {L}")
    return 2 * a / (floor_ratio(L, a) + 3)


def gap_bound_chain(a, b, L):
    """Check ``Gap^L(E(a, b)) <= 2M / (floor(L/M) + 3)`` with ``M = max(a, b)``.

    Returns ``(gap, bound, holds)``.
    """
    a, b, L = as_exact(a), as_exact(b), as_exact(L)
    big = max(a, b)
    if L < big:
        raise LTooSmall(f"L = {L} must be at least max(a, b) = {big}")
    lhs = ellipsoid_gap(a, b, L).gap
    rhs = ball_close_bound(big, L)
    return lhs, rhs, lhs is not None and lhs <= rhs


def close_ellipsoid(a, L) -> CloseReport:
    """``Close^L`` of the boundary of ``E(a, 1)`` for ``a > 1`` and ``L >= a``.

    Rational ``a`` gives 0: every point lies on an orbit of action ``<= a``.
    """
    a, L = as_exact(a), as_exact(L)
    if not a > ONE:
        raise NotGreaterThanOne(f"a must exceed 1, got {a}")
    if L < a:
        raise LTooSmall(f"L must be at least a = {a}, got {L}")
    if a.is_rational:
        return CloseReport(L, as_exact(0), None, None, a)
    ba = best_approx(a, L)
    minus, plus = _legs(ba)
    if minus < plus:
        return CloseReport(L, minus, "minus", ba, a)
    return CloseReport(L, plus, "plus", ba, a)


def close_gap_crosscheck(a, L) -> bool:
    """Spectral gap of ``N(a, 1)`` and the closed form must agree exactly."""
    a, L = as_exact(a), as_exact(L)
    if a.is_rational:
        raise ContractViolation("close_gap_crosscheck requires irrational a")
    g = ellipsoid_gap(a, 1, L)
    c = close_ellipsoid(a, L)
    return g.gap is not None and g.gap == c.value


def asymptotic_ratio(a, b, k: int, spectrum: Optional[ActionSpectrum] = None):
    """``(c_k^2 / (2k vol), 3 / sqrt(2k))`` for the ellipsoid ``E(a, b)``.

    The second entry is a rigorous distance-to-1 bound only for balls.
    """
    if k < 1:
        raise ContractViolation(f"k must be at least 1, got {k}")
    if spectrum is None or len(spectrum) <= k:
        spectrum = ellipsoid_spectrum_prefix(a, b, k + 1)
    ck = float(spectrum[k])
    vol = float(ellipsoid_volume(a, b))
    return ck * ck / (2 * k * vol), 3 / math.sqrt(2 * k)


def gap_average_bound(a, b, m: int, n: int, spectrum: Optional[ActionSpectrum] = None):
    """Minimum versus average: ``Gap^{c_m} <= (c_m - c_{m-n}) / n``.

    Returns ``(gap, average, holds)``.
    """
    if not 0 < n <= m:
        raise ContractViolation(f"need 0 < n <= m, got m = {m}, n = {n}")
    c_m = None
    if spectrum is not None and len(spectrum) > m:
        c_m = spectrum[m]
    if c_m is None:
        c_m = ellipsoid_spectrum_prefix(a, b, m + 1)[m]
    full = _spectrum_past(a, b, c_m)
    lhs = gap(full, c_m).gap
    rhs = (full[m] - full[m - n]) / n
    return lhs, rhs, lhs is not None and lhs <= rhs


def trend_table(a, Ls: Sequence, b=1):
    """Rows ``(L, GapReport, L * gap)`` for ``N(a, b)`` and each ``L``."""
    Ls = [as_exact(L) for L in Ls]
    seq = _spectrum_past(a, b, max(Ls))
    reports = gap_table(seq, Ls)
    return [(L, r, None if r.gap is None else L * r.gap) for L, r in zip(Ls, reports)]
