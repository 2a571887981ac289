"""Spectral invariant sequences for spheres, ellipsoids and disjoint unions.

For the boundary of an ellipsoid ``E(a, b)`` the invariants ``c_k`` are the
values ``m*a + n*b`` (``m, n >= 0``) listed in nondecreasing order with
repetitions; for the round sphere ``c_k = d*a`` with ``d`` the unique
nonnegative integer satisfying ``d^2 + d <= 2k <= d^2 + 3d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cmp_to_key
from itertools import groupby
from typing import Optional, Sequence

from .errors import ContractViolation, InsufficientTerms, NonpositiveRadius
from .exactnum import ZERO, ExactScalar, as_exact, floor_ratio

__all__ = [
    "SpectrumTerm",
    "ActionSpectrum",
    "ball_degree",
    "ball_ck",
    "ball_spectrum",
    "ellipsoid_spectrum_upto",
    "ellipsoid_spectrum_prefix",
    "naive_ellipsoid_spectrum",
    "ellipsoid_ck",
    "combine_disjoint",
    "ellipsoid_volume",
]

# bits of the dyadic sort key; exact comparison resolves any collisions
_KEY_BITS = 96


@dataclass(frozen=True)
class SpectrumTerm:
    value: ExactScalar
    witness: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class ActionSpectrum:
    """A prefix ``c_0 <= c_1 <= ...`` of a spectral invariant sequence."""

    terms: tuple[SpectrumTerm, ...]
    domain_tag: str = ""
    complete_upto: Optional[ExactScalar] = field(default=None, compare=False)

    def __post_init__(self):
        terms = self.terms
        if not terms or terms[0].value != ZERO:
            raise ContractViolation("a spectrum must start with c_0 = 0")
        for prev, cur in zip(terms, terms[1:]):
            if cur.value < prev.value:
                raise ContractViolation(f"spectrum of {self.domain_tag} is not nondecreasing")
        if len(terms) > 1 and not terms[1].value > ZERO:
            raise ContractViolation("Increasing clause violated: c_1 must be positive")

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, k):
        return self.terms[k].value

    @property
    def values(self) -> list[ExactScalar]:
        return [t.value for t in self.terms]

    @property
    def last(self) -> ExactScalar:
        return self.terms[-1].value


def _positive(x, what="a"):
    x = as_exact(x)
    if x.sign() <= 0:
        raise NonpositiveRadius(f"{what} must be positive, got {x}")
    return x


def ball_degree(k: int) -> int:
    """The unique ``d >= 0`` with ``d^2 + d <= 2k <= d^2 + 3d``."""
    if k < 0:
        raise ContractViolation(f"k must be nonnegative, got {k}")
    d = (math.isqrt(8 * k + 1) - 1) // 2
    assert d * d + d <= 2 * k <= d * d + 3 * d
    return d


def ball_ck(k: int, a) -> ExactScalar:
    """``c_k`` of the boundary of the ball ``B^4(a)``."""
    a = _positive(a)
    return ball_degree(k) * a


def ball_spectrum(a, count: int) -> ActionSpectrum:
    a = _positive(a)
    terms = tuple(SpectrumTerm(ball_degree(k) * a) for k in range(count))
    return ActionSpectrum(terms, domain_tag=f"ball({a})")


def _sorted_exact(entries):
    """Sort ``(value, m, n)`` triples by exact value, then by ``(m, n)``.

    A dyadic floor key orders almost everything; runs sharing a key are
    re-sorted with exact comparison, so the result is exact.
    """
    keyed = sorted(((v.scaled_floor(_KEY_BITS), m, n, v) for v, m, n in entries),
                   key=lambda e: (e[0], e[1], e[2]))

    def exact(x, y):
        c = x[3]._cmp(y[3])
        if c:
            return c
        return ((x[1], x[2]) > (y[1], y[2])) - ((x[1], x[2]) < (y[1], y[2]))

    out = []
    for _, run in groupby(keyed, key=lambda e: e[0]):
        run = list(run)
        if len(run) > 1:
            run.sort(key=cmp_to_key(exact))
        out.extend((e[3], e[1], e[2]) for e in run)
    return out


def ellipsoid_spectrum_upto(a, b, L) -> ActionSpectrum:
    """All values ``m*a + n*b <= L`` with witnesses, sorted with repetitions.

    Ties in value are ordered by lexicographic ``(m, n)``.
    """
    a, b = _positive(a), _positive(b, "b")
    L = as_exact(L)
    a._field(b)
    if L.sign() < 0:
        raise ContractViolation(f"L must be nonnegative, got {L}")
    entries = []
    for m in range(floor_ratio(L, a) + 1):
        base = m * a
        for n in range(floor_ratio(L - base, b) + 1):
            entries.append((base + n * b, m, n))
    terms = tuple(SpectrumTerm(v, (m, n)) for v, m, n in _sorted_exact(entries))
    return ActionSpectrum(terms, domain_tag=f"ellipsoid({a},{b})", complete_upto=L)


def naive_ellipsoid_spectrum(a, b, L) -> list[ExactScalar]:
    """Reference enumeration: double loop with a plain exact sort."""
    a, b, L = as_exact(a), as_exact(b), as_exact(L)
    values = []
    m = 0
    while m * a <= L:
        n = 0
        while m * a + n * b <= L:
            values.append(m * a + n * b)
            n += 1
        m += 1
    return sorted(values)


def ellipsoid_spectrum_prefix(a, b, count: int) -> ActionSpectrum:
    """The first ``count`` terms ``c_0 .. c_{count-1}`` of ``N(a, b)``.

    The enumeration bound ``L`` starts at ``max(a, b)`` and doubles until
    more than ``count`` terms lie below it.
    """
    if count < 1:
        raise ContractViolation(f"count must be at least 1, got {count}")
    a, b = _positive(a), _positive(b, "b")
    L = max(a, b)
    while True:
        seq = ellipsoid_spectrum_upto(a, b, L)
        if len(seq) > count:
            return ActionSpectrum(seq.terms[:count], seq.domain_tag)
        L = 2 * L


def ellipsoid_ck(a, b, k: int) -> ExactScalar:
    """``c_k`` of the boundary of ``E(a, b)``, 0-indexed."""
    if k < 0:
        raise ContractViolation(f"k must be nonnegative, got {k}")
    return ellipsoid_spectrum_prefix(a, b, k + 1)[k]


def _maxplus(f: Sequence[ExactScalar], g: Sequence[ExactScalar], k: int):
    out = []
    for j in range(k + 1):
        best = f[0] + g[j]
        for i in range(1, j + 1):
            cand = f[i] + g[j - i]
            if cand > best:
                best = cand
        out.append(best)
    return out


def combine_disjoint(spectra: Sequence[ActionSpectrum], k: int) -> ExactScalar:
    """``c_k`` of a disjoint union: max over ``k_1 + ... + k_m = k`` of the
    sum of ``c_{k_i}``, by pairwise max-plus folds."""
    if not spectra:
        raise ContractViolation("need at least one spectrum")
    for s in spectra:
        if len(s) < k + 1:
            raise InsufficientTerms(
                f"spectrum {s.domain_tag or '?'} has {len(s)} terms, need {k + 1}")
    acc = spectra[0].values[: k + 1]
    for s in spectra[1:]:
        acc = _maxplus(acc, s.values, k)
    return acc[k]


def ellipsoid_volume(a, b) -> ExactScalar:
    """Contact volume of the boundary of ``E(a, b)``."""
    return _positive(a) * _positive(b, "b")
