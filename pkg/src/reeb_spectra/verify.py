"""Built-in invariant suite behind ``reeb-spectra verify``.

Each check is a plain function returning ``(ok, detail)``.  Sizes are kept
small enough for the whole suite to finish in a few seconds; the pytest
acceptance module runs the full-size versions.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import approx, closing, numcheck, spectrum
from .exactnum import ExactScalar, Ordering, as_exact, cmp, parse_exact, sqrt

SURDS = {
    "sqrt(2)": sqrt(2),
    "sqrt(3)": sqrt(3),
    "(3+sqrt(5))/2": parse_exact("(3+sqrt(5))/2"),
}


def check_total_order():
    rng = random.Random(0)
    for _ in range(2000):
        d = rng.choice([0, 2, 3, 5, 7])
        xs = [ExactScalar(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6),
                          rng.randint(1, 10**6), d) for _ in range(3)]
        x, y, z = xs
        if cmp(x, y) != Ordering(-cmp(y, x)):
            return False, f"antisymmetry fails for {x}, {y}"
        if cmp(x, y) <= 0 and cmp(y, z) <= 0 and cmp(x, z) > 0:
            return False, f"transitivity fails for {x}, {y}, {z}"
        if (cmp(x, y) == Ordering.EQ) != (x - y == 0):
            return False, f"EQ disagrees with subtraction for {x}, {y}"
    return True, "2000 random triples"


def check_ball_vs_ellipsoid(kmax=2000):
    seq = spectrum.ellipsoid_spectrum_prefix(1, 1, kmax + 1)
    for k in range(kmax + 1):
        if spectrum.ball_ck(k, 1) != seq[k]:
            return False, f"k = {k}"
    return True, f"k <= {kmax}"


def check_generator_vs_naive():
    for a, b in [(1, 1), (2, 1), (sqrt(2), 1), (sqrt(3), 2), (Fraction(3, 2), 1)]:
        for L in (0, 1, 5, 12, 20):
            fast = spectrum.ellipsoid_spectrum_upto(a, b, L).values
            if fast != spectrum.naive_ellipsoid_spectrum(a, b, L):
                return False, f"a = {a}, b = {b}, L = {L}"
    return True, "5 generator pairs, L <= 20"


def check_best_approx():
    for name, a in SURDS.items():
        for j in range(2 * a.ceil(), 61):
            L = Fraction(j, 2)
            ba = approx.best_approx(a, L)
            if ba != approx.brute_best_approx(a, L):
                return False, f"a = {name}, L = {L}"
            tri = approx.LatticeTriangle((0, 0), (ba.m_minus, ba.n_minus), (ba.m_plus, ba.n_plus))
            if approx.lattice_count(tri) != (0, 3) or ba.det != 1:
                return False, f"lattice triangle fails at a = {name}, L = {L}"
            approx.normalize_T(a, ba)  # asserts its vertex images
    return True, "L = j/2 up to 30"


def check_close_equals_gap():
    for name, a in SURDS.items():
        for L in range(a.ceil(), 31):
            if not closing.close_gap_crosscheck(a, L):
                return False, f"a = {name}, L = {L}"
    return True, "L <= 30"


def check_ball_bound():
    pairs = [(1, 1), (2, 1), (Fraction(3, 2), Fraction(5, 4)), (sqrt(2), 1), (sqrt(3), 2)]
    for a, b in pairs:
        big = max(as_exact(a), as_exact(b))
        for L in range(big.ceil(), 26):
            _, _, ok = closing.gap_bound_chain(a, b, L)
            if not ok:
                return False, f"a = {a}, b = {b}, L = {L}"
    return True, f"{len(pairs)} pairs, L <= 25"


def check_conformality_sublinearity():
    base = spectrum.ellipsoid_spectrum_prefix(sqrt(2), 1, 201)
    for r in (2, 3, Fraction(1, 2)):
        scaled = spectrum.ellipsoid_spectrum_prefix(r * sqrt(2), r, 201)
        if any(scaled[k] != r * base[k] for k in range(201)):
            return False, f"conformality fails for r = {r}"
    for k in range(101):
        for l in range(101 - k):
            if base[k + l] > base[k] + base[l]:
                return False, f"sublinearity fails at k = {k}, l = {l}"
    return True, "k <= 200"


def check_numerics():
    prof = numcheck.standard_profile()
    rep = numcheck.reeb_residual(prof, h=1e-4)
    rep2 = numcheck.reeb_residual(prof, h=5e-5)
    psi = numcheck.psi_pullback_residual(h=1e-5)
    ratio = rep.max_abs["dlambda_R"] / rep2.max_abs["dlambda_R"]
    ok = (rep.worst() < 1e-6 and psi.worst() < 1e-8 and 3.5 <= ratio <= 4.5
          and 0 < rep.extras["dt_coefficient_min"] and rep.extras["dt_coefficient_max"] <= 1
          and numcheck.check_box_condition(prof, 2001))
    return ok, f"reeb {rep.worst():.2e}, psi {psi.worst():.2e}, ratio {ratio:.3f}"


CHECKS = [
    ("exact total order", check_total_order),
    ("sphere equals N(1,1)", check_ball_vs_ellipsoid),
    ("generator equals naive enumeration", check_generator_vs_naive),
    ("best_approx equals brute force", check_best_approx),
    ("Close equals Gap on irrational ellipsoids", check_close_equals_gap),
    ("ball closing bound", check_ball_bound),
    ("conformality and sublinearity", check_conformality_sublinearity),
    ("finite-difference identities", check_numerics),
]


def run_all():
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, reported as such
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append({"check": name, "ok": bool(ok), "detail": detail})
    return results
