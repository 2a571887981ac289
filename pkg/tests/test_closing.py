from fractions import Fraction

import mpmath
import pytest

from reeb_spectra.closing import (
    asymptotic_ratio,
    ball_close_bound,
    close_ellipsoid,
    close_gap_crosscheck,
    ellipsoid_gap,
    gap,
    gap_average_bound,
    gap_bound_chain,
    gap_table,
    trend_table,
)
from reeb_spectra.errors import ContractViolation, LTooSmall, NotGreaterThanOne, SpectrumTooShort
from reeb_spectra.exactnum import parse_exact, sqrt
from reeb_spectra.spectrum import ball_spectrum, ellipsoid_spectrum_prefix, ellipsoid_spectrum_upto

S2 = sqrt(2)
PHI2 = parse_exact("(3+sqrt(5))/2")


def mp_gap(a, b, L, dps=60):
    """High-precision float oracle for Gap^L of N(a, b)."""
    mpmath.mp.dps = dps
    vals = sorted(m * a + n * b for m in range(int(L / a) + 2) for n in range(int(L / b) + 2))
    diffs = [vals[k] - vals[k - 1] for k in range(1, len(vals)) if vals[k] <= L]
    return min(diffs) if diffs else mpmath.inf


def test_ball_gap_branches():
    ball = ball_spectrum(1, 20)
    rep = gap(ball, 1)
    assert rep.gap == 0 and rep.k_star == 2
    assert gap(ball, 3).gap == 0
    rep = gap(ball, Fraction(1, 2))
    assert rep.infinite and rep.k_star is None


def test_gap_sqrt2_l10():
    rep = ellipsoid_gap(S2, 1, 10)
    assert rep.gap == 5 * S2 - 7
    assert (rep.c_k_star_minus_1, rep.c_k_star) == (7, 5 * S2)
    assert abs(float(rep.gap) - float(mp_gap(mpmath.sqrt(2), 1, 10))) < 1e-15


def test_gap_needs_covering_spectrum():
    short = ellipsoid_spectrum_upto(S2, 1, 10)
    with pytest.raises(SpectrumTooShort):
        gap(short, 20)


def test_gap_table_matches_single_calls():
    seq = ellipsoid_spectrum_upto(sqrt(3), 1, 40)
    Ls = [Fraction(j, 3) for j in range(0, 110)]
    for L, rep in zip(Ls, gap_table(seq, Ls)):
        assert rep == gap(seq, L)


def test_ball_close_bound_examples():
    assert ball_close_bound(1, 5) == Fraction(1, 4)
    assert ball_close_bound(1, Fraction(1, 2)) == Fraction(2, 3)
    assert ball_close_bound(S2, 10) == S2 / 5
    with pytest.raises(ContractViolation):
        ball_close_bound(0, 1)


def test_gap_bound_chain_examples():
    assert gap_bound_chain(1, 1, 5) == (0, Fraction(1, 4), True)
    lhs, rhs, ok = gap_bound_chain(S2, 1, 10)
    assert (lhs, rhs, ok) == (5 * S2 - 7, S2 / 5, True)
    assert gap_bound_chain(2, 1, 4) == (0, Fraction(4, 5), True)
    with pytest.raises(LTooSmall):
        gap_bound_chain(3, 1, 2)


def test_close_examples():
    rep = close_ellipsoid(S2, 10)
    assert rep.value == 5 * S2 - 7 and rep.side == "minus"
    assert rep.approx.pairs == ((5, 7), (7, 10))
    assert close_ellipsoid(Fraction(3, 2), 2).value == 0
    rep = close_ellipsoid(PHI2, 10)
    # m- <= 3 gives 5/2; n+ <= 10 gives 8/3; legs 2a - 5 and 8 - 3a
    assert rep.approx.pairs == ((2, 5), (3, 8))
    assert rep.value == 8 - 3 * PHI2 == parse_exact("(7-3*sqrt(5))/2")
    assert rep.side == "plus"


def test_close_contracts():
    with pytest.raises(LTooSmall):
        close_ellipsoid(S2, 1)
    with pytest.raises(LTooSmall):
        close_ellipsoid(Fraction(3, 2), 1)
    with pytest.raises(NotGreaterThanOne):
        close_ellipsoid(Fraction(1, 2), 5)


@pytest.mark.parametrize("a, L", [(S2, 10), (S2, 20), (S2, 50), (sqrt(3), 15)])
def test_crosscheck_examples(a, L):
    assert close_gap_crosscheck(a, L)


def test_close_matches_float_gap_oracle():
    mpmath.mp.dps = 60
    for a, a_mp in [(S2, mpmath.sqrt(2)), (PHI2, (3 + mpmath.sqrt(5)) / 2)]:
        for L in (5, 12, 23):
            assert abs(float(close_ellipsoid(a, L).value) - float(mp_gap(a_mp, 1, L))) < 1e-14


def test_asymptotic_ratio_ball_bracket():
    k = 10**4
    # 2k = 20000: 140^2 + 140 = 19740 <= 20000 <= 20020 = 140^2 + 3*140
    assert 140 * 140 + 140 <= 2 * k <= 140 * 140 + 3 * 140
    ratio, bound = asymptotic_ratio(1, 1, k)
    assert 140 / 143 <= ratio <= 140 / 141
    assert abs(ratio - 1) <= bound
    for k in (1, 2, 7, 50, 999):
        assert asymptotic_ratio(1, 1, k)[0] <= 1


def test_gap_average_bound_examples():
    seq = ellipsoid_spectrum_prefix(S2, 1, 200)
    for m in (5, 40, 150):
        lhs, rhs, ok = gap_average_bound(S2, 1, m, 1, seq)
        assert ok and rhs == seq[m] - seq[m - 1]
    assert gap_average_bound(S2, 1, 100, 30)[2]
    lhs, rhs, ok = gap_average_bound(1, 1, 10, 5)
    assert ok and lhs == 0
    with pytest.raises(ContractViolation):
        gap_average_bound(1, 1, 3, 5)


def test_gap_nonincreasing_in_L():
    for a, b in [(S2, 1), (sqrt(3), 2), (Fraction(7, 3), 1)]:
        seq = ellipsoid_spectrum_upto(a, b, 62)
        reps = gap_table(seq, [Fraction(j, 4) for j in range(4, 241)])
        finite = [r.gap for r in reps if r.gap is not None]
        assert all(x >= y for x, y in zip(finite, finite[1:]))
        # once finite, stays finite
        flags = [r.gap is None for r in reps]
        assert flags == sorted(flags, reverse=True)


def test_close_nonincreasing_in_L():
    for a in (S2, sqrt(3), PHI2):
        start = 2 * (a.floor() + 1)
        vals = [close_ellipsoid(a, Fraction(j, 2)).value for j in range(start, 201)]
        assert all(x >= y for x, y in zip(vals, vals[1:]))


def test_trend_table_rows():
    rows = trend_table(S2, range(10, 31))
    assert [r[0] for r in rows] == list(range(10, 31))
    for L, rep, lg in rows:
        assert lg == L * rep.gap
    assert trend_table(S2, range(10, 31)) == rows
