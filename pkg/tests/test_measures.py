"""Measure tables, Riemann integration, and the Amice transform."""

from __future__ import annotations

from fractions import Fraction

import pytest

from bhlab.kl import kl_measure, leopoldt_value, mazur_measure
from bhlab.measures import (
    AmiceSeries,
    FiniteLevelMeasure,
    amice_of_measure,
    check_distribution_coherence,
    moment_operator,
    moment_riemann,
    periods_from_series,
    restrict_to_units,
    weight_inverse,
    weighted_integral,
)
from bhlab.padic import DomainError, PrimeContext


CTX = PrimeContext(5, 6)


def dirac(ctx, point: int) -> FiniteLevelMeasure:
    return FiniteLevelMeasure(
        ctx, lambda a, n: Fraction(1 if point % ctx.p ** n == a else 0),
        name=f"dirac[{point}]")


def test_distribution_coherence():
    assert check_distribution_coherence(mazur_measure(CTX, 3), 3)
    assert check_distribution_coherence(kl_measure(CTX, 2, 3), 3)
    assert check_distribution_coherence(dirac(CTX, 7), 3)
    # a broken table must be caught
    bad = FiniteLevelMeasure(CTX, lambda a, n: Fraction(a, 1))
    assert not check_distribution_coherence(bad, 2)


def test_residue_tables_match_exact_values():
    for mu in (mazur_measure(CTX, 3), kl_measure(CTX, 2, 3)):
        for n in (0, 1, 2, 3):
            mod = 5 ** 4
            fast = mu.residue_table(n, mod)
            for a, v in enumerate(mu.table(n)):
                fr = Fraction(v)
                assert fast[a] == fr.numerator * pow(fr.denominator, -1, mod) % mod


def test_restrict_to_units_idempotent():
    mu = restrict_to_units(kl_measure(CTX, 2, 3))
    again = restrict_to_units(mu)
    for n in (1, 2):
        assert mu.table(n) == again.table(n)
    assert mu.value(5, 2) == 0
    assert check_distribution_coherence(mu, 2)


def test_moment_riemann_stabilizes():
    # tag-point moments of a Z_p measure move by at most p^-n under refining
    mu = kl_measure(CTX, 2, 3)
    for k in (1, 3):
        lo = moment_riemann(mu, k, 2)
        hi = moment_riemann(mu, k, 4)
        d = lo - hi
        assert d.denominator % 5 != 0 and d.numerator % 5 ** 2 == 0


def test_dirac_moments():
    mu = dirac(CTX, 7)
    for k in (0, 1, 2, 5):
        # the level-n Riemann sum for delta_7 is (7 mod 5^n)^k
        assert moment_riemann(mu, k, 3) == (7 % 125) ** k


def test_weighted_integral_leopoldt():
    # int_{units} x^-1 dmu_N = -(1 - 1/p) log_p N, accurate mod p^n
    for N in (3, 7):
        mu = restrict_to_units(mazur_measure(CTX, N))
        for n in (3, 5):
            got = weighted_integral(mu, weight_inverse(CTX), n)
            want = leopoldt_value(CTX, N)
            assert got.congruent(want, min(n, want.precision))


def test_weighted_integral_rejects_level_zero():
    with pytest.raises(DomainError):
        weighted_integral(mazur_measure(CTX, 3), weight_inverse(CTX), 0)


def test_amice_constant_is_total_mass():
    for mu, mass in ((kl_measure(CTX, 2, 3), 0), (mazur_measure(CTX, 3), 1),
                     (dirac(CTX, 7), 1)):
        series = amice_of_measure(mu, order=6, precision=4)
        assert series.coeffs[0] == mass % 5 ** 4


def test_amice_dirac_is_binomial_column():
    # A_{delta_b}(t) = t^b = sum_j C(b, j) (t-1)^j
    from math import comb
    series = amice_of_measure(dirac(CTX, 7), order=8, precision=4)
    assert series.coeffs == tuple(comb(7, j) % 5 ** 4 for j in range(9))


def test_moment_operator_matches_riemann():
    mu = kl_measure(CTX, 2, 3)
    series = amice_of_measure(mu, order=8, precision=5)
    for k in (1, 3, 5):
        op = moment_operator(series, k)
        rs = moment_riemann(mu, k, 5)
        assert op.congruent(CTX.approx(rs, 5), 5)
    with pytest.raises(DomainError):
        moment_operator(series, 9)


def test_periods_roundtrip_level_one():
    mu = kl_measure(CTX, 2, 3)
    prec = 4
    series = amice_of_measure(mu, order=4 * prec + 2, precision=prec)
    for a in range(5):
        got = periods_from_series(series, a, 1)
        assert got.precision == prec - 1
        want = CTX.approx(mu.value(a, 1), prec - 1)
        assert got == want


def test_periods_roundtrip_level_two():
    ctx = PrimeContext(5, 4)
    mu = kl_measure(ctx, 2, 3)
    prec = 3
    series = amice_of_measure(mu, order=20 * prec + 2, precision=prec)
    for a in (0, 1, 7, 24):
        got = periods_from_series(series, a, 2)
        assert got.precision == prec - 2
        assert got == ctx.approx(mu.value(a, 2), prec - 2)


def test_periods_roundtrip_other_prime():
    ctx = PrimeContext(7, 4)
    mu = kl_measure(ctx, 2, 3)
    prec = 3
    series = amice_of_measure(mu, order=6 * prec + 3, precision=prec)
    for a in (0, 1, 4):
        assert periods_from_series(series, a, 1) == ctx.approx(mu.value(a, 1), prec - 1)


def test_periods_level_zero_and_truncation_guard():
    mu = mazur_measure(CTX, 3)
    series = amice_of_measure(mu, order=9, precision=3)
    assert periods_from_series(series, 0, 0).residue == 1  # total mass
    with pytest.raises(DomainError):
        periods_from_series(series, 1, 1)  # order 9 < degree * precision


def test_amice_series_json():
    s = AmiceSeries(CTX, (1, 2, 3), 4)
    assert s.to_json() == {"coeffs": ["1", "2", "3"], "modulus": "5^4"}
