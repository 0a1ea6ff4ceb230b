"""Bernoulli values, Mazur/KL measures, interpolation, gamma_p."""

from __future__ import annotations

from fractions import Fraction

import pytest

from bhlab.kl import (
    bernoulli_number,
    bernoulli_polynomial,
    gamma_p,
    kl_coset_moment,
    kl_measure,
    kl_moment_target,
    kl_period,
    leopoldt_value,
    mazur_coset_moment,
    mazur_measure,
    mazur_period,
    verify_KL_interpolation,
    zeta_neg,
)
from bhlab.measures import moment_riemann
from bhlab.padic import DomainError, PrimeContext
from bhlab.report import fraction_congruent

from oracles import bernoulli_list, kl_period_combination_ref, mazur_period_ref, zeta_neg_ref


CTX = PrimeContext(5, 8)


def test_bernoulli_against_independent_route():
    ours = [bernoulli_number(m) for m in range(16)]
    assert ours == bernoulli_list(15)
    assert ours[1] == Fraction(-1, 2)
    assert ours[12] == Fraction(-691, 2730)


def test_zeta_neg_values():
    assert zeta_neg(0) == Fraction(-1, 2)
    assert zeta_neg(3) == Fraction(1, 120)
    assert zeta_neg(5) == Fraction(-1, 252)
    assert zeta_neg(7) == Fraction(1, 240)
    for k in range(9):
        assert zeta_neg(k) == zeta_neg_ref(k)
    assert zeta_neg(2) == 0 and zeta_neg(4) == 0


def test_bernoulli_multiplication_theorem():
    # sum_{a<M} B_k((x+a)/M) = M^(1-k) B_k(x): underpins the coset moments
    for k in (2, 3, 5):
        for M in (2, 5):
            x = Fraction(3, 7)
            lhs = sum(bernoulli_polynomial(k, (x + a) / M) for a in range(M))
            assert lhs == Fraction(M) ** (1 - k) * bernoulli_polynomial(k, x)


def test_mazur_period_formula():
    for a in range(25):
        assert mazur_period(5, 3, a, 2) == mazur_period_ref(5, 3, a, 2)
    # total mass is (N-1)/2 at level 0
    assert mazur_period(5, 3, 0, 0) == 1


def test_kl_level_one_table():
    # frozen: [0, 2, 4, -4, -2] at (p, c, N) = (5, 2, 3)
    assert [kl_period(5, 2, 3, a, 1) for a in range(5)] == [0, 2, 4, -4, -2]


def test_kl_period_matches_measure_combination():
    # closed form vs -c^2 mu_N + c (x/c)_* mu_N + atom, coset by coset
    for p, c, N in ((5, 2, 3), (7, 2, 3), (5, 3, 2), (5, 7, 4)):
        for n in (0, 1, 2):
            for a in range(p ** n):
                assert kl_period(p, c, N, a, n) == kl_period_combination_ref(p, c, N, a, n)


def test_kl_values_are_p_integral_and_massless():
    for p, c, N in ((5, 2, 3), (7, 2, 3), (5, 7, 4)):
        ctx = PrimeContext(p, 6)
        mu = kl_measure(ctx, c, N)
        for n in (1, 2):
            table = mu.table(n)
            assert sum(table) == 0
            for v in table:
                assert Fraction(v).denominator % p != 0


def test_pair_validation():
    with pytest.raises(DomainError):
        kl_measure(CTX, 5, 3)  # c divisible by p
    with pytest.raises(DomainError):
        kl_measure(CTX, 2, 10)  # N divisible by p
    with pytest.raises(DomainError):
        kl_measure(CTX, 3, 9)  # c, N not coprime


def test_coset_moments_refine_correctly():
    # Bernoulli closed form must be a distribution in (a, n)
    for a in range(5):
        for k in (1, 2, 3):
            fine = sum(mazur_coset_moment(5, 3, a + 5 * b, 2, k) for b in range(5))
            assert fine == mazur_coset_moment(5, 3, a, 1, k)
            fine = sum(kl_coset_moment(5, 2, 3, a + 5 * b, 2, k) for b in range(5))
            assert fine == kl_coset_moment(5, 2, 3, a, 1, k)


def test_coset_moments_against_riemann_refinement():
    # independent route: moments over a + p^n Z_p as refined Riemann sums
    p, c, N = 5, 2, 3
    n, extra = 1, 3
    q, Q = p ** n, p ** (n + extra)
    for a in range(q):
        for k in (1, 2, 3):
            riemann = sum(b ** k * kl_period(p, c, N, b, n + extra)
                          for b in range(a, Q, q))
            exact = kl_coset_moment(p, c, N, a, n, k)
            assert fraction_congruent(riemann, exact, p, n + extra)


def test_coset_moments_total_is_target():
    for k in range(1, 8):
        total = sum(kl_coset_moment(5, 2, 3, a, 1, k) for a in range(5))
        assert total == kl_moment_target(2, 3, k)
    assert kl_moment_target(2, 3, 3) == 8
    assert kl_moment_target(2, 3, 5) == (4 - 2 ** 6) * (1 - 3 ** 6) * Fraction(-1, 252)
    assert kl_moment_target(2, 3, 5) == Fraction(-520, 3)  # 5-integral, 3 in the denominator
    assert kl_moment_target(2, 3, 7) == 6888


def test_moment_riemann_matches_fast_interpolation_check():
    mu = kl_measure(CTX, 2, 3)
    n, k = 3, 3
    exact = moment_riemann(mu, k, n)
    rep = verify_KL_interpolation(CTX, 2, 3, k, n, mu=mu)
    mod = 5 ** 3
    fr = Fraction(exact)
    assert fr.numerator * pow(fr.denominator, -1, mod) % mod == int(rep.detail["riemann_residue"]) % mod


def test_verify_kl_interpolation():
    for k in (1, 3, 5, 7):
        rep = verify_KL_interpolation(CTX, 2, 3, k, 6)
        assert rep.passed, rep
    rep = verify_KL_interpolation(PrimeContext(7, 6), 2, 3, 3, 4)
    assert rep.passed


def test_leopoldt_value_has_unit_numerator():
    # (1-1/p) log_p N has valuation 0 for N in range: the division is exact
    v = leopoldt_value(CTX, 3)
    assert v.precision == 7 and v.residue % 5 != 0


def test_gamma_p_probe_independence():
    # same constant from independent auxiliary measures, to the shared precision
    for n in (4, 6):
        g3 = gamma_p(CTX, 3, n)
        g7 = gamma_p(CTX, 7, n)
        e = min(g3.precision, g7.precision, n - 2)
        assert g3.congruent(g7, e), (n, g3, g7)


def test_gamma_p_via_zeta_pole_expansion():
    # Kubota-Leopoldt: zeta_p(s) = (1-1/p)(1/(s-1) + gamma_p + O(s-1)).
    # Evaluate at s = 1 + p^j through the Mazur measure and compare after
    # clearing the pole: p^(j+1) zeta_p(s) = (p-1)(1 + p^j gamma_p) + O(p^2j).
    from bhlab.measures import CosetWeight, restrict_to_units, weighted_integral
    from bhlab.padic import decompose_unit, principal_power
    p, N, n, j = 5, 3, 6, 3
    ctx = CTX
    mu = restrict_to_units(mazur_measure(ctx, N))
    s_minus_1 = p ** j

    def wfn(a, level):
        # x^-1 <x>^(1-s) = x^-1 <x>^(-p^j)
        x = ctx.approx(a)
        return x.unit_inverse() * principal_power(decompose_unit(x).principal,
                                                  -s_minus_1)

    num = weighted_integral(mu, CosetWeight("x^-1<x>^(1-s)", wfn), n)
    num = num.reduce(n)  # Riemann accuracy
    den = principal_power(decompose_unit(ctx.approx(N)).principal, -s_minus_1) - 1
    assert den.valuation() == j + 1  # -p^j log N (1 + O(p^j))
    # zeta_p(s) = num/den has a pole-sized value (valuation -(j+1)), so
    # compare cross-multiplied: p^(j+1) num = den (p-1)(1 + p^j gamma_p),
    # with error O(p^(3j+1)) + O(p^(n+j+1)) beyond working precision.
    lhs = num.times_p_power(j + 1)
    g = gamma_p(ctx, N, n)
    rhs = den * (p - 1) * (ctx.approx(1) + g.times_p_power(j))
    e = min(lhs.precision, rhs.precision)
    assert lhs.congruent(rhs, e), (lhs, rhs, e)
