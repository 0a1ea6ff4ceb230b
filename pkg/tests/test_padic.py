"""Scalar p-adic layer: units, logs, binomial powers, cyclotomic ring."""

from __future__ import annotations

import random

import pytest

from bhlab.padic import (
    CyclotomicRing,
    DomainError,
    PAdicApprox,
    PrecisionError,
    PrimeContext,
    cyclo_eval,
    decompose_unit,
    one_pth_log,
    padic_log,
    principal_power,
)

from oracles import log_by_limit, teichmuller_iterate


C54 = PrimeContext(5, 4)
C53 = PrimeContext(5, 3)


def test_context_validation():
    with pytest.raises(DomainError):
        PrimeContext(4, 3)
    with pytest.raises(DomainError):
        PrimeContext(3, 3)  # p >= 5 is required, 3 divides 12
    with pytest.raises(DomainError):
        PrimeContext(7, 0)


def test_teichmuller_frozen_values():
    # frozen from the iteration oracle: 2 -> 32 -> 57 -> 182 (stable) mod 625
    dec = decompose_unit(PrimeContext(5, 2).approx(2))
    assert dec.teichmuller.residue == 7
    dec4 = decompose_unit(C54.approx(2))
    assert dec4.teichmuller.residue == 182
    assert dec4.teichmuller.residue == teichmuller_iterate(2, 5, 4)
    # omega(2) is the 4th root of unity lifting 2: its square is -1
    assert dec4.teichmuller.residue ** 2 % 625 == 624
    # principal part <2> = 2/omega(2)
    assert dec4.principal.residue == 2 * pow(182, -1, 625) % 625 == 261


def test_unit_decomposition_invariants():
    rng = random.Random(7)
    for p in (5, 7, 13):
        ctx = PrimeContext(p, 5)
        for _ in range(40):
            x = ctx.approx(rng.randrange(1, ctx.modulus()))
            if not x.is_unit():
                continue
            dec = decompose_unit(x)
            assert (dec.teichmuller * dec.principal).residue == x.residue
            assert pow(dec.teichmuller.residue, p - 1, ctx.modulus()) == 1
            assert dec.principal.residue % p == 1


def test_log_frozen_value():
    # hand series: log 6 = 5 - 25/2 + 125/3 - ... = 5 - 75 = 55 mod 125,
    # and the limit oracle (6^(5^k)-1)/5^k agrees
    v = padic_log(C53.approx(6))
    assert v.residue == 55
    assert v.residue == log_by_limit(6, 5, 3)


def test_log_is_homomorphism():
    rng = random.Random(11)
    for p in (5, 7):
        ctx = PrimeContext(p, 6)
        mod = ctx.modulus()
        for _ in range(30):
            u = ctx.approx(rng.randrange(1, mod))
            v = ctx.approx(rng.randrange(1, mod))
            if not (u.is_unit() and v.is_unit()):
                continue
            assert padic_log(u * v) == padic_log(u) + padic_log(v)


def test_log_kills_teichmuller():
    ctx = PrimeContext(5, 5)
    for x in (2, 3, 7, 11):
        dec = decompose_unit(ctx.approx(x))
        assert padic_log(dec.teichmuller).residue == 0
        assert padic_log(ctx.approx(x)) == padic_log(dec.principal)


def test_one_pth_log():
    v = one_pth_log(C53.approx(6))
    assert v.precision == 2 and v.residue == 11
    assert v.residue == log_by_limit(6, 5, 3) // 5 % 25
    with pytest.raises(DomainError):
        one_pth_log(C53.approx(7))  # 7 != 1 mod 5


def test_principal_power_integer_exponents():
    v = principal_power(C53.approx(6), 2)
    assert v.residue == 36
    ctx = PrimeContext(7, 5)
    u = ctx.approx(8)
    for s in (0, 1, 3, 10):
        assert principal_power(u, s).residue == pow(8, s, ctx.modulus())


def test_principal_power_additivity():
    ctx = PrimeContext(5, 6)
    u = ctx.approx(1 + 5 * 123)
    rng = random.Random(3)
    for _ in range(10):
        s = ctx.approx(rng.randrange(ctx.modulus()))
        t = ctx.approx(rng.randrange(ctx.modulus()))
        lhs = principal_power(u, s + t)
        rhs = principal_power(u, s) * principal_power(u, t)
        assert lhs == rhs


def test_principal_power_interpolates_log():
    # d/ds <u>^s at s=0 is log u: <u>^(p^k) = 1 + p^k log u + O(p^(2k-?))
    ctx = PrimeContext(5, 6)
    u = ctx.approx(6)
    k = 3
    w = principal_power(u, 5 ** k)
    lhs = (w - 1).divide_by_p_power(k)
    assert lhs.congruent(padic_log(u), 2)


def test_precision_ledger():
    x = C54.approx(50)  # 2 * 25
    y = x.divide_by_p_power(2)
    assert y.residue == 2 and y.precision == 2
    with pytest.raises(DomainError):
        C54.approx(51).divide_by_p_power(1)
    with pytest.raises(PrecisionError):
        y.divide_by_p_power(3)
    # non-unit division: (50) / (25) has precision 4 - 2 = 2
    q = C54.approx(50) / C54.approx(25)
    assert q.precision == 2 and q.residue == 2
    # congruence beyond available precision must refuse, not guess
    with pytest.raises(PrecisionError):
        y.congruent(2, 4)
    assert (x * y).precision == 2


def test_fraction_embedding():
    half = C54.approx(1) / C54.approx(2)
    from fractions import Fraction
    assert C54.approx(Fraction(1, 2)) == half
    assert C54.approx(Fraction(5, 10)) == half
    assert C54.approx(Fraction(25, 5)).residue == 5
    with pytest.raises(DomainError):
        C54.approx(Fraction(1, 5))


def test_cyclotomic_level_one():
    ring = CyclotomicRing(C54, 1)
    assert ring.degree == 4
    T = ring.root_power(1)
    # T^5 = 1 and 1 + T + T^2 + T^3 + T^4 = 0
    assert ring.root_power(5).coeffs == ring.from_int(1).coeffs
    total = ring.from_int(1)
    for j in range(1, 5):
        total = total + ring.root_power(j)
    assert total.as_scalar() == 0
    # highest monomial reduces against the sparse minimal polynomial
    top = ring.root_power(4)
    m = ring.modulus
    assert top.coeffs == tuple(x % m for x in (-1, -1, -1, -1))
    # Horner evaluation of the series (t-1) at t = T
    z = T.add_scalar(-1)
    assert cyclo_eval([0, 1], z).coeffs == z.coeffs


def test_cyclotomic_level_two():
    ring = CyclotomicRing(PrimeContext(5, 3), 2)
    assert ring.degree == 20 and ring.order == 25
    assert ring.root_power(25).coeffs == ring.from_int(1).coeffs
    # Phi_25(T) = sum of T^(5j) vanishes
    acc = ring.zero()
    for j in range(5):
        acc = acc + ring.root_power(5 * j)
    assert acc.as_scalar() == 0
    with pytest.raises(DomainError):
        CyclotomicRing(C54, 3)


def test_scalar_extraction_guard():
    ring = CyclotomicRing(C54, 1)
    elem = ring.root_power(1)
    with pytest.raises(ArithmeticError):
        elem.scalar_divided_by_p_power(0)
    v = ring.from_int(50).scalar_divided_by_p_power(1)
    assert v.residue == 10 and v.precision == 3
