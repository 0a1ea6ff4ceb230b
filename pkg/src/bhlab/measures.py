"""Measures on Z_p presented by coset tables, and their Amice transforms.

A measure here is a compatible family of values on the cosets a + p^n Z_p,
one table per level n, with values in any commutative coefficient domain
(exact rationals, residues, truncated q-series).  The two consumers are

* Riemann-sum integration: moments and weighted unit integrals, whose
  declared accuracy follows the coset diameter p^-n, and
* the Amice transform A(t) = sum_j (int C(x,j) dmu) (t-1)^j, from which
  coset values are recovered by averaging over p^n-th roots of unity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .padic import CyclotomicRing, DomainError, PAdicApprox, PrimeContext, cyclo_eval

__all__ = [
    "FiniteLevelMeasure",
    "AmiceSeries",
    "CosetWeight",
    "amice_of_measure",
    "periods_from_series",
    "moment_riemann",
    "moment_operator",
    "restrict_to_units",
    "weighted_integral",
    "check_distribution_coherence",
    "weight_power",
    "weight_inverse",
    "weight_log",
    "weight_inverse_log",
]


class FiniteLevelMeasure:
    """Coset-table presentation of a measure.

    `rule(a, n)` returns the value on a + p^n Z_p.  Tables are cached per
    level.  `zero` is the additive identity of the coefficient domain
    (needed by unit restriction, where values off the units are dropped).
    """

    def __init__(self, ctx: PrimeContext, rule: Callable[[int, int], object],
                 name: str = "measure", zero=Fraction(0),
                 residue_table: Callable[[int, int], np.ndarray] | None = None):
        self.ctx = ctx
        self.rule = rule
        self.name = name
        self.zero = zero
        self._tables: dict[int, list] = {}
        self._residue_table = residue_table

    def value(self, a: int, n: int):
        if n < 0:
            raise DomainError("level must be >= 0")
        return self.rule(a % self.ctx.p ** n, n)

    def table(self, n: int) -> list:
        if n not in self._tables:
            q = self.ctx.p ** n
            self._tables[n] = [self.rule(a, n) for a in range(q)]
        return self._tables[n]

    def residue_table(self, n: int, modulus: int) -> np.ndarray:
        """Level-n values as int64 residues; fast path if the factory gave one."""
        if self._residue_table is not None:
            return self._residue_table(n, modulus)
        out = np.empty(self.ctx.p ** n, dtype=np.int64)
        for a, v in enumerate(self.table(n)):
            out[a] = _to_residue(v, self.ctx.p, modulus)
        return out


def _to_residue(v, p: int, modulus: int) -> int:
    if isinstance(v, PAdicApprox):
        if modulus > p ** v.precision:
            raise DomainError("value precision below requested modulus")
        return v.residue % modulus
    fr = Fraction(v)
    if fr.denominator % p == 0:
        raise DomainError(f"{fr} is not p-integral")
    return fr.numerator * pow(fr.denominator, -1, modulus) % modulus


def check_distribution_coherence(mu: FiniteLevelMeasure, n_max: int) -> bool:
    """value(a, n) must equal the sum of its p refinements at level n+1."""
    p = mu.ctx.p
    for n in range(n_max):
        fine = mu.table(n + 1)
        for a, coarse in enumerate(mu.table(n)):
            total = fine[a]
            for b in range(1, p):
                total = total + fine[a + b * p ** n]
            if total != coarse:
                return False
    return True


def restrict_to_units(mu: FiniteLevelMeasure) -> FiniteLevelMeasure:
    """Zero out the non-unit cosets (idempotent)."""
    p = mu.ctx.p

    def rule(a: int, n: int):
        if n == 0:
            total = mu.zero
            for b in range(1, p):
                total = total + mu.value(b, 1)
            return total
        return mu.value(a, n) if a % p != 0 else mu.zero

    return FiniteLevelMeasure(mu.ctx, rule, name=f"{mu.name}|units",
                              zero=mu.zero)


def moment_riemann(mu: FiniteLevelMeasure, k: int, n: int):
    """Level-n Riemann sum of x^k.  For a p-integral measure the result
    approximates the true moment mod p^n (tag points are the coset reps)."""
    total = mu.zero
    for a, v in enumerate(mu.table(n)):
        total = total + (a ** k) * v if k else total + v
    return total


# -- weighted unit integrals -------------------------------------------------


@dataclass(frozen=True)
class CosetWeight:
    """A unit-coset weight function with its declared precision loss.

    `fn(a, n)` evaluates the weight at the integer representative of a unit
    coset; `loss` is the number of digits by which the Riemann accuracy
    p^-n degrades (1 for anything involving log/p, else 0).
    """

    name: str
    fn: Callable[[int, int], PAdicApprox]
    loss: int = 0


def weight_power(ctx: PrimeContext, k: int) -> CosetWeight:
    return CosetWeight(f"x^{k}", lambda a, n: ctx.approx(a) ** k)


def weight_inverse(ctx: PrimeContext) -> CosetWeight:
    return CosetWeight("x^-1", lambda a, n: ctx.approx(a).unit_inverse())


def weight_log(ctx: PrimeContext) -> CosetWeight:
    from .padic import padic_log
    return CosetWeight("log", lambda a, n: padic_log(ctx.approx(a)), loss=1)


def weight_inverse_log(ctx: PrimeContext) -> CosetWeight:
    from .padic import padic_log
    return CosetWeight(
        "x^-1 log",
        lambda a, n: padic_log(ctx.approx(a)) * ctx.approx(a).unit_inverse(),
        loss=1)


def weighted_integral(mu: FiniteLevelMeasure, weight: CosetWeight, n: int):
    """sum over unit cosets of weight(a) * mu(a + p^n); accurate mod
    p^(n - weight.loss) for p-integral mu."""
    if n < 1:
        raise DomainError("unit integrals need level >= 1")
    p = mu.ctx.p
    table = mu.table(n)
    total = None
    for a in range(p ** n):
        if a % p == 0:
            continue
        term = weight.fn(a, n) * table[a]
        total = term if total is None else total + term
    return total


# -- Amice transform ---------------------------------------------------------


@dataclass(frozen=True)
class AmiceSeries:
    """Truncated power series in (t-1): coefficients c_j = int C(x,j) dmu.

    Coefficients are residues valid mod p^precision.  c_0 is the total
    mass; the series recovers coset values through root-of-unity sums.
    """

    ctx: PrimeContext
    coeffs: tuple[int, ...]
    precision: int

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs],
                "modulus": f"{self.ctx.p}^{self.precision}"}


def amice_of_measure(mu: FiniteLevelMeasure, order: int,
                     precision: int | None = None) -> AmiceSeries:
    """Binomial-coefficient moments c_j, j <= order, valid mod p^precision.

    c_j is a limit of level-m Riemann sums sum_a C(a, j) mu(a + p^m); the
    binomial's modulus of continuity (C(a + p^m, r) - C(a, r) has valuation
    >= m - v_p(r)) shows level m = precision + floor(log_p(order)) already
    gives every c_j exactly mod p^precision.
    """
    ctx = mu.ctx
    T = ctx.M if precision is None else precision
    p = ctx.p
    guard = 0
    while p ** (guard + 1) <= max(order, 1):
        guard += 1
    m = T + guard
    q = p ** m
    pT = p ** T
    vals = np.asarray(mu.residue_table(m, pT), dtype=np.int64)
    col = np.ones(q, dtype=np.int64)  # C(a, 0)
    coeffs = [int(vals.sum() % pT)]
    for _ in range(order):
        shifted = np.concatenate(([0], np.cumsum(col)[:-1])) % pT
        col = shifted
        coeffs.append(int((col * vals % pT).sum() % pT))
    return AmiceSeries(ctx, tuple(coeffs), T)


def periods_from_series(series: AmiceSeries, a: int, n: int) -> PAdicApprox:
    """Recover mu(a + p^n Z_p) from the Amice series.

    mu(a + p^n) = p^-n sum over p^n-th roots zeta of A(zeta) zeta^-a; the
    sum is Galois-stable, so in Z[T]/Phi_{p^n} it lands on the scalar line,
    which is asserted, and the division by p^n costs n digits.

    Precondition: series.order should be at least degree * precision so the
    dropped tail vanishes identically mod p^precision (tail terms have
    valuation >= order / degree).
    """
    ctx = series.ctx
    prec = min(series.precision, ctx.M)
    if n == 0:
        return PAdicApprox(ctx, series.coeffs[0] % ctx.p ** prec, prec)
    ring = CyclotomicRing(ctx, n, precision=prec)
    if series.order + 1 < ring.degree * prec:
        raise DomainError(
            f"series order {series.order} too small for level {n} at "
            f"precision {prec}; need >= {ring.degree * prec - 1}")
    total = ring.zero()
    for j in range(ring.order):
        z = ring.root_power(j).add_scalar(-1)
        total = total + cyclo_eval(series.coeffs, z) * ring.root_power(-j * a)
    return total.scalar_divided_by_p_power(n)


def moment_operator(series: AmiceSeries, k: int) -> PAdicApprox:
    """k-th moment via (t d/dt)^k at t = 1, i.e. ((1+u) d/du)^k at u = 0.

    Exact for order > k: only c_j with j <= k enter (the operator evaluated
    at u = 0 is a finite Stirling combination).
    """
    ctx = series.ctx
    if series.order < k:
        raise DomainError(f"need order >= {k}")
    mod = ctx.p ** series.precision
    c = list(series.coeffs)
    for _ in range(k):
        c = [((j + 1) * c[j + 1] + j * c[j]) % mod if j + 1 < len(c)
             else (j * c[j]) % mod
             for j in range(len(c))]
    return PAdicApprox(ctx, c[0] % mod, series.precision)
