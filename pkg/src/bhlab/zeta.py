"""The p-adic zeta function carried by the q-expansion-valued measure.

The measure assigns to a + p^n Z_p the weight-one family expansion
phi_{a,n}(q) reduced mod p^M (TateBHMeasure).  Integrating unit-coset
weights against it and dividing by the regularization factors

    (c^2 - omega^i(c) <c>^(1-s)) * (1 - omega^i(N) <N>^(1-s))

yields zeta values whose coefficients are q-series.  Every classical
statement about this function then becomes a finite congruence between
computable series, which is what the check_* functions assert:

* interpolation at s = -k against (c^2-c^(k+1))(1-N^(k+1)) k! G*_{k+1},
* regularity and the exceptional log-weighted congruence at k = 1,
* the residue formula at s = 1 (constant series, structural zero tail),
* the limit formula: the log-weighted integral meets gamma_p and the
  unit-root normalizer series G_{0,n} = -(1/12p) log Delta^(p).

All sums run over unit cosets with the fixed representatives in [0, p^n);
log-weighted identities therefore only hold one digit short of the level,
and those checks assert mod p^(n-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .kl import gamma_p, leopoldt_value
from .measures import FiniteLevelMeasure
from .padic import (
    DomainError,
    PAdicApprox,
    PrimeContext,
    decompose_unit,
    padic_log,
    principal_power,
)
from .qexp import (
    FamilyParams,
    QSeries,
    eisenstein_g,
    g0n_series,
    p_stabilize,
    qseries_congruent,
    sigma_family_table,
)
from .report import CheckReport

__all__ = [
    "TateBHMeasure",
    "ZetaValue",
    "interpolation_target",
    "check_interpolation",
    "check_regularity",
    "check_exceptional",
    "check_residue",
    "check_limit",
    "check_pole_laurent",
    "check_zeta_interpolates",
    "check_pair_independence",
    "zeta_eval",
]


class TateBHMeasure(FiniteLevelMeasure):
    """Measure whose value on a + p^n Z_p is phi_{a,n}(q) mod p^precision.

    Coset values are built level-by-level from the divisor-sum tables
    (exact q^0 column), reduced once, and cached.  Distribution coherence
    is inherited from the exact identity on the sigma coefficients; the
    total mass phi_{0,0} is the zero series.
    """

    def __init__(self, fam: FamilyParams, precision: int, order: int):
        self.fam = fam
        self.precision = precision
        self.order = order
        self.series_modulus = fam.p ** precision
        self._levels: dict[int, list[QSeries]] = {}
        zero = QSeries((0,) * (order + 1), 1, self.series_modulus)
        super().__init__(PrimeContext(fam.p, precision), self._value,
                         name="tate-bh", zero=zero)

    def level_table(self, n: int) -> list[QSeries]:
        if n not in self._levels:
            rows = sigma_family_table(self.fam, n, 0, self.order,
                                      m0_riemann_extra=None)
            self._levels[n] = [QSeries(tuple(r), 1).reduce_mod(self.series_modulus)
                               for r in rows]
        return self._levels[n]

    def _value(self, a: int, n: int) -> QSeries:
        return self.level_table(n)[a]


@dataclass(frozen=True)
class ZetaValue:
    """A zeta value as a q-series, with explicit p-power bookkeeping.

    The number the caller wants is p^p_scale * value; p_scale <= 0 absorbs
    the p-part of the regularization factors (and, at the pole, of log_p N)
    so that `value` always stays a series over Z/p^w.  At (s, i) = (1, 0)
    pole_order is 1, `residue` carries the exact leading Laurent
    coefficient 1 - 1/p, and `value` holds the constant Laurent term
    assembled from the measure side.  pole_order is 0 everywhere else.
    """

    p: int
    value: QSeries
    p_scale: int = 0
    pole_order: int = 0
    residue: Fraction | None = None

    def congruent(self, other: "ZetaValue", e: int) -> int | None:
        """First index where p^p_scale*value differ mod p^e, else None."""
        if self.p != other.p:
            raise DomainError("values live over different primes")
        base = min(self.p_scale, other.p_scale)
        a = self.value.scale(self.p ** (self.p_scale - base))
        b = other.value.scale(self.p ** (other.p_scale - base))
        return qseries_congruent(a, b, self.p, e - base)

    def congruent_to_exact(self, target: QSeries, e: int) -> int | None:
        """Compare against an exact-coefficient series mod p^e."""
        shifted = target.scale(self.p ** (-self.p_scale))
        return qseries_congruent(self.value, shifted, self.p, e - self.p_scale)

    def to_json(self) -> dict:
        out = {"p": self.p, "p_scale": self.p_scale,
               "pole_order": self.pole_order, "value": self.value.to_json()}
        if self.residue is not None:
            out["residue"] = str(self.residue)
        return out


# ---------------------------------------------------------------------------
# weighted coset sums
# ---------------------------------------------------------------------------


def _unit_weighted_sum(mu: TateBHMeasure, n: int, weight) -> QSeries:
    """sum over units a mod p^n of weight(a) * phi_{a,n}, mod p^precision."""
    if n < 1:
        raise DomainError("weighted sums need level >= 1")
    p = mu.fam.p
    table = mu.level_table(n)
    total = mu.zero
    for a in range(1, p ** n):
        if a % p == 0:
            continue
        total = total + table[a].scale(weight(a))
    return total


def interpolation_target(fam: FamilyParams, k: int, order: int) -> QSeries:
    """(c^2 - c^(k+1)) (1 - N^(k+1)) * k! G*_{k+1} with exact coefficients."""
    pref = (fam.c ** 2 - fam.c ** (k + 1)) * (1 - fam.N ** (k + 1))
    return p_stabilize(eisenstein_g(k + 1, order), fam.p, k + 1).scale(pref)


def check_interpolation(fam: FamilyParams, k: int, n: int, order: int = 60,
                        measure: TateBHMeasure | None = None) -> CheckReport:
    """sum_a a^k phi_{a,n} = interpolation target, coefficientwise mod p^n."""
    if k == 1:
        raise DomainError("k = 1 is the exceptional weight; use "
                          "check_regularity / check_exceptional")
    if k < 0 or n < 1:
        raise DomainError("need k >= 0 and n >= 1")
    mu = measure or TateBHMeasure(fam, n + 2, order)
    mod = mu.series_modulus
    lhs = _unit_weighted_sum(mu, n, lambda a: pow(a, k, mod))
    rhs = interpolation_target(fam, k, order)
    miss = qseries_congruent(lhs, rhs, fam.p, n)
    detail = {"lhs_constant": lhs.coeffs[0],
              "rhs_constant": rhs.coeffs[0],
              "first_mismatch": miss}
    return CheckReport("zeta-interpolation",
                       {"p": fam.p, "c": fam.c, "N": fam.N, "k": k, "n": n,
                        "order": order},
                       miss is None, fam.p ** n, detail)


def check_regularity(fam: FamilyParams, n: int, order: int = 60,
                     measure: TateBHMeasure | None = None) -> CheckReport:
    """sum_a a * phi_{a,n} vanishes mod p^n (no pole at the k = 1 weight)."""
    if n < 1:
        raise DomainError("need n >= 1")
    mu = measure or TateBHMeasure(fam, n + 2, order)
    lhs = _unit_weighted_sum(mu, n, lambda a: a)
    zero = QSeries((0,) * (order + 1), 1)
    miss = qseries_congruent(lhs, zero, fam.p, n)
    return CheckReport("zeta-regularity",
                       {"p": fam.p, "c": fam.c, "N": fam.N, "n": n,
                        "order": order},
                       miss is None, fam.p ** n, {"first_mismatch": miss})


def check_exceptional(fam: FamilyParams, n: int, order: int = 60,
                      measure: TateBHMeasure | None = None) -> CheckReport:
    """Log-weighted k = 1 congruence.

    sum_a a log_p(a) phi_{a,n} = -c^2 log_p(c) (1 - N^2) G*_2 mod p^(n-1):
    differentiating the interpolation family at its vanishing weight trades
    the monomial weight for a log and one digit of precision.
    """
    if n < 2:
        raise DomainError("need n >= 2 (one digit is lost to the log)")
    mu = measure or TateBHMeasure(fam, n + 2, order)
    ctx = mu.ctx
    lhs = _unit_weighted_sum(
        mu, n, lambda a: ctx.approx(a) * padic_log(ctx.approx(a)))
    factor = ctx.approx(-fam.c ** 2 * (1 - fam.N ** 2)) \
        * padic_log(ctx.approx(fam.c))
    rhs = p_stabilize(eisenstein_g(2, order), fam.p, 2).scale(factor)
    miss = qseries_congruent(lhs, rhs, fam.p, n - 1)
    detail = {"lhs_constant": lhs.coeffs[0], "rhs_constant": rhs.coeffs[0],
              "first_mismatch": miss}
    return CheckReport("zeta-exceptional",
                       {"p": fam.p, "c": fam.c, "N": fam.N, "n": n,
                        "order": order},
                       miss is None, fam.p ** (n - 1), detail)


def check_residue(fam: FamilyParams, n: int, order: int = 60,
                  measure: TateBHMeasure | None = None) -> CheckReport:
    """sum_a a^-1 phi_{a,n} is the constant (c^2-1)(1-1/p) log_p N mod p^n.

    The q^m coefficients for m >= 1 must vanish mod p^n: that structural
    zero is the whole content of the residue being a number rather than a
    series, so it is asserted coefficient by coefficient.
    """
    if n < 1:
        raise DomainError("need n >= 1")
    mu = measure or TateBHMeasure(fam, n + 2, order)
    ctx = mu.ctx
    mod = mu.series_modulus
    lhs = _unit_weighted_sum(mu, n, lambda a: pow(a, -1, mod))
    constant = ctx.approx(1 - fam.c ** 2) * leopoldt_value(ctx, fam.N)
    target = QSeries((constant.residue,) + (0,) * order, 1,
                     ctx.p ** constant.precision)
    miss = qseries_congruent(lhs, target, fam.p, n)
    detail = {"lhs_constant": lhs.coeffs[0],
              "target_constant": constant,
              "first_mismatch": miss}
    return CheckReport("zeta-residue",
                       {"p": fam.p, "c": fam.c, "N": fam.N, "n": n,
                        "order": order},
                       miss is None, fam.p ** n, detail)


def _limit_target(fam: FamilyParams, ctx: PrimeContext, n: int,
                  order: int) -> QSeries:
    """(1-c^2)[(1-1/p) gamma_p log_p N + log_p N * G_{0,n}]
    - (1-1/p) log_p N [(1-c^2) log_p N / 2 + log_p c], as a series."""
    p, c = fam.p, fam.c
    lg_n = padic_log(ctx.approx(fam.N))
    lg_c = padic_log(ctx.approx(c))
    gamma = gamma_p(ctx, fam.N, n + 1)
    lg_n_over_p = lg_n.divide_by_p_power(1)
    const = ctx.approx((1 - c * c) * (p - 1)) * lg_n_over_p * gamma \
        - ctx.approx(p - 1) * lg_n_over_p \
        * (ctx.approx(Fraction(1 - c * c, 2)) * lg_n + lg_c)
    mod = ctx.p ** const.precision
    series = g0n_series(ctx, order).scale(
        ctx.approx(1 - c * c) * lg_n).reduce_mod(mod)
    return QSeries((const.residue,) + (0,) * order, 1, mod) + series


def check_limit(fam: FamilyParams, n: int, order: int = 60,
                measure: TateBHMeasure | None = None) -> CheckReport:
    """First-limit-formula congruence for the log-weighted residue integral.

    sum_a a^-1 log_p(a) phi_{a,n} agrees mod p^(n-1) with
    C + (1-c^2) log_p(N) G_{0,n}(q), C as in _limit_target; gamma_p is
    computed one level up so the constant survives at p^(n-1).  The two
    sides share nothing: the left is measure tables and logs of coset
    representatives, the right is the auxiliary Mazur measure and the
    p-deprived discriminant product.
    """
    if n < 2:
        raise DomainError("need n >= 2 (one digit is lost to the log)")
    mu = measure or TateBHMeasure(fam, n + 3, order)
    if mu.precision < n + 3:
        raise DomainError("measure precision too small for gamma_p at n+1")
    ctx = mu.ctx
    mod = mu.series_modulus
    lhs = _unit_weighted_sum(
        mu, n,
        lambda a: ctx.approx(pow(a, -1, mod)) * padic_log(ctx.approx(a)))
    rhs = _limit_target(fam, ctx, n, order)
    miss = qseries_congruent(lhs, rhs, fam.p, n - 1)
    detail = {"lhs_constant": lhs.coeffs[0], "rhs_constant": rhs.coeffs[0],
              "lhs_q1": lhs.coeffs[1] if order >= 1 else None,
              "rhs_q1": rhs.coeffs[1] if order >= 1 else None,
              "first_mismatch": miss}
    return CheckReport("zeta-limit",
                       {"p": fam.p, "c": fam.c, "N": fam.N, "n": n,
                        "order": order},
                       miss is None, fam.p ** (n - 1), detail)


# ---------------------------------------------------------------------------
# zeta evaluation
# ---------------------------------------------------------------------------


def _is_exact_one(s) -> bool:
    return isinstance(s, (int, Fraction)) and s == 1


def _one_minus(ctx: PrimeContext, s):
    if isinstance(s, PAdicApprox):
        return ctx.approx(1) - s
    return 1 - s


def _regularization_factors(fam: FamilyParams, ctx: PrimeContext, s, i: int):
    one_minus_s = _one_minus(ctx, s)
    out = []
    for name, base, shift in (("c", fam.c, fam.c ** 2), ("N", fam.N, 1)):
        dec = decompose_unit(ctx.approx(base))
        tw = dec.teichmuller ** (i % (ctx.p - 1))
        val = ctx.approx(shift) - tw * principal_power(dec.principal,
                                                       one_minus_s)
        out.append((name, val))
    return out


def zeta_eval(fam: FamilyParams, s, i: int, n: int, order: int = 60,
              precision: int | None = None) -> ZetaValue:
    """Evaluate the zeta function at (s, omega^i) from level-n coset sums.

    The weight on units is omega^(i-1)(a) <a>^(-s) with s an int, Fraction
    or PAdicApprox; the weighted sum is divided by both regularization
    factors.  A factor that is p-divisible but nonzero costs digits, which
    land in the result's p_scale rather than in silent rounding; a factor
    that vanishes at working precision raises, naming itself.  The point
    (s, i) = (1, 0) instead returns Laurent data: the exact residue
    1 - 1/p and the constant term assembled from the two log-weighted
    integrals (an independent route to gamma_p + the normalizer series,
    which check_pole_laurent pins against the direct formula).
    """
    if n < 1:
        raise DomainError("need n >= 1")
    p = fam.p
    i = i % (p - 1)
    M = precision if precision is not None else n + 2
    mu = TateBHMeasure(fam, M, order)
    ctx = mu.ctx
    if i == 0 and _is_exact_one(s):
        return _pole_value(fam, ctx, mu, n)

    minus_s = -s
    tw_exp = (i - 1) % (p - 1)

    def weight(a: int) -> PAdicApprox:
        dec = decompose_unit(ctx.approx(a))
        return dec.teichmuller ** tw_exp * principal_power(dec.principal,
                                                           minus_s)

    total = _unit_weighted_sum(mu, n, weight)
    scale = 0
    unit = ctx.approx(1)
    for name, val in _regularization_factors(fam, ctx, s, i):
        v = val.valuation()
        if v >= val.precision:
            raise DomainError(
                f"regularization factor for {name} vanishes at working "
                f"precision at (s, i) = ({s}, {i})")
        scale -= v
        unit = unit * val.divide_by_p_power(v)
    return ZetaValue(p, total.scale(unit.unit_inverse()), scale)


def _pole_value(fam: FamilyParams, ctx: PrimeContext, mu: TateBHMeasure,
                n: int) -> ZetaValue:
    """Laurent data at (s, i) = (1, 0), constant term from the measure side.

    With A = int x^-1 and B = int x^-1 log_p x against the measure, the
    expansion of weights and factors around s = 1 gives

        residue = A / ((c^2-1) log_p N)            (= 1 - 1/p),
        constant = [A (log_p N / 2 - log_p c / (c^2-1)) - B]
                   / ((c^2-1) log_p N).

    The division by log_p N is done on the unit part only; its p-power
    goes to p_scale.
    """
    p, c = fam.p, fam.c
    mod = mu.series_modulus
    a_int = _unit_weighted_sum(mu, n, lambda a: pow(a, -1, mod))
    b_int = _unit_weighted_sum(
        mu, n,
        lambda a: ctx.approx(pow(a, -1, mod)) * padic_log(ctx.approx(a)))
    lg_n = padic_log(ctx.approx(fam.N))
    lg_c = padic_log(ctx.approx(c))
    inv_c2 = ctx.approx(c * c - 1).unit_inverse()
    bracket = a_int.scale(lg_n / 2 - lg_c * inv_c2) - b_int
    denom = ctx.approx(c * c - 1) * lg_n
    v = denom.valuation()
    stored = bracket.scale(denom.divide_by_p_power(v).unit_inverse())
    return ZetaValue(p, stored, -v, pole_order=1,
                     residue=Fraction(p - 1, p))


def check_pole_laurent(fam: FamilyParams, n: int, order: int = 60) -> CheckReport:
    """Pole constant, measure side vs direct (1-1/p) gamma_p + G_{0,n}."""
    if n < 2:
        raise DomainError("need n >= 2")
    p = fam.p
    val = zeta_eval(fam, 1, 0, n, order, precision=n + 3)
    ctx = PrimeContext(p, n + 3)
    gamma = gamma_p(ctx, fam.N, n + 1)
    direct_const = ctx.approx(p - 1) * gamma
    mod = p ** direct_const.precision
    direct = QSeries((direct_const.residue,) + (0,) * order, 1, mod) \
        + g0n_series(ctx, order).scale(p).reduce_mod(mod)
    target = ZetaValue(p, direct, -1, pole_order=1,
                       residue=Fraction(p - 1, p))
    miss = val.congruent(target, n - 2)
    detail = {"measure_constant": val.value.coeffs[0],
              "direct_constant": direct.coeffs[0],
              "p_scale": val.p_scale,
              "first_mismatch": miss}
    return CheckReport("zeta-pole-laurent",
                       {"p": p, "c": fam.c, "N": fam.N, "n": n,
                        "order": order},
                       miss is None and val.residue == Fraction(p - 1, p),
                       p ** (n - 2), detail)


def check_zeta_interpolates(fam: FamilyParams, k: int, n: int,
                            order: int = 60) -> CheckReport:
    """zeta_eval at (s, i) = (-k, k+1) meets the monomial-weight pipeline.

    The evaluation route goes through Teichmuller/principal decompositions
    and binomial series; the target comes from the exact Eisenstein side.
    Valuation v picked up by the regularization factors shifts the
    comparison to mod p^(n-v) via the value's p_scale.
    """
    if k == 1:
        raise DomainError("k = 1 is the exceptional weight")
    val = zeta_eval(fam, -k, k + 1, n, order)
    target = p_stabilize(eisenstein_g(k + 1, order), fam.p, k + 1)
    e = n + val.p_scale
    miss = val.congruent_to_exact(target, e)
    detail = {"p_scale": val.p_scale, "first_mismatch": miss}
    return CheckReport("zeta-eval-interpolates",
                       {"p": fam.p, "c": fam.c, "N": fam.N, "k": k, "n": n,
                        "order": order},
                       miss is None, fam.p ** e, detail)


def check_pair_independence(fam_a: FamilyParams, fam_b: FamilyParams, s,
                            i: int, n: int, order: int = 60) -> CheckReport:
    """Two admissible (c, N) pairs give the same zeta value mod p^(n-2)."""
    if fam_a.p != fam_b.p:
        raise DomainError("pairs must share the prime")
    va = zeta_eval(fam_a, s, i, n, order)
    vb = zeta_eval(fam_b, s, i, n, order)
    miss = va.congruent(vb, n - 2)
    detail = {"scale_a": va.p_scale, "scale_b": vb.p_scale,
              "first_mismatch": miss}
    return CheckReport("zeta-pair-independence",
                       {"p": fam_a.p, "pair_a": (fam_a.c, fam_a.N),
                        "pair_b": (fam_b.c, fam_b.N), "s": str(s), "i": i,
                        "n": n, "order": order},
                       miss is None, fam_a.p ** (n - 2), detail)
