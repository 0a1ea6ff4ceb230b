"""Truncated q-expansions and the weight-one Eisenstein coefficient systems.

The central objects are the divisor-sum coefficients

  sigma^(k)_{a,n}(m) = c^2 S(a) - c^2 N^(k+1) S(a/N) - c^(k+1) S(a/c)
                       + (cN)^(k+1) S(a/cN),
  S(b) = sum over nonzero d | m, d = b mod p^n, of sgn(d) d^k,

where d runs over BOTH signs (divisors of m in Z), and the m = 0 value is
the coset moment int_{a+p^n} x^k dmu_{c,N}.  Their generating series

  phi^(k)_{a,n}(q)  = sum_m sigma^(k)_{a,n}(m) q^m          (exponents in Z)
  psi^(k)_{a,n}(q)  = same coefficients on exponents m / p^n

are the level-p^n Eisenstein family; classical normalizations used for the
congruence targets:

  (k-1)! G_k(q) = zeta(1-k) [k>1] + sum_m q^m sum_{d|m} sgn(d) d^(k-1).

All series are plain coefficient tuples; `denom` scales exponents (q^(m/denom))
and `modulus` marks residue coefficients (None = exact Fraction/int).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .kl import kl_coset_moment, kl_moment_target, kl_period, zeta_neg
from .padic import DomainError, PAdicApprox, PrimeContext
from .report import CheckReport

__all__ = [
    "QSeries",
    "FamilyParams",
    "qseries_congruent",
    "sigma_coeff",
    "sigma_family_table",
    "phi_series",
    "psi_series",
    "eisenstein_g",
    "p_stabilize",
    "dagger",
    "delta_p_series",
    "g0n_series",
    "hasse_unit_series",
    "check_weight_congruence",
    "check_sigma_distribution",
    "check_phi_rescaling",
    "check_level_zero_gk",
]


@dataclass(frozen=True)
class QSeries:
    """sum_{m=0}^{order} coeffs[m] q^(m/denom), truncated inclusively.

    Coefficients are exact (Fraction/int, modulus None) or residues mod the
    stated modulus.  Binary operations insist on a common denom and, for
    residues, a common modulus; exact operands are reduced into the other
    side's modulus on the fly.
    """

    coeffs: tuple
    denom: int = 1
    modulus: int | None = None

    def __post_init__(self):
        if self.denom < 1:
            raise DomainError("denom must be >= 1")
        if self.modulus is not None and self.modulus < 2:
            raise DomainError("modulus must be >= 2")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    # -- coefficient-domain plumbing --------------------------------------

    def _align(self, other: "QSeries") -> tuple:
        if self.denom != other.denom:
            raise DomainError(f"exponent denominators differ: {self.denom} vs "
                              f"{other.denom}")
        if self.modulus is not None and other.modulus is not None:
            if self.modulus != other.modulus:
                raise DomainError("residue moduli differ")
            return self.coeffs, other.coeffs, self.modulus
        if self.modulus is not None:
            return self.coeffs, _reduce_tuple(other.coeffs, self.modulus), self.modulus
        if other.modulus is not None:
            return _reduce_tuple(self.coeffs, other.modulus), other.coeffs, other.modulus
        return self.coeffs, other.coeffs, None

    def reduce_mod(self, modulus: int) -> "QSeries":
        return QSeries(_reduce_tuple(self.coeffs, modulus), self.denom, modulus)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        a, b, mod = self._align(other)
        n = min(len(a), len(b))
        if mod is None:
            return QSeries(tuple(a[i] + b[i] for i in range(n)), self.denom)
        return QSeries(tuple((a[i] + b[i]) % mod for i in range(n)), self.denom, mod)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + other.scale(-1)

    def __mul__(self, other: "QSeries") -> "QSeries":
        a, b, mod = self._align(other)
        n = min(len(a), len(b))
        out = [0] * n
        for i in range(n):
            ai = a[i]
            if ai:
                for j in range(n - i):
                    out[i + j] += ai * b[j]
        if mod is None:
            return QSeries(tuple(out), self.denom)
        return QSeries(tuple(v % mod for v in out), self.denom, mod)

    def scale(self, c) -> "QSeries":
        if isinstance(c, PAdicApprox):
            mod = c.ctx.p ** c.precision
            if self.modulus is not None:
                if self.modulus % mod != 0 and mod % self.modulus != 0:
                    raise DomainError("incompatible moduli")
                mod = min(mod, self.modulus)
            return QSeries(tuple(v * c.residue % mod for v in
                                 _reduce_tuple(self.coeffs, mod)),
                           self.denom, mod)
        if self.modulus is None:
            return QSeries(tuple(v * c for v in self.coeffs), self.denom)
        return QSeries(tuple(v * c % self.modulus for v in self.coeffs),
                       self.denom, self.modulus)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction, PAdicApprox)):
            return self.scale(c)
        return NotImplemented

    def truncate(self, order: int) -> "QSeries":
        return QSeries(self.coeffs[:order + 1], self.denom, self.modulus)

    def substitute_q_power(self, r: int) -> "QSeries":
        """q -> q^r, same truncation order (tail coefficients all known)."""
        out = [0] * len(self.coeffs)
        for m in range(0, len(self.coeffs), r):
            out[m] = self.coeffs[m // r]
        return QSeries(tuple(out), self.denom, self.modulus)

    def with_denom(self, denom: int) -> "QSeries":
        return QSeries(self.coeffs, denom, self.modulus)

    # -- evaluation and serialization --------------------------------------

    def evaluate_at_root(self, w: complex) -> complex:
        """Value at q^(1/denom) = w, coefficients coerced to floats."""
        if self.modulus is not None:
            raise DomainError("cannot evaluate residue coefficients numerically")
        total = 0j
        wp = 1.0 + 0j
        for c in self.coeffs:
            total += float(c) * wp
            wp *= w
        return total

    def to_json(self) -> dict:
        def fmt(v):
            if isinstance(v, Fraction) and v.denominator != 1:
                return f"{v.numerator}/{v.denominator}"
            return str(int(v))
        return {"denom": self.denom,
                "coeffs": [[m, fmt(c)] for m, c in enumerate(self.coeffs)],
                "modulus": "exact" if self.modulus is None else str(self.modulus)}


def _reduce_tuple(coeffs, modulus: int) -> tuple:
    out = []
    for v in coeffs:
        fr = Fraction(v)
        if fr.denominator == 1:
            out.append(fr.numerator % modulus)
        else:
            out.append(fr.numerator * pow(fr.denominator, -1, modulus) % modulus)
    return tuple(out)


def qseries_congruent(f: QSeries, g: QSeries, p: int, e: int) -> int | None:
    """Index of the first coefficient where f != g mod p^e, else None."""
    if f.denom != g.denom:
        raise DomainError("exponent denominators differ")
    mod = p ** e
    n = min(len(f.coeffs), len(g.coeffs))
    for m in range(n):
        a, b = f.coeffs[m], g.coeffs[m]
        if f.modulus is not None and f.modulus % mod != 0:
            raise DomainError("lhs modulus too small for the comparison")
        if g.modulus is not None and g.modulus % mod != 0:
            raise DomainError("rhs modulus too small for the comparison")
        d = (Fraction(a) if f.modulus is None else Fraction(int(a))) \
            - (Fraction(b) if g.modulus is None else Fraction(int(b)))
        if d.denominator % p == 0:
            raise DomainError(f"coefficient {m}: difference not p-integral")
        if d.numerator % mod != 0:
            return m
    return None


# ---------------------------------------------------------------------------
# sigma coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyParams:
    """(p, c, N) with the usual coprimality; bundled to cut arg noise."""
    p: int
    c: int
    N: int

    def __post_init__(self):
        if self.c < 2 or self.N < 2 or gcd(self.c, self.p) != 1 \
                or gcd(self.N, self.p) != 1 or gcd(self.c, self.N) != 1:
            raise DomainError("need c, N >= 2, pairwise coprime and prime to p")


def sigma_coeff(fam: FamilyParams, a: int, n: int, k: int, m: int,
                m0_riemann_extra: int = 2) -> Fraction:
    """sigma^(k)_{a,n}(m); the m = 0 column is the KL coset moment.

    For m = 0, k >= 1, n >= 1 the value is produced as a refined Riemann
    sum at level n + m0_riemann_extra (a rational approximation accurate
    mod p^(n + extra)); at n = 0 the exact interpolation target is used.
    Pass m0_riemann_extra=None to use the exact Bernoulli-polynomial coset
    moment instead (cross-validated against the Riemann route in tests).
    """
    p, c, N = fam.p, fam.c, fam.N
    if m < 0:
        raise DomainError("m >= 0")
    if m == 0:
        if k == 0:
            return kl_period(p, c, N, a, n)
        if n == 0:
            return kl_moment_target(c, N, k)
        if m0_riemann_extra is None:
            return kl_coset_moment(p, c, N, a, n, k)
        lvl = n + m0_riemann_extra
        q, Q = p ** n, p ** lvl
        return sum(Fraction(b ** k) * kl_period(p, c, N, b, lvl)
                   for b in range(a % q, Q, q))
    q = p ** n
    ai = a % q
    total = 0
    filters = ((c * c, ai), (-c * c * N ** (k + 1), ai * pow(N, -1, q) % q if n else 0),
               (-c ** (k + 1), ai * pow(c, -1, q) % q if n else 0),
               ((c * N) ** (k + 1), ai * pow(c * N, -1, q) % q if n else 0))
    for d in range(1, m + 1):
        if m % d == 0:
            for dd in (d, -d):
                term = (1 if dd > 0 else -1) * dd ** k
                for coef, target in filters:
                    if dd % q == target:
                        total += coef * term
    return Fraction(total)


def sigma_family_table(fam: FamilyParams, n: int, k: int, order: int,
                       m0_riemann_extra: int | None = 2) -> list[list[Fraction]]:
    """All sigma^(k)_{a,n}(m) for a < p^n, m <= order, by divisor bucketing.

    One pass over (d, sign, filter) per m hits every a at once: the work is
    O(order * divisors * 8) instead of p^n times the single-a cost.
    """
    p, c, N = fam.p, fam.c, fam.N
    q = p ** n
    table = [[Fraction(0)] * (order + 1) for _ in range(q)]
    for a in range(q):
        table[a][0] = sigma_coeff(fam, a, n, k, 0, m0_riemann_extra)
    mults = ((c * c, 1), (-c * c * N ** (k + 1), N),
             (-c ** (k + 1), c), ((c * N) ** (k + 1), c * N))
    for m in range(1, order + 1):
        for d in range(1, m + 1):
            if m % d == 0:
                for dd in (d, -d):
                    term = (1 if dd > 0 else -1) * dd ** k
                    for coef, b in mults:
                        a = dd * b % q
                        table[a][m] += coef * term
    return table


def phi_series(fam: FamilyParams, a: int, n: int, k: int, order: int,
               m0_riemann_extra: int | None = 2) -> QSeries:
    """phi^(k)_{a,n} as an exact-coefficient series on integer exponents."""
    return QSeries(tuple(sigma_coeff(fam, a, n, k, m, m0_riemann_extra)
                         for m in range(order + 1)))


def psi_series(fam: FamilyParams, a: int, n: int, k: int, order: int,
               m0_riemann_extra: int | None = 2) -> QSeries:
    """Same coefficients on exponents m / p^n."""
    return phi_series(fam, a, n, k, order, m0_riemann_extra).with_denom(fam.p ** n)


# ---------------------------------------------------------------------------
# classical Eisenstein series and friends
# ---------------------------------------------------------------------------


def eisenstein_g(k: int, order: int) -> QSeries:
    """(k-1)! G_k normalization: zeta(1-k) [k>1] + signed divisor sums.

    Odd k >= 3 and the constant-free k = 1 come out identically zero; even
    k gives the familiar 2 sigma_{k-1}(m) coefficients.
    """
    if k < 1:
        raise DomainError("weight must be >= 1")
    coeffs = [zeta_neg(k - 1) if k > 1 else Fraction(0)]
    for m in range(1, order + 1):
        total = 0
        for d in range(1, m + 1):
            if m % d == 0:
                total += d ** (k - 1)
                total -= (-1) ** (k - 1) * d ** (k - 1)
        coeffs.append(Fraction(total))
    return QSeries(tuple(coeffs))


def p_stabilize(f: QSeries, p: int, weight: int) -> QSeries:
    """f(q) - p^(weight-1) f(q^p)."""
    return f - f.substitute_q_power(p).scale(p ** (weight - 1))


def dagger(f: QSeries, p: int) -> QSeries:
    """f(q^p) on integer exponents (denom must be 1)."""
    if f.denom != 1:
        raise DomainError("dagger wants integer exponents")
    return f.substitute_q_power(p)


def delta_p_series(p: int, order: int, modulus: int | None = None) -> QSeries:
    """disc(q)^p / disc(q^p) = prod (1-q^m)^(24p) / (1-q^(pm))^24, exactly.

    The unit-root normalizer: congruent to 1 mod p in Z[[q]].  Exact
    integer coefficients unless a modulus is requested.
    """
    one = [1] + [0] * order

    def mul(f, g):
        out = [0] * (order + 1)
        for i, fi in enumerate(f):
            if fi:
                for j in range(order + 1 - i):
                    gj = g[j]
                    if gj:
                        out[i + j] += fi * gj
        return out

    from math import comb
    num = one[:]
    for m in range(1, order + 1):
        f = [0] * (order + 1)
        for i in range(order // m + 1):
            if i > 24 * p:
                break
            f[i * m] = (-1) ** i * comb(24 * p, i)
        num = mul(num, f)
    den = one[:]
    for m in range(1, order // p + 1):
        f = [0] * (order + 1)
        for i in range(order // (p * m) + 1):
            if i > 24:
                break
            f[i * p * m] = (-1) ** i * comb(24, i)
        den = mul(den, f)
    inv = [0] * (order + 1)
    inv[0] = 1
    for m in range(1, order + 1):
        inv[m] = -sum(den[j] * inv[m - j] for j in range(1, m + 1))
    out = mul(num, inv)
    series = QSeries(tuple(out))
    return series if modulus is None else series.reduce_mod(modulus)


def g0n_series(ctx: PrimeContext, order: int, precision: int | None = None,
               route: str = "divisor") -> QSeries:
    """The weight-0 logarithmic series -(1/12p) log delta-p, mod p^precision.

    Two independent routes, compared in the tests and by the built-in
    self-check of the CLI:

    * "divisor": sum_{m>=1} q^m sum_{d|m, p∤d, both signs} sgn(d)/d
      (p-deprived signed divisor sums of weight -1);
    * "log": expand log(1 + pU)/(12p) with delta-p = 1 + pU exactly.

    Constant term 0; coefficients are p-adic residues.
    """
    p = ctx.p
    T = ctx.M if precision is None else precision
    mod = p ** T
    if route == "divisor":
        coeffs = [0]
        for m in range(1, order + 1):
            total = Fraction(0)
            for d in range(1, m + 1):
                if m % d == 0 and d % p != 0:
                    total += 2 * Fraction(1, d)  # d and -d contribute equally
            coeffs.append(total.numerator * pow(total.denominator, -1, mod) % mod)
        return QSeries(tuple(coeffs), 1, mod)
    if route != "log":
        raise DomainError(f"unknown route {route!r}")
    # -(1/12p) log(delta-p): delta-p = 1 + pU with U integral, so
    # log/(12p) = sum (-1)^(j-1) p^(j-1) U^j / (12 j), summed until the
    # p-power kills the term mod p^T.
    dp = delta_p_series(p, order)
    u_exact = [Fraction(c - (1 if m == 0 else 0), p)
               for m, c in enumerate(dp.coeffs)]
    for c in u_exact:
        if c.denominator != 1:
            raise ArithmeticError("delta-p != 1 mod p; normalizer broken")
    u = QSeries(tuple(int(c) for c in u_exact)).reduce_mod(mod)
    acc = QSeries(tuple([0] * (order + 1)), 1, mod)
    power = QSeries(tuple([1 % mod] + [0] * order), 1, mod)
    j = 1
    while (j - 1) - _vp_int(j, p) < T:
        power = power * u
        coef = Fraction((-1) ** (j - 1) * p ** (j - 1), 12 * j)
        acc = acc + power.scale(_reduce_p_fraction(coef, p, mod))
        j += 1
    return acc.scale(-1)


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n and n % p == 0:
        n //= p
        v += 1
    return v


def _reduce_p_fraction(fr: Fraction, p: int, mod: int) -> int:
    num, den = fr.numerator, fr.denominator
    v = _vp_int(den, p)
    if v:
        if num % p ** v:
            raise DomainError(f"{fr} is not p-integral")
        num //= p ** v
        den //= p ** v
    return num * pow(den, -1, mod) % mod


def hasse_unit_series(ctx: PrimeContext, n: int, order: int) -> QSeries:
    """The level-n unit-root normalizer as a q-series over Z/p^n: it is 1.

    Kept as an explicit object so the congruence checks can multiply by it
    literally; the delta-p and Eisenstein-power routes to it are asserted
    in the tests rather than baked in here.
    """
    mod = ctx.p ** n
    return QSeries(tuple([1 % mod] + [0] * order), 1, mod)


# ---------------------------------------------------------------------------
# structural checks on the sigma system
# ---------------------------------------------------------------------------


def check_weight_congruence(fam: FamilyParams, n: int, k: int, order: int,
                            table0=None, tablek=None) -> CheckReport:
    """a^k sigma_{a,n}(m) = sigma^(k)_{a,n}(m) mod p^n, all a and m <= order."""
    p = fam.p
    q = p ** n
    mod = p ** n
    t0 = table0 if table0 is not None else sigma_family_table(fam, n, 0, order)
    tk = tablek if tablek is not None else sigma_family_table(fam, n, k, order)
    witness = None
    for a in range(q):
        for m in range(order + 1):
            d = Fraction(a ** k) * t0[a][m] - tk[a][m]
            if d.denominator % p == 0 or d.numerator % mod != 0:
                witness = {"a": a, "m": m, "lhs": a ** k * t0[a][m], "rhs": tk[a][m]}
                break
        if witness:
            break
    return CheckReport(
        check="weight-congruence",
        params={"p": p, "c": fam.c, "N": fam.N, "n": n, "k": k, "order": order},
        passed=witness is None, modulus=f"{p}^{n}", witness=witness)


def check_sigma_distribution(fam: FamilyParams, t: int, k: int, order: int) -> CheckReport:
    """sum_b sigma^(k)_{a+b p^t, t+1}(m) = sigma^(k)_{a,t}(m), exactly.

    The m = 0 column uses the exact Bernoulli route on both sides (the
    Riemann approximations are only level-compatible mod p^(t+extra), while
    this identity is exact).
    """
    p = fam.p
    fine = sigma_family_table(fam, t + 1, k, order, m0_riemann_extra=None)
    coarse = sigma_family_table(fam, t, k, order, m0_riemann_extra=None)
    witness = None
    for a in range(p ** t):
        for m in range(order + 1):
            total = sum(fine[a + b * p ** t][m] for b in range(p))
            if total != coarse[a][m]:
                witness = {"a": a, "m": m, "refined": total, "coarse": coarse[a][m]}
                break
        if witness:
            break
    return CheckReport(
        check="sigma-distribution",
        params={"p": p, "c": fam.c, "N": fam.N, "t": t, "k": k, "order": order},
        passed=witness is None, modulus="exact", witness=witness)


def check_phi_rescaling(fam: FamilyParams, a: int, n: int, k: int,
                        order: int) -> CheckReport:
    """phi^(k)_{pa, n+1}(q) = p^k phi^(k)_{a,n}(q^p) (exact, all coefficients).

    At k = 0 this is the level-lowering identity on the nose; the p^k
    factor tracks the weight of the pushforward.
    """
    p = fam.p
    lhs = phi_series(fam, p * a, n + 1, k, order, m0_riemann_extra=None)
    rhs = phi_series(fam, a, n, k, order, m0_riemann_extra=None)
    rhs = dagger(rhs, p).scale(p ** k)
    witness = None
    for m in range(order + 1):
        if lhs.coeffs[m] != rhs.coeffs[m]:
            witness = {"m": m, "lhs": lhs.coeffs[m], "rhs": rhs.coeffs[m]}
            break
    return CheckReport(
        check="phi-rescaling",
        params={"p": p, "c": fam.c, "N": fam.N, "a": a, "n": n, "k": k},
        passed=witness is None, modulus="exact", witness=witness)


def check_level_zero_gk(fam: FamilyParams, k: int, order: int) -> CheckReport:
    """psi^(k)_{0,0} = (c^2 - c^(k+1))(1 - N^(k+1)) k! G_{k+1}, exact."""
    c, N = fam.c, fam.N
    lhs = psi_series(fam, 0, 0, k, order)
    pref = (c ** 2 - c ** (k + 1)) * (1 - N ** (k + 1))
    rhs = eisenstein_g(k + 1, order).scale(pref)
    witness = None
    for m in range(order + 1):
        if lhs.coeffs[m] != rhs.coeffs[m]:
            witness = {"m": m, "lhs": lhs.coeffs[m], "rhs": rhs.coeffs[m]}
            break
    return CheckReport(
        check="gk-normalization",
        params={"p": fam.p, "c": c, "N": N, "k": k, "order": order},
        passed=witness is None, modulus="exact", witness=witness)
