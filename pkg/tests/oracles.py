"""Independent reference implementations used to freeze expected values.

Everything here is deliberately written from the definitions, without
importing the package under test, so the test suite compares two separate
routes to each number.  Run as a script to print the frozen constants.
"""

from __future__ import annotations

from fractions import Fraction


def vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("v_p(0) undefined here")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def teichmuller_iterate(x: int, p: int, M: int) -> int:
    """Stable value of repeated p-th powering mod p**M."""
    mod = p ** M
    y = x % mod
    for _ in range(M + 4):
        y_next = pow(y, p, mod)
        if y_next == y:
            return y
        y = y_next
    raise ArithmeticError("did not stabilize")


def log_by_limit(x: int, p: int, prec: int) -> int:
    """log_p of a 1-unit via (x^(p^k) - 1)/p^k, no series involved.

    The error term is p^k (log x)^2 / 2 + ..., so k = prec already gives
    the value mod p^prec for x = 1 mod p.
    """
    if x % p != 1:
        raise ValueError("need x = 1 mod p")
    k = prec
    big = p ** (2 * k + prec)
    t = (pow(x, p ** k, big) - 1) // p ** k
    return t % p ** prec


def binomial_power(u: int, s: int, p: int, prec: int) -> int:
    """(1-unit u)^s for integer s, the trivial reference: pow(u, s)."""
    if u % p != 1:
        raise ValueError("need u = 1 mod p")
    return pow(u, s, p ** prec)


def bernoulli_list(n_max: int) -> list[Fraction]:
    """B_0..B_n by the Akiyama-Tanigawa algorithm (B_1 = -1/2)."""
    out = []
    a = []
    for m in range(n_max + 1):
        a.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    # Akiyama-Tanigawa yields B_1 = +1/2; flip to the B(0) convention
    if n_max >= 1:
        out[1] = -out[1]
    return out


def zeta_neg_ref(k: int) -> Fraction:
    """zeta(-k) for k >= 0 via -B_{k+1}(1)/(k+1) = -(-1)^(k+1) B_{k+1}/(k+1)."""
    return -(-1) ** (k + 1) * bernoulli_list(k + 1)[k + 1] / (k + 1)


def signed_divisor_sum(m: int, k: int) -> int:
    """sum over all nonzero d | m (both signs) of sgn(d) d^k."""
    total = 0
    for d in range(1, m + 1):
        if m % d == 0:
            total += d ** k            # d > 0
            total -= (-1) ** k * d ** k  # sgn(-d) (-d)^k = -(-1)^k d^k
    return total


def sigma_brute(p: int, c: int, N: int, n: int, a: int, k: int, m: int) -> int:
    """Divisor-sum coefficient sigma^{(k)}_{a,n}(m) for m >= 1, from scratch.

    Runs over all nonzero integer divisors d of m, positive and negative,
    with the four congruence filters applied literally.
    """
    if m < 1:
        raise ValueError("brute oracle only covers m >= 1")
    q = p ** n
    ai = a % q
    inv_n = pow(N, -1, q)
    inv_c = pow(c, -1, q)
    inv_cn = pow(c * N, -1, q)
    total = 0
    divs = [d for d in range(1, m + 1) if m % d == 0]
    for d0 in divs:
        for d in (d0, -d0):
            sgn = 1 if d > 0 else -1
            term = sgn * d ** k
            if d % q == ai:
                total += c * c * term
            if d % q == ai * inv_n % q:
                total -= c * c * N ** (k + 1) * term
            if d % q == ai * inv_c % q:
                total -= c ** (k + 1) * term
            if d % q == ai * inv_cn % q:
                total += (c * N) ** (k + 1) * term
    return total


def mazur_period_ref(p: int, N: int, a: int, n: int) -> Fraction:
    """mu_N(a + p^n Z_p) from the fractional-part formula."""
    q = p ** n
    af = a % q
    anf = af * pow(N, -1, q) % q if n > 0 else 0
    return Fraction(af - N * anf, q) + Fraction(N - 1, 2)


def kl_period_combination_ref(p: int, c: int, N: int, a: int, n: int) -> Fraction:
    """KL measure of a coset as -c^2 mu_N + c (x -> x/c)_* mu_N + C delta_0."""
    q = p ** n
    af = a % q
    corr = Fraction((c * c - c) * (N - 1), 2)
    val = -c * c * mazur_period_ref(p, N, af, n)
    val += c * mazur_period_ref(p, N, af * pow(c, -1, q) % q if n > 0 else 0, n)
    if af == 0:
        val += corr
    return val


def delta_p_ratio_coeffs(p: int, order: int) -> list[int]:
    """Exact integer q-expansion of disc(q)^p / disc(q^p) through q^order.

    disc(q) = q prod (1-q^m)^24, so the ratio is
    prod (1-q^m)^(24 p) / prod (1-q^(p m))^24 with the q-power prefactors
    cancelling (q^p / q^p).
    """
    def poly_mul(f, g):
        out = [0] * (order + 1)
        for i, fi in enumerate(f):
            if fi:
                for j, gj in enumerate(g):
                    if i + j > order:
                        break
                    out[i + j] += fi * gj
        return out

    def one_minus_qm_pow(m, e):
        # (1 - q^m)^e truncated
        out = [0] * (order + 1)
        from math import comb
        for i in range(0, order // m + 1):
            if i > e:
                break
            out[i * m] = (-1) ** i * comb(e, i)
        return out

    num = [1] + [0] * order
    for m in range(1, order + 1):
        num = poly_mul(num, one_minus_qm_pow(m, 24 * p))
    den = [1] + [0] * order
    for m in range(1, order // p + 1):
        den = poly_mul(den, one_minus_qm_pow(p * m, 24))
    # invert den (constant term 1) and multiply
    inv = [0] * (order + 1)
    inv[0] = 1
    for m in range(1, order + 1):
        inv[m] = -sum(den[j] * inv[m - j] for j in range(1, m + 1))
    return poly_mul(num, inv)


if __name__ == "__main__":
    print("teichmuller(2, 5, 2) =", teichmuller_iterate(2, 5, 2))
    print("teichmuller(2, 5, 4) =", teichmuller_iterate(2, 5, 4))
    print("log_by_limit(6, 5, 3) =", log_by_limit(6, 5, 3))
    print("log_by_limit(6, 5, 3)/5 mod 25 =", log_by_limit(6, 5, 3) // 5 % 25)
    print("binomial_power(6, 2, 5, 3) =", binomial_power(6, 2, 5, 3))
    print("zeta(-3), zeta(-5), zeta(-7) =", zeta_neg_ref(3), zeta_neg_ref(5), zeta_neg_ref(7))
    print("sigma_{1,1}(1) at (5,2,3) =", sigma_brute(5, 2, 3, 1, 1, 0, 1))
    print("KL level-1 table:", [kl_period_combination_ref(5, 2, 3, a, 1) for a in range(5)])
    print("G_k (k=2) coefficients m=1..5:", [signed_divisor_sum(m, 1) for m in range(1, 6)])
    print("delta-p q^1 coefficient (p=5):", delta_p_ratio_coeffs(5, 2)[1])
