"""Exact p-adic scalar arithmetic with precision tracking.

Conventions used throughout the package:

* A context fixes an odd prime ``p >= 5`` and an ambient exponent ``M``;
  every scalar is a residue ``r`` in ``[0, p**M')`` together with the
  exponent ``M' <= M`` through which it is trusted.  Declared precision is
  a lower bound: arithmetic propagates the weakest input precision and
  never rounds silently.
* Division by ``p**j`` is performed only when the residue is exactly
  divisible, and costs ``j`` digits of precision.  Division by a non-unit
  scalar factors it as (unit) * p^v and requires the numerator to carry at
  least ``p**v``.
* ``decompose_unit`` splits a unit as omega(x) * <x> with omega(x) the
  Teichmüller representative (the limit of ``x**(p**k)``) and <x> = 1 mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

__all__ = [
    "DomainError",
    "PrecisionError",
    "PrimeContext",
    "PAdicApprox",
    "UnitDecomposition",
    "decompose_unit",
    "padic_log",
    "one_pth_log",
    "principal_power",
    "CyclotomicRing",
    "CyclotomicElement",
    "cyclo_eval",
]


class DomainError(ValueError):
    """Input lies outside the operation's stated domain."""


class PrecisionError(ArithmeticError):
    """Operation cannot be carried out at the available precision."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime p >= 5 together with the ambient working exponent M."""

    p: int
    M: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p) or self.p < 5:
            raise DomainError(f"need a prime p >= 5, got {self.p}")
        if self.M < 1:
            raise DomainError(f"need precision exponent M >= 1, got {self.M}")

    def modulus(self, precision: int | None = None) -> int:
        return self.p ** (self.M if precision is None else precision)

    def approx(self, value: Union[int, Fraction, "PAdicApprox"],
               precision: int | None = None) -> "PAdicApprox":
        """Embed an integer or p-integral rational at the given precision."""
        prec = self.M if precision is None else precision
        if isinstance(value, PAdicApprox):
            if value.ctx.p != self.p:
                raise DomainError("context mismatch")
            return value.reduce(min(prec, value.precision))
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
            v = 0
            while den % self.p == 0:
                den //= self.p
                v += 1
            if v:
                if num % self.p ** v != 0:
                    raise DomainError(f"{value} is not p-integral at p={self.p}")
                num //= self.p ** v
            mod = self.p ** prec
            return PAdicApprox(self, num * pow(den, -1, mod) % mod, prec)
        return PAdicApprox(self, value % self.p ** prec, prec)


@dataclass(frozen=True)
class PAdicApprox:
    """A residue mod p**precision, trusted through that precision."""

    ctx: PrimeContext
    residue: int
    precision: int

    def __post_init__(self) -> None:
        if not 0 <= self.precision <= self.ctx.M:
            raise DomainError(
                f"precision {self.precision} outside [0, {self.ctx.M}]")
        if not 0 <= self.residue < self.ctx.p ** self.precision or (
                self.precision == 0 and self.residue != 0):
            raise DomainError("residue not reduced to declared precision")

    # -- helpers ---------------------------------------------------------

    def _coerce(self, other) -> "PAdicApprox":
        if isinstance(other, PAdicApprox):
            if other.ctx.p != self.ctx.p:
                raise DomainError("context mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.approx(other, self.precision)
        return NotImplemented  # type: ignore[return-value]

    def reduce(self, precision: int) -> "PAdicApprox":
        if precision > self.precision:
            raise PrecisionError(
                f"cannot promote precision {self.precision} -> {precision}")
        return PAdicApprox(self.ctx, self.residue % self.ctx.p ** precision,
                           precision)

    def valuation(self) -> int:
        """v_p of the residue, capped at the precision (0 counts as 'full')."""
        if self.residue == 0:
            return self.precision
        v, r, p = 0, self.residue, self.ctx.p
        while r % p == 0:
            r //= p
            v += 1
        return v

    def is_unit(self) -> bool:
        return self.precision > 0 and self.residue % self.ctx.p != 0

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        prec = min(self.precision, o.precision)
        mod = self.ctx.p ** prec
        return PAdicApprox(self.ctx, (self.residue + o.residue) % mod, prec)

    __radd__ = __add__

    def __neg__(self):
        mod = self.ctx.p ** self.precision
        return PAdicApprox(self.ctx, -self.residue % mod, self.precision)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        prec = min(self.precision, o.precision)
        mod = self.ctx.p ** prec
        return PAdicApprox(self.ctx, self.residue * o.residue % mod, prec)

    __rmul__ = __mul__

    def unit_inverse(self) -> "PAdicApprox":
        if not self.is_unit():
            raise DomainError(f"{self} is not a unit")
        mod = self.ctx.p ** self.precision
        return PAdicApprox(self.ctx, pow(self.residue, -1, mod), self.precision)

    def times_p_power(self, j: int) -> "PAdicApprox":
        """Multiply by p**j; the absolute error scales too, so precision
        rises by j (capped at the ambient M)."""
        if j < 0:
            return self.divide_by_p_power(-j)
        prec = min(self.precision + j, self.ctx.M)
        return PAdicApprox(self.ctx,
                           self.residue * self.ctx.p ** j % self.ctx.p ** prec,
                           prec)

    def divide_by_p_power(self, j: int) -> "PAdicApprox":
        """Exact division by p**j; costs j digits of precision."""
        if j == 0:
            return self
        if j < 0 or j > self.precision:
            raise PrecisionError(f"cannot divide by p^{j} at precision "
                                 f"{self.precision}")
        pj = self.ctx.p ** j
        if self.residue % pj != 0:
            raise DomainError(f"residue {self.residue} not divisible by p^{j}")
        return PAdicApprox(self.ctx, self.residue // pj, self.precision - j)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        v = o.valuation()
        if v >= o.precision:
            raise DomainError("division by a scalar that is 0 to precision")
        unit = PAdicApprox(o.ctx, o.residue // o.ctx.p ** v, o.precision - v)
        num = self.reduce(min(self.precision, unit.precision + v))
        return num.divide_by_p_power(v) * unit.unit_inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return self.unit_inverse() ** (-k)
        mod = self.ctx.p ** self.precision
        return PAdicApprox(self.ctx, pow(self.residue, k, mod), self.precision)

    # -- comparisons, display, serialization ------------------------------

    def congruent(self, other, precision: int | None = None) -> bool:
        o = self._coerce(other)
        prec = min(self.precision, o.precision)
        if precision is not None:
            if precision > prec:
                raise PrecisionError(
                    f"congruence mod p^{precision} not decidable at "
                    f"precision {prec}")
            prec = precision
        mod = self.ctx.p ** prec
        return (self.residue - o.residue) % mod == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PAdicApprox)):
            try:
                return self.congruent(other)
            except DomainError:
                return False
        return NotImplemented

    def __hash__(self):
        # residues at different precisions that agree compare equal, so
        # hash only the context; these are not meant to be dict keys anyway
        return hash((self.ctx.p,))

    def __repr__(self) -> str:
        return f"{self.residue} mod {self.ctx.p}^{self.precision}"

    def to_json(self) -> dict:
        return {"residue": str(self.residue),
                "modulus": f"{self.ctx.p}^{self.precision}"}


@dataclass(frozen=True)
class UnitDecomposition:
    """x = teichmuller * principal with principal = 1 mod p."""

    teichmuller: PAdicApprox
    principal: PAdicApprox


def decompose_unit(x: PAdicApprox) -> UnitDecomposition:
    """Split a unit as omega(x) * <x>.

    omega(x) is computed as the stable value of repeated p-th powering,
    which converges in at most `precision` steps; we run a couple extra and
    assert stationarity rather than trust the count.
    """
    if not x.is_unit():
        raise DomainError(f"{x} is not a unit")
    p, prec = x.ctx.p, x.precision
    mod = p ** prec
    y = x.residue
    for _ in range(prec + 2):
        y_next = pow(y, p, mod)
        if y_next == y:
            break
        y = y_next
    else:
        raise ArithmeticError("Teichmüller iteration failed to stabilize")
    omega = PAdicApprox(x.ctx, y, prec)
    principal = x * omega.unit_inverse()
    return UnitDecomposition(omega, principal)


def padic_log(u: PAdicApprox) -> PAdicApprox:
    """Iwasawa logarithm of a unit: log of its principal part <u>.

    log(1+x) = sum (-1)^(j-1) x^j / j with v(x) >= 1; the series is summed
    with guard digits so the divisions by j are exact and cost nothing.
    """
    dec = decompose_unit(u)
    p, prec = u.ctx.p, dec.principal.precision
    x = (dec.principal.residue - 1) % p ** prec
    # j - v_p(j) >= prec kills all later terms; bound j generously.
    j_max = prec + 1
    while j_max - _vp(j_max, p) < prec:
        j_max += 1
    guard = 1
    while p ** guard <= j_max:
        guard += 1
    work = p ** (prec + guard)
    total = 0
    xj = 1
    for j in range(1, j_max + 1):
        xj = xj * x % work
        vj = _vp(j, p)
        term = xj // p ** vj * pow(j // p ** vj, -1, work) % work
        if j % 2 == 0:
            term = -term
        total += term
    return PAdicApprox(u.ctx, total % p ** prec, prec)


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def one_pth_log(x: PAdicApprox) -> PAdicApprox:
    """(1/p) * log(x) for x = 1 mod p; output precision drops by one."""
    if not x.is_unit() or x.residue % x.ctx.p != 1:
        raise DomainError(f"{x} is not = 1 mod p")
    return padic_log(x).divide_by_p_power(1)


def principal_power(u: PAdicApprox, s: Union[int, Fraction, PAdicApprox]) -> PAdicApprox:
    """<u>^s via the binomial series sum C(s,j) (u-1)^j, for u = 1 mod p.

    s may be any p-adic integer; C(s,j) is p-integral, so the series
    converges with term valuation >= j - v(j!) >= j (p-2)/(p-1).
    """
    if not u.is_unit() or u.residue % u.ctx.p != 1:
        raise DomainError(f"{u} is not = 1 mod p")
    p = u.ctx.p
    s_app = u.ctx.approx(s, u.precision) if not isinstance(s, PAdicApprox) else s
    prec = min(u.precision, s_app.precision)
    j_max = (prec * (p - 1)) // (p - 2) + 3
    guard = 2
    while p ** guard <= j_max:
        guard += 1
    # v(j!) <= (j_max - 1)/(p - 1) extra digits get consumed by the factorials
    guard += (j_max - 1) // (p - 1) + 1
    work = p ** (prec + guard)
    x = (u.residue - 1) % work
    s_res = s_app.residue
    total = 1
    term = 1  # C(s,0) x^0
    for j in range(1, j_max + 1):
        # term_j = term_{j-1} * (s - j + 1) * x / j, all exact in Z_p
        term = term * ((s_res - j + 1) % work) % work * x % work
        vj = _vp(j, p)
        if vj:
            if term % p ** vj != 0:
                raise ArithmeticError("binomial series division not exact")
            term //= p ** vj
        term = term * pow(j // p ** vj, -1, work) % work
        total = (total + term) % work
    return PAdicApprox(u.ctx, total % p ** prec, prec)


# ---------------------------------------------------------------------------
# Cyclotomic layer: Z[T] / (Phi_{p^n}(T), p^M) for n <= 2
# ---------------------------------------------------------------------------


class CyclotomicRing:
    """Z[T]/(Phi_{p^n}(T), p^M), T the image of a primitive p^n-th root.

    Phi_{p^n}(T) = sum_{j<p} T^(j p^(n-1)) and the degree is p^(n-1)(p-1).
    Only levels n = 1, 2 are supported; that is all the period extraction
    ever needs, and it keeps the reduction step trivially sparse.
    """

    def __init__(self, ctx: PrimeContext, level: int,
                 precision: int | None = None) -> None:
        if level not in (1, 2):
            raise DomainError(f"cyclotomic level must be 1 or 2, got {level}")
        self.ctx = ctx
        self.level = level
        self.precision = ctx.M if precision is None else precision
        if not 1 <= self.precision <= ctx.M:
            raise DomainError("bad ring precision")
        p = ctx.p
        self.stride = p ** (level - 1)
        self.degree = self.stride * (p - 1)
        self.order = p ** level
        self.modulus = p ** self.precision

    def _reduce_poly(self, coeffs: list[int]) -> tuple[int, ...]:
        """Long division by the sparse Phi_{p^n}; coeffs may have any length."""
        v = list(coeffs)
        if len(v) < self.degree:
            v += [0] * (self.degree - len(v))
        p, s, D = self.ctx.p, self.stride, self.degree
        for idx in range(len(v) - 1, D - 1, -1):
            c = v[idx]
            if c:
                v[idx] = 0
                base = idx - D
                for j in range(p - 1):
                    v[base + j * s] -= c
        return tuple(c % self.modulus for c in v[:D])

    def element(self, coeffs: Sequence[int]) -> "CyclotomicElement":
        return CyclotomicElement(self, self._reduce_poly(list(coeffs)))

    def zero(self) -> "CyclotomicElement":
        return CyclotomicElement(self, tuple([0] * self.degree))

    def from_int(self, c: int) -> "CyclotomicElement":
        vec = [0] * self.degree
        vec[0] = c % self.modulus
        return CyclotomicElement(self, tuple(vec))

    def root_power(self, j: int) -> "CyclotomicElement":
        """The reduced representative of T**j."""
        j %= self.order
        if j < self.degree:
            vec = [0] * self.degree
            vec[j] = 1
            return CyclotomicElement(self, tuple(vec))
        mono = [0] * (j + 1)
        mono[j] = 1
        return self.element(mono)


@dataclass(frozen=True)
class CyclotomicElement:
    ring: CyclotomicRing
    coeffs: tuple[int, ...]

    def __add__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        m = self.ring.modulus
        return CyclotomicElement(self.ring, tuple(
            (a + b) % m for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        m = self.ring.modulus
        return CyclotomicElement(self.ring, tuple(
            (a - b) % m for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        D = self.ring.degree
        prod = [0] * (2 * D - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return CyclotomicElement(self.ring, self.ring._reduce_poly(prod))

    def scale(self, c: int) -> "CyclotomicElement":
        m = self.ring.modulus
        return CyclotomicElement(self.ring, tuple(a * c % m for a in self.coeffs))

    def add_scalar(self, c: int) -> "CyclotomicElement":
        vec = list(self.coeffs)
        vec[0] = (vec[0] + c) % self.ring.modulus
        return CyclotomicElement(self.ring, tuple(vec))

    def as_scalar(self) -> int | None:
        """The constant coordinate, or None if any other coordinate survives."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def scalar_divided_by_p_power(self, j: int, ctx_precision: int | None = None) -> PAdicApprox:
        """Assert the element is scalar, divide it by p**j exactly.

        This is the extraction step of period recovery: Galois-stable sums
        land on the scalar line, and the declared precision drops by j.
        """
        c = self.as_scalar()
        if c is None:
            raise ArithmeticError("element is not a scalar; period sum is "
                                  "not Galois-stable at this precision")
        ring = self.ring
        pj = ring.ctx.p ** j
        if c % pj != 0:
            raise DomainError(f"scalar {c} not divisible by p^{j}")
        prec = ring.precision - j
        return PAdicApprox(ring.ctx, (c // pj) % ring.ctx.p ** prec, prec)


def cyclo_eval(coeffs: Sequence[int], z: CyclotomicElement) -> CyclotomicElement:
    """Evaluate sum_j coeffs[j] * z**j by Horner in the cyclotomic ring."""
    acc = z.ring.zero()
    for c in reversed(list(coeffs)):
        acc = (acc * z).add_scalar(c)
    return acc
