"""Eisenstein series, eta quotients, the J function, and divisor sums.

Normalization: weight-k Eisenstein constructors return series scaled so all
coefficients are exact rationals/cyclotomics.

* `eisenstein(k)` is E_k = G_k / (2 zeta(k)) = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
* `twisted_eisenstein(...)` is Ghat_k = ((k-1)!/(2 pi i)^k) G_k((theta,phi),tau).

Both scalars are homogeneous in every identity checked downstream (Hecke
eigenvalue and algebra relations), so nothing is lost by normalizing.  The
untwisted reduction is Ghat_k((1,1)) = -(B_k/k) E_k.

The twisted q-expansion comes from Lipschitz summation of each lattice row:
for Im z > 0, 0 <= lam < 1 and k >= 2,

    sum_{n in Z} e^(2 pi i n lam) / (z+n)^k
        = ((-2 pi i)^k / (k-1)!) sum_{x in Z - lam, x > 0} x^(k-1) e^(2 pi i x z),

and the m = 0 row is the Fourier expansion of a Bernoulli polynomial:
sum_{n != 0} e^(2 pi i n lam)/n^k = -(2 pi i)^k B_k({lam}) / k!.
`twisted_eisenstein_numeric` is the independent lattice-sum oracle used to
validate the expansion.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cyclotomic import Cyc, ONE
from .errors import GradingError, NormalizationError
from .series import FracSeries


def divisor_list(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def sigma(k: int, n: int) -> Fraction:
    """Divisor power sum sigma_k(n) = sum_{d | n} d^k, exact."""
    if n < 1:
        raise ValueError("sigma needs n >= 1")
    return sum((Fraction(d) ** k for d in divisor_list(n)), Fraction(0))


def sigma_complex(k: complex, n: int) -> complex:
    """sigma_k(n) for complex k via the principal branch d^k = e^(k ln d)."""
    if n < 1:
        raise ValueError("sigma needs n >= 1")
    return sum(cmath.exp(k * math.log(d)) for d in divisor_list(n))


@lru_cache(maxsize=None)
def bernoulli_number(k: int) -> Fraction:
    """B_k with B_1 = -1/2, via the defining recurrence."""
    if k == 0:
        return Fraction(1)
    total = Fraction(0)
    for j in range(k):
        total += math.comb(k + 1, j) * bernoulli_number(j)
    return -total / (k + 1)


def bernoulli_polynomial(k: int, x: Fraction) -> Fraction:
    """B_k(x) at an exact rational argument."""
    x = Fraction(x)
    return sum(
        (math.comb(k, j) * bernoulli_number(j) * x ** (k - j) for j in range(k + 1)),
        Fraction(0),
    )


def eisenstein(k: int, order: int) -> FracSeries:
    """Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.

    Weight tag k; known through q^order.
    """
    if k < 4 or k % 2:
        raise NormalizationError("eisenstein needs even weight k >= 4")
    factor = Fraction(-2 * k) / bernoulli_number(k)
    coeffs: dict[int, Cyc] = {0: ONE}
    for n in range(1, order + 1):
        coeffs[n] = Cyc.rational(factor * sigma(k - 1, n))
    return FracSeries(1, coeffs, order + 1, k)


def jfunction(order: int) -> FracSeries:
    """J = 1728 E4^3/(E4^3 - E6^2) - 744 = q^-1 + 196884 q + ... (c(0) = 0)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    work = order + 3
    e4 = eisenstein(4, work).with_weight(0)
    e6 = eisenstein(6, work).with_weight(0)
    e4c = e4 * e4 * e4
    disc = e4c - e6 * e6
    j = (e4c * disc.inverse()).scale(1728) - FracSeries.constant(744)
    return j.truncate(order + 1)


@dataclass(frozen=True)
class EtaQuotientSpec:
    """Product of eta(a*tau)^e factors plus a constant shift."""

    factors: tuple[tuple[Fraction, int], ...]
    constant_shift: Fraction = field(default_factory=lambda: Fraction(0))

    @staticmethod
    def make(factors, constant_shift=0) -> EtaQuotientSpec:
        return EtaQuotientSpec(
            tuple((Fraction(a), int(e)) for a, e in factors), Fraction(constant_shift)
        )

    def grading(self) -> int:
        m = 1
        for a, _ in self.factors:
            d = (a / 24).denominator
            m = m * d // math.gcd(m, d)
        return m

    def leading_exponent(self) -> Fraction:
        return sum((a * e for a, e in self.factors), Fraction(0)) / 24


def eta_quotient(spec: EtaQuotientSpec, order: int) -> FracSeries:
    """Exact expansion of prod eta(a tau)^e + shift through q^order."""
    bound = Fraction(order) + 1
    result = FracSeries.one()
    for a, e in spec.factors:
        a = Fraction(a)
        if a <= 0:
            raise GradingError("eta scales must be positive")
        # eta(a tau) = q^(a/24) prod (1 - q^(a n)); expand the product part
        # far enough that the final q^(lead) shift still reaches `bound`.
        prod_bound = bound - spec.leading_exponent() + abs(e) * a
        prod = FracSeries.one()
        n = 1
        while a * n < prod_bound:
            prod = (prod * FracSeries.from_terms({0: 1, a * n: -1})).truncate(prod_bound)
            n += 1
        prod = prod.truncate(prod_bound)
        block = prod.pow(e, high_exponent=prod_bound)
        result = result * block.shift(a * e / 24)
    result = result.truncate(bound)
    if spec.constant_shift:
        result = result + FracSeries.constant(spec.constant_shift)
    return result


def twisted_eisenstein(k: int, n_order: int, i: int, j: int, order: int) -> FracSeries:
    """Ghat_k((zeta^i, zeta^j), tau), zeta = exp(2 pi i/N), N = n_order.

    Exact series with grading N and coefficients in Q(zeta_N), known through
    q^order; weight tag k.  Derived by Lipschitz summation (module docstring)
    and validated against `twisted_eisenstein_numeric`.
    """
    N = n_order
    if N < 1:
        raise ValueError("twist order must be positive")
    i %= N
    j %= N
    if k < 3:
        raise NormalizationError("twisted Eisenstein needs k >= 3 (use eisenstein below that)")
    if k == 3 and i == 0 and j == 0:
        raise NormalizationError("k = 3 needs a nontrivial twist")
    lam = Fraction(j, N)
    coeffs: dict[int, Cyc] = {}
    const = -bernoulli_polynomial(k, lam) / k
    if const:
        coeffs[0] = Cyc.rational(const)
    sign = -1 if k % 2 else 1
    high = N * order + 1

    def add_term(num: int, value: Cyc):
        if num < high and value:
            coeffs[num] = coeffs.get(num, Cyc.rational(0)) + value

    m = 1
    while True:
        # +m rows: x in Z - lam, x > 0; coefficient (-1)^k theta^m x^(k-1).
        # -m rows: x in Z + lam, x > 0; coefficient theta^(-m) x^(k-1).
        base_plus = N - j if j else N  # numerator of smallest x in Z - lam
        base_minus = j if j else N  # numerator of smallest x in Z + lam
        if m * min(base_plus, base_minus) >= high:
            break
        theta_p = Cyc.root(N, (i * m) % N)
        theta_m = Cyc.root(N, (-i * m) % N)
        r = 0
        while True:
            xnum = base_plus + r * N
            if m * xnum >= high:
                break
            xpow = Fraction(xnum, N) ** (k - 1)
            add_term(m * xnum, theta_p * (sign * xpow))
            r += 1
        r = 0
        while True:
            xnum = base_minus + r * N
            if m * xnum >= high:
                break
            xpow = Fraction(xnum, N) ** (k - 1)
            add_term(m * xnum, theta_m * xpow)
            r += 1
        m += 1
    return FracSeries(N, coeffs, high, k, pin_grading=True)


def twisted_eisenstein_numeric(
    k: int, theta: complex, phi: complex, tau: complex, cutoff: int = 600
) -> complex:
    """Raw lattice sum over the box |m|,|n| <= cutoff excluding the origin.

    Partial-sum error is O(cutoff^(2-k)); this is the independent oracle for
    the exact expansion (compare after the (k-1)!/(2 pi i)^k normalization).
    """
    if k < 3:
        raise ValueError("lattice sum needs k >= 3 for absolute convergence")
    rng = np.arange(-cutoff, cutoff + 1)
    mm, nn = np.meshgrid(rng, rng, indexing="ij")
    denom = (mm * complex(tau) + nn).astype(complex) ** k
    origin = (mm == 0) & (nn == 0)
    denom[origin] = 1.0
    weights = (complex(theta) ** mm) * (complex(phi) ** nn)
    weights[origin] = 0.0
    return complex(np.sum(weights / denom))


def twisted_normalization(k: int) -> complex:
    """The scalar (k-1)!/(2 pi i)^k relating the raw lattice sum to Ghat_k."""
    return math.factorial(k - 1) / (2j * math.pi) ** k


def untwisted_scalar(k: int) -> Fraction:
    """Ghat_k((1,1)) = untwisted_scalar(k) * E_k, namely -B_k/k."""
    return -bernoulli_number(k) / k
