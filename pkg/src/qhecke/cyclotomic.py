"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as a vector of rationals on the power basis
1, z, ..., z^(phi(N)-1) of Q(zeta_N), z = exp(2*pi*i/N), reduced modulo
the N-th cyclotomic polynomial.  On construction every element is demoted
to its conductor (the smallest order d | N whose field contains it, with
rationals at order 1), so two equal values always have identical
(order, coeffs) representations and structural equality is exact equality.

Rationals are `fractions.Fraction`; everything here is exact.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import QheckeError

Rational = Fraction


def euler_phi(n: int) -> int:
    """Euler totient of n >= 1."""
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    """Positive divisors of n, sorted ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Exact division of integer polynomials (den monic); coefficients low-first.
    num = list(num)
    dn = len(den) - 1
    quot = [0] * max(len(num) - dn, 1)
    for i in range(len(num) - dn - 1, -1, -1):
        c = num[i + dn]
        if c:
            quot[i] = c
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant first) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    # x^n - 1 divided by the cyclotomic polynomials of all proper divisors.
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
        assert rem == [0]
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row t = integer coordinates of z^t on the power basis, for 0 <= t < n."""
    phi = euler_phi(n)
    cp = cyclotomic_polynomial(n)
    rows: list[tuple[int, ...]] = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        nxt = [0] + cur[:-1]
        lead = cur[-1]
        if lead:
            for j in range(phi):
                nxt[j] -= lead * cp[j]
        cur = nxt
    return tuple(rows)


@lru_cache(maxsize=None)
def _embedding_columns(d: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Column j = coordinates in Q(zeta_n) of zeta_d^j, for 0 <= j < phi(d)."""
    assert n % d == 0
    table = _power_table(n)
    step = n // d
    return tuple(table[(j * step) % n] for j in range(euler_phi(d)))


@lru_cache(maxsize=None)
def _demotion_solver(d: int, n: int):
    """Left inverse T of the embedding Q(zeta_d) -> Q(zeta_n), plus the columns.

    T is phi(d) x phi(n) with T.E = I; a vector v lies in the subfield iff
    E.(T.v) == v, in which case T.v gives its subfield coordinates.
    """
    cols = _embedding_columns(d, n)
    phi_d = len(cols)
    phi_n = len(cols[0])
    # Row-reduce [E | I]; E has full column rank so every column pivots and
    # the top phi_d rows of the augmented part form a left inverse.
    aug = [
        [Fraction(cols[j][i]) for j in range(phi_d)]
        + [Fraction(1 if k == i else 0) for k in range(phi_n)]
        for i in range(phi_n)
    ]
    row = 0
    for col in range(phi_d):
        pivot = next((r for r in range(row, phi_n) if aug[r][col]), None)
        if pivot is None:
            raise QheckeError("embedding matrix unexpectedly rank deficient")
        aug[row], aug[pivot] = aug[pivot], aug[row]
        f = aug[row][col]
        aug[row] = [a / f for a in aug[row]]
        for r in range(phi_n):
            if r != row and aug[r][col]:
                g = aug[r][col]
                aug[r] = [a - g * b for a, b in zip(aug[r], aug[row])]
        row += 1
    left_inv = tuple(tuple(aug[i][phi_d:]) for i in range(phi_d))
    return left_inv, cols


_ZERO = Fraction(0)


class Cyc:
    """An element of some Q(zeta_N), always stored at its conductor."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: tuple[Fraction, ...], *, _canonical: bool = False):
        if _canonical:
            self.order = order
            self.coeffs = coeffs
            return
        c = _canonicalize(order, coeffs)
        self.order = c.order
        self.coeffs = c.coeffs

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(value) -> Cyc:
        return Cyc(1, (Fraction(value),), _canonical=True)

    @staticmethod
    def root(n: int, t: int = 1) -> Cyc:
        """zeta_n^t, canonically reduced."""
        if n < 1:
            raise ValueError("root order must be positive")
        t %= n
        g = math.gcd(n, t) if t else n
        return _root_cached(n // g, t // g)

    @staticmethod
    def coerce(value) -> Cyc:
        if isinstance(value, Cyc):
            return value
        return Cyc.rational(value)

    # -- predicates --------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.order == 1

    def rational_value(self) -> Fraction:
        if self.order != 1:
            raise QheckeError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.order == 1 and self.coeffs[0].denominator == 1

    def __bool__(self) -> bool:
        return any(self.coeffs)

    # -- ring operations ---------------------------------------------------

    def promote(self, n: int) -> tuple[Fraction, ...]:
        """Coordinates of self in Q(zeta_n); self.order must divide n."""
        if self.order == n:
            return self.coeffs
        cols = _embedding_columns(self.order, n)
        phi_n = len(cols[0])
        out = [_ZERO] * phi_n
        for j, cj in enumerate(self.coeffs):
            if cj:
                col = cols[j]
                for i in range(phi_n):
                    if col[i]:
                        out[i] += cj * col[i]
        return tuple(out)

    def __add__(self, other) -> Cyc:
        other = Cyc.coerce(other)
        if self.order == 1 and other.order == 1:
            return Cyc(1, (self.coeffs[0] + other.coeffs[0],), _canonical=True)
        n = self.order * other.order // math.gcd(self.order, other.order)
        a = self.promote(n)
        b = other.promote(n)
        return _canonicalize(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> Cyc:
        return Cyc(self.order, tuple(-c for c in self.coeffs), _canonical=True)

    def __sub__(self, other) -> Cyc:
        return self + (-Cyc.coerce(other))

    def __rsub__(self, other) -> Cyc:
        return Cyc.coerce(other) + (-self)

    def __mul__(self, other) -> Cyc:
        other = Cyc.coerce(other)
        if self.order == 1:
            s = self.coeffs[0]
            if other.order == 1:
                return Cyc(1, (s * other.coeffs[0],), _canonical=True)
            if not s:
                return ZERO
            return Cyc(other.order, tuple(s * c for c in other.coeffs), _canonical=True)
        if other.order == 1:
            s = other.coeffs[0]
            if not s:
                return ZERO
            return Cyc(self.order, tuple(s * c for c in self.coeffs), _canonical=True)
        n = self.order * other.order // math.gcd(self.order, other.order)
        a = self.promote(n)
        b = other.promote(n)
        phi = len(a)
        prod = [_ZERO] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return _reduce_and_canonicalize(n, prod)

    __rmul__ = __mul__

    def inverse(self) -> Cyc:
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        if self.order == 1:
            return Cyc(1, (Fraction(1) / self.coeffs[0],), _canonical=True)
        # Extended Euclid against the cyclotomic polynomial in Q[x].
        n = self.order
        cp = [Fraction(c) for c in cyclotomic_polynomial(n)]
        a = list(self.coeffs)
        r0, r1 = cp, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            r1 = _poly_trim(r1)
            if len(r1) == 1:
                break
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        if not c:
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        inv = [x / c for x in s1]
        phi = euler_phi(n)
        inv += [_ZERO] * (2 * phi - len(inv))
        return _reduce_and_canonicalize(n, inv)

    def __truediv__(self, other) -> Cyc:
        return self * Cyc.coerce(other).inverse()

    def __rtruediv__(self, other) -> Cyc:
        return Cyc.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> Cyc:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> Cyc:
        """Complex conjugate (the Galois map z -> z^-1)."""
        return self.galois(-1)

    def galois(self, k: int) -> Cyc:
        """Apply z -> z^k; k must be coprime to the order."""
        n = self.order
        if n == 1:
            return self
        if math.gcd(k % n, n) != 1:
            raise QheckeError("galois exponent must be coprime to the order")
        table = _power_table(n)
        phi = len(self.coeffs)
        out = [_ZERO] * phi
        for j, cj in enumerate(self.coeffs):
            if cj:
                row = table[(j * k) % n]
                for i in range(phi):
                    if row[i]:
                        out[i] += cj * row[i]
        return _canonicalize(n, tuple(out))

    # -- numeric bridge ----------------------------------------------------

    def embed_complex(self, precision: int = 15) -> complex:
        """Embed via zeta_N -> exp(2*pi*i/N) as a double-precision complex.

        Accurate to ~10^-precision for precision <= 15 and coefficients of
        moderate size (the double mantissa is the hard ceiling).
        """
        if precision > 15:
            raise QheckeError("embed_complex supports at most 15 decimal digits")
        n = self.order
        total = 0j
        for j, cj in enumerate(self.coeffs):
            if cj:
                angle = 2.0 * math.pi * j / n
                total += float(cj) * complex(math.cos(angle), math.sin(angle))
        return total

    # -- comparisons, hashing, rendering ------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyc.rational(other)
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def render(self) -> str:
        """Canonical text form: `num/den*z^j` terms joined by `+`, zero is `0`."""
        terms = [
            f"{c.numerator}/{c.denominator}*z^{j}"
            for j, c in enumerate(self.coeffs)
            if c
        ]
        return "+".join(terms) if terms else "0"

    def render_at(self, order: int) -> str:
        """Canonical text form on the power basis of Q(zeta_order)."""
        if order % self.order:
            raise QheckeError(f"cannot render order-{self.order} element at order {order}")
        terms = [
            f"{c.numerator}/{c.denominator}*z^{j}"
            for j, c in enumerate(self.promote(order))
            if c
        ]
        return "+".join(terms) if terms else "0"

    def __str__(self) -> str:
        if self.order == 1:
            c = self.coeffs[0]
            return str(c.numerator) if c.denominator == 1 else str(c)
        return self.render() + f" (z=zeta_{self.order})"

    def __repr__(self) -> str:
        return f"Cyc({self.order}, {self.render()!r})"


def parse_cyc(text: str, order: int) -> Cyc:
    """Parse the canonical rendering back into an element of Q(zeta_order)."""
    text = text.strip()
    if text == "0":
        return ZERO
    phi = euler_phi(order)
    coeffs = [_ZERO] * phi
    last_j = -1
    for term in text.split("+"):
        try:
            frac, zpow = term.split("*z^")
            num_s, den_s = frac.split("/")
            num, den, j = int(num_s), int(den_s), int(zpow)
        except ValueError as exc:
            raise QheckeError(f"bad cyclotomic term {term!r}") from exc
        if den < 1 or math.gcd(abs(num), den) != 1 or num == 0:
            raise QheckeError(f"non-reduced rational in {term!r}")
        if not 0 <= j < phi:
            raise QheckeError(f"basis exponent {j} out of range for order {order}")
        if j <= last_j:
            raise QheckeError("cyclotomic terms must have strictly increasing exponents")
        last_j = j
        coeffs[j] = Fraction(num, den)
    return Cyc(order, tuple(coeffs))


# -- internals ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _root_cached(n: int, t: int) -> Cyc:
    if n == 1:
        return ONE
    phi = euler_phi(n)
    if t < phi:
        coeffs = tuple(Fraction(1) if i == t else _ZERO for i in range(phi))
    else:
        coeffs = tuple(Fraction(v) for v in _power_table(n)[t])
    return _canonicalize(n, coeffs)


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dn, 1)
    for i in range(len(num) - dn - 1, -1, -1):
        c = num[i + dn] / lead
        if c:
            quot[i] = c
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    return quot, _poly_trim(num)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _reduce_and_canonicalize(n: int, raw: list[Fraction]) -> Cyc:
    """Reduce a raw coefficient list (exponents 0..len-1) into Q(zeta_n)."""
    phi = euler_phi(n)
    folded = [_ZERO] * n
    for t, c in enumerate(raw):
        if c:
            folded[t % n] += c
    out = list(folded[:phi])
    table = _power_table(n)
    for t in range(phi, n):
        c = folded[t]
        if c:
            row = table[t]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return _canonicalize(n, tuple(out))


def _canonicalize(n: int, coeffs: tuple[Fraction, ...]) -> Cyc:
    """Demote a reduced coordinate vector to its conductor."""
    phi = euler_phi(n)
    if len(coeffs) != phi:
        raise QheckeError(f"expected {phi} coordinates for order {n}, got {len(coeffs)}")
    if n == 1:
        return Cyc(1, (Fraction(coeffs[0]),), _canonical=True)
    if not any(coeffs[1:]):
        return Cyc(1, (Fraction(coeffs[0]),), _canonical=True)
    for d in divisors(n)[1:-1]:
        left_inv, cols = _demotion_solver(d, n)
        cand = [
            sum((tk * ck for tk, ck in zip(trow, coeffs) if tk and ck), _ZERO)
            for trow in left_inv
        ]
        # Verify the candidate actually embeds back onto the full vector.
        ok = True
        for i in range(phi):
            s = _ZERO
            for j, cj in enumerate(cand):
                if cj and cols[j][i]:
                    s += cj * cols[j][i]
            if s != coeffs[i]:
                ok = False
                break
        if ok:
            return Cyc(d, tuple(cand), _canonical=True)
    return Cyc(n, tuple(Fraction(c) for c in coeffs), _canonical=True)


ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)
