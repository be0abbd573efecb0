"""Truncated Laurent series in q^(1/m) and two-variable (p,q) series.

Truncation semantics are "unknown beyond the bound", never "zero beyond the
bound": a series stores an exclusive exponent bound `high` (in numerator
units) past which nothing is claimed, and every arithmetic result carries
the tightest bound its inputs justify.  `high=None` marks an entire object
(a polynomial or exact finite expansion) whose coefficients are all known.

Exponents are rationals num/m for a grading m; coefficients live in
cyclotomic fields (`Cyc`).  Comparisons report the exponent range on which
they are conclusive instead of silently treating missing data as zero.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import Cyc, ONE, ZERO
from .errors import GradingError, NormalizationError, TruncationError

_INF = None  # readability alias for "no truncation bound"


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class FracSeries:
    """A truncated Laurent series  sum_r c_r q^(r/m),  r integer."""

    __slots__ = ("grading", "weight", "coeffs", "high")

    def __init__(
        self,
        grading: int,
        coeffs: dict[int, Cyc],
        high: int | None = _INF,
        weight: int = 0,
        pin_grading: bool = False,
    ):
        if grading < 1:
            raise GradingError(f"grading must be positive, got {grading}")
        clean: dict[int, Cyc] = {}
        for num, c in coeffs.items():
            c = Cyc.coerce(c)
            if high is not None and num >= high:
                continue
            if c:
                clean[num] = c
        if not pin_grading:
            g = grading
            for num in clean:
                g = math.gcd(g, num)
                if g == 1:
                    break
            if g > 1:
                clean = {num // g: c for num, c in clean.items()}
                if high is not None:
                    high = _ceil_div(high, g)
                grading //= g
            elif not clean and grading > 1:
                if high is not None:
                    high = _ceil_div(high, grading)
                grading = 1
        self.grading = grading
        self.weight = weight
        self.coeffs = clean
        self.high = high

    # -- constructors --------------------------------------------------------

    @staticmethod
    def constant(value, weight: int = 0) -> FracSeries:
        return FracSeries(1, {0: Cyc.coerce(value)}, _INF, weight)

    @staticmethod
    def zero(weight: int = 0) -> FracSeries:
        return FracSeries(1, {}, _INF, weight)

    @staticmethod
    def one(weight: int = 0) -> FracSeries:
        return FracSeries.constant(1, weight)

    @staticmethod
    def qpow(exponent, weight: int = 0) -> FracSeries:
        """The monomial q^exponent for a rational exponent."""
        e = Fraction(exponent)
        return FracSeries(e.denominator, {e.numerator: ONE}, _INF, weight)

    @staticmethod
    def from_terms(
        terms: dict, high_exponent=None, weight: int = 0
    ) -> FracSeries:
        """Build from {exponent: coefficient} with rational exponents."""
        exps = {Fraction(e): Cyc.coerce(c) for e, c in terms.items()}
        m = 1
        for e in exps:
            m = m * e.denominator // math.gcd(m, e.denominator)
        if high_exponent is not None:
            hb = Fraction(high_exponent)
            m = m * hb.denominator // math.gcd(m, hb.denominator)
            high = hb.numerator * (m // hb.denominator)
        else:
            high = _INF
        return FracSeries(
            m,
            {e.numerator * (m // e.denominator): c for e, c in exps.items()},
            high,
            weight,
        )

    # -- structure -----------------------------------------------------------

    def bound(self) -> Fraction | None:
        """Exclusive exponent bound of knowledge (None when entire)."""
        if self.high is None:
            return None
        return Fraction(self.high, self.grading)

    def items(self) -> list[tuple[int, Cyc]]:
        return sorted(self.coeffs.items())

    def exponents(self) -> list[Fraction]:
        return [Fraction(n, self.grading) for n in sorted(self.coeffs)]

    def valuation(self) -> Fraction | None:
        """Smallest exponent with nonzero known coefficient, None if none."""
        if not self.coeffs:
            return None
        return Fraction(min(self.coeffs), self.grading)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, exponent) -> Cyc:
        """Coefficient at a rational exponent; raises beyond the bound."""
        e = Fraction(exponent)
        if self.high is not None and e >= self.bound():
            raise TruncationError(
                f"coefficient at q^{e} is beyond the truncation bound {self.bound()}"
            )
        num = e * self.grading
        if num.denominator != 1:
            return ZERO
        return self.coeffs.get(num.numerator, ZERO)

    def known(self, exponent) -> bool:
        e = Fraction(exponent)
        return self.high is None or e < self.bound()

    def regrade(self, m: int) -> FracSeries:
        """Re-express on a finer grid; m must be a multiple of the grading."""
        if m % self.grading:
            raise GradingError(f"cannot regrade {self.grading} -> {m}")
        f = m // self.grading
        if f == 1:
            return self
        return FracSeries(
            m,
            {num * f: c for num, c in self.coeffs.items()},
            _INF if self.high is None else self.high * f,
            self.weight,
            pin_grading=True,
        )

    def truncate(self, high_exponent) -> FracSeries:
        """Forget coefficients at exponents >= high_exponent."""
        hb = Fraction(high_exponent)
        if self.high is not None and self.bound() <= hb:
            return self
        m = self.grading * hb.denominator // math.gcd(self.grading, hb.denominator)
        g = self.regrade(m)
        return FracSeries(
            m, g.coeffs, hb.numerator * (m // hb.denominator), self.weight
        )

    def with_weight(self, weight: int) -> FracSeries:
        return FracSeries(self.grading, self.coeffs, self.high, weight, pin_grading=True)

    # -- ring operations -----------------------------------------------------

    def _common(self, other: FracSeries) -> tuple[FracSeries, FracSeries]:
        m = self.grading * other.grading // math.gcd(self.grading, other.grading)
        return self.regrade(m), other.regrade(m)

    def __add__(self, other) -> FracSeries:
        other = _coerce_series(other, self.weight)
        if self.weight != other.weight:
            raise GradingError(
                f"cannot add series of weights {self.weight} and {other.weight}"
            )
        a, b = self._common(other)
        high = _min_bound(a.high, b.high)
        coeffs = dict(a.coeffs)
        for num, c in b.coeffs.items():
            coeffs[num] = coeffs.get(num, ZERO) + c
        return FracSeries(a.grading, coeffs, high, self.weight)

    __radd__ = __add__

    def __neg__(self) -> FracSeries:
        return FracSeries(
            self.grading,
            {n: -c for n, c in self.coeffs.items()},
            self.high,
            self.weight,
            pin_grading=True,
        )

    def __sub__(self, other) -> FracSeries:
        return self + (-_coerce_series(other, self.weight))

    def __rsub__(self, other) -> FracSeries:
        return _coerce_series(other, self.weight) + (-self)

    def scale(self, value) -> FracSeries:
        c = Cyc.coerce(value)
        if not c:
            return FracSeries.zero(self.weight)
        return FracSeries(
            self.grading,
            {n: c * v for n, v in self.coeffs.items()},
            self.high,
            self.weight,
            pin_grading=True,
        )

    def shift(self, exponent) -> FracSeries:
        """Multiply by the monomial q^exponent."""
        e = Fraction(exponent)
        m = self.grading * e.denominator // math.gcd(self.grading, e.denominator)
        f = self.regrade(m)
        d = e.numerator * (m // e.denominator)
        return FracSeries(
            m,
            {n + d: c for n, c in f.coeffs.items()},
            _INF if f.high is None else f.high + d,
            self.weight,
        )

    def __mul__(self, other) -> FracSeries:
        if isinstance(other, (int, Fraction, Cyc)):
            return self.scale(other)
        a, b = self._common(other)
        high = _mul_bound(a, b)
        acc: dict[int, Cyc] = {}
        b_items = b.items()
        for n1, c1 in a.items():
            for n2, c2 in b_items:
                t = n1 + n2
                if high is not None and t >= high:
                    break
                prod = c1 * c2
                if prod:
                    cur = acc.get(t)
                    acc[t] = prod if cur is None else cur + prod
        return FracSeries(a.grading, acc, high, self.weight + other.weight)

    __rmul__ = __mul__

    def inverse(self, high_exponent=None) -> FracSeries:
        """Multiplicative inverse up to truncation.

        Entire inputs with infinitely many inverse terms need an explicit
        `high_exponent`; truncated inputs get the tightest justified bound.
        """
        if self.is_zero():
            raise NormalizationError("cannot invert a series with no known nonzero term")
        m = self.grading
        nums = sorted(self.coeffs)
        r0 = nums[0]
        lead = self.coeffs[r0]
        high = _INF if self.high is None else self.high - 2 * r0
        if high_exponent is not None:
            cap = Fraction(high_exponent)
            capnum = _ceil_div(cap.numerator * m, cap.denominator)
            high = capnum if high is None else min(high, capnum)
        if high is None:
            if len(nums) > 1:
                raise TruncationError(
                    "inverting an entire series needs an explicit high_exponent"
                )
            # Monomial: exact reciprocal.
            return FracSeries(
                m, {-r0: lead.inverse()}, _INF, -self.weight
            )
        inv_lead = lead.inverse()
        out: dict[int, Cyc] = {-r0: inv_lead}
        for t in range(-r0 + 1, high):
            s = ZERO
            for num in nums[1:]:
                gnum = t - (num - r0)
                if gnum < -r0:
                    break
                g = out.get(gnum)
                if g is not None and g:
                    s = s + self.coeffs[num] * g
            if s:
                out[t] = -(inv_lead * s)
        return FracSeries(m, out, high, -self.weight)

    def __pow__(self, exponent: int) -> FracSeries:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FracSeries.one(0)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def pow(self, exponent: int, high_exponent=None) -> FracSeries:
        if exponent < 0:
            return self.inverse(high_exponent) ** (-exponent)
        r = self ** exponent
        if high_exponent is not None:
            r = r.truncate(high_exponent)
        return r

    # -- exp / log -----------------------------------------------------------

    def exp(self, high_exponent=None) -> FracSeries:
        """Exponential of a series with strictly positive valuation."""
        if self.weight != 0:
            raise NormalizationError("exp is only defined for weight-0 series")
        if not self.is_zero() and self.valuation() <= 0:
            raise NormalizationError("exp needs a strictly positive valuation")
        high = self.bound()
        if high_exponent is not None:
            hb = Fraction(high_exponent)
            high = hb if high is None else min(high, hb)
        if high is None:
            if self.is_zero():
                return FracSeries.one(0)
            raise TruncationError("exp of an entire series needs an explicit high_exponent")
        work = self.truncate(high)
        result = FracSeries.one(0).truncate(high)
        term = result
        j = 1
        v = work.valuation()
        while not work.is_zero() and v * j < high:
            term = (term * work).scale(Fraction(1, j))
            if term.is_zero():
                break
            result = result + term
            j += 1
        return result

    def log(self, high_exponent=None) -> FracSeries:
        """Logarithm of a series with constant term 1."""
        if self.weight != 0:
            raise NormalizationError("log is only defined for weight-0 series")
        if self.coeff(0) != ONE:
            raise NormalizationError("log needs constant term exactly 1")
        u = self - FracSeries.one(0)
        if not u.is_zero() and u.valuation() <= 0:
            raise NormalizationError("log needs valuation 0 with constant term 1")
        high = u.bound()
        if high_exponent is not None:
            hb = Fraction(high_exponent)
            high = hb if high is None else min(high, hb)
        if high is None:
            if u.is_zero():
                return FracSeries.zero(0)
            raise TruncationError("log of an entire series needs an explicit high_exponent")
        u = u.truncate(high)
        result = FracSeries.zero(0).truncate(high)
        term = FracSeries.one(0).truncate(high)
        j = 1
        v = u.valuation() if not u.is_zero() else None
        while v is not None and v * j < high:
            term = term * u
            if term.is_zero():
                break
            result = result + term.scale(Fraction((-1) ** (j + 1), j))
            j += 1
        return result

    # -- substitutions -------------------------------------------------------

    def mobius(self, a: int, b: int, d: int) -> FracSeries:
        """The substitution tau -> (a*tau + b)/d on q = exp(2*pi*i*tau).

        Each term c q^(r/m) maps to c zeta^(r b) q^(r a / (m d)) with
        zeta = exp(2*pi*i/(m d)); the result is graded m*d and then
        canonicalized.
        """
        if a < 1 or d < 1:
            raise ValueError("mobius needs positive a and d")
        m = self.grading
        md = m * d
        out: dict[int, Cyc] = {}
        for num, c in self.coeffs.items():
            phase = Cyc.root(md, (num * b) % md)
            out[num * a] = c * phase
        high = _INF if self.high is None else self.high * a
        return FracSeries(md, out, high, self.weight)

    def phase_shift(self, steps: int = 1) -> FracSeries:
        """q^r -> exp(2*pi*i*r*steps) q^r; the tau -> tau + steps substitution."""
        return self.mobius(1, steps, 1)

    def scale_exponents(self, factor) -> FracSeries:
        """Substitute q -> q^factor for a positive rational factor."""
        f = Fraction(factor)
        if f <= 0:
            raise ValueError("exponent scale must be positive")
        m = self.grading * f.denominator
        num_f = f.numerator
        out = {n * num_f: c for n, c in self.coeffs.items()}
        high = _INF if self.high is None else self.high * num_f
        return FracSeries(m, out, high, self.weight)

    # -- numerics ------------------------------------------------------------

    def evaluate(self, tau: complex) -> complex:
        """Sum the known expansion at q = exp(2*pi*i*tau) (Im tau > 0)."""
        total = 0j
        m = self.grading
        for num, c in self.items():
            total += c.embed_complex() * cmath.exp(2j * cmath.pi * tau * num / m)
        return total

    # -- comparison & rendering -----------------------------------------------

    def matches(self, other: FracSeries) -> SeriesMatch:
        """Exact comparison on the intersection of known exponent ranges."""
        a, b = self._common(other)
        bound = _min_bound(a.high, b.high)
        nums = set(a.coeffs) | set(b.coeffs)
        for num in sorted(nums):
            if bound is not None and num >= bound:
                break
            ca = a.coeffs.get(num, ZERO)
            cb = b.coeffs.get(num, ZERO)
            if ca != cb:
                e = Fraction(num, a.grading)
                return SeriesMatch(False, _bound_frac(bound, a.grading), e, ca, cb)
        return SeriesMatch(True, _bound_frac(bound, a.grading), None, None, None)

    def __eq__(self, other) -> bool:
        """Structural equality: same content, bound, grading, weight."""
        if not isinstance(other, FracSeries):
            return NotImplemented
        return (
            self.grading == other.grading
            and self.weight == other.weight
            and self.coeffs == other.coeffs
            and self.high == other.high
        )

    def __str__(self) -> str:
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for num, c in self.items():
                e = Fraction(num, self.grading)
                if e == 0:
                    parts.append(f"({c})")
                elif e == 1:
                    parts.append(f"({c})*q")
                else:
                    parts.append(f"({c})*q^({e})")
            body = " + ".join(parts)
        tail = "" if self.high is None else f" + O(q^({self.bound()}))"
        return body + tail

    def __repr__(self) -> str:
        return f"<FracSeries m={self.grading} k={self.weight} {self}>"


@dataclass(frozen=True)
class SeriesMatch:
    """Outcome of an exact comparison over the conclusive exponent range."""

    equal: bool
    bound: Fraction | None  # exclusive exponent bound of the comparison
    first_mismatch: Fraction | None
    lhs: Cyc | None
    rhs: Cyc | None

    def through(self, exponent) -> bool:
        """True when equal and conclusive for all exponents <= exponent."""
        return self.equal and (self.bound is None or self.bound > Fraction(exponent))


def _coerce_series(value, weight: int) -> FracSeries:
    if isinstance(value, FracSeries):
        return value
    return FracSeries.constant(Cyc.coerce(value), weight)


def _min_bound(a: int | None, b: int | None):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _bound_frac(bound: int | None, grading: int) -> Fraction | None:
    return None if bound is None else Fraction(bound, grading)


def _mul_bound(a: FracSeries, b: FracSeries) -> int | None:
    # Unknown tails start at v(a)+H(b), v(b)+H(a) and H(a)+H(b).
    candidates = []
    if b.high is not None:
        va = min(a.coeffs) if a.coeffs else None
        if va is not None:
            candidates.append(va + b.high)
        if a.high is not None:
            candidates.append(a.high + b.high)
    if a.high is not None:
        vb = min(b.coeffs) if b.coeffs else None
        if vb is not None:
            candidates.append(vb + a.high)
    return min(candidates) if candidates else _INF


# -- Faber polynomials --------------------------------------------------------


@dataclass(frozen=True)
class FaberPoly:
    """Monic polynomial P with P(t) = q^-n + O(q) for its source series."""

    degree: int
    coeffs: tuple[Cyc, ...]  # x^0 .. x^degree

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1 or self.coeffs[-1] != ONE:
            raise NormalizationError("Faber polynomial must be monic of the stated degree")

    def evaluate(self, t: FracSeries) -> FracSeries:
        result = FracSeries.constant(self.coeffs[self.degree])
        for j in range(self.degree - 1, -1, -1):
            result = result * t + FracSeries.constant(self.coeffs[j])
        return result

    def evaluate_scalar(self, x: Cyc) -> Cyc:
        result = ZERO
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def as_series(self) -> FracSeries:
        """The polynomial as an entire series in its formal variable."""
        return FracSeries(1, dict(enumerate(self.coeffs)), _INF, 0)

    def __str__(self) -> str:
        parts = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if not c:
                continue
            if j == self.degree:
                head = "x" if j == 1 else f"x^{j}"
            elif j == 0:
                head = f"({c})"
            elif j == 1:
                head = f"({c})*x"
            else:
                head = f"({c})*x^{j}"
            parts.append(head)
        return " + ".join(parts) if parts else "0"


def faber(t: FracSeries, n: int) -> FaberPoly:
    """Unique monic degree-n polynomial with P(t) = q^-n + O(q).

    Needs t = q^-1 + a(0) + a(1) q + ... with integer grading, known through
    q^n; a nonzero constant term is recentered first and folded back into the
    returned polynomial, so the defining property holds for t as given.
    """
    if n < 1:
        raise ValueError("Faber degree must be >= 1")
    if t.grading != 1:
        raise GradingError("Faber polynomials need an integer-graded series")
    if t.valuation() != -1 or t.coeff(-1) != ONE:
        raise NormalizationError("Faber source must start q^-1 + ...")
    if t.high is not None and t.high < n + 1:
        raise TruncationError(
            f"Faber degree {n} needs the source known through q^{n}"
        )
    a0 = t.coeff(0)
    centered = t - FracSeries.constant(a0, t.weight) if a0 else t
    powers = [FracSeries.one(0)]
    for _ in range(n):
        powers.append(powers[-1] * centered)
    s = powers[n]
    poly = [ZERO] * (n + 1)
    poly[n] = ONE
    for j in range(n - 1, -1, -1):
        c = s.coeff(-j)
        if c:
            s = s - powers[j].scale(c)
            poly[j] = -c
    if a0:
        # P(x) built for t - a0; substitute x -> x - a0.
        shifted = [ZERO] * (n + 1)
        for j, pj in enumerate(poly):
            if not pj:
                continue
            for i in range(j + 1):
                shifted[i] = shifted[i] + pj * math.comb(j, i) * ((-a0) ** (j - i))
        poly = shifted
    return FaberPoly(n, tuple(poly))


def faber_generating_check(t: FracSeries, n_max: int, order: int | None = None):
    """Check exp(-sum p^n/n P_n(x)) = p (t(p) - x) through p^n_max.

    x is treated as a formal variable; both sides are series in p whose
    coefficients are polynomials in x.  Returns the BiSeries match.
    """
    if order is not None:
        t = t.truncate(order + 1)
    gen = BiSeries(1, {}, n_max + 1)
    for n in range(1, n_max + 1):
        pn = faber(t, n).as_series().scale(Fraction(-1, n))
        gen = gen + BiSeries(1, {n: pn}, n_max + 1)
    lhs = gen.exp()
    x = FracSeries(1, {1: ONE}, _INF, 0)
    rhs_coeffs: dict[int, FracSeries] = {1: -x}
    for num, c in t.items():
        k = num + 1
        cur = rhs_coeffs.get(k, FracSeries.zero(0))
        rhs_coeffs[k] = cur + FracSeries.constant(c)
    rhs = BiSeries(1, rhs_coeffs, (t.high + 1) if t.high is not None else _INF)
    return lhs.matches(rhs)


# -- two-variable series -------------------------------------------------------


class BiSeries:
    """A truncated series in p^(1/m) whose coefficients are q-series."""

    __slots__ = ("p_grading", "p_high", "coeffs")

    def __init__(
        self,
        p_grading: int,
        coeffs: dict[int, FracSeries],
        p_high: int | None = _INF,
    ):
        if p_grading < 1:
            raise GradingError("p grading must be positive")
        clean: dict[int, FracSeries] = {}
        for num, f in coeffs.items():
            if p_high is not None and num >= p_high:
                continue
            if f.is_zero() and f.high is None:
                continue
            clean[num] = f
        self.p_grading = p_grading
        self.p_high = p_high
        self.coeffs = clean

    @staticmethod
    def one() -> BiSeries:
        return BiSeries(1, {0: FracSeries.one(0)}, _INF)

    @staticmethod
    def zero() -> BiSeries:
        return BiSeries(1, {}, _INF)

    def p_bound(self) -> Fraction | None:
        if self.p_high is None:
            return None
        return Fraction(self.p_high, self.p_grading)

    def q_bound(self) -> Fraction | None:
        """Common guaranteed q-bound across stored coefficients."""
        bounds = [f.bound() for f in self.coeffs.values()]
        finite = [b for b in bounds if b is not None]
        return min(finite) if finite else None

    def coeff(self, p_exponent) -> FracSeries:
        e = Fraction(p_exponent)
        if self.p_high is not None and e >= self.p_bound():
            raise TruncationError(f"p^{e} is beyond the p-truncation bound")
        num = e * self.p_grading
        if num.denominator != 1:
            return FracSeries.zero(0)
        return self.coeffs.get(num.numerator, FracSeries.zero(0))

    def items(self) -> list[tuple[int, FracSeries]]:
        return sorted(self.coeffs.items())

    def regrade(self, m: int) -> BiSeries:
        if m % self.p_grading:
            raise GradingError(f"cannot regrade p {self.p_grading} -> {m}")
        f = m // self.p_grading
        if f == 1:
            return self
        return BiSeries(
            m,
            {n * f: s for n, s in self.coeffs.items()},
            _INF if self.p_high is None else self.p_high * f,
        )

    def _common(self, other: BiSeries) -> tuple[BiSeries, BiSeries]:
        m = self.p_grading * other.p_grading // math.gcd(self.p_grading, other.p_grading)
        return self.regrade(m), other.regrade(m)

    def __add__(self, other: BiSeries) -> BiSeries:
        a, b = self._common(other)
        high = _min_bound(a.p_high, b.p_high)
        coeffs = dict(a.coeffs)
        for num, f in b.coeffs.items():
            cur = coeffs.get(num)
            coeffs[num] = f if cur is None else cur + f
        return BiSeries(a.p_grading, coeffs, high)

    def __neg__(self) -> BiSeries:
        return BiSeries(
            self.p_grading, {n: -f for n, f in self.coeffs.items()}, self.p_high
        )

    def __sub__(self, other: BiSeries) -> BiSeries:
        return self + (-other)

    def scale(self, value) -> BiSeries:
        return BiSeries(
            self.p_grading,
            {n: f.scale(value) for n, f in self.coeffs.items()},
            self.p_high,
        )

    def scale_q(self, series: FracSeries) -> BiSeries:
        return BiSeries(
            self.p_grading,
            {n: f * series for n, f in self.coeffs.items()},
            self.p_high,
        )

    def __mul__(self, other: BiSeries) -> BiSeries:
        a, b = self._common(other)
        candidates = []
        if b.p_high is not None:
            if a.coeffs:
                candidates.append(min(a.coeffs) + b.p_high)
            if a.p_high is not None:
                candidates.append(a.p_high + b.p_high)
        if a.p_high is not None and b.coeffs:
            candidates.append(min(b.coeffs) + a.p_high)
        high = min(candidates) if candidates else _INF
        acc: dict[int, FracSeries] = {}
        b_items = b.items()
        for n1, f1 in a.items():
            for n2, f2 in b_items:
                t = n1 + n2
                if high is not None and t >= high:
                    break
                prod = f1 * f2
                cur = acc.get(t)
                acc[t] = prod if cur is None else cur + prod
        return BiSeries(a.p_grading, acc, high)

    def __pow__(self, exponent: int) -> BiSeries:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = BiSeries.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def inverse(self, p_high: int | None = None) -> BiSeries:
        """Inverse in p; the leading p-coefficient must be invertible in q."""
        if not self.coeffs:
            raise NormalizationError("cannot invert a p-series with no known terms")
        v0 = min(self.coeffs)
        lead = self.coeffs[v0]
        high = _INF if self.p_high is None else self.p_high - 2 * v0
        if p_high is not None:
            high = p_high if high is None else min(high, p_high)
        if high is None:
            if len(self.coeffs) > 1:
                raise TruncationError("inverting an entire p-series needs an explicit p_high")
            return BiSeries(self.p_grading, {-v0: lead.inverse()}, _INF)
        inv_lead = lead.inverse()
        out: dict[int, FracSeries] = {-v0: inv_lead}
        nums = sorted(self.coeffs)
        for t in range(-v0 + 1, high):
            s: FracSeries | None = None
            for num in nums[1:]:
                gnum = t - (num - v0)
                if gnum < -v0:
                    break
                g = out.get(gnum)
                if g is not None:
                    term = self.coeffs[num] * g
                    s = term if s is None else s + term
            if s is not None:
                out[t] = -(inv_lead * s)
        return BiSeries(self.p_grading, out, high)

    def exp(self, p_high: int | None = None) -> BiSeries:
        """Exponential of a p-series with no p^0 part."""
        if any(n <= 0 for n in self.coeffs):
            raise NormalizationError("exp needs strictly positive p-valuation")
        high = self.p_high
        if p_high is not None:
            high = p_high if high is None else min(high, p_high)
        if high is None:
            if not self.coeffs:
                return BiSeries.one()
            raise TruncationError("exp of an entire p-series needs an explicit p_high")
        work = BiSeries(self.p_grading, self.coeffs, high)
        result = BiSeries(self.p_grading, {0: FracSeries.one(0)}, high)
        term = result
        j = 1
        v = min(work.coeffs) if work.coeffs else None
        while v is not None and v * j < high:
            term = (term * work).scale(Fraction(1, j))
            if not term.coeffs:
                break
            result = result + term
            j += 1
        return result

    def log(self, p_high: int | None = None) -> BiSeries:
        """Logarithm of a p-series with p^0 coefficient exactly 1."""
        c0 = self.coeffs.get(0)
        if c0 is None or c0.high is not None or not (c0 - FracSeries.one(0)).is_zero():
            raise NormalizationError("log needs p^0 coefficient exactly 1")
        u = self - BiSeries.one()
        if any(n <= 0 for n in u.coeffs):
            raise NormalizationError("log needs the rest of the series in positive p powers")
        high = u.p_high
        if p_high is not None:
            high = p_high if high is None else min(high, p_high)
        if high is None:
            if not u.coeffs:
                return BiSeries.zero()
            raise TruncationError("log of an entire p-series needs an explicit p_high")
        u = BiSeries(u.p_grading, u.coeffs, high)
        result = BiSeries(u.p_grading, {}, high)
        term = BiSeries(u.p_grading, {0: FracSeries.one(0)}, high)
        j = 1
        v = min(u.coeffs) if u.coeffs else None
        while v is not None and v * j < high:
            term = term * u
            if not term.coeffs:
                break
            result = result + term.scale(Fraction((-1) ** (j + 1), j))
            j += 1
        return result

    def matches(self, other: BiSeries) -> BiMatch:
        a, b = self._common(other)
        p_bound = _min_bound(a.p_high, b.p_high)
        nums = set(a.coeffs) | set(b.coeffs)
        q_bound: Fraction | None = None
        for num in sorted(nums):
            if p_bound is not None and num >= p_bound:
                break
            fa = a.coeffs.get(num, FracSeries.zero(0))
            fb = b.coeffs.get(num, FracSeries.zero(0))
            m = fa.matches(fb)
            if not m.equal:
                return BiMatch(
                    False,
                    _bound_frac(p_bound, a.p_grading),
                    q_bound,
                    Fraction(num, a.p_grading),
                    m,
                )
            if m.bound is not None:
                q_bound = m.bound if q_bound is None else min(q_bound, m.bound)
        return BiMatch(True, _bound_frac(p_bound, a.p_grading), q_bound, None, None)

    def __str__(self) -> str:
        parts = [
            f"p^({Fraction(n, self.p_grading)})*[{f}]" for n, f in self.items()
        ]
        body = " + ".join(parts) if parts else "0"
        tail = "" if self.p_high is None else f" + O(p^({self.p_bound()}))"
        return body + tail


@dataclass(frozen=True)
class BiMatch:
    """Outcome of a two-variable comparison, conclusive in p and q ranges."""

    equal: bool
    p_bound: Fraction | None
    q_bound: Fraction | None
    p_mismatch: Fraction | None
    detail: SeriesMatch | None

    def through(self, p_exponent, q_exponent=None) -> bool:
        if not self.equal:
            return False
        if self.p_bound is not None and self.p_bound <= Fraction(p_exponent):
            return False
        if q_exponent is not None and self.q_bound is not None:
            return self.q_bound > Fraction(q_exponent)
        return True


def mobius_substitute(f: FracSeries, a: int, b: int, d: int) -> FracSeries:
    """Functional form of FracSeries.mobius."""
    return f.mobius(a, b, d)
