"""Trace families over commuting pairs and permutation-orbifold machinery.

A TraceFamily holds weight-0 trace functions Z((g,h),tau) indexed by ordered
pairs of elements of a finite abelian group; entry gradings are fractional
(q^(k/m) for h of order m).  Anomaly-free families satisfy the exact
translation consistency

    Z((g h, h), tau) = Z((g, h), tau - 1),

which on expansions is a root-of-unity phase twist per coefficient, and the
numerically checkable inversion consistency Z((h^-1, g), -1/tau) = Z((g,h), tau).

Permutation orbifolds of a weight-0 partition function Z sum over the cycle
types of S_n:

    Z_n = sum_{sum k m_k = n} prod_k (1/m_k!) (T(k)Z)^(m_k),

and the generating function over all n is exp(sum_n p^n T(n) Z), which also
has an infinite-product form prod (1 - p^r q^s)^(-a(rs)).  The twisted
version replaces T(k) by the pair-moving operator of `hecke_orbifold` and
p^n by p^(n/m).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import Cyc, ONE
from .errors import ClosureError, GradingError, NormalizationError, TruncationError
from .hecke import hecke_classical
from .series import BiSeries, FracSeries, SeriesMatch, faber
from . import report
from .report import CheckResult

Element = tuple[int, ...]
Pair = tuple[Element, Element]


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group in invariant-factor form m_1 | m_2 | ... ."""

    factors: tuple[int, ...]

    def __post_init__(self):
        if not self.factors or any(m < 1 for m in self.factors):
            raise ValueError("invariant factors must be positive")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @staticmethod
    def cyclic(m: int) -> AbelianGroup:
        return AbelianGroup((m,))

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def identity(self) -> Element:
        return (0,) * len(self.factors)

    def elements(self) -> list[Element]:
        return list(itertools.product(*(range(m) for m in self.factors)))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.factors))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % m for x, m in zip(a, self.factors))

    def power(self, a: Element, s: int) -> Element:
        return tuple((x * s) % m for x, m in zip(a, self.factors))

    def element_order(self, a: Element) -> int:
        n = 1
        for x, m in zip(a, self.factors):
            o = m // math.gcd(x, m) if x else 1
            n = n * o // math.gcd(n, o)
        return n


@dataclass
class TraceFamily:
    """Weight-0 trace functions indexed by ordered pairs of group elements."""

    group: AbelianGroup
    entries: dict[Pair, FracSeries]
    anomaly_free: bool = True

    def entry(self, g: Element, h: Element) -> FracSeries:
        key = (tuple(g), tuple(h))
        if key not in self.entries:
            raise ClosureError(f"trace family has no entry for pair {key}")
        return self.entries[key]

    def has(self, g: Element, h: Element) -> bool:
        return (tuple(g), tuple(h)) in self.entries

    def is_total(self) -> bool:
        els = self.group.elements()
        return all((g, h) in self.entries for g in els for h in els)

    def t_consistency(self) -> tuple[bool, Pair | None, SeriesMatch | None]:
        """Exact check that entry (g h, h) is the phase twist of entry (g, h)."""
        for (g, h) in sorted(self.entries):
            gh = self.group.add(g, h)
            if (gh, h) not in self.entries:
                return False, (g, h), None
            m = self.entries[(gh, h)].matches(self.entries[(g, h)].phase_shift(-1))
            if not m.equal:
                return False, (g, h), m
        return True, None, None

    def s_consistency_numeric(self, tau: complex = 1.2j) -> float:
        """Max |Z((h^-1,g), -1/tau) - Z((g,h), tau)| over all stored pairs."""
        worst = 0.0
        for (g, h), f in sorted(self.entries.items()):
            src = self.entries.get((self.group.neg(h), g))
            if src is None:
                raise ClosureError(f"no inversion image stored for pair {(g, h)}")
            lhs = src.evaluate(-1.0 / complex(tau))
            rhs = f.evaluate(complex(tau))
            worst = max(worst, abs(lhs - rhs))
        return worst


# -- cycle types and partitions --------------------------------------------------


@dataclass(frozen=True)
class CycleType:
    """Multiplicities (m_1, ..., m_n) of a permutation's cycle lengths."""

    multiplicities: tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(k * m for k, m in enumerate(self.multiplicities, start=1))

    def centralizer_order(self) -> int:
        total = 1
        for k, m in enumerate(self.multiplicities, start=1):
            total *= k**m * math.factorial(m)
        return total

    def class_size(self) -> int:
        return math.factorial(self.n) // self.centralizer_order()


def partitions(n: int) -> list[CycleType]:
    """All cycle types of S_n as multiplicity vectors."""
    if n < 1:
        raise ValueError("partitions need n >= 1")
    out: list[CycleType] = []

    def rec(remaining: int, largest: int, mults: list[int]):
        if remaining == 0:
            out.append(CycleType(tuple(mults)))
            return
        for k in range(min(remaining, largest), 0, -1):
            mults[k - 1] += 1
            rec(remaining - k, k, mults)
            mults[k - 1] -= 1

    rec(n, n, [0] * n)
    return out


# -- orbifold partition functions -------------------------------------------------


def g_orbifold_partition(family: TraceFamily) -> FracSeries:
    """(1/|G|) sum over all ordered pairs of the family's trace functions."""
    if not family.is_total():
        raise ClosureError("orbifold partition function needs a total family on G x G")
    total: FracSeries | None = None
    for g in family.group.elements():
        for h in family.group.elements():
            f = family.entries[(g, h)]
            total = f if total is None else total + f
    return total.scale(Fraction(1, family.group.order))


def perm_orbifold(z: FracSeries, n: int, hecke_images: dict[int, FracSeries] | None = None) -> FracSeries:
    """S_n permutation-orbifold partition function of a weight-0 Z."""
    if z.weight != 0:
        raise NormalizationError("permutation orbifolds act on weight-0 series")
    images = dict(hecke_images or {})
    for k in range(1, n + 1):
        if k not in images:
            images[k] = z if k == 1 else hecke_classical(z, k)
    total: FracSeries | None = None
    for ct in partitions(n):
        term: FracSeries | None = None
        scale = Fraction(1)
        for k, m in enumerate(ct.multiplicities, start=1):
            if not m:
                continue
            scale /= math.factorial(m)
            block = images[k] ** m
            term = block if term is None else term * block
        term = term.scale(scale)
        total = term if total is None else total + term
    return total


@dataclass
class PermGenerating:
    """Exponential and infinite-product forms of the orbifold generating function."""

    exp_form: BiSeries
    product_form: BiSeries
    closed_form: BiSeries | None = None


def perm_generating(
    z: FracSeries, p_order: int, q_order: int, closed_form: bool = False
) -> PermGenerating:
    """Generating function exp(sum p^n T(n) Z) and its product form.

    The product runs over r >= 1 and all integers s with a(r s) != 0 up to a
    cutoff that keeps every reported coefficient exact; the closed form
    1/(p (Z(p) - Z(q))) is only meaningful for self-replicable Z and is
    computed on request.
    """
    if z.grading != 1:
        raise GradingError("generating function needs an integer-graded Z")
    p_high = p_order + 1
    s_max = q_order + p_order + 1
    needed = p_order * s_max
    if z.high is not None and z.high <= needed:
        raise TruncationError(
            f"Z must be known through q^{needed} for (p,q) orders ({p_order},{q_order})"
        )
    gen = BiSeries(1, {}, p_high)
    for n in range(1, p_order + 1):
        gen = gen + BiSeries(1, {n: hecke_classical(z, n)}, p_high)
    exp_form = gen.exp()
    product = _product_form(z, p_order, q_order, s_max, sign=-1)
    closed = None
    if closed_form:
        closed = _reciprocal_difference(z, p_high)
    return PermGenerating(exp_form, product, closed)


def _binomial_factor(
    r: int, s: int, exponent: int, p_high: int, p_grading: int = 1, q_grading: int = 1
) -> BiSeries:
    """(1 - p^(r/pm) q^(s/qm))^exponent expanded through the p bound."""
    coeffs: dict[int, FracSeries] = {}
    j = 0
    while j * r < p_high:
        if exponent >= 0 and j > exponent:
            break
        c = (
            math.comb(exponent, j) * (-1) ** j
            if exponent >= 0
            else math.comb(-exponent + j - 1, j)
        )
        coeffs[j * r] = FracSeries(
            q_grading, {j * s: Cyc.rational(c)}, None, 0, pin_grading=True
        )
        j += 1
    return BiSeries(p_grading, coeffs, p_high)


def _binomial_factor_frac(
    r: int, x: Fraction, exponent: int, p_high: int, p_grading: int
) -> BiSeries:
    """(1 - p^(r/pm) q^x)^exponent for a rational q-exponent x."""
    coeffs: dict[int, FracSeries] = {}
    j = 0
    while j * r < p_high:
        if exponent >= 0 and j > exponent:
            break
        c = (
            math.comb(exponent, j) * (-1) ** j
            if exponent >= 0
            else math.comb(-exponent + j - 1, j)
        )
        coeffs[j * r] = FracSeries.from_terms({j * x: c})
        j += 1
    return BiSeries(p_grading, coeffs, p_high)


def _product_form(
    z: FracSeries, p_order: int, q_order: int, s_max: int, sign: int
) -> BiSeries:
    """prod_{r,s} (1 - p^r q^s)^(sign * a(rs)) with honest truncation bounds."""
    p_high = p_order + 1
    result = BiSeries.one()
    for r in range(1, p_order + 1):
        s_min = -1 if r == 1 else 0
        for s in range(s_min, s_max + 1):
            a = z.coeff(r * s)
            if not a:
                continue
            if not a.is_integer():
                raise NormalizationError("product form needs integer exponents a(rs)")
            e = sign * int(a.rational_value())
            result = result * _binomial_factor(r, s, e, p_high)
    # Factors with s > s_max were omitted; their earliest effect on the p^n
    # coefficient is at q exponent >= s_max + 2 - n.
    out: dict[int, FracSeries] = {}
    for num, f in result.coeffs.items():
        out[num] = f.truncate(s_max + 2 - num)
    return BiSeries(result.p_grading, out, p_high)


def _reciprocal_difference(z: FracSeries, p_high: int) -> BiSeries:
    """1 / (p (Z(p) - Z(q))) as a two-variable series."""
    coeffs: dict[int, FracSeries] = {}
    for num, c in z.items():
        coeffs[num + 1] = FracSeries.constant(c)
    zq = BiSeries(1, {1: z}, None if z.high is None else z.high + 1)
    pzp = BiSeries(1, coeffs, None if z.high is None else z.high + 1)
    return (pzp - zq).inverse(p_high)


def denominator_check(p_order: int, q_order: int, j: FracSeries) -> list[CheckResult]:
    """The product-vs-rational identity for J and the reciprocal generating identity.

    Checks prod (1-p^r q^s)^(c(rs)) = p (J(p) - J(q)) through (p_order, q_order)
    and that the inverse product times p (J(p) - J(q)) is exactly 1.
    """
    s_max = q_order + p_order + 1
    lhs = _product_form(j, p_order, q_order, s_max, sign=+1)
    p_high = p_order + 1
    rhs_full = _reciprocal_difference(j, p_high)  # 1/(p (J(p) - J(q)))
    # Rebuild p (J(p)-J(q)) directly rather than inverting twice.
    coeffs: dict[int, FracSeries] = {}
    for num, c in j.items():
        coeffs[num + 1] = FracSeries.constant(c)
    rhs = BiSeries(1, coeffs, None if j.high is None else j.high + 1) - BiSeries(
        1, {1: j}, None if j.high is None else j.high + 1
    )
    checks = []
    m = lhs.matches(rhs)
    checks.append(
        report.from_bi_match(
            "denominator/product-vs-difference",
            f"prod (1-p^r q^s)^c(rs) = p(J(p)-J(q)) through p^{p_order}, q^{q_order}",
            m,
            p_order,
            q_order,
        )
    )
    inv_product = _product_form(j, p_order, q_order, s_max, sign=-1)
    prod_times = inv_product * rhs
    m2 = prod_times.matches(BiSeries.one())
    checks.append(
        report.from_bi_match(
            "denominator/reciprocal-identity",
            f"[prod (1-p^r q^s)^(-c(rs))] * p(J(p)-J(q)) = 1 through p^{p_order - 1}",
            m2,
            p_order - 1,
        )
    )
    m3 = rhs_full.matches(inv_product)
    checks.append(
        report.from_bi_match(
            "denominator/inverse-closed-form",
            "1/(p(J(p)-J(q))) equals the inverse product form",
            m3,
            p_order - 1,
            q_order - 1,
        )
    )
    return checks


# -- twisted (pair-indexed) orbifold operators ------------------------------------


def hecke_orbifold(family: TraceFamily, pair: Pair, n: int) -> FracSeries:
    """T(n) Z((g,h)) = (1/n) sum_{ad=n, 0<=b<d} Z((g^a h^b, h^d), (a tau+b)/d)."""
    g, h = tuple(pair[0]), tuple(pair[1])
    grp = family.group
    total: FracSeries | None = None
    for a in range(1, n + 1):
        if n % a:
            continue
        d = n // a
        ga = grp.power(g, a)
        hd = grp.power(h, d)
        for b in range(d):
            src_pair = (grp.add(ga, grp.power(h, b)), hd)
            if src_pair not in family.entries:
                raise ClosureError(
                    f"T({n}) at pair {(g, h)} needs missing entry {src_pair}"
                )
            term = family.entries[src_pair].mobius(a, b, d)
            total = term if total is None else total + term
    return total.scale(Fraction(1, n))


def perm_orbifold_twisted(family: TraceFamily, pair: Pair, n: int) -> FracSeries:
    """Cycle-type sum with the pair-moving Hecke operator in place of T(k)."""
    images = {
        k: (family.entry(*pair) if k == 1 else hecke_orbifold(family, pair, k))
        for k in range(1, n + 1)
    }
    total: FracSeries | None = None
    for ct in partitions(n):
        term: FracSeries | None = None
        scale = Fraction(1)
        for k, m in enumerate(ct.multiplicities, start=1):
            if not m:
                continue
            scale /= math.factorial(m)
            block = images[k] ** m
            term = block if term is None else term * block
        term = term.scale(scale)
        total = term if total is None else total + term
    return total


def perm_generating_twisted(
    family: TraceFamily,
    pair: Pair,
    p_numerator_order: int,
    q_order: Fraction | int,
    product_form: bool = False,
    closed_form: bool = False,
) -> PermGenerating:
    """exp(sum_n p^(n/m) T(n) Z((g,h))) with optional product/closed forms.

    m is the order of h; the p-series is graded in p^(1/m).  The product form
    (g = identity only) is prod (1 - p^(r/m) q^(s/m))^(-a((1,h^r), rs/m)); the
    closed form 1/(p^(1/m)(Z((1,h),p) - Z((1,h),q))) applies to self-inverse
    ("Fricke") twists.
    """
    g, h = tuple(pair[0]), tuple(pair[1])
    if not family.anomaly_free:
        raise NormalizationError("generating functions need an anomaly-free family")
    grp = family.group
    m = grp.element_order(h)
    p_high = p_numerator_order + 1
    gen = BiSeries(m, {}, p_high)
    for n in range(1, p_numerator_order + 1):
        tn = family.entry(g, h) if n == 1 else hecke_orbifold(family, pair, n)
        gen = gen + BiSeries(m, {n: tn}, p_high)
    exp_form = gen.exp()

    product = None
    if product_form:
        if g != grp.identity:
            raise NormalizationError("the product form needs g = identity")
        # Factor multiplicities come from the translate-averaged blocks
        #   S_r(tau) = sum_{0<=b<r} Z((h^b, h^r), (tau+b)/r),
        # whose coefficients are divisible by r; the product is
        #   prod_{r>=1, x} (1 - p^(r/m) q^x)^(-S_r[x]/r).
        # For r coprime to m this reduces to the (1,h^r)-sector coefficients
        # at exponent r*x; factors with x beyond the cutoff are omitted and
        # the q bounds are tightened accordingly.
        x_cut = Fraction(q_order) + Fraction(p_numerator_order + 2, m)
        result = BiSeries(m, {0: FracSeries.one(0)}, p_high)
        for r in range(1, p_numerator_order + 1):
            hr = grp.power(h, r)
            block: FracSeries | None = None
            for b in range(r):
                pair_b = (grp.power(h, b), hr)
                if pair_b not in family.entries:
                    raise ClosureError(
                        f"product form needs missing entry {pair_b}"
                    )
                term = family.entries[pair_b].mobius(1, b, r)
                block = term if block is None else block + term
            if block.bound() is not None and block.bound() <= x_cut:
                raise TruncationError(
                    f"product form needs the r={r} block known through q^{x_cut}"
                )
            for num in sorted(block.coeffs):
                x = Fraction(num, block.grading)
                if x > x_cut:
                    break
                mult = block.coeffs[num] * Fraction(1, r)
                if not mult:
                    continue
                if not mult.is_integer():
                    raise NormalizationError(
                        f"product multiplicity at (r={r}, q^{x}) is not an integer"
                    )
                result = result * _binomial_factor_frac(
                    r, x, -int(mult.rational_value()), p_high, m
                )
        out = {
            num: f.truncate(x_cut + Fraction(2 - num, m))
            for num, f in result.coeffs.items()
        }
        product = BiSeries(m, out, p_high)

    closed = None
    if closed_form:
        sector = family.entry(grp.identity, h)
        coeffs: dict[int, FracSeries] = {}
        for num, c in sector.items():
            coeffs[num + 1] = FracSeries.constant(c)
        soft_high = None if sector.high is None else sector.high + 1
        pzp = BiSeries(m, coeffs, soft_high)
        zq = BiSeries(m, {1: sector}, soft_high)
        closed = (pzp - zq).inverse(p_high)

    return PermGenerating(exp_form, product if product is not None else exp_form, closed)


def fricke_twisted_sector(t_h: FracSeries, m: int, *, fricke: bool = True) -> FracSeries:
    """Z((1,h),tau) = T_h(tau/m) for a Fricke h of order m: regrade q -> q^(1/m)."""
    if not fricke:
        raise NormalizationError("fricke_twisted_sector needs a Fricke-declared class")
    if m < 1:
        raise ValueError("order must be positive")
    return t_h.scale_exponents(Fraction(1, m))


def gen_replication_check(
    family: TraceFamily,
    pair: Pair,
    n: int,
    through,
    check_id: str = "gen-replication",
) -> list[CheckResult]:
    """T(n) Z((g,h)) = (1/n) F_n(Z((g,h))) with F_n the Faber polynomial of the
    re-graded twisted sector.

    The Faber source is Z((g,h),q^m) when its leading coefficient is 1; for
    pairs with g in <h> the phase-twisted sectors share the Faber polynomial
    of the re-graded (1,h) sector, which is used instead.  For n = 2 the
    explicit square form Z^2 - 2 a_1 is checked as well.
    """
    g, h = tuple(pair[0]), tuple(pair[1])
    if not family.anomaly_free:
        raise NormalizationError("replication checks need an anomaly-free family")
    grp = family.group
    m = grp.element_order(h)
    z = family.entry(g, h)
    regraded = z.scale_exponents(m)
    if regraded.valuation() == -1 and regraded.coeff(-1) == ONE:
        source = regraded
    elif family.has(grp.identity, h):
        source = family.entry(grp.identity, h).scale_exponents(m)
    else:
        raise NormalizationError(
            "Faber source needs leading coefficient 1 or an available (1,h) sector"
        )
    lhs = hecke_orbifold(family, pair, n)
    fn = faber(source, n)
    rhs = fn.evaluate(z).scale(Fraction(1, n))
    checks = [
        report.from_match(
            f"{check_id}/faber-n{n}",
            f"T({n})Z((g,h)) = (1/{n}) F_{n}(Z((g,h))) for h of order {m}",
            lhs.matches(rhs),
            through,
        )
    ]
    if n == 2:
        a1 = source.coeff(1)
        square = (z * z - FracSeries.constant(a1).scale(2)).scale(Fraction(1, 2))
        checks.append(
            report.from_match(
                f"{check_id}/square-form",
                "order-2 identity: sum of three half-period sectors = Z^2 - 2 a(1/m)",
                lhs.matches(square),
                through,
            )
        )
    return checks
