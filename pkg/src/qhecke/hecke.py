"""Hecke operators: classical on integer-graded series, twisted on families.

The classical weight-k operator acts on f known as a q-series by

    T(n) f = (1/n) sum_{a d = n} a^k sum_{0 <= b < d} f((a tau + b)/d),

computed literally as a sum of Moebius substitutions.  An independent
divisor-sum route (`hecke_divisor_form`) computes the same operator through
the coefficient formula c'(M) = sum_{a | gcd(n,M)} a^(k-1) c(n M / a^2) and
serves as its oracle; the two must agree exactly wherever both are
conclusive.

The twisted operator acts on a family f((theta,phi),tau) indexed by pairs
(i,j) in (Z/N)^2 (theta = zeta^i, phi = zeta^j) and moves the indices:

    T(n) f((theta,phi),tau)
        = (1/n) sum_{a d = n} a^k sum_{0 <= b < d}
              f((theta^a phi^b, phi^d), (a tau + b)/d).

R(n) is the homothety f((theta,phi)) -> f((theta^n,phi^n)).  Together they
satisfy the twisted Hecke algebra   T(p)T(p^m) = T(p^(m+1)) + p^(k-1) T(p^(m-1)) R(p),
R(mn) = R(m)R(n),  R(m)T(n) = T(n)R(m),  T(mn) = T(m)T(n) for coprime m, n.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import Cyc, ZERO
from .errors import ClosureError, GradingError, TruncationError
from .modforms import twisted_eisenstein
from .series import FracSeries, SeriesMatch, faber
from . import report
from .report import CheckResult


def _divisor_pairs(n: int) -> list[tuple[int, int]]:
    return [(a, n // a) for a in range(1, n + 1) if n % a == 0]


def hecke_classical(f: FracSeries, n: int, weight: int | None = None) -> FracSeries:
    """T(n) f for an integer-graded series, summed over Moebius substitutions."""
    if n < 1:
        raise ValueError("Hecke index must be positive")
    if f.grading != 1:
        raise GradingError("classical Hecke operator needs integer grading")
    k = f.weight if weight is None else weight
    total: FracSeries | None = None
    for a, d in _divisor_pairs(n):
        ak = Cyc.rational(Fraction(a) ** k)
        for b in range(d):
            term = f.mobius(a, b, d).scale(ak)
            total = term if total is None else total + term
    result = total.scale(Fraction(1, n)).with_weight(k)
    v = result.valuation()
    if result.high is not None and v is not None and result.bound() <= v:
        raise TruncationError(
            f"T({n}) input truncation too small: nothing conclusive remains"
        )
    return result


def hecke_divisor_form(f: FracSeries, n: int, weight: int | None = None) -> FracSeries:
    """T(n) f via the coefficient formula; independent oracle for hecke_classical."""
    if n < 1:
        raise ValueError("Hecke index must be positive")
    if f.grading != 1:
        raise GradingError("classical Hecke operator needs integer grading")
    k = f.weight if weight is None else weight
    if f.high is None:
        raise TruncationError("divisor-form Hecke needs a truncated series")
    low = min(f.coeffs) if f.coeffs else 0
    out: dict[int, Cyc] = {}
    high_out = -((-f.high) // n)  # M conclusive while n*M < f.high
    start = low * n if low < 0 else 0
    for m_exp in range(start, high_out):
        acc = ZERO
        for a, _ in _divisor_pairs(n):
            if m_exp % a:  # a | gcd(n, M); 0 % a == 0 covers M = 0
                continue
            acc = acc + f.coeff(n * m_exp // (a * a)) * Cyc.rational(
                Fraction(a) ** (k - 1)
            )
        if acc:
            out[m_exp] = acc
    return FracSeries(1, out, high_out, k)


def hecke_with_replicates(
    t: FracSeries, n: int, replicates: dict[int, FracSeries]
) -> FracSeries:
    """Weight-0 Hecke action whose a-sector uses the a-th replicate series.

    T(n) t = (1/n) sum_{ad=n} sum_{0<=b<d} t_a((a tau + b)/d) with t_a =
    replicates[a] (t_1 = t).  With all replicates equal to t this is the
    classical weight-0 operator; for trace functions of group elements the
    a-sector is the trace of the a-th power.
    """
    total: FracSeries | None = None
    for a, d in _divisor_pairs(n):
        ta = replicates.get(a)
        if ta is None:
            raise ClosureError(f"replicate for sector a={a} is missing")
        for b in range(d):
            term = ta.mobius(a, b, d)
            total = term if total is None else total + term
    return total.scale(Fraction(1, n)).with_weight(0)


def replication_check(
    t: FracSeries,
    n: int,
    replicates: dict[int, FracSeries] | None = None,
    through: int = 1,
    check_id: str = "replication",
) -> tuple[CheckResult, SeriesMatch]:
    """Verify T(n) t = (1/n) P_n(t) with P_n the Faber polynomial of t.

    With no replicates this is the self-replicable case (classical weight-0
    T(n)); McKay-Thompson style inputs pass the traces of their powers.
    """
    reps = {a: t for a, _ in _divisor_pairs(n)}
    if replicates:
        reps.update(replicates)
    lhs = hecke_with_replicates(t, n, reps)
    pn = faber(t, n)
    rhs = pn.evaluate(t).scale(Fraction(1, n))
    match = lhs.matches(rhs)
    result = report.from_match(
        check_id,
        f"T({n})t = (1/{n}) P_{n}(t) replication identity",
        match,
        through,
    )
    return result, match


# -- twisted families ----------------------------------------------------------


@dataclass
class TwistedFamily:
    """Weight-k series indexed by phase pairs (i,j) in (Z/N)^2."""

    order: int
    weight: int
    entries: dict[tuple[int, int], FracSeries]

    def entry(self, i: int, j: int) -> FracSeries:
        key = (i % self.order, j % self.order)
        if key not in self.entries:
            raise ClosureError(f"family has no entry for index {key}")
        return self.entries[key]

    def has(self, i: int, j: int) -> bool:
        return (i % self.order, j % self.order) in self.entries

    def is_full_grid(self) -> bool:
        N = self.order
        return all((i, j) in self.entries for i in range(N) for j in range(N))

    def check_closure_hecke(self, n: int) -> None:
        N = self.order
        missing = []
        for (i, j) in self.entries:
            for a, d in _divisor_pairs(n):
                for b in range(d):
                    key = ((a * i + b * j) % N, (d * j) % N)
                    if key not in self.entries:
                        missing.append(key)
        if missing:
            raise ClosureError(
                f"family not closed under T({n}); missing indices {sorted(set(missing))}"
            )

    def check_closure_homothety(self, n: int) -> None:
        N = self.order
        missing = [
            ((n * i) % N, (n * j) % N)
            for (i, j) in self.entries
            if ((n * i) % N, (n * j) % N) not in self.entries
        ]
        if missing:
            raise ClosureError(
                f"family not closed under R({n}); missing indices {sorted(set(missing))}"
            )

    def scale(self, value) -> TwistedFamily:
        return TwistedFamily(
            self.order,
            self.weight,
            {key: f.scale(value) for key, f in self.entries.items()},
        )

    def __add__(self, other: TwistedFamily) -> TwistedFamily:
        if (self.order, self.weight) != (other.order, other.weight):
            raise GradingError("family order/weight mismatch in addition")
        if set(self.entries) != set(other.entries):
            raise ClosureError("family index sets differ in addition")
        return TwistedFamily(
            self.order,
            self.weight,
            {key: f + other.entries[key] for key, f in self.entries.items()},
        )

    def matches(self, other: TwistedFamily) -> tuple[bool, SeriesMatch | None, tuple | None]:
        """Entrywise comparison; returns (equal, worst match, offending index)."""
        if set(self.entries) != set(other.entries):
            return False, None, None
        worst: SeriesMatch | None = None
        worst_key = None
        for key in sorted(self.entries):
            m = self.entries[key].matches(other.entries[key])
            if not m.equal:
                return False, m, key
            if worst is None or (
                m.bound is not None and (worst.bound is None or m.bound < worst.bound)
            ):
                worst, worst_key = m, key
        return True, worst, worst_key


def twisted_eisenstein_family(k: int, n_order: int, order: int) -> TwistedFamily:
    """The full (Z/N)^2 grid of normalized twisted Eisenstein series."""
    entries = {
        (i, j): twisted_eisenstein(k, n_order, i, j, order)
        for i in range(n_order)
        for j in range(n_order)
    }
    return TwistedFamily(n_order, k, entries)


def hecke_twisted(family: TwistedFamily, n: int) -> TwistedFamily:
    """T(n) on a twisted family, moving indices (i,j) -> (a i + b j, d j)."""
    if n < 1:
        raise ValueError("Hecke index must be positive")
    family.check_closure_hecke(n)
    N = family.order
    k = family.weight
    out: dict[tuple[int, int], FracSeries] = {}
    for (i, j) in family.entries:
        total: FracSeries | None = None
        for a, d in _divisor_pairs(n):
            ak = Cyc.rational(Fraction(a) ** k)
            for b in range(d):
                src = family.entries[((a * i + b * j) % N, (d * j) % N)]
                term = src.mobius(a, b, d).scale(ak)
                total = term if total is None else total + term
        out[(i, j)] = total.scale(Fraction(1, n)).with_weight(k)
    return TwistedFamily(N, k, out)


def homothety(family: TwistedFamily, n: int) -> TwistedFamily:
    """R(n): entry (i,j) becomes the source entry (n i, n j)."""
    family.check_closure_homothety(n)
    N = family.order
    return TwistedFamily(
        N,
        family.weight,
        {
            (i, j): family.entries[((n * i) % N, (n * j) % N)]
            for (i, j) in family.entries
        },
    )


def t_consistency(family: TwistedFamily) -> tuple[bool, tuple | None, SeriesMatch | None]:
    """Exact translation consistency: entry (i,j) equals the phase-shifted
    entry (i+j, j), the series-level trace of invariance under tau -> tau+1."""
    N = family.order
    for (i, j) in sorted(family.entries):
        key = ((i + j) % N, j)
        if key not in family.entries:
            return False, (i, j), None
        m = family.entries[(i, j)].matches(family.entries[key].phase_shift(1))
        if not m.equal:
            return False, (i, j), m
    return True, None, None


def s_consistency_numeric(family: TwistedFamily, tau: complex = 1.2j) -> float:
    """Max |tau^-k f((-j,i), -1/tau) - f((i,j), tau)| over the family."""
    N = family.order
    k = family.weight
    worst = 0.0
    for (i, j), f in sorted(family.entries.items()):
        src = family.entries.get(((-j) % N, i % N))
        if src is None:
            raise ClosureError(f"family has no S-image for index {(i, j)}")
        lhs = (1.0 / complex(tau) ** k) * src.evaluate(-1.0 / complex(tau))
        rhs = f.evaluate(complex(tau))
        worst = max(worst, abs(lhs - rhs))
    return worst


# -- Hecke algebra verification -------------------------------------------------


def verify_hecke_algebra_classical(
    series: dict[str, FracSeries],
    coprime_bound: int = 12,
    primes: tuple[int, ...] = (2, 3),
    prime_powers: tuple[int, ...] = (1, 2),
    through: int = 1,
) -> list[CheckResult]:
    """Exact checks of T(mn) = T(m)T(n) ((m,n)=1) and
    T(p)T(p^m) = T(p^(m+1)) + p^(k-1) T(p^(m-1))."""
    checks: list[CheckResult] = []
    for name, f in series.items():
        k = f.weight
        cache: dict[int, FracSeries] = {}

        def T(idx: int, g: FracSeries | None = None) -> FracSeries:
            if g is None:
                if idx not in cache:
                    cache[idx] = hecke_classical(f, idx)
                return cache[idx]
            return hecke_classical(g, idx)

        for m in range(2, coprime_bound + 1):
            for n in range(m + 1, coprime_bound + 1):
                if gcd(m, n) != 1:
                    continue
                match = T(m, T(n)).matches(T(m * n))
                checks.append(
                    report.from_match(
                        f"hecke-algebra/{name}/coprime-{m:02d}-{n:02d}",
                        f"T({m})T({n}) = T({m*n}) on {name}, weight {k}",
                        match,
                        through,
                    )
                )
        for p in primes:
            for m in prime_powers:
                lhs = T(p, T(p**m))
                rhs = T(p ** (m + 1))
                lower = T(p ** (m - 1)).scale(Fraction(p) ** (k - 1))
                match = lhs.matches(rhs + lower)
                checks.append(
                    report.from_match(
                        f"hecke-algebra/{name}/prime-{p}-power-{m}",
                        f"T({p})T({p}^{m}) = T({p}^{m+1}) + {p}^(k-1) T({p}^{m-1}) on {name}",
                        match,
                        through,
                    )
                )
    return checks


def verify_hecke_algebra_twisted(
    family: TwistedFamily,
    primes: tuple[int, ...] = (2, 3),
    prime_powers: tuple[int, ...] = (1,),
    coprime_pairs: tuple[tuple[int, int], ...] = ((2, 3),),
    through=1,
) -> list[CheckResult]:
    """Twisted Hecke algebra relations, including the R(p) term and R/T commutation."""
    checks: list[CheckResult] = []
    k = family.weight
    N = family.order
    tag = f"N{N}-k{k}"

    def fam_check(check_id, desc, a: TwistedFamily, b: TwistedFamily):
        equal, worst, key = a.matches(b)
        if worst is None:
            checks.append(report.from_bool(check_id, desc, equal, detail="index sets differ"))
        else:
            checks.append(
                report.from_match(
                    check_id,
                    desc + (f" (tightest entry {key})" if key else ""),
                    worst,
                    through,
                )
            )

    for p in primes:
        for m in prime_powers:
            lhs = hecke_twisted(hecke_twisted(family, p**m), p)
            rhs = hecke_twisted(family, p ** (m + 1))
            lower = homothety(hecke_twisted(family, p ** (m - 1)), p).scale(
                Fraction(p) ** (k - 1)
            )
            fam_check(
                f"twisted-hecke/{tag}/prime-{p}-power-{m}",
                f"T({p})T({p}^{m}) = T({p}^{m+1}) + {p}^(k-1) T({p}^{m-1}) R({p}), twist order {N}",
                lhs,
                rhs + lower,
            )
    for (m, n) in coprime_pairs:
        fam_check(
            f"twisted-hecke/{tag}/coprime-{m}-{n}",
            f"T({m})T({n}) = T({m*n}) on the twist-order-{N} family",
            hecke_twisted(hecke_twisted(family, n), m),
            hecke_twisted(family, m * n),
        )
        fam_check(
            f"twisted-hecke/{tag}/commute-R{m}-T{n}",
            f"R({m})T({n}) = T({n})R({m}) on the twist-order-{N} family",
            homothety(hecke_twisted(family, n), m),
            hecke_twisted(homothety(family, m), n),
        )
    # R is multiplicative: R(m)R(n) = R(mn).
    for (m, n) in coprime_pairs + ((2, 2),):
        a = homothety(homothety(family, n), m)
        b = homothety(family, m * n)
        fam_check(
            f"twisted-hecke/{tag}/homothety-{m}-{n}",
            f"R({m})R({n}) = R({m*n}) on the twist-order-{N} family",
            a,
            b,
        )
    return checks
