"""Verification suites: every identity the engine implements, as checks.

Each suite function returns a Report whose checks carry an explicit
conclusive exponent range; `run_suite` dispatches by name.  Default orders
are sized so the full run finishes at desk scale while meeting the stated
tolerances.
"""
from __future__ import annotations

import cmath
import math
import tempfile
from fractions import Fraction

from . import catalog as cat
from . import report
from .cyclotomic import Cyc, ONE
from .hecke import (
    hecke_classical,
    hecke_divisor_form,
    replication_check,
    twisted_eisenstein_family,
    hecke_twisted,
    homothety,
    s_consistency_numeric,
    t_consistency,
    verify_hecke_algebra_classical,
    verify_hecke_algebra_twisted,
)
from .modforms import (
    EtaQuotientSpec,
    eisenstein,
    eta_quotient,
    jfunction,
    sigma,
    sigma_complex,
    twisted_eisenstein,
    twisted_eisenstein_numeric,
    twisted_normalization,
    untwisted_scalar,
)
from .orbifold import (
    AbelianGroup,
    TraceFamily,
    denominator_check,
    g_orbifold_partition,
    gen_replication_check,
    hecke_orbifold,
    partitions,
    perm_generating,
    perm_generating_twisted,
    perm_orbifold,
    perm_orbifold_twisted,
)
from .report import CheckResult, Report
from .series import BiSeries, FracSeries, faber, faber_generating_check

J_COEFFS = {-1: 1, 0: 0, 1: 196884, 2: 21493760, 3: 864299970}


def suite_faber(order: int | None = None, p_order: int | None = None) -> Report:
    """Faber polynomials: closed forms, defining property, generating relation."""
    order = order or 20
    p_order = p_order or 6
    checks: list[CheckResult] = []
    # Symbolic closed forms on a generic series (distinct small prime values).
    t = FracSeries.from_terms(
        {-1: 1, 1: 2, 2: 3, 3: 5, 4: 7, 5: 11, 6: 13, 7: 17}, high_exponent=8
    )
    p1 = faber(t, 1)
    p2 = faber(t, 2)
    p3 = faber(t, 3)
    checks.append(
        report.from_bool(
            "faber/closed-form-P1",
            "P_1(x) = x for a generic normalized series",
            [c.rational_value() for c in p1.coeffs] == [0, 1],
        )
    )
    checks.append(
        report.from_bool(
            "faber/closed-form-P2",
            "P_2(x) = x^2 - 2 a(1) for a generic normalized series",
            [c.rational_value() for c in p2.coeffs] == [-2 * 2, 0, 1],
        )
    )
    checks.append(
        report.from_bool(
            "faber/closed-form-P3",
            "P_3(x) = x^3 - 3 a(1) x - 3 a(2) for a generic normalized series",
            [c.rational_value() for c in p3.coeffs] == [-3 * 3, -3 * 2, 0, 1],
        )
    )
    j = cat.catalog_get("J", order)
    pj2 = faber(j, 2)
    checks.append(
        report.from_bool(
            "faber/closed-form-P2-J",
            "P_2 for J is x^2 - 2*196884",
            [c.rational_value() for c in pj2.coeffs] == [-2 * 196884, 0, 1],
        )
    )
    for n in range(1, 11):
        val = faber(j, n).evaluate(j)
        ok = val.coeff(-n) == ONE and all(not val.coeff(e) for e in range(-n + 1, 1))
        checks.append(
            report.from_bool(
                f"faber/defining-property-n{n:02d}",
                f"P_{n}(J) = q^-{n} + O(q) with no terms between q^-{n+1} and q^0",
                ok,
                rng=f"q exponents < {val.bound()}",
            )
        )
    gen = faber_generating_check(j.truncate(p_order + 2), p_order)
    checks.append(
        report.from_bi_match(
            "faber/generating-relation",
            f"exp(-sum p^n/n P_n(x)) = p(t(p) - x) through p^{p_order} for t = J",
            gen,
            p_order,
        )
    )
    gen2 = faber_generating_check(t, 6)
    checks.append(
        report.from_bi_match(
            "faber/generating-relation-generic",
            "generating relation through p^6 for a generic series",
            gen2,
            6,
        )
    )
    return _finish("faber", checks)


def suite_eisenstein(order: int | None = None, p_order: int | None = None) -> Report:
    """Eisenstein q-expansions, the eigenform property, eta discriminant, J."""
    order = order or 30
    checks: list[CheckResult] = []
    e4 = eisenstein(4, order)
    e6 = eisenstein(6, order)
    checks.append(
        report.from_bool(
            "eisenstein/e4-leading",
            "E_4 = 1 + 240 q + 2160 q^2 + ...",
            e4.coeff(0) == ONE
            and e4.coeff(1).rational_value() == 240
            and e4.coeff(2).rational_value() == 2160,
        )
    )
    checks.append(
        report.from_bool(
            "eisenstein/e6-leading",
            "E_6 = 1 - 504 q - 16632 q^2 - ...",
            e6.coeff(1).rational_value() == -504
            and e6.coeff(2).rational_value() == -16632,
        )
    )
    prop = all(
        e4.coeff(n).rational_value() == 240 * sigma(3, n)
        and e6.coeff(n).rational_value() == -504 * sigma(5, n)
        for n in range(1, order + 1)
    )
    checks.append(
        report.from_bool(
            "eisenstein/sigma-proportional",
            f"coefficient of q^n proportional to sigma_(k-1)(n) for n <= {order}",
            prop,
        )
    )
    # Eigenform property at conclusive order `order`.
    for k, ek in ((4, None), (6, None)):
        big = eisenstein(k, 12 * order)
        for n in range(2, 13):
            lhs = hecke_classical(big, n)
            rhs = big.scale(sigma(k - 1, n))
            checks.append(
                report.from_match(
                    f"eisenstein/eigenform-k{k}-n{n:02d}",
                    f"T({n}) E_{k} = sigma_{k-1}({n}) E_{k}",
                    lhs.matches(rhs),
                    order,
                )
            )
    disc = e4.with_weight(0) ** 3 - e6.with_weight(0) ** 2
    eta24 = eta_quotient(EtaQuotientSpec.make([(1, 24)]), order)
    checks.append(
        report.from_match(
            "eisenstein/discriminant-eta",
            "E_4^3 - E_6^2 = 1728 eta(tau)^24",
            disc.matches(eta24.scale(1728)),
            order - 1,
        )
    )
    j = cat.catalog_get("J", max(order, 20))
    ok = all(j.coeff(e).rational_value() == v for e, v in J_COEFFS.items())
    checks.append(
        report.from_bool(
            "eisenstein/j-coefficients",
            "J = q^-1 + 0 + 196884 q + 21493760 q^2 + 864299970 q^3 + ...",
            ok,
        )
    )
    nonneg = all(
        j.coeff(e).is_integer() and j.coeff(e).rational_value() >= 0
        for e in range(1, 21)
    )
    checks.append(
        report.from_bool(
            "eisenstein/j-integrality",
            "J coefficients are nonnegative integers for q^1..q^20",
            nonneg,
        )
    )
    return _finish("eisenstein", checks)


def suite_sigma(order: int | None = None, p_order: int | None = None) -> Report:
    """Divisor-sum multiplicativity, exactly for integer k and numerically for complex k."""
    checks: list[CheckResult] = []
    ok = True
    bad = ""
    for k in range(0, 7):
        for m in range(2, 51):
            for n in range(2, 100 // m + 1):
                if math.gcd(m, n) != 1:
                    continue
                if sigma(k, m) * sigma(k, n) != sigma(k, m * n):
                    ok, bad = False, f"k={k}, (m,n)=({m},{n})"
    checks.append(
        report.from_bool(
            "sigma/multiplicative-integer",
            "sigma_k(m) sigma_k(n) = sigma_k(mn) for coprime m,n with mn <= 100, k <= 6",
            ok,
            detail=bad,
        )
    )
    ok = True
    bad = ""
    for k in range(0, 7):
        for p in (2, 3, 5, 7):
            for m in range(1, 5):
                if p ** (m + 1) > 100:
                    continue
                lhs = sigma(k, p) * sigma(k, p**m)
                rhs = sigma(k, p ** (m + 1)) + Fraction(p) ** k * sigma(k, p ** (m - 1))
                if lhs != rhs:
                    ok, bad = False, f"k={k}, p={p}, m={m}"
    checks.append(
        report.from_bool(
            "sigma/prime-power-integer",
            "sigma_k(p) sigma_k(p^m) = sigma_k(p^(m+1)) + p^k sigma_k(p^(m-1)), exact",
            ok,
            detail=bad,
        )
    )
    for label, k in (("k1.5", 1.5), ("k2+i", 2 + 1j)):
        err = 0.0
        for m, n in ((2, 3), (3, 4), (2, 5)):
            err = max(
                err,
                abs(
                    sigma_complex(k, m) * sigma_complex(k, n)
                    - sigma_complex(k, m * n)
                ),
            )
        for p, m in ((2, 1), (2, 2), (3, 1)):
            lhs = sigma_complex(k, p) * sigma_complex(k, p**m)
            rhs = sigma_complex(k, p ** (m + 1)) + p**k * sigma_complex(k, p ** (m - 1))
            err = max(err, abs(lhs - rhs))
        checks.append(
            report.from_numeric(
                f"sigma/complex-{label}",
                f"divisor-sum identities for complex exponent k = {k}, small instances",
                err,
                1e-12,
            )
        )
        rel = 0.0
        for m, n in ((4, 9), (5, 12), (7, 8)):
            lhs = sigma_complex(k, m) * sigma_complex(k, n)
            rhs = sigma_complex(k, m * n)
            rel = max(rel, abs(lhs - rhs) / max(abs(rhs), 1.0))
        checks.append(
            report.from_numeric(
                f"sigma/complex-{label}-relative",
                f"multiplicativity for k = {k} at larger arguments, relative error",
                rel,
                1e-12,
            )
        )
    checks.append(
        report.from_bool(
            "sigma/values",
            "sigma_3(2) = 9, sigma_3(6) = 252, sigma_0(4) = 3",
            sigma(3, 2) == 9
            and sigma(3, 6) == 252
            and sigma_complex(0, 4).real == 3,
        )
    )
    return _finish("sigma", checks)


def suite_hecke_algebra(order: int | None = None, p_order: int | None = None) -> Report:
    """Classical Hecke algebra, the dual-route oracle, and replication."""
    checks: list[CheckResult] = []
    big = order or 266
    j = cat.catalog_get("J", big)
    e4 = eisenstein(4, big)
    e6 = eisenstein(6, big)
    checks.extend(
        verify_hecke_algebra_classical({"J": j, "E4": e4, "E6": e6}, coprime_bound=12)
    )
    # Dual-route oracle: substitution sum vs divisor formula, exact, same bound.
    j30 = cat.catalog_get("J", 30)
    ok = True
    detail = ""
    for n in range(1, 11):
        a = hecke_classical(j30, n)
        b = hecke_divisor_form(j30, n)
        m = a.matches(b)
        if not (m.equal and a.bound() == b.bound()):
            ok, detail = False, f"n={n}: {m}"
            break
    checks.append(
        report.from_bool(
            "hecke-algebra/oracle-equivalence",
            "substitution-sum T(n) equals divisor-form T(n) exactly on J, n <= 10",
            ok,
            detail=detail,
        )
    )
    checks.append(
        report.from_match(
            "hecke-algebra/t1-identity",
            "T(1) is the identity",
            hecke_classical(j30, 1).matches(j30),
            20,
        )
    )
    # Linearity with cyclotomic scalars.
    alpha = Cyc.root(4) + Cyc.rational(Fraction(2, 3))
    beta = Cyc.root(4, 3).inverse()
    f, g = j30, e4.with_weight(0).truncate(31)
    lin = hecke_classical(f.scale(alpha) + g.scale(beta), 5).matches(
        hecke_classical(f, 5).scale(alpha) + hecke_classical(g, 5).scale(beta)
    )
    checks.append(
        report.from_match(
            "hecke-algebra/linearity",
            "T(5)(alpha f + beta g) = alpha T(5)f + beta T(5)g over Q(zeta_4)",
            lin,
            4,
        )
    )
    # Replication: J for n <= 10 conclusive through q^15.
    jrep = cat.catalog_get("J", 176)
    for n in range(2, 11):
        chk, _ = replication_check(
            jrep, n, through=15, check_id=f"hecke-algebra/replication-J-n{n:02d}"
        )
        checks.append(chk)
    # Replication for the order-2 Fricke trace function, traces of powers supplied.
    t2a = cat.catalog_get("2A", 40)
    j40 = cat.catalog_get("J", 40)
    reps = {1: t2a, 2: j40, 3: t2a, 4: j40}
    for n in range(2, 5):
        chk, _ = replication_check(
            t2a,
            n,
            replicates=reps,
            through=5,
            check_id=f"hecke-algebra/replication-2A-n{n}",
        )
        checks.append(chk)
    return _finish("hecke-algebra", checks)


def suite_denominator(order: int | None = None, p_order: int | None = None) -> Report:
    """The two-variable product identity for J and the reciprocal generating identity."""
    p_ord = p_order or 6
    q_ord = order or 6
    j = cat.catalog_get("J", p_ord * (q_ord + p_ord + 1) + p_ord)
    checks = denominator_check(p_ord, q_ord, j)
    jgen = cat.catalog_get("J", 5 * (q_ord + 5 + 2))
    gen = perm_generating(jgen, 5, q_ord)
    prod_times = gen.product_form * _p_times_j_difference(jgen)
    checks.append(
        report.from_bi_match(
            "denominator/generating-times-difference",
            "[product form of the generating function] * p(J(p)-J(q)) = 1 through p^5",
            prod_times.matches(BiSeries.one()),
            5,
        )
    )
    return _finish("denominator", checks)


def _p_times_j_difference(j: FracSeries) -> BiSeries:
    coeffs = {num + 1: FracSeries.constant(c) for num, c in j.items()}
    high = None if j.high is None else j.high + 1
    return BiSeries(1, coeffs, high) - BiSeries(1, {1: j}, high)


def suite_perm_orbifold(order: int | None = None, p_order: int | None = None) -> Report:
    """Cycle-type partition sums against the exponential generating function."""
    q_ord = order or 10
    n_max = p_order or 6
    checks: list[CheckResult] = []
    # Class equation: sum of class sizes is n!.
    ok = all(
        sum(ct.class_size() for ct in partitions(n)) == math.factorial(n)
        for n in range(1, 9)
    )
    checks.append(
        report.from_bool(
            "perm-orbifold/class-equation",
            "centralizer orders prod k^(m_k) m_k! satisfy the class equation for n <= 8",
            ok,
        )
    )
    z = cat.catalog_get("J", n_max * (q_ord + n_max + 2))
    # S_2: both assembly routes.
    s2 = perm_orbifold(z, 2)
    direct = (z * z).scale(Fraction(1, 2)) + hecke_classical(z, 2)
    checks.append(
        report.from_match(
            "perm-orbifold/s2-closed-form",
            "S_2 orbifold of J equals (1/2) J^2 + T(2) J",
            s2.matches(direct),
            q_ord,
        )
    )
    sectors = (
        (z * z)
        + z.mobius(2, 0, 1)
        + z.mobius(1, 0, 2)
        + z.mobius(1, 1, 2)
    ).scale(Fraction(1, 2))
    checks.append(
        report.from_match(
            "perm-orbifold/s2-sector-sum",
            "S_2 orbifold of J equals the average of the four (g,h) sector expansions",
            s2.matches(sectors),
            q_ord,
        )
    )
    gen = perm_generating(z, n_max, q_ord, closed_form=True)
    for n in range(1, n_max + 1):
        lhs = perm_orbifold(z, n)
        checks.append(
            report.from_match(
                f"perm-orbifold/partition-vs-exp-n{n}",
                f"S_{n} partition sum equals the p^{n} coefficient of exp(sum p^k T(k)J)",
                lhs.matches(gen.exp_form.coeff(n)),
                q_ord,
            )
        )
    # Displayed low-order coefficients in terms of J and its coefficients.
    c1, c2, c3 = 196884, 21493760, 864299970
    refs = {
        2: z * z - FracSeries.constant(c1),
        3: z**3 - z.scale(2 * c1) - FracSeries.constant(c2),
        4: z**4
        - (z * z).scale(3 * c1)
        - z.scale(2 * c2)
        + FracSeries.constant(c1 * c1 - c3),
    }
    for n, ref in refs.items():
        checks.append(
            report.from_match(
                f"perm-orbifold/displayed-p{n}",
                f"p^{n} coefficient of the generating function in closed polynomial form",
                gen.exp_form.coeff(n).matches(ref),
                q_ord,
            )
        )
    checks.append(
        report.from_bi_match(
            "perm-orbifold/exp-vs-product",
            "exp form equals the infinite-product form",
            gen.exp_form.matches(gen.product_form),
            n_max,
            q_ord,
        )
    )
    checks.append(
        report.from_bi_match(
            "perm-orbifold/exp-vs-closed",
            "exp form equals 1/(p(J(p)-J(q)))",
            gen.exp_form.matches(gen.closed_form),
            n_max,
            q_ord,
        )
    )
    return _finish("perm-orbifold", checks)


def suite_twisted_eisenstein(order: int | None = None, p_order: int | None = None) -> Report:
    """Exact twisted expansions against the lattice-sum oracle, plus T(p) structure."""
    trunc = order or 40
    cutoff = 600
    tau = 2j
    checks: list[CheckResult] = []
    for n_ord in (1, 2, 3, 4):
        zn = cmath.exp(2j * cmath.pi / n_ord)
        for k in (4, 5, 6):
            worst = 0.0
            for i in range(n_ord):
                for jj in range(n_ord):
                    gh = twisted_eisenstein(k, n_ord, i, jj, trunc)
                    exact = gh.evaluate(tau)
                    raw = twisted_eisenstein_numeric(
                        k, zn**i, zn**jj, tau, cutoff=cutoff
                    )
                    worst = max(worst, abs(exact - raw * twisted_normalization(k)))
            checks.append(
                report.from_numeric(
                    f"twisted-eisenstein/oracle-N{n_ord}-k{k}",
                    f"exact expansion (order {trunc}) vs lattice sum (cutoff {cutoff}) "
                    f"at tau = 2i, all {n_ord * n_ord} phase pairs",
                    worst,
                    1e-6,
                )
            )
    # Untwisted reduction and odd-weight vanishing.
    for k in (4, 6):
        gh = twisted_eisenstein(k, 1, 0, 0, 20)
        ek = eisenstein(k, 20)
        checks.append(
            report.from_match(
                f"twisted-eisenstein/untwisted-reduction-k{k}",
                f"Ghat_{k}((1,1)) = -(B_{k}/{k}) E_{k} exactly",
                gh.matches(ek.scale(untwisted_scalar(k))),
                19,
            )
        )
    checks.append(
        report.from_bool(
            "twisted-eisenstein/odd-untwisted-zero",
            "odd weight untwisted series vanish identically",
            twisted_eisenstein(5, 1, 0, 0, 20).is_zero()
            and twisted_eisenstein(5, 2, 0, 0, 20).is_zero(),
        )
    )
    # Constant term of (1,phi) twists vs the numeric tail sum.
    err = 0.0
    for (n_ord, k, jj) in ((3, 4, 1), (4, 5, 3), (4, 6, 2), (2, 3, 1)):
        gh = twisted_eisenstein(k, n_ord, 0, jj, 5)
        phi = cmath.exp(2j * cmath.pi * jj / n_ord)
        tail = sum(
            (phi**n + (-1) ** k * phi ** (-n)) / n**k for n in range(1, 200000)
        )
        err = max(err, abs(gh.coeff(0).embed_complex() - tail * twisted_normalization(k)))
    checks.append(
        report.from_numeric(
            "twisted-eisenstein/constant-term",
            "rational constant term matches the numeric two-sided power sum",
            err,
            1e-10,
        )
    )
    # T(p) on the full family: p^(k-1) + homothety.
    for n_ord in (2, 3, 4):
        for k in (4, 5, 6):
            fam = twisted_eisenstein_family(k, n_ord, 12)
            for p in (2, 3):
                lhs = hecke_twisted(fam, p)
                rhs = fam.scale(Fraction(p) ** (k - 1)) + homothety(fam, p)
                equal, worst, key = lhs.matches(rhs)
                match = worst if worst is not None else _fail_match()
                checks.append(
                    report.from_match(
                        f"twisted-eisenstein/tp-structure-N{n_ord}-k{k}-p{p}",
                        f"T({p}) Ghat_{k} = {p}^{k-1} Ghat_{k} + R({p}) Ghat_{k}, twist order {n_ord}",
                        match,
                        2,
                    )
                )
    # Exact translation consistency and numeric inversion consistency.
    for n_ord in (2, 3, 4):
        fam = twisted_eisenstein_family(4, n_ord, trunc)
        ok, key, detail = t_consistency(fam)
        checks.append(
            report.from_bool(
                f"twisted-eisenstein/t-consistency-N{n_ord}",
                "entry (i,j) equals the phase-twisted entry (i+j, j), exactly",
                ok,
                detail=f"failing index {key}" if not ok else "",
            )
        )
        err = s_consistency_numeric(fam, tau=1.2j)
        checks.append(
            report.from_numeric(
                f"twisted-eisenstein/s-consistency-N{n_ord}",
                "tau^-k f((-j,i), -1/tau) = f((i,j), tau) at tau = 6i/5",
                err,
                1e-6,
            )
        )
    return _finish("twisted-eisenstein", checks)


def _fail_match():
    from .series import SeriesMatch

    return SeriesMatch(False, None, None, None, None)


def suite_twisted_hecke(order: int | None = None, p_order: int | None = None) -> Report:
    """The twisted Hecke algebra on twisted-Eisenstein families."""
    trunc = order or 30
    checks: list[CheckResult] = []
    for n_ord in (2, 3, 4):
        fam = twisted_eisenstein_family(4, n_ord, trunc)
        checks.extend(
            verify_hecke_algebra_twisted(
                fam, primes=(2, 3), prime_powers=(1,), coprime_pairs=((2, 3),)
            )
        )
    fam5 = twisted_eisenstein_family(5, 3, trunc)
    checks.extend(
        verify_hecke_algebra_twisted(
            fam5, primes=(2,), prime_powers=(1,), coprime_pairs=((2, 3),)
        )
    )
    # n = 1 is the identity; homothety fixes the untwisted index.
    fam = twisted_eisenstein_family(4, 3, 10)
    equal, worst, _ = hecke_twisted(fam, 1).matches(fam)
    checks.append(
        report.from_bool(
            "twisted-hecke/t1-identity",
            "T(1) is the identity on families",
            equal,
        )
    )
    r2 = homothety(fam, 4)  # 4 = 1 mod 3
    equal, worst, _ = r2.matches(fam)
    checks.append(
        report.from_bool(
            "twisted-hecke/homothety-identity",
            "R(n) with n = 1 mod N is the identity; entry (0,0) is always fixed",
            equal
            and homothety(fam, 2).entries[(0, 0)].matches(fam.entries[(0, 0)]).equal,
        )
    )
    return _finish("twisted-hecke", checks)


def suite_catalog(order: int | None = None, p_order: int | None = None) -> Report:
    """Built-in catalog invariants and the cyclic-orbifold identifications."""
    checks: list[CheckResult] = []
    j = cat.catalog_get("J", 12)
    t2a = cat.catalog_get("2A", 12)
    t2b = cat.catalog_get("2B", 12)
    checks.append(
        report.from_bool(
            "catalog/normalization",
            "J, 2A, 2B have leading coefficient 1 at q^-1 and constant term 0",
            all(
                f.coeff(-1) == ONE and not f.coeff(0) for f in (j, t2a, t2b)
            ),
        )
    )
    checks.append(
        report.from_bool(
            "catalog/known-coefficients",
            "2A and 2B match their published low-order coefficients",
            t2a.coeff(1).rational_value() == 4372
            and t2a.coeff(2).rational_value() == 96256
            and t2b.coeff(1).rational_value() == 276
            and t2b.coeff(2).rational_value() == -2048,
        )
    )
    ok = True
    for f in (j, t2a, t2b, cat.catalog_get("Leech", 12)):
        for num, c in f.items():
            if not c.is_integer():
                ok = False
    checks.append(
        report.from_bool(
            "catalog/integrality", "all built-in series have integer coefficients", ok
        )
    )
    leech = cat.catalog_get("Leech", 12)
    checks.append(
        report.from_bool(
            "catalog/leech-constant", "Leech partition function is J + 24", leech.coeff(0).rational_value() == 24
        )
    )
    # Cache extension: higher order never rewrites lower coefficients.
    lo = cat.catalog_get("2A", 8)
    hi = cat.catalog_get("2A", 16)
    checks.append(
        report.from_bool(
            "catalog/cache-extension",
            "regenerating at higher order extends the expansion without altering it",
            lo.matches(hi).through(8),
        )
    )
    # Orbifold identifications.
    fam2a = cat.catalog_get("pair:2A", 12)
    fam2b = cat.catalog_get("pair:2B", 12)
    za = g_orbifold_partition(fam2a)
    zb = g_orbifold_partition(fam2b)
    jref = cat.catalog_get("J", 11)
    checks.append(
        report.from_match(
            "catalog/orbifold-2A",
            "cyclic orbifold of the Fricke 2A family returns J (constant term 0)",
            za.matches(jref),
            10,
        )
    )
    checks.append(
        report.from_match(
            "catalog/orbifold-2B",
            "cyclic orbifold of the non-Fricke 2B family is J + 24 (constant term 24)",
            zb.matches(jref + FracSeries.constant(24)),
            10,
        )
    )
    # Twisted-sector positivity through q^10.
    ok = True
    detail = ""
    e, g = (0,), (1,)
    for name, fam in (("pair:2A", fam2a), ("pair:2B", fam2b)):
        sector = fam.entry(e, g)
        for num, c in sector.items():
            if Fraction(num, sector.grading) > 10:
                break
            if not c.is_integer() or c.rational_value() < 0:
                ok, detail = False, f"{name} at exponent {Fraction(num, sector.grading)}"
    checks.append(
        report.from_bool(
            "catalog/sector-positivity",
            "(1,h) twisted sectors have nonnegative integer coefficients through q^10",
            ok,
            detail=detail,
        )
    )
    checks.append(
        report.from_bool(
            "catalog/fricke-sector-expansion",
            "Fricke twisted sector of 2A is q^-1/2 + 4372 q^1/2 + 96256 q + ...",
            fam2a.entry(e, g).coeff(Fraction(-1, 2)) == ONE
            and fam2a.entry(e, g).coeff(Fraction(1, 2)).rational_value() == 4372
            and fam2a.entry(e, g).coeff(1).rational_value() == 96256,
        )
    )
    # Translation/inversion consistency of the stored families.
    for name, fam in (("2A", fam2a), ("2B", fam2b)):
        ok, key, _ = fam.t_consistency()
        checks.append(
            report.from_bool(
                f"catalog/family-t-consistency-{name}",
                "stored family satisfies exact translation consistency",
                ok,
                detail=str(key) if not ok else "",
            )
        )
        err = fam.s_consistency_numeric(tau=1.2j)
        checks.append(
            report.from_numeric(
                f"catalog/family-s-consistency-{name}",
                "numeric inversion consistency at tau = 6i/5",
                err,
                1e-6,
            )
        )
    # Round trip through the text format.
    text = cat.render_series(t2a, "2A")
    parsed = cat.parse_series(text)
    checks.append(
        report.from_bool(
            "catalog/save-load-save",
            "save -> load -> save is byte-identical",
            cat.render_series(parsed.series, parsed.label) == text
            and parsed.series.matches(t2a).through(11),
        )
    )
    return _finish("catalog", checks)


def suite_gen_moonshine(order: int | None = None, p_order: int | None = None) -> Report:
    """Order-2 instances of the generalized replication identities, plus the loader."""
    checks: list[CheckResult] = []
    e, g = (0,), (1,)
    fam = cat.catalog_get("pair:2A", 24)
    for gg, name in ((e, "g-identity"), (g, "g-equals-h")):
        for c in gen_replication_check(
            fam, (gg, g), 2, through=10, check_id=f"gen-moonshine/n2-{name}"
        ):
            checks.append(c)
    for n in (3, 4):
        for c in gen_replication_check(
            fam, (e, g), n, through=3, check_id=f"gen-moonshine/n{n}-g-identity"
        ):
            checks.append(c)
    # Hecke images of the family remain translation-consistent (order 2 and 3).
    grp = fam.group
    for n in (2, 3):
        image = TraceFamily(
            grp,
            {pair: hecke_orbifold(fam, pair, n) for pair in fam.entries},
            anomaly_free=True,
        )
        ok, key, _ = image.t_consistency()
        checks.append(
            report.from_bool(
                f"gen-moonshine/hecke-image-consistency-n{n}",
                f"T({n}) images of the 2A family satisfy translation consistency",
                ok,
                detail=str(key) if not ok else "",
            )
        )
    # Fricke generating identity through p^(3/2), q^8.
    fam40 = cat.catalog_get("pair:2A", 40)
    pgt = perm_generating_twisted(fam40, (e, g), 3, 8, product_form=True, closed_form=True)
    checks.append(
        report.from_bi_match(
            "gen-moonshine/fricke-closed-form",
            "exp(sum p^(n/2) T(n) Z((1,h))) = 1/(p^(1/2)(Z((1,h),p) - Z((1,h),q))) for 2A",
            pgt.exp_form.matches(pgt.closed_form),
            Fraction(3, 2),
            8,
        )
    )
    checks.append(
        report.from_bi_match(
            "gen-moonshine/product-form-2A",
            "twisted generating function equals its infinite-product form (2A)",
            pgt.exp_form.matches(pgt.product_form),
            Fraction(3, 2),
            8,
        )
    )
    famb = cat.catalog_get("pair:2B", 40)
    pgtb = perm_generating_twisted(famb, (e, g), 3, 8, product_form=True)
    checks.append(
        report.from_bi_match(
            "gen-moonshine/product-form-2B",
            "twisted generating function equals its infinite-product form (2B)",
            pgtb.exp_form.matches(pgtb.product_form),
            Fraction(3, 2),
            8,
        )
    )
    # Partition-sum route agrees with the exp form for the twisted family.
    for n in (2, 3):
        lhs = perm_orbifold_twisted(fam40, (e, g), n)
        checks.append(
            report.from_match(
                f"gen-moonshine/twisted-partition-n{n}",
                f"twisted S_{n} partition sum equals the p^({n}/2) generating coefficient",
                lhs.matches(pgt.exp_form.coeff(Fraction(n, 2))),
                6,
            )
        )
    # Synthetic family through the loader: S_2 sectors of the J tensor square.
    jt = cat.catalog_get("J", 20)
    grp2 = AbelianGroup.cyclic(2)
    synth = TraceFamily(
        grp2,
        {
            (e, e): jt * jt,
            (g, e): jt.mobius(2, 0, 1),
            (e, g): jt.mobius(1, 0, 2),
            (g, g): jt.mobius(1, 1, 2),
        },
    )
    with tempfile.TemporaryDirectory() as tmp:
        cat.save_family(synth, "S2-tensor-square", tmp, fricke=False)
        entry = cat.catalog_load(tmp)
        loaded: TraceFamily = entry.payload
        ok = entry.kind == "family" and loaded.group.factors == (2,)
        checks.append(
            report.from_bool(
                "gen-moonshine/loader-synthetic-family",
                "synthetic S_2 tensor-square family loads and passes admission validation",
                ok,
            )
        )
        orb = g_orbifold_partition(loaded)
        ref = perm_orbifold(cat.catalog_get("J", 30), 2)
        checks.append(
            report.from_match(
                "gen-moonshine/loader-orbifold-crosscheck",
                "orbifold sum of the loaded family equals the S_2 orbifold of J",
                orb.matches(ref),
                8,
            )
        )
    return _finish("gen-moonshine", checks)


SUITES = {
    "faber": suite_faber,
    "hecke-algebra": suite_hecke_algebra,
    "eisenstein": suite_eisenstein,
    "sigma": suite_sigma,
    "denominator": suite_denominator,
    "perm-orbifold": suite_perm_orbifold,
    "twisted-eisenstein": suite_twisted_eisenstein,
    "twisted-hecke": suite_twisted_hecke,
    "catalog": suite_catalog,
    "gen-moonshine": suite_gen_moonshine,
}


def run_suite(name: str, order: int | None = None, p_order: int | None = None) -> Report:
    if name == "all":
        checks: list[CheckResult] = []
        for suite_name in sorted(SUITES):
            checks.extend(SUITES[suite_name](order, p_order).checks)
        return _finish("all", checks)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    return SUITES[name](order, p_order)


def _finish(name: str, checks: list[CheckResult]) -> Report:
    rep = Report(name, checks)
    rep.sort()
    return rep
