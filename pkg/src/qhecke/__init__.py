"""qhecke: exact q-series engine for Hecke operators, Faber polynomials,
Eisenstein/eta expansions, and permutation-orbifold partition functions.

All series arithmetic is exact: coefficients live in cyclotomic fields over
arbitrary-precision rationals, and truncation bounds are tracked so every
comparison reports the exponent range on which it is conclusive.
"""

from .cyclotomic import Cyc, Rational, euler_phi, cyclotomic_polynomial, parse_cyc
from .errors import (
    CatalogError,
    ClosureError,
    GradingError,
    NormalizationError,
    QheckeError,
    SeriesParseError,
    TruncationError,
)
from .series import (
    BiSeries,
    FaberPoly,
    FracSeries,
    faber,
    faber_generating_check,
    mobius_substitute,
)
from .modforms import (
    EtaQuotientSpec,
    bernoulli_number,
    bernoulli_polynomial,
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
from .hecke import (
    TwistedFamily,
    hecke_classical,
    hecke_divisor_form,
    hecke_twisted,
    hecke_with_replicates,
    homothety,
    replication_check,
    twisted_eisenstein_family,
    verify_hecke_algebra_classical,
    verify_hecke_algebra_twisted,
)
from .orbifold import (
    AbelianGroup,
    CycleType,
    TraceFamily,
    denominator_check,
    fricke_twisted_sector,
    g_orbifold_partition,
    gen_replication_check,
    hecke_orbifold,
    partitions,
    perm_generating,
    perm_generating_twisted,
    perm_orbifold,
    perm_orbifold_twisted,
)
from .catalog import (
    CatalogEntry,
    catalog_get,
    catalog_labels,
    catalog_load,
    load_series,
    parse_series,
    render_series,
    save_family,
    save_series,
    validate_family,
)
from .report import CheckResult, Report

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
