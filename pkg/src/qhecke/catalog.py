"""Built-in exact series/families and the line-oriented text format.

Format (UTF-8, one datum per line, exponents strictly increasing):

    object <label>
    group <m1> [<m2> ...]        # family entries only
    pair <g-csv> <h-csv>         # family entries only
    fricke yes|no                # family entries only
    weight <k>
    grading <m>
    cyclotomic <N>
    coeff <exponent-numerator> <cyclotomic-expr>

`cyclotomic-expr` is the canonical `num/den*z^j` rendering on the power
basis of Q(zeta_N), N the lcm of the coefficient conductors.  Saving is
canonical, so save -> load -> save is byte-identical.

Built-in labels: "J", "Leech" (= J + 24), the order-2 trace functions "2A"
(self-inverse under tau -> -1/(2 tau), "Fricke") and "2B" (non-Fricke), and
their cyclic-group families "pair:2A", "pair:2B" containing every sector
Z((g,h)) for g, h in the order-2 group.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cyclotomic import Cyc, parse_cyc
from .errors import CatalogError, SeriesParseError
from .modforms import EtaQuotientSpec, eta_quotient, jfunction
from .orbifold import AbelianGroup, Element, TraceFamily, fricke_twisted_sector
from .series import FracSeries

MAX_ORDER = 512

_ETA_2B = EtaQuotientSpec.make([(1, 24), (2, -24)], 24)
_ETA_2B_BLOCK = EtaQuotientSpec.make([(2, 24), (1, -24)])
_ETA_2B_TWISTED = EtaQuotientSpec.make([(1, 24), (Fraction(1, 2), -24)])


def _series_j(order: int) -> FracSeries:
    return jfunction(order)


def _series_leech(order: int) -> FracSeries:
    return jfunction(order) + FracSeries.constant(24)


def _series_2b(order: int) -> FracSeries:
    return eta_quotient(_ETA_2B, order)


def _series_2a(order: int) -> FracSeries:
    return eta_quotient(_ETA_2B, order) + eta_quotient(_ETA_2B_BLOCK, order).scale(4096)


def _family_pair(label: str, order: int) -> TraceFamily:
    group = AbelianGroup.cyclic(2)
    e, g = (0,), (1,)
    if label == "pair:2A":
        tg = _series_2a
        twisted = fricke_twisted_sector(_series_2a(2 * order), 2)
    else:
        tg = _series_2b
        twisted = eta_quotient(_ETA_2B_TWISTED, order).scale(4096) + FracSeries.constant(24)
    entries = {
        (e, e): _series_j(order),
        (g, e): tg(order),
        (e, g): twisted,
        (g, g): twisted.phase_shift(-1),
    }
    return TraceFamily(group, entries, anomaly_free=True)


_SERIES_BUILTINS = {
    "J": (_series_j, True),
    "Leech": (_series_leech, False),
    "2A": (_series_2a, True),
    "2B": (_series_2b, False),
}
_FAMILY_BUILTINS = {
    "pair:2A": True,
    "pair:2B": False,
}

_cache: dict[tuple[str, int], object] = {}


def catalog_labels() -> list[str]:
    return sorted(_SERIES_BUILTINS) + sorted(_FAMILY_BUILTINS)


def catalog_fricke(label: str) -> bool:
    if label in _SERIES_BUILTINS:
        return _SERIES_BUILTINS[label][1]
    if label in _FAMILY_BUILTINS:
        return _FAMILY_BUILTINS[label]
    raise CatalogError(f"unknown catalog label {label!r}")


def catalog_get(label: str, order: int):
    """Exact catalog entry at the requested truncation order (inclusive)."""
    if order < 0:
        raise CatalogError("order must be nonnegative")
    if order > MAX_ORDER:
        raise CatalogError(f"order {order} exceeds the catalog guard ({MAX_ORDER})")
    key = (label, order)
    if key in _cache:
        return _cache[key]
    if label in _SERIES_BUILTINS:
        value = _SERIES_BUILTINS[label][0](order)
    elif label in _FAMILY_BUILTINS:
        value = _family_pair(label, order)
    else:
        raise CatalogError(f"unknown catalog label {label!r}")
    _cache[key] = value
    return value


# -- text format ------------------------------------------------------------------


def render_series(
    f: FracSeries,
    label: str,
    *,
    group: AbelianGroup | None = None,
    pair: tuple[Element, Element] | None = None,
    fricke: bool | None = None,
) -> str:
    """Canonical text rendering; family header lines only when pair metadata given."""
    n = 1
    for _, c in f.items():
        n = n * c.order // math.gcd(n, c.order)
    lines = [f"object {label}"]
    if group is not None and pair is not None:
        lines.append("group " + " ".join(str(m) for m in group.factors))
        lines.append(
            "pair "
            + ",".join(str(x) for x in pair[0])
            + " "
            + ",".join(str(x) for x in pair[1])
        )
        lines.append("fricke " + ("yes" if fricke else "no"))
    lines.append(f"weight {f.weight}")
    lines.append(f"grading {f.grading}")
    lines.append(f"cyclotomic {n}")
    for num, c in f.items():
        lines.append(f"coeff {num} {c.render_at(n)}")
    return "\n".join(lines) + "\n"


@dataclass
class ParsedSeries:
    label: str
    series: FracSeries
    group: AbelianGroup | None = None
    pair: tuple[Element, Element] | None = None
    fricke: bool | None = None


def parse_series(text: str) -> ParsedSeries:
    """Parse the text format; raises SeriesParseError with the failing line."""
    lines = text.splitlines()
    idx = 0

    def take(prefix: str, optional: bool = False) -> str | None:
        nonlocal idx
        if idx < len(lines) and lines[idx].startswith(prefix + " "):
            value = lines[idx][len(prefix) + 1 :]
            idx += 1
            return value
        if optional:
            return None
        raise SeriesParseError(f"expected `{prefix} ...`", idx + 1)

    label = take("object")
    group = pair = None
    fricke = None
    gline = take("group", optional=True)
    if gline is not None:
        try:
            group = AbelianGroup(tuple(int(x) for x in gline.split()))
        except ValueError as exc:
            raise SeriesParseError(f"bad group line: {exc}", idx) from None
        pline = take("pair")
        try:
            gs, hs = pline.split()
            pair = (
                tuple(int(x) for x in gs.split(",")),
                tuple(int(x) for x in hs.split(",")),
            )
        except ValueError:
            raise SeriesParseError("bad pair line", idx) from None
        if len(pair[0]) != len(group.factors) or len(pair[1]) != len(group.factors):
            raise SeriesParseError("pair length does not match group rank", idx)
        fline = take("fricke")
        if fline not in ("yes", "no"):
            raise SeriesParseError("fricke must be yes or no", idx)
        fricke = fline == "yes"
    try:
        weight = int(take("weight"))
        grading = int(take("grading"))
        cyc_order = int(take("cyclotomic"))
    except ValueError as exc:
        raise SeriesParseError(str(exc), idx) from None
    if grading < 1 or cyc_order < 1:
        raise SeriesParseError("grading and cyclotomic order must be positive", idx)
    coeffs: dict[int, Cyc] = {}
    last_num = None
    while idx < len(lines):
        line = lines[idx]
        idx += 1
        if not line.strip():
            continue
        if not line.startswith("coeff "):
            raise SeriesParseError(f"unexpected line {line!r}", idx)
        parts = line.split(" ", 2)
        if len(parts) != 3:
            raise SeriesParseError("coeff line needs an exponent and an expression", idx)
        try:
            num = int(parts[1])
        except ValueError:
            raise SeriesParseError(f"bad exponent numerator {parts[1]!r}", idx) from None
        if last_num is not None and num <= last_num:
            raise SeriesParseError("coeff exponents must be strictly increasing", idx)
        last_num = num
        try:
            value = parse_cyc(parts[2], cyc_order)
        except Exception as exc:
            raise SeriesParseError(str(exc), idx) from None
        if value:
            coeffs[num] = value
    high = (last_num + 1) if last_num is not None else None
    series = FracSeries(grading, coeffs, high, weight)
    return ParsedSeries(label, series, group, pair, fricke)


def save_series(f: FracSeries, label: str, path: str | Path, **meta) -> None:
    Path(path).write_text(render_series(f, label, **meta), encoding="utf-8")


def load_series(path: str | Path) -> ParsedSeries:
    return parse_series(Path(path).read_text(encoding="utf-8"))


# -- loader with admission validation ----------------------------------------------


@dataclass
class CatalogEntry:
    label: str
    kind: str  # "series" | "family"
    fricke: bool | None
    payload: object


def _validate_sector_positivity(label, pair, series, group) -> None:
    if pair[0] != group.identity:
        return
    for num, c in series.items():
        if Fraction(num, series.grading) > 10:
            break
        if not c.is_integer() or c.rational_value() < 0:
            raise CatalogError(
                f"{label}: twisted-sector entry {pair} needs nonnegative integer "
                f"coefficients; found {c} at exponent {Fraction(num, series.grading)}"
            )


def validate_family(family: TraceFamily, label: str = "family") -> None:
    """Admission checks: gradings, sector positivity, exact translation consistency."""
    grp = family.group
    for (g, h), f in sorted(family.entries.items()):
        m = grp.element_order(h)
        mg = grp.element_order(g)
        if (g, h) == (grp.identity, grp.identity) and f.grading != 1:
            raise CatalogError(f"{label}: the untwisted entry must have integer grading")
        if (m * mg) % f.grading:
            raise CatalogError(
                f"{label}: entry {(g,h)} grading {f.grading} does not divide "
                f"order(h)*order(g) = {m * mg}"
            )
        _validate_sector_positivity(label, (g, h), f, grp)
    ok, bad_pair, detail = family.t_consistency()
    if not ok:
        extra = "entry missing" if detail is None else f"mismatch at q^{detail.first_mismatch}"
        raise CatalogError(
            f"{label}: translation consistency fails at pair {bad_pair} ({extra})"
        )


def catalog_load(path: str | Path) -> CatalogEntry:
    """Load and validate an external series file or family directory."""
    p = Path(path)
    if not p.exists():
        raise CatalogError(f"no such file or directory: {p}")
    if p.is_file():
        parsed = load_series(p)
        if parsed.group is not None:
            raise CatalogError(
                f"{p} is a single family sector; load its directory instead"
            )
        return CatalogEntry(parsed.label, "series", None, parsed.series)
    files = sorted(p.glob("*.series"))
    if not files:
        raise CatalogError(f"family directory {p} has no .series files")
    group: AbelianGroup | None = None
    label: str | None = None
    fricke: bool | None = None
    entries: dict[tuple[Element, Element], FracSeries] = {}
    for fp in files:
        parsed = load_series(fp)
        if parsed.group is None or parsed.pair is None:
            raise CatalogError(f"{fp} lacks family headers (group/pair/fricke)")
        if group is None:
            group, fricke = parsed.group, parsed.fricke
            label = parsed.label.split(":g=")[0] if ":g=" in parsed.label else parsed.label
        elif parsed.group != group:
            raise CatalogError(f"{fp}: group differs from the rest of the family")
        if parsed.pair in entries:
            raise CatalogError(f"{fp}: duplicate pair {parsed.pair}")
        entries[parsed.pair] = parsed.series
    family = TraceFamily(group, entries, anomaly_free=True)
    validate_family(family, label or "family")
    return CatalogEntry(label or "family", "family", fricke, family)


def save_family(
    family: TraceFamily, label: str, dirpath: str | Path, fricke: bool = False
) -> None:
    d = Path(dirpath)
    d.mkdir(parents=True, exist_ok=True)
    for (g, h), f in sorted(family.entries.items()):
        gs = ",".join(str(x) for x in g)
        hs = ",".join(str(x) for x in h)
        name = f"g{gs}_h{hs}.series".replace(",", "-")
        save_series(
            f,
            f"{label}:g={gs}:h={hs}",
            d / name,
            group=family.group,
            pair=(g, h),
            fricke=fricke,
        )
