"""Finite-depth enumeration of the power-sum spectrum and its gap statistics.

The spectrum at depth n is the set of sums e_1*beta + ... + e_n*beta^n with
digits e_i in {0, ..., m}, enumerated exactly and deduplicated by canonical
form.  Consecutive-gap statistics give separation evidence: for a Pisot base
the minimum gap stays bounded away from zero, while for a non-Pisot base it
collapses as the depth grows.  A finite enumeration can only overestimate
the true infimum gap, so the final minimum gap is reported strictly as an
upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import TooFewPoints, TooLarge
from .field import FieldElement, NumberField, PisotCertificate, sort_elements
from .polys import Interval

_MEMORY_GUARD = 10_000_000


@dataclass
class SpectrumLevel:
    """All distinct digit-polynomial values at depth n, strictly ascending.

    float_hints maps each value to a non-certified float estimate, carried
    along as a sort accelerator only.
    """

    n: int
    values: list
    float_hints: dict = None

    @property
    def count(self) -> int:
        return len(self.values)


@dataclass
class GapStats:
    min_gap: Interval
    max_gap: Interval
    gap_histogram: list  # (enclosure, multiplicity), ascending by gap
    tail_min_gap: Interval | None
    min_gap_element: FieldElement = None
    max_gap_element: FieldElement = None


@dataclass
class SeparationReport:
    """Per-level minimum gaps and whether they have stabilized.

    delta_upper_bound is the final level's minimum gap, an upper bound on the
    true uniform separation constant (finite depth cannot certify a lower
    bound)."""

    m: int
    n_max: int
    level_counts: list[int]
    min_gaps: list  # exact FieldElements, one per level from n=1
    min_gap_enclosures: list[Interval]
    stabilized: bool
    delta_upper_bound: Interval
    pisot: PisotCertificate


def enumerate_spectrum(field: NumberField, m: int, n: int) -> SpectrumLevel:
    """Exact spectrum at depth n; rejects enumerations beyond the memory
    guard of 10^7 raw sums."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if m < 1:
        raise ValueError("m must be at least 1")
    if (m + 1) ** n > _MEMORY_GUARD:
        raise TooLarge(f"(m+1)^n = {(m + 1) ** n} exceeds the enumeration guard")

    beta = field.beta
    beta_float = float(beta)
    power = field.one
    current: dict[FieldElement, float] = {field.zero: 0.0}
    fpow = 1.0
    for _ in range(n):
        power = power * beta
        fpow *= beta_float
        shifts = [power * e for e in range(1, m + 1)]
        nxt = dict(current)
        for val, fval in current.items():
            for e, shift in enumerate(shifts, start=1):
                nxt.setdefault(val + shift, fval + e * fpow)
        current = nxt
    ordered = sort_elements(current.keys(), float_keys=current)
    return SpectrumLevel(n=n, values=ordered, float_hints=current)


def gap_stats(level: SpectrumLevel, eps=Fraction(1, 10 ** 15)) -> GapStats:
    """Exact consecutive differences with enclosures for reporting; gaps that
    are exactly equal as field elements share a histogram bucket."""
    if level.count < 2:
        raise TooFewPoints("need at least two spectrum points")
    hints = level.float_hints or {}
    gaps = [b - a for a, b in zip(level.values, level.values[1:])]
    gap_hints: dict[FieldElement, float] = {}
    buckets: dict[FieldElement, int] = {}
    for (a, b), g in zip(zip(level.values, level.values[1:]), gaps):
        buckets[g] = buckets.get(g, 0) + 1
        if g not in gap_hints and a in hints and b in hints:
            gap_hints[g] = hints[b] - hints[a]
    # gaps that are exactly equal as field elements collapse to one bucket,
    # so ordering work scales with the number of distinct gaps only
    distinct = sort_elements(buckets.keys(), float_keys=gap_hints)
    min_gap, max_gap = distinct[0], distinct[-1]

    # tail heuristic: gaps whose left point lies in the upper half of the range;
    # the cut index comes from a binary search (values are already sorted)
    half = level.values[-1] * Fraction(1, 2)
    lo_i, hi_i = 0, level.count - 1
    while lo_i < hi_i:
        mid = (lo_i + hi_i) // 2
        if level.values[mid].compare(half) > 0:
            hi_i = mid
        else:
            lo_i = mid + 1
    rank = {g: i for i, g in enumerate(distinct)}
    tail_min = None
    for g in gaps[lo_i:]:
        if tail_min is None or rank[g] < rank[tail_min]:
            tail_min = g

    return GapStats(
        min_gap=min_gap.approx(eps),
        max_gap=max_gap.approx(eps),
        gap_histogram=[(g.approx(eps), buckets[g]) for g in distinct],
        tail_min_gap=tail_min.approx(eps) if tail_min is not None else None,
        min_gap_element=min_gap,
        max_gap_element=max_gap,
    )


def separation_evidence(field: NumberField, m: int, n_max: int,
                        eps=Fraction(1, 10 ** 15)) -> SeparationReport:
    """Minimum gap per level up to n_max, with the field's Pisot certificate
    attached (non-Pisot fields are accepted; the contrast is the point)."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    counts = []
    min_gaps = []
    enclosures = []
    for n in range(1, n_max + 1):
        level = enumerate_spectrum(field, m, n)
        counts.append(level.count)
        stats = gap_stats(level, eps)
        min_gaps.append(stats.min_gap_element)
        enclosures.append(stats.min_gap)
    stabilized = len(min_gaps) >= 2 and min_gaps[-1] == min_gaps[-2]
    return SeparationReport(
        m=m,
        n_max=n_max,
        level_counts=counts,
        min_gaps=min_gaps,
        min_gap_enclosures=enclosures,
        stabilized=stabilized,
        delta_upper_bound=enclosures[-1],
        pisot=field.is_pisot(),
    )


def spectrum_csv(field: NumberField, m: int, n_max: int,
                 eps=Fraction(1, 10 ** 15)) -> str:
    """CSV rows: level, count, min_gap_lo, min_gap_hi, max_gap_lo, max_gap_hi
    (gap bounds as directed decimals, so each pair is a true enclosure)."""
    from .polys import decimal_str
    lines = ["level,count,min_gap_lo,min_gap_hi,max_gap_lo,max_gap_hi"]
    for n in range(1, n_max + 1):
        level = enumerate_spectrum(field, m, n)
        stats = gap_stats(level, eps)
        lines.append(
            f"{n},{level.count},{decimal_str(stats.min_gap[0], 18, -1)},"
            f"{decimal_str(stats.min_gap[1], 18, +1)},"
            f"{decimal_str(stats.max_gap[0], 18, -1)},"
            f"{decimal_str(stats.max_gap[1], 18, +1)}"
        )
    return "\n".join(lines) + "\n"
