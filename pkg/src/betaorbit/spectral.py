"""Certified dominant-eigenvalue analysis of the transition matrix.

The route to the dominant eigenvalue is exact: an integer characteristic
polynomial (division-checked Faddeev-LeVerrier), Sturm isolation of its
largest real root, and rational bisection to the requested width.  The
eigenvector comes from an exact division-free kernel solve of (A - alpha*I),
evaluated to rational intervals at the enclosure.  Floating point appears
only in the explicitly non-certified spectral-gap fallback and in display
values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, ROUND_CEILING, ROUND_FLOOR, localcontext
from enum import Enum
from fractions import Fraction

from . import polys
from .errors import DominanceNotEstablished, ZeroMatrix
from .field import FieldElement, IntPolynomial, NumberField
from .orbit import TransitionMatrix, count_profile_matrix
from .polys import Interval


def char_polynomial(matrix: TransitionMatrix) -> tuple[int, ...]:
    """Exact characteristic polynomial det(lambda*I - A), constant term
    first, by the Faddeev-LeVerrier recurrence over the integers (every
    division is by the step index and is checked exact)."""
    a = matrix.rows
    k = matrix.size
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    m = tuple(tuple(0 for _ in range(k)) for _ in range(k))
    for step in range(1, k + 1):
        # m <- A @ m + c_{k-step+1} * I
        prev_c = coeffs[k - step + 1]
        am = tuple(
            tuple(sum(a[i][t] * m[t][j] for t in range(k)) + (prev_c if i == j else 0)
                  for j in range(k))
            for i in range(k)
        )
        m = am
        tr = sum(a[i][t] * m[t][i] for i in range(k) for t in range(k))
        q, r = divmod(-tr, step)
        assert r == 0, "Faddeev-LeVerrier trace must divide exactly"
        coeffs[k - step] = q
    return tuple(coeffs)


class DominanceStatus(Enum):
    """How (and whether) the dominant eigenvalue was shown to strictly
    exceed every other eigenvalue modulus."""

    VERIFIED_PRIMITIVE = "VerifiedPrimitive"
    VERIFIED_SPECTRAL_GAP = "VerifiedSpectralGap"
    FAILED_PERIPHERAL_SPECTRUM = "FailedPeripheralSpectrum"
    UNKNOWN = "Unknown"


_VERIFIED = (DominanceStatus.VERIFIED_PRIMITIVE, DominanceStatus.VERIFIED_SPECTRAL_GAP)


@dataclass
class DominanceReport:
    status: DominanceStatus
    strongly_connected: bool
    cycle_gcd: int | None
    primitivity_exponent: int | None
    peripheral_moduli: tuple[float, ...]

    @property
    def verified(self) -> bool:
        return self.status in _VERIFIED

    @property
    def certified(self) -> bool:
        return self.status == DominanceStatus.VERIFIED_PRIMITIVE

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "strongly_connected": self.strongly_connected,
            "cycle_gcd": self.cycle_gcd,
            "primitivity_exponent": self.primitivity_exponent,
            "peripheral_moduli": list(self.peripheral_moduli),
        }


@dataclass
class PerronResult:
    """Certified enclosure of the largest real eigenvalue with an exact-solve
    eigenvector, entries as rational intervals at unit euclidean norm."""

    alpha: Interval
    eigenvector: tuple[Interval, ...]
    char_poly: tuple[int, ...]
    alpha_exact: Fraction | None = None

    @property
    def alpha_mid(self) -> Fraction:
        return (self.alpha[0] + self.alpha[1]) / 2


@dataclass
class DimensionResult:
    """log_{m+1}(alpha) as a rational enclosure; under a verified dominant
    eigenvalue this equals both the expansion-set dimension and the growth
    rate of prefix counts."""

    dim: Interval
    growth_rate: Interval
    status: DominanceStatus
    certified: bool


def _strongly_connected(adj: list[list[int]], radj: list[list[int]]) -> bool:
    k = len(adj)

    def reach(start: int, nbrs) -> int:
        seen = [False] * k
        seen[start] = True
        stack = [start]
        count = 1
        while stack:
            u = stack.pop()
            for v in nbrs[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    stack.append(v)
        return count

    return reach(0, adj) == k and reach(0, radj) == k


def _cycle_gcd(adj: list[list[int]]) -> int:
    """gcd of all cycle lengths of a strongly connected digraph, via BFS
    levels: every edge (u, v) contributes |level(u) + 1 - level(v)|."""
    k = len(adj)
    level = [-1] * k
    level[0] = 0
    queue = [0]
    qpos = 0
    while qpos < len(queue):
        u = queue[qpos]
        qpos += 1
        for v in adj[u]:
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
    g = 0
    for u in range(k):
        for v in adj[u]:
            g = math.gcd(g, abs(level[u] + 1 - level[v]))
    return g


def _primitivity_exponent(matrix: TransitionMatrix) -> int | None:
    """Smallest t with A^t entrywise positive, searched directly up to the
    Wielandt bound (k-1)^2 + 1 using bitset boolean products."""
    k = matrix.size
    full = (1 << k) - 1
    base = [sum(1 << j for j in range(k) if matrix.rows[i][j]) for i in range(k)]
    cur = base[:]
    bound = (k - 1) ** 2 + 1
    for t in range(1, bound + 1):
        if t > 1:
            cur = [
                _bit_or_rows(cur[i], base, k)
                for i in range(k)
            ]
        if all(row == full for row in cur):
            return t
    return None


def _bit_or_rows(rowbits: int, base: list[int], k: int) -> int:
    out = 0
    for j in range(k):
        if rowbits >> j & 1:
            out |= base[j]
    return out


def check_dominance(matrix: TransitionMatrix,
                    numeric_gap_tol=Fraction(1, 10 ** 9)) -> DominanceReport:
    """Decide whether the dominant eigenvalue strictly exceeds all other
    eigenvalue moduli.

    Primitivity (strong connectivity with cycle gcd 1) certifies it; strong
    connectivity with gcd > 1 certifies failure (the peripheral spectrum is a
    full cycle of moduli equal to alpha).  Otherwise the eigenvalue moduli
    are compared numerically and the verdict is flagged as numeric, not
    certified.
    """
    k = matrix.size
    if all(v == 0 for row in matrix.rows for v in row):
        # no positive eigenvalue exists at all; nothing to dominate
        return DominanceReport(
            status=DominanceStatus.UNKNOWN,
            strongly_connected=False,
            cycle_gcd=None,
            primitivity_exponent=None,
            peripheral_moduli=(0.0,) * k,
        )
    adj = [[j for j in range(k) if matrix.rows[i][j]] for i in range(k)]
    radj = [[i for i in range(k) if matrix.rows[i][j]] for j in range(k)]
    sc = _strongly_connected(adj, radj)
    gcd = _cycle_gcd(adj) if sc else None

    moduli: tuple[float, ...] = ()
    try:
        import numpy as np
        eigs = np.linalg.eigvals(np.array(matrix.rows, dtype=float))
        moduli = tuple(sorted((abs(complex(e)) for e in eigs), reverse=True))
    except Exception:
        moduli = ()

    if sc and gcd == 1:
        exponent = _primitivity_exponent(matrix) if k <= 64 else None
        if k <= 64:
            assert exponent is not None, "cycle gcd 1 but no positive power below the Wielandt bound"
        return DominanceReport(
            status=DominanceStatus.VERIFIED_PRIMITIVE,
            strongly_connected=True,
            cycle_gcd=1,
            primitivity_exponent=exponent,
            peripheral_moduli=moduli,
        )
    if sc and gcd and gcd > 1:
        return DominanceReport(
            status=DominanceStatus.FAILED_PERIPHERAL_SPECTRUM,
            strongly_connected=True,
            cycle_gcd=gcd,
            primitivity_exponent=None,
            peripheral_moduli=moduli,
        )
    if not moduli:
        return DominanceReport(
            status=DominanceStatus.UNKNOWN,
            strongly_connected=sc,
            cycle_gcd=gcd,
            primitivity_exponent=None,
            peripheral_moduli=moduli,
        )
    if len(moduli) == 1:
        status = DominanceStatus.VERIFIED_SPECTRAL_GAP
    elif moduli[1] < moduli[0] - float(numeric_gap_tol):
        status = DominanceStatus.VERIFIED_SPECTRAL_GAP
    else:
        status = DominanceStatus.FAILED_PERIPHERAL_SPECTRUM
    return DominanceReport(
        status=status,
        strongly_connected=sc,
        cycle_gcd=gcd,
        primitivity_exponent=None,
        peripheral_moduli=moduli,
    )


# ---------------------------------------------------------------------------
# dominant eigenvalue and eigenvector
# ---------------------------------------------------------------------------

def perron_eigenvalue(matrix: TransitionMatrix, tol=Fraction(1, 10 ** 12)) -> PerronResult:
    """Isolate the largest real root of the characteristic polynomial to
    width <= tol and solve for a nonnegative eigenvector exactly."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if all(v == 0 for row in matrix.rows for v in row):
        raise ZeroMatrix("transition matrix has no nonzero entry")

    chi = char_polynomial(matrix)
    chi_sf = polys.squarefree_part_int(chi)
    isolations = polys.isolate_real_roots([Fraction(c) for c in chi_sf])
    if not isolations:
        raise ZeroMatrix("no real eigenvalue found for a nonnegative matrix")
    lo, hi = isolations[-1]
    row_sums = [sum(r) for r in matrix.rows]

    if lo == hi:
        alpha_exact = lo
        vec = _kernel_vector_rational(matrix, alpha_exact)
        eigen = _normalize_eigenvector([(v, v) for v in vec])
        result = PerronResult(alpha=(lo, hi), eigenvector=eigen,
                              char_poly=chi, alpha_exact=alpha_exact)
    else:
        sf_q = [Fraction(c) for c in chi_sf]
        lo, hi = polys.refine_to_width(sf_q, lo, hi, tol)
        while lo <= 1:
            lo, hi = polys.bisect_step(sf_q, lo, hi)
        alpha_field = NumberField(IntPolynomial(chi_sf), root_rank=0)
        flo, fhi = alpha_field.beta_interval()
        while fhi - flo > tol:
            flo, fhi = alpha_field.refine_beta()
        intervals = _kernel_vector_field(matrix, alpha_field, tol)
        eigen = _normalize_eigenvector(intervals)
        result = PerronResult(alpha=(flo, fhi), eigenvector=eigen, char_poly=chi)

    # Perron row-sum bounds must bracket the enclosure
    assert result.alpha[0] <= max(row_sums) and result.alpha[1] >= min(row_sums), \
        "dominant root escaped the row-sum bracket"
    return result


def _kernel_matrix_eliminate(rows, is_nonzero, scale_row):
    """Division-free Gauss-Jordan elimination by cross-multiplication.

    Returns (rows, pivots, free_cols); pivot entries are nonzero under
    is_nonzero, every other row has an exact zero in each pivot column.
    """
    k = len(rows)
    pivots: list[tuple[int, int]] = []
    pivot_rows = set()
    for col in range(k):
        prow = next(
            (r for r in range(k) if r not in pivot_rows and is_nonzero(rows[r][col])),
            None,
        )
        if prow is None:
            continue
        pivot_rows.add(prow)
        pivots.append((prow, col))
        pv = rows[prow][col]
        for r in range(k):
            if r == prow:
                continue
            a = rows[r][col]
            if not _is_exact_zero(a):
                rows[r] = scale_row([pv * x - a * y for x, y in zip(rows[r], rows[prow])])
    free_cols = [c for c in range(k) if c not in {pc for _, pc in pivots}]
    return rows, pivots, free_cols


def _is_exact_zero(entry) -> bool:
    if isinstance(entry, FieldElement):
        return entry.is_zero()
    return entry == 0


def _kernel_candidates(rows, pivots, free_cols, one, zero):
    """One kernel vector per free column: the free column gets the product of
    all pivot values, each pivot coordinate the matching cross product, so no
    entry ever needs an inverse."""
    out = []
    for f in free_cols:
        vec = [zero] * len(rows)
        prod_all = one
        for (pr, pc) in pivots:
            prod_all = prod_all * rows[pr][pc]
        vec[f] = prod_all
        for (pr, pc) in pivots:
            others = one
            for (qr, qc) in pivots:
                if (qr, qc) != (pr, pc):
                    others = others * rows[qr][qc]
            vec[pc] = -(rows[pr][f] * others)
        out.append(vec)
    return out


def _kernel_vector_rational(matrix: TransitionMatrix, alpha: Fraction) -> list[Fraction]:
    k = matrix.size
    rows = [
        [Fraction(matrix.rows[i][j]) - (alpha if i == j else 0) for j in range(k)]
        for i in range(k)
    ]

    def scale_row(row):
        nums = [abs(c.numerator) for c in row if c]
        if not nums:
            return row
        g = 0
        for v in nums:
            g = math.gcd(g, v)
        L = 1
        for c in row:
            if c:
                L = L * c.denominator // math.gcd(L, c.denominator)
        s = Fraction(L, g)
        return [c * s for c in row]

    rows, pivots, free_cols = _kernel_matrix_eliminate(rows, lambda e: e != 0, scale_row)
    assert free_cols, "A - alpha*I must be singular at an eigenvalue"
    candidates = _kernel_candidates(rows, pivots, free_cols, Fraction(1), Fraction(0))
    for vec in candidates:
        mags = [abs(v) for v in vec]
        top = max(mags)
        if top == 0:
            continue
        if vec[mags.index(top)] < 0:
            vec = [-v for v in vec]
        if all(v >= 0 for v in vec):
            return vec
    # no single basis choice was nonnegative; fall back to the first nonzero
    for vec in candidates:
        if any(v != 0 for v in vec):
            return vec
    raise AssertionError("kernel solve produced only zero vectors")


def _kernel_vector_field(matrix: TransitionMatrix, alpha_field: NumberField,
                         tol: Fraction) -> list[Interval]:
    """Kernel of (A - alpha*I) over Q[z]/(squarefree char poly) evaluated at
    the isolated root; pivoting tests entries for zero *at the root*, so a
    reducible squarefree modulus cannot derail the elimination."""
    k = matrix.size
    alpha = alpha_field.beta
    rows = [
        [alpha_field.from_rational(matrix.rows[i][j]) - (alpha if i == j else alpha_field.zero)
         for j in range(k)]
        for i in range(k)
    ]

    def scale_row(row):
        nums = []
        dens = 1
        for e in row:
            for c in e.coeffs:
                if c:
                    nums.append(abs(c.numerator))
                    dens = dens * c.denominator // math.gcd(dens, c.denominator)
        if not nums:
            return row
        g = 0
        for v in nums:
            g = math.gcd(g, v)
        s = Fraction(dens, g)
        return [e * s for e in row]

    rows, pivots, free_cols = _kernel_matrix_eliminate(
        rows, lambda e: not alpha_field.evaluates_to_zero(e), scale_row
    )
    assert free_cols, "A - alpha*I must be singular at an eigenvalue"
    candidates = _kernel_candidates(
        rows, pivots, free_cols, alpha_field.one, alpha_field.zero
    )

    best: list[Interval] | None = None
    for vec in candidates:
        rough = [e.approx(Fraction(1, 2 ** 48)) for e in vec]
        scale = max((max(abs(lo), abs(hi)) for lo, hi in rough), default=Fraction(0))
        if scale == 0:
            continue
        eps = tol * scale
        ivs = [e.approx(eps) for e in vec]
        top_idx = max(range(k), key=lambda i: abs(ivs[i][0] + ivs[i][1]))
        if ivs[top_idx][0] + ivs[top_idx][1] < 0:
            ivs = [(-hi, -lo) for lo, hi in ivs]
        if best is None:
            best = ivs
        if all(hi >= 0 for _, hi in ivs) and any(lo > 0 for lo, _ in ivs):
            return ivs
    assert best is not None, "kernel solve produced only zero vectors"
    return best


def _normalize_eigenvector(intervals: list[Interval]) -> tuple[Interval, ...]:
    """Sign-fix, scale the largest entry's midpoint to 1, then rescale to
    unit euclidean norm (all in exact rational interval arithmetic)."""
    mids = [(lo + hi) / 2 for lo, hi in intervals]
    top = max(range(len(mids)), key=lambda i: abs(mids[i]))
    if mids[top] < 0:
        intervals = [(-hi, -lo) for lo, hi in intervals]
        mids = [-m for m in mids]
    scale = mids[top]
    if scale == 0:
        return tuple(intervals)
    intervals = [(lo / scale, hi / scale) for lo, hi in intervals]
    mids = [m / scale for m in mids]
    norm2 = sum(m * m for m in mids)
    nlo, nhi = polys.sqrt_bounds(norm2, iters=6)
    out = []
    for lo, hi in intervals:
        quots = (lo / nlo, lo / nhi, hi / nlo, hi / nhi)
        out.append((min(quots), max(quots)))
    return tuple(out)


# ---------------------------------------------------------------------------
# dimension and growth
# ---------------------------------------------------------------------------

def _ln_bounds(x: Fraction, prec: int = 50) -> Interval:
    """Directed-rounding enclosure of ln(x) for x > 0 via the decimal module."""
    if x <= 0:
        raise ValueError("ln of a nonpositive value")
    with localcontext() as ctx:
        ctx.prec = prec
        ctx.rounding = ROUND_FLOOR
        lo = (Decimal(x.numerator) / Decimal(x.denominator)).ln()
    with localcontext() as ctx:
        ctx.prec = prec
        ctx.rounding = ROUND_CEILING
        hi = (Decimal(x.numerator) / Decimal(x.denominator)).ln()
    return Fraction(lo), Fraction(hi)


def log_base_interval(alpha: Interval, base: int) -> Interval:
    """Enclosure of log_base over an interval with 1 <= lo."""
    ln_alo = _ln_bounds(alpha[0])
    ln_ahi = _ln_bounds(alpha[1])
    ln_base = _ln_bounds(Fraction(base))
    return ln_alo[0] / ln_base[1], ln_ahi[1] / ln_base[0]


def dimension(m: int, perron: PerronResult, dominance: DominanceReport) -> DimensionResult:
    """log_{m+1}(alpha) as a rational enclosure; requires a verified dominant
    eigenvalue, and carries whether the verification was certified or numeric."""
    if not dominance.verified:
        raise DominanceNotEstablished(
            f"dominant eigenvalue not verified: {dominance.status.value}"
        )
    lo, hi = perron.alpha
    if lo < 1:
        raise ValueError("alpha enclosure extends below 1; refine it first")
    dlo, dhi = log_base_interval((lo, hi), m + 1)
    dlo = max(dlo, Fraction(0))
    dhi = min(dhi, Fraction(1))
    if dlo > dhi:
        dlo = dhi
    return DimensionResult(
        dim=(dlo, dhi),
        growth_rate=(dlo, dhi),
        status=dominance.status,
        certified=dominance.certified,
    )


@dataclass
class GrowthBandReport:
    """Tail band of the normalized counts r_n(q) = N_n(state q) / alpha^n.

    band_min and band_max over the tail witness the two-sided geometric
    growth constants at finite depth.
    """

    n_from: int
    n_to: int
    band_min: float
    band_max: float
    lower_witness_state0: float
    upper_witness: float

    @property
    def spread(self) -> float:
        return self.band_max / self.band_min if self.band_min else float("inf")


def growth_band(matrix: TransitionMatrix, perron: PerronResult,
                n_max: int = 40) -> GrowthBandReport:
    """Exact counts versus alpha^n for every state, reported over the tail
    n in [n_max/2, n_max]."""
    if n_max < 5:
        raise ValueError("n_max must be at least 5")
    profile = count_profile_matrix(matrix, n_max)
    alpha_mid = perron.alpha_mid
    n_from = max(1, n_max // 2)
    band_min = None
    band_max = None
    state0_min = None
    power = alpha_mid ** n_from
    for n in range(n_from, n_max + 1):
        for q in range(matrix.size):
            r = Fraction(profile[n][q]) / power
            band_min = r if band_min is None or r < band_min else band_min
            band_max = r if band_max is None or r > band_max else band_max
            if q == 0 and (state0_min is None or r < state0_min):
                state0_min = r
        power *= alpha_mid
    return GrowthBandReport(
        n_from=n_from,
        n_to=n_max,
        band_min=float(band_min),
        band_max=float(band_max),
        lower_witness_state0=float(state0_min),
        upper_witness=float(band_max),
    )
