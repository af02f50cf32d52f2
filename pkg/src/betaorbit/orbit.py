"""Breadth-first closure of the branching orbit and its transition matrix.

The orbit of x is the set of points reachable from x by admissible digit
maps.  BFS with exact deduplication either closes (every admissible image of
every state is again a state) and yields the orbit graph, or hits a cap and
yields a divergence report.  The transition matrix drives exact big-integer
prefix counting by matrix powers; the brute-force count in dynamics is the
independent oracle for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dynamics import ExpansionParams
from .errors import OutsideInterval
from .field import FieldElement, sort_elements


@dataclass
class OrbitGraph:
    """Closed orbit: states in BFS discovery order (state 0 is x), edges
    (from_index, digit, to_index) with digits explored ascending."""

    params: ExpansionParams
    states: list
    edges: list[tuple[int, int, int]]
    discovery_depth: list[int]

    @property
    def size(self) -> int:
        return len(self.states)

    def to_json(self) -> dict:
        return {
            "minpoly": self.params.field.min_poly.to_json(),
            "m": self.params.m,
            "states": [s.to_json() for s in self.states],
            "edges": [list(e) for e in self.edges],
        }

    def to_dot(self) -> str:
        lines = ["digraph orbit {"]
        for j, s in enumerate(self.states, start=1):
            lo, hi = s.approx(Fraction(1, 10 ** 7))
            mid = float((lo + hi) / 2)
            lines.append(f'  {j} [label="{j}: {mid:.5f}"];')
        for (q, digit, j) in self.edges:
            lines.append(f'  {q + 1} -> {j + 1} [label="{digit}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass
class DivergenceReport:
    """BFS hit a cap before closure could be certified."""

    params: ExpansionParams
    states_found: int
    cap_hit: str  # "state" or "depth"
    sample_new_states: list


@dataclass(frozen=True)
class TransitionMatrix:
    """0/1 matrix: entry (q, j) is 1 when some digit maps state q to state j."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_json(self) -> dict:
        return {"k": self.size, "rows": [list(r) for r in self.rows]}

    def to_csv(self) -> str:
        return "\n".join(",".join(str(v) for v in row) for row in self.rows) + "\n"


def compute_orbit(params: ExpansionParams, x: FieldElement,
                  state_cap: int = 100_000, depth_cap: int = 1_000) -> OrbitGraph | DivergenceReport:
    """BFS from x over admissible digits with exact deduplication.

    Deterministic: discovery order and edge order are fixed by FIFO expansion
    with digits ascending.
    """
    if state_cap < 1 or depth_cap < 1:
        raise ValueError("caps must be at least 1")
    if not params.contains(x):
        raise OutsideInterval(f"{x!r} lies outside [0, m/(beta-1)]")
    states = [x]
    index = {x: 0}
    depth = [0]
    edges: list[tuple[int, int, int]] = []
    qpos = 0
    while qpos < len(states):
        if depth[qpos] >= depth_cap:
            return DivergenceReport(
                params=params,
                states_found=len(states),
                cap_hit="depth",
                sample_new_states=states[qpos: qpos + 5],
            )
        cur = states[qpos]
        seen_targets = set()
        for digit in params.branch_digits(cur):
            img = params.apply(digit, cur)
            j = index.get(img)
            if j is None:
                if len(states) >= state_cap:
                    return DivergenceReport(
                        params=params,
                        states_found=len(states) + 1,
                        cap_hit="state",
                        sample_new_states=[img],
                    )
                j = len(states)
                index[img] = j
                states.append(img)
                depth.append(depth[qpos] + 1)
            assert j not in seen_targets, "distinct digits must reach distinct targets"
            seen_targets.add(j)
            edges.append((qpos, digit, j))
        qpos += 1
    return OrbitGraph(params=params, states=states, edges=edges, discovery_depth=depth)


def orbit_level(params: ExpansionParams, x: FieldElement, n: int) -> list[FieldElement]:
    """The exact set of points reachable in exactly n steps, deduplicated and
    sorted ascending."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not params.contains(x):
        raise OutsideInterval(f"{x!r} lies outside [0, m/(beta-1)]")
    level = {x}
    for _ in range(n):
        level = {params.apply(d, y) for y in level for d in params.branch_digits(y)}
    return sort_elements(level)


def transition_matrix(graph: OrbitGraph) -> TransitionMatrix:
    k = graph.size
    rows = [[0] * k for _ in range(k)]
    for (q, _digit, j) in graph.edges:
        rows[q][j] = 1
    mat = TransitionMatrix(rows=tuple(tuple(r) for r in rows))
    for q in range(k):
        assert sum(mat.rows[q]) == len(graph.params.branch_digits(graph.states[q]))
    return mat


def _mat_mul(a, b):
    n = len(a)
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
        for row in a
    )


def matrix_power(matrix: TransitionMatrix, n: int) -> tuple[tuple[int, ...], ...]:
    """Exact big-integer matrix power by repeated squaring."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    k = matrix.size
    result = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
    base = matrix.rows
    while n:
        if n & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        n >>= 1
    return result


def count_prefixes_matrix(matrix: TransitionMatrix, q: int, n: int) -> int:
    """Number of admissible length-n words from state q: the q-th row sum of
    the n-th matrix power, exact.

    Row-vector iteration costs n*k^2 and repeated squaring k^3*log2(n); both
    are exact big-integer routes, so the cheaper one is used.
    """
    k = matrix.size
    adj = [[j for j in range(k) if matrix.rows[i][j]] for i in range(k)]
    edges = sum(len(a) for a in adj)
    if n * edges <= k ** 3 * max(1, n.bit_length()):
        vec = [1] * k  # row-sum counts of A^t, iterated from t = 0
        for _ in range(n):
            vec = [sum(vec[j] for j in adj[i]) for i in range(k)]
        return vec[q]
    power = matrix_power(matrix, n)
    return sum(power[q])


def count_profile_matrix(matrix: TransitionMatrix, n_max: int) -> list[tuple[int, ...]]:
    """Row-sum vectors of all powers up to n_max (counts per state, exact)."""
    k = matrix.size
    vec = tuple(1 for _ in range(k))
    out = [vec]
    for _ in range(n_max):
        vec = tuple(sum(matrix.rows[q][j] * vec[j] for j in range(k)) for q in range(k))
        out.append(vec)
    return out


@dataclass
class DensityReport:
    """Finite-depth density diagnostic: which equal-width cells of the
    interval contain an orbit state.

    A finite orbit is never dense, so for closed orbits this is a covering
    fraction, not a density decision.
    """

    n_cells: int
    hit_cells: list[int]
    covering_fraction: Fraction

    def to_json(self) -> dict:
        return {
            "n_cells": self.n_cells,
            "hit_cells": self.hit_cells,
            "covering_fraction": str(self.covering_fraction),
        }


def density_diagnostic(graph: OrbitGraph, eps) -> DensityReport:
    """Partition [0, m/(beta-1)] into ceil(R/eps) equal cells and report the
    cells containing orbit states.  eps fixes only the cell count; the cells
    themselves have exact algebraic endpoints j * R/n_cells."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    params = graph.params
    right = params.right_endpoint
    # exact ceil(R / eps): smallest c with c*eps >= R
    approx = right.approx(eps / 4)
    if approx[1] / eps > 10 ** 6:
        raise ValueError("eps yields more than 10^6 cells")
    n_cells = max(1, int(float(approx[1] / eps)))
    while (params.field.from_rational(n_cells * eps)).compare(right) < 0:
        n_cells += 1
    while n_cells > 1 and (params.field.from_rational((n_cells - 1) * eps)).compare(right) >= 0:
        n_cells -= 1

    width = right * Fraction(1, n_cells)
    hit = set()
    for s in graph.states:
        lo_j, hi_j = 0, n_cells - 1
        while lo_j < hi_j:
            mid = (lo_j + hi_j) // 2
            if s.compare(width * (mid + 1)) < 0:
                hi_j = mid
            else:
                lo_j = mid + 1
        hit.add(lo_j)
    hits = sorted(hit)
    return DensityReport(
        n_cells=n_cells,
        hit_cells=hits,
        covering_fraction=Fraction(len(hits), n_cells),
    )
