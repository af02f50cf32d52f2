"""Exact arithmetic and ordering in Q(beta) for an algebraic base beta.

A NumberField is presented by a monic squarefree integer polynomial together
with a chosen real root beta > 1 (selected by rank among the real roots).
Field elements are rational coefficient vectors in the power basis
1, beta, ..., beta^(d-1); equality, hashing, and deduplication are exact,
while ordering is decided by refining a shared rational enclosure of beta
until the sign of a difference is certain.

All values are immutable after construction.  The only mutable state is the
per-field enclosure cache (beta's isolating interval and the conjugate
boxes), whose refinement is monotone narrowing and guarded by a lock, so any
snapshot a concurrent reader sees is a valid enclosure.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from . import polys
from .errors import (
    DegreeZero,
    DivisionByZero,
    NoRealRootAboveOne,
    NotSquarefree,
    RefinementBudgetExceeded,
)
from .polys import Box, Interval

_CMP_BUDGET = 4096
_ZERO_TEST_AFTER = 64  # rounds of refinement before suspecting a reducible modulus


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial, constant term first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", cs)
        if len(cs) < 2:
            raise DegreeZero("defining polynomial must have degree >= 1")
        if cs[-1] != 1:
            raise ValueError("defining polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Fraction) -> Fraction:
        return polys.evaluate(self.coeffs, Fraction(x))

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "IntPolynomial":
        return cls(tuple(int(c) for c in obj["coeffs"]))

    def __str__(self) -> str:
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "z" if i == 1 else f"z^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts) or "0"


@dataclass(frozen=True)
class PisotCertificate:
    """Outcome of the Pisot test: base bracket plus conjugate modulus bound.

    status is "pisot", "not_pisot", or "unknown" (refinement budget hit while
    some conjugate modulus still straddles 1).
    """

    status: str
    beta_lower: Fraction
    beta_upper: Fraction
    max_conjugate_modulus_upper: Fraction
    budget: int

    @property
    def is_pisot(self) -> bool:
        return self.status == "pisot"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "is_pisot": self.is_pisot,
            "beta_lower": str(self.beta_lower),
            "beta_upper": str(self.beta_upper),
            "max_conjugate_modulus_upper": str(self.max_conjugate_modulus_upper),
            "budget": self.budget,
        }


class _RealEnclosure:
    """Refinable isolating interval for a real root (bisection on a sign bracket)."""

    def __init__(self, poly: tuple[Fraction, ...], lo: Fraction, hi: Fraction):
        self.poly = poly
        self.lo = lo
        self.hi = hi

    def refine(self) -> None:
        self.lo, self.hi = polys.bisect_step(self.poly, self.lo, self.hi)

    def mod2_bounds(self) -> Interval:
        return polys.box_mod2_bounds(((self.lo, self.hi), (Fraction(0), Fraction(0))))

    def as_box(self) -> Box:
        return (self.lo, self.hi), (Fraction(0), Fraction(0))


class _ComplexEnclosure:
    """Refinable certified rectangle for one non-real root (upper half plane)."""

    def __init__(self, poly, dpoly, box: Box):
        self.poly = poly
        self.dpoly = dpoly
        self.box = box

    def refine(self) -> None:
        self.box = polys.refine_certified_box(self.poly, self.dpoly, self.box)

    def mod2_bounds(self) -> Interval:
        return polys.box_mod2_bounds(self.box)

    def as_box(self) -> Box:
        return self.box

    def mirror(self) -> Box:
        (rlo, rhi), (ilo, ihi) = self.box
        return (rlo, rhi), (-ihi, -ilo)


class NumberField:
    """Q(beta) for the rank-th largest real root beta > 1 of a monic squarefree
    integer polynomial."""

    def __init__(self, min_poly: IntPolynomial | Sequence[int], root_rank: int = 0):
        if not isinstance(min_poly, IntPolynomial):
            min_poly = IntPolynomial(tuple(min_poly))
        self.min_poly = min_poly
        self.degree = min_poly.degree
        self.root_rank = root_rank
        self._poly_q = polys.normalize(min_poly.coeffs)
        if not polys.is_squarefree(self._poly_q):
            raise NotSquarefree(f"{min_poly} shares a root with its derivative")

        isolations = polys.isolate_real_roots(self._poly_q)
        self._real_root_intervals = isolations
        by_rank = list(reversed(isolations))  # largest first
        if root_rank < 0 or root_rank >= len(by_rank):
            raise NoRealRootAboveOne(
                f"{min_poly} has {len(by_rank)} real roots; rank {root_rank} does not exist"
            )
        lo, hi = by_rank[root_rank]
        # settle the root against 1 (irrational roots cannot equal 1, and
        # rational roots come back as exact points)
        while lo < 1 < hi:
            lo, hi = polys.bisect_step(self._poly_q, lo, hi)
        if hi <= 1:
            raise NoRealRootAboveOne(
                f"selected root of {min_poly} lies in [{lo}, {hi}], not above 1"
            )
        self._chosen_index = isolations.index(by_rank[root_rank])
        self._beta_lo, self._beta_hi = lo, hi
        # ladder of progressively narrower enclosures; comparisons try coarse
        # (cheap, small denominators) snapshots before touching fine ones
        self._beta_ladder: list[Interval] = [(lo, hi)]
        self._lock = threading.RLock()
        self._conjugates: list[_RealEnclosure | _ComplexEnclosure] | None = None

        # beta^j for j = d .. 2d-2 has integer coordinates since the defining
        # polynomial is monic; these power rows make reduction after products
        # a small integer combination.
        d = self.degree
        tail = [-c for c in min_poly.coeffs[:-1]]
        rows = [tail]
        for _ in range(d - 2):
            prev = rows[-1]
            nxt = [0] + prev[:-1]
            top = prev[-1]
            if top:
                nxt = [nxt[i] + top * tail[i] for i in range(d)]
            rows.append(nxt)
        self._power_rows = [tuple(r) for r in rows]

        zero = Fraction(0)
        self.zero = self.element([zero] * d)
        self.one = self.element([Fraction(1)] + [zero] * (d - 1))

    # -- presentation -----------------------------------------------------

    def __repr__(self) -> str:
        return f"NumberField({self.min_poly}, root in [{float(self._beta_lo):.6f}, {float(self._beta_hi):.6f}])"

    @property
    def beta(self) -> "FieldElement":
        if self.degree == 1:
            return self.element([-Fraction(self.min_poly.coeffs[0])])
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return self.element(coeffs)

    def element(self, coeffs: Iterable) -> "FieldElement":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            raise ValueError(f"coefficient vector longer than degree {self.degree}")
        cs += [Fraction(0)] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    def from_rational(self, value) -> "FieldElement":
        return self.element([Fraction(value)])

    def element_from_poly(self, coeffs: Sequence[Fraction]) -> "FieldElement":
        """Reduce an arbitrary-degree coefficient vector modulo the defining
        polynomial."""
        cs = list(coeffs)
        d = self.degree
        out = [Fraction(c) for c in cs[:d]] + [Fraction(0)] * max(0, d - len(cs))
        for j in range(d, len(cs)):
            cj = Fraction(cs[j])
            if cj:
                row = self._power_rows[j - d]
                for t in range(d):
                    out[t] += cj * row[t]
        return FieldElement(self, tuple(out))

    # -- enclosure management ---------------------------------------------

    def beta_interval(self) -> Interval:
        with self._lock:
            return self._beta_lo, self._beta_hi

    def refine_beta(self, rounds: int = 1) -> Interval:
        with self._lock:
            for _ in range(rounds):
                if self._beta_lo == self._beta_hi:
                    break
                self._beta_lo, self._beta_hi = polys.bisect_step(
                    self._poly_q, self._beta_lo, self._beta_hi
                )
                last = self._beta_ladder[-1]
                if (last[1] - last[0]) >= 256 * (self._beta_hi - self._beta_lo):
                    self._beta_ladder.append((self._beta_lo, self._beta_hi))
            return self._beta_lo, self._beta_hi

    def _enclosure_ladder(self) -> list[Interval]:
        with self._lock:
            ladder = list(self._beta_ladder)
            if ladder[-1] != (self._beta_lo, self._beta_hi):
                ladder.append((self._beta_lo, self._beta_hi))
            return ladder

    @property
    def real_root_enclosure(self) -> Interval:
        return self.beta_interval()

    def evaluates_to_zero(self, elem: "FieldElement") -> bool:
        """Exact test for elem(beta) == 0, sound even when the defining
        polynomial is reducible (the vector test alone is not, then)."""
        if elem.is_zero():
            return True
        lo, hi = self.beta_interval()
        p = polys.normalize(elem.coeffs)
        if lo == hi:
            return polys.evaluate(p, lo) == 0
        g = polys.gcd_poly(p, self._poly_q)
        if polys.degree(g) == 0:
            return False
        return polys.count_roots_in_interval(g, lo, hi) > 0

    # -- conjugates and the Pisot test --------------------------------------

    def _materialize_conjugates(self) -> list:
        with self._lock:
            if self._conjugates is not None:
                return self._conjugates
            d = self.degree
            encs: list[_RealEnclosure | _ComplexEnclosure] = []
            for i, (lo, hi) in enumerate(self._real_root_intervals):
                if i == self._chosen_index:
                    continue
                encs.append(_RealEnclosure(self._poly_q, lo, hi))
            n_real = len(self._real_root_intervals)
            assert (d - n_real) % 2 == 0
            n_pairs = (d - n_real) // 2
            if n_pairs:
                dpoly = polys.derivative(self._poly_q)
                boxes = polys.propose_and_certify_complex_roots(
                    [c.numerator for c in self._poly_q], n_pairs
                )
                pair_encs = [_ComplexEnclosure(self._poly_q, dpoly, b) for b in boxes]
                self._separate_boxes(pair_encs)
                encs.extend(pair_encs)
            self._conjugates = encs
            return encs

    @staticmethod
    def _separate_boxes(pair_encs: list["_ComplexEnclosure"], cap: int = 64) -> None:
        for i in range(len(pair_encs)):
            for j in range(i + 1, len(pair_encs)):
                rounds = 0
                while polys._box_intersect(pair_encs[i].box, pair_encs[j].box):
                    if rounds >= cap:
                        raise ArithmeticError("could not separate two conjugate enclosures")
                    pair_encs[i].refine()
                    pair_encs[j].refine()
                    rounds += 1

    @property
    def conjugate_enclosures(self) -> list[Box]:
        """Boxes for the d-1 roots other than beta; complex roots appear as a
        box in the upper half plane followed by its mirror image."""
        out: list[Box] = []
        for enc in self._materialize_conjugates():
            out.append(enc.as_box())
            if isinstance(enc, _ComplexEnclosure):
                out.append(enc.mirror())
        return out

    def is_pisot(self, budget: int = 96) -> PisotCertificate:
        """Refine conjugate enclosures until every modulus is certified below 1
        (Pisot), some modulus is certified at or above 1 (not Pisot), or a
        modulus still straddles 1 at the precision budget (unknown).

        budget is in bits: an enclosure of squared modulus narrower than
        2**-budget that still straddles 1 stops refining (a conjugate exactly
        on the unit circle can never be resolved).
        """
        with self._lock:
            while self._beta_lo <= 1:
                self.refine_beta()
            while self._beta_hi - self._beta_lo > Fraction(1, 1 << 20):
                self.refine_beta()
            beta_lo, beta_hi = self._beta_lo, self._beta_hi

            cutoff = Fraction(1, 1 << budget)
            worst = Fraction(0)
            status = "pisot"
            if self.degree > 1:
                for enc in self._materialize_conjugates():
                    prev_width = None
                    while True:
                        m2lo, m2hi = enc.mod2_bounds()
                        if m2hi < 1:
                            worst = max(worst, m2hi)
                            break
                        if m2lo >= 1:
                            worst = max(worst, m2hi)
                            status = "not_pisot"
                            break
                        width = m2hi - m2lo
                        if width < cutoff or (prev_width is not None and width >= prev_width):
                            worst = max(worst, m2hi)
                            status = "unknown" if status == "pisot" else status
                            break
                        prev_width = width
                        enc.refine()
                    if status == "not_pisot":
                        break
            max_mod_upper = polys.sqrt_bounds(worst)[1] if worst else Fraction(0)
            return PisotCertificate(
                status=status,
                beta_lower=beta_lo,
                beta_upper=beta_hi,
                max_conjugate_modulus_upper=max_mod_upper,
                budget=budget,
            )


class FieldElement:
    """Element of Q(beta) as an exact rational vector in the power basis."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: NumberField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- plumbing -----------------------------------------------------------

    def _coerce(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((id(self.field), self.coeffs))
            self._hash = h
        return h

    def __eq__(self, other):
        if other is self:
            return True
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    # -- ring and field operations -------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, (a[0] * b[0],))
        conv = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        return self.field.element_from_poly(conv)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse via the extended euclidean algorithm on
        (element polynomial, defining polynomial) over the rationals."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        a = polys.normalize(self.coeffs)
        m = self.field._poly_q
        r0, r1 = m, a
        t0, t1 = (), (Fraction(1),)
        while r1:
            q, r = polys.divmod_poly(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, polys.add(t0, polys.negate(polys.mul(q, t1)))
        if polys.degree(r0) > 0:
            raise DivisionByZero(
                "zero divisor: element shares a factor with the (reducible) defining polynomial"
            )
        g = r0[0]
        return self.field.element_from_poly([c / g for c in t0])

    # -- ordering and approximation -------------------------------------------

    def compare(self, other) -> int:
        """-1, 0, or +1; exact.  Equality is coefficient-vector identity, and
        sign is decided by refining the shared enclosure of beta."""
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare FieldElement with {type(other).__name__}")
        diff = self - o
        if diff.is_zero():
            return 0
        p = polys.normalize(diff.coeffs)
        field = self.field
        for lo, hi in field._enclosure_ladder():
            vlo, vhi = polys.evaluate_interval(p, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
        for rounds in range(_CMP_BUDGET):
            lo, hi = field.refine_beta()
            vlo, vhi = polys.evaluate_interval(p, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            if rounds == _ZERO_TEST_AFTER and field.evaluates_to_zero(diff):
                raise RefinementBudgetExceeded(
                    "distinct representations coincide at the chosen root; "
                    "the defining polynomial is reducible"
                )
        raise RefinementBudgetExceeded("sign of a nonzero difference did not resolve")

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def approx(self, eps=Fraction(1, 10 ** 12)) -> Interval:
        """Rational interval of width <= eps containing the real value."""
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        p = polys.normalize(self.coeffs)
        if not p:
            return Fraction(0), Fraction(0)
        field = self.field
        for lo, hi in field._enclosure_ladder():
            vlo, vhi = polys.evaluate_interval(p, lo, hi)
            if vhi - vlo <= eps:
                return vlo, vhi
        for _ in range(100_000):
            lo, hi = field.refine_beta()
            vlo, vhi = polys.evaluate_interval(p, lo, hi)
            if vhi - vlo <= eps:
                return vlo, vhi
        raise RefinementBudgetExceeded("approximation did not reach the requested width")

    def __float__(self) -> float:
        lo, hi = self.approx(Fraction(1, 10 ** 17))
        return float((lo + hi) / 2)

    def abs_enclosure(self, eps=Fraction(1, 10 ** 12)) -> Interval:
        """Enclosure of |value| of width <= eps."""
        if self.is_zero():
            return Fraction(0), Fraction(0)
        sign = self.compare(self.field.zero)
        lo, hi = self.approx(eps)
        return (lo, hi) if sign > 0 else (-hi, -lo)

    # -- presentation -----------------------------------------------------------

    def __repr__(self):
        return f"<{format_element(self)}>"

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, field: NumberField, obj: dict) -> "FieldElement":
        return field.element([Fraction(c) for c in obj["coeffs"]])


def format_element(elem: FieldElement) -> str:
    """Human-readable polynomial-in-b form, e.g. '1/2 - b + b^2'."""
    parts = []
    for i, c in enumerate(elem.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            var = "b" if i == 1 else f"b^{i}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


def sort_elements(elems: Iterable[FieldElement], float_keys: dict | None = None) -> list[FieldElement]:
    """Ascending exact sort.  With float hints the list is pre-ordered by the
    hint and the order is then verified by exact adjacent comparisons, falling
    back to a fully exact comparison sort when any hint was wrong."""
    items = list(elems)
    if len(items) < 2:
        return items
    if float_keys:
        items.sort(key=lambda e: float_keys.get(e, 0.0))
        if all(a.compare(b) < 0 for a, b in zip(items, items[1:])):
            return items
    items.sort(key=cmp_to_key(lambda a, b: a.compare(b)))
    return items
