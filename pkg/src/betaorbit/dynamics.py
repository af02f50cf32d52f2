"""The dynamical layer: digit maps x -> beta*x - i on [0, m/(beta-1)].

Provides membership and branch-set queries, prefix checks, brute-force
prefix counting (the enumeration oracle the matrix method is checked
against), expansion generation under greedy/lazy/alternating/interval-table
rules with exact periodicity detection, and residual verification of digit
strings.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .errors import InvalidRule, OutsideInterval
from .field import FieldElement, NumberField
from .polys import Interval

DigitWord = tuple[int, ...]


class ExpansionParams:
    """Fixes the dynamical system: the field, the digit bound m, and the
    interval [0, m/(beta-1)] the maps must not leave."""

    def __init__(self, field: NumberField, m: int):
        if m < 1:
            raise ValueError("m must be a positive integer")
        self.field = field
        self.m = m
        self.beta = field.beta
        if not (self.beta > 1):
            raise ValueError("beta must exceed 1")
        if not (self.beta <= m + 1):
            raise ValueError(f"beta must lie in (1, {m + 1}] for m = {m}")
        self.right_endpoint = m * (self.beta - 1).inverse()
        assert self.right_endpoint * (self.beta - 1) == field.from_rational(m)

    def __repr__(self):
        return f"ExpansionParams(m={self.m}, {self.field!r})"

    def contains(self, x: FieldElement) -> bool:
        """Closed-interval membership 0 <= x <= m/(beta-1)."""
        return x.compare(self.field.zero) >= 0 and x.compare(self.right_endpoint) <= 0

    def apply(self, digit: int, x: FieldElement) -> FieldElement:
        """The digit map beta*x - digit (total; the image may leave the interval)."""
        return self.beta * x - digit

    def branch_digits(self, x: FieldElement) -> tuple[int, ...]:
        """Ascending digits i with beta*x - i still inside the interval.
        Nonempty for every point of the interval."""
        self._require_inside(x)
        bx = self.beta * x
        digits = tuple(
            i for i in range(self.m + 1)
            if (bx - i).compare(self.field.zero) >= 0
            and (bx - i).compare(self.right_endpoint) <= 0
        )
        assert digits, "every interval point admits at least one digit"
        return digits

    def _require_inside(self, x: FieldElement) -> None:
        if not self.contains(x):
            raise OutsideInterval(f"{x!r} lies outside [0, m/(beta-1)]")

    def parse_point(self, text: str) -> FieldElement:
        """Parse a point given either as FieldElement JSON or as an expression
        in b (see expr module)."""
        from . import expr
        return expr.parse_point(self, text)


class ExpansionRule:
    """Digit selector iterated to generate one specific expansion.

    Built-ins pick the largest admissible digit (greedy), the smallest
    (lazy), or alternate between the two per step.  A finite interval table
    assigns one digit to each piece of a partition of the interval;
    validation checks the pieces tile the interval exactly and that each
    piece's digit is admissible throughout the piece.
    """

    GREEDY = "greedy"
    LAZY = "lazy"
    ALTERNATING = "alternating"
    TABLE = "table"

    def __init__(self, kind: str, pieces=None):
        self.kind = kind
        self.pieces = pieces

    @classmethod
    def greedy(cls) -> "ExpansionRule":
        return cls(cls.GREEDY)

    @classmethod
    def lazy(cls) -> "ExpansionRule":
        return cls(cls.LAZY)

    @classmethod
    def alternating(cls) -> "ExpansionRule":
        """Alternates greedy and lazy choices per step (an extension beyond
        the built-in pair, useful for exercising periodicity)."""
        return cls(cls.ALTERNATING)

    @classmethod
    def interval_table(cls, params: ExpansionParams,
                       pieces: Sequence[tuple[FieldElement, FieldElement, int]]) -> "ExpansionRule":
        """Table of (lo, hi, digit) pieces covering [0, m/(beta-1)].

        Pieces are half-open [lo, hi) except the last, which is closed.  The
        digit of a piece must keep every point of the piece inside the
        interval, which reduces to two endpoint checks per piece:
        beta*lo - digit >= 0 and beta*hi - digit <= m/(beta-1).
        """
        if not pieces:
            raise InvalidRule("empty interval table")
        zero = params.field.zero
        ordered = sorted(pieces, key=lambda t: t[0])
        if ordered[0][0] != zero:
            raise InvalidRule("table must start at 0")
        for (lo, hi, digit) in ordered:
            if not 0 <= digit <= params.m:
                raise InvalidRule(f"digit {digit} outside 0..{params.m}")
            if not lo < hi:
                raise InvalidRule("piece endpoints must be strictly increasing")
            if (params.beta * lo - digit).compare(zero) < 0:
                raise InvalidRule(f"digit {digit} leaves the interval at the low end of a piece")
            if (params.beta * hi - digit).compare(params.right_endpoint) > 0:
                raise InvalidRule(f"digit {digit} leaves the interval at the high end of a piece")
        for (_, hi, _), (lo2, _, _) in zip(ordered, ordered[1:]):
            if hi != lo2:
                raise InvalidRule("pieces must tile the interval without gaps or overlaps")
        if ordered[-1][1] != params.right_endpoint:
            raise InvalidRule("table must end at m/(beta-1)")
        return cls(cls.TABLE, tuple(ordered))

    def choose(self, params: ExpansionParams, x: FieldElement, step: int,
               branch: tuple[int, ...]) -> int:
        if self.kind == self.GREEDY:
            return branch[-1]
        if self.kind == self.LAZY:
            return branch[0]
        if self.kind == self.ALTERNATING:
            return branch[-1] if step % 2 == 0 else branch[0]
        # interval table: last piece is closed on the right
        for idx, (lo, hi, digit) in enumerate(self.pieces):
            last = idx == len(self.pieces) - 1
            if x.compare(lo) >= 0 and (x.compare(hi) < 0 or (last and x.compare(hi) <= 0)):
                assert digit in branch
                return digit
        raise InvalidRule(f"no table piece contains {x!r}")


@dataclass
class ExpansionRun:
    """Digit output of an iterated rule, split into preperiod and one period.

    When no exact state recurrence appeared within the step budget,
    period_length is None and digits holds every generated digit.
    """

    digits: DigitWord
    preperiod_length: int
    period_length: int | None
    states_visited: list = dc_field(default_factory=list)

    @property
    def is_periodic(self) -> bool:
        return self.period_length is not None

    @property
    def preperiod_digits(self) -> DigitWord:
        return self.digits[: self.preperiod_length]

    @property
    def period_digits(self) -> DigitWord:
        if not self.is_periodic:
            return ()
        return self.digits[self.preperiod_length: self.preperiod_length + self.period_length]

    def to_json(self) -> dict:
        return {
            "preperiod": list(self.preperiod_digits),
            "period": list(self.period_digits) if self.is_periodic else None,
            "states": [s.to_json() for s in self.states_visited],
        }


def is_prefix(params: ExpansionParams, x: FieldElement, word: Sequence[int]) -> bool:
    """True when applying the word's digit maps in order keeps every
    intermediate point inside the interval."""
    params._require_inside(x)
    cur = x
    for d in word:
        if not 0 <= d <= params.m:
            return False
        cur = params.apply(d, cur)
        if not params.contains(cur):
            return False
    return True


def count_prefixes_bruteforce(params: ExpansionParams, x: FieldElement, n: int) -> int:
    """Exact number of admissible length-n digit words from x, by depth-first
    enumeration of the branching tree.

    This is the independent oracle for the transition-matrix counts; it never
    builds a matrix.  Only the one-step dynamics are memoized per state, the
    counting itself walks every admissible word.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    params._require_inside(x)
    children: dict = {}

    def expand(y: FieldElement):
        got = children.get(y)
        if got is None:
            got = tuple(params.apply(i, y) for i in params.branch_digits(y))
            children[y] = got
        return got

    def count(y: FieldElement, depth: int) -> int:
        if depth == 0:
            return 1
        return sum(count(z, depth - 1) for z in expand(y))

    return count(x, n)


def generate_expansion(params: ExpansionParams, x: FieldElement, rule: ExpansionRule,
                       max_steps: int = 10_000) -> ExpansionRun:
    """Iterate the rule from x, recording digits until an exact state
    recurrence (canonical-form lookup, no numeric hashing) or max_steps."""
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    params._require_inside(x)
    seen = {x: 0}
    states = [x]
    digits: list[int] = []
    cur = x
    for step in range(max_steps):
        branch = params.branch_digits(cur)
        d = rule.choose(params, cur, step, branch)
        digits.append(d)
        cur = params.apply(d, cur)
        hit = seen.get(cur)
        if hit is not None:
            period = step + 1 - hit
            return ExpansionRun(
                digits=tuple(digits[: hit + period]),
                preperiod_length=hit,
                period_length=period,
                states_visited=states,
            )
        seen[cur] = step + 1
        states.append(cur)
    return ExpansionRun(
        digits=tuple(digits),
        preperiod_length=max_steps,
        period_length=None,
        states_visited=states,
    )


def verify_expansion(params: ExpansionParams, x: FieldElement, word: Sequence[int],
                     eps=Fraction(1, 10 ** 30)) -> Interval:
    """Enclosure of |x - sum_i digit_i * beta^(-i)| for a finite digit word.

    For an admissible prefix the residual is at most (m/(beta-1)) * beta^(-n).
    """
    inv_beta = params.beta.inverse()
    acc = params.field.zero
    for d in reversed(tuple(word)):
        acc = (acc + d) * inv_beta
    return (x - acc).abs_enclosure(eps)


def expansion_value(params: ExpansionParams, preperiod: Sequence[int],
                    period: Sequence[int]) -> FieldElement:
    """Exact value of the eventually periodic expansion
    0.p_1..p_r (q_1..q_l)^inf in base beta, via the geometric series
    closed form."""
    if not period:
        raise ValueError("period must be nonempty")
    inv_beta = params.beta.inverse()

    def finite_sum(word):
        acc = params.field.zero
        for d in reversed(tuple(word)):
            acc = (acc + d) * inv_beta
        return acc

    s_pre = finite_sum(preperiod)
    s_per = finite_sum(period)
    shift = inv_beta ** len(preperiod)
    tail = s_per * (params.field.one - inv_beta ** len(period)).inverse()
    return s_pre + shift * tail


def digits_to_text(word: Sequence[int], m: int, period: Sequence[int] | None = None) -> str:
    """Text form: digits run together when m <= 9, comma-separated otherwise;
    a repeating block is parenthesized."""
    sep = "" if m <= 9 else ","
    head = sep.join(str(d) for d in word)
    if period is None:
        return head
    return head + "(" + sep.join(str(d) for d in period) + ")"


def text_to_digits(text: str, m: int) -> DigitWord:
    text = text.strip()
    if not text:
        return ()
    if m <= 9 and "," not in text:
        word = tuple(int(ch) for ch in text)
    else:
        word = tuple(int(part) for part in text.split(","))
    for d in word:
        if not 0 <= d <= m:
            raise ValueError(f"digit {d} outside 0..{m}")
    return word
