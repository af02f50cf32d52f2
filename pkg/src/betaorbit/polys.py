"""Exact univariate polynomial arithmetic and certified root machinery.

Polynomials are dense coefficient tuples, constant term first.  Everything in
this module works over the rationals (fractions.Fraction) or the integers;
nothing here touches floating point except the complex-root *proposal* step,
whose output is certified afterwards by exact interval Newton contraction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NotSquarefree

Rat = Fraction
Interval = tuple[Fraction, Fraction]
# Axis-aligned rational rectangle in the complex plane: (re_interval, im_interval).
Box = tuple[Interval, Interval]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# basic arithmetic
# ---------------------------------------------------------------------------

def normalize(coeffs: Sequence) -> tuple[Fraction, ...]:
    """Coerce to Fractions and strip trailing zero coefficients."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: Sequence) -> int:
    """Degree of a normalized polynomial; the zero polynomial has degree -1."""
    return len(p) - 1


def evaluate(p: Sequence, x: Fraction) -> Fraction:
    acc = _ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def evaluate_interval(p: Sequence, lo: Fraction, hi: Fraction) -> Interval:
    """Enclosure of p([lo, hi]) by interval Horner evaluation."""
    alo = ahi = _ZERO
    for c in reversed(p):
        prods = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(prods) + c, max(prods) + c
    return alo, ahi


def derivative(p: Sequence) -> tuple[Fraction, ...]:
    return normalize([i * p[i] for i in range(1, len(p))])


def add(p: Sequence, q: Sequence) -> tuple[Fraction, ...]:
    n = max(len(p), len(q))
    return normalize([
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
        for i in range(n)
    ])


def negate(p: Sequence) -> tuple[Fraction, ...]:
    return tuple(-c for c in p)


def mul(p: Sequence, q: Sequence) -> tuple[Fraction, ...]:
    if not p or not q:
        return ()
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return normalize(out)


def divmod_poly(p: Sequence, q: Sequence) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Exact euclidean division over the rationals."""
    p = list(normalize(p))
    q = normalize(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    dq, lead = degree(q), q[-1]
    quot = [_ZERO] * max(len(p) - dq, 0)
    while len(p) - 1 >= dq and p:
        shift = len(p) - 1 - dq
        factor = p[-1] / lead
        quot[shift] = factor
        for i in range(dq + 1):
            p[shift + i] -= factor * q[i]
        while p and p[-1] == 0:
            p.pop()
    return normalize(quot), tuple(p)


def monic(p: Sequence) -> tuple[Fraction, ...]:
    p = normalize(p)
    if not p:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def gcd_poly(p: Sequence, q: Sequence) -> tuple[Fraction, ...]:
    """Monic gcd over the rationals by the euclidean algorithm."""
    a, b = normalize(p), normalize(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
        b = monic(b) if b else b  # renormalize to tame coefficient growth
    return monic(a)


def is_squarefree(p: Sequence) -> bool:
    p = normalize(p)
    if degree(p) < 1:
        return True
    return degree(gcd_poly(p, derivative(p))) == 0


def squarefree_part(p: Sequence) -> tuple[Fraction, ...]:
    """p / gcd(p, p'), monic."""
    p = normalize(p)
    g = gcd_poly(p, derivative(p))
    if degree(g) == 0:
        return monic(p)
    return monic(divmod_poly(p, g)[0])


def squarefree_part_int(p: Sequence[int]) -> tuple[int, ...]:
    """Squarefree part of a monic integer polynomial; stays monic over Z."""
    sf = squarefree_part([Fraction(c) for c in p])
    out = []
    for c in sf:
        if c.denominator != 1:
            raise AssertionError("squarefree part of a monic integer polynomial must be integral")
        out.append(c.numerator)
    return tuple(out)


# ---------------------------------------------------------------------------
# Sturm sequences and real root isolation
# ---------------------------------------------------------------------------

def sturm_chain(p: Sequence) -> list[tuple[Fraction, ...]]:
    """Sturm chain of a squarefree polynomial, with positive rescaling per step."""
    p = normalize(p)
    chain = [p, derivative(p)]
    while chain[-1]:
        rem = divmod_poly(chain[-2], chain[-1])[1]
        if not rem:
            break
        # positive scaling preserves the sign-variation count
        scale = abs(rem[-1])
        chain.append(tuple(-c / scale for c in rem))
    return [c for c in chain if c]


def _sign_variations(values: Sequence[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_between(chain: list[tuple[Fraction, ...]], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b]; endpoints must not be roots of chain[0]."""
    va = _sign_variations([evaluate(c, a) for c in chain])
    vb = _sign_variations([evaluate(c, b) for c in chain])
    return va - vb


def root_bound(p: Sequence) -> Fraction:
    """Cauchy bound: all complex roots have modulus strictly below the bound."""
    p = normalize(p)
    lead = p[-1]
    return _ONE + max(abs(c / lead) for c in p)


def integer_roots(p: Sequence[int]) -> list[int]:
    """All integer roots of an integer polynomial (rational roots are integers
    when the polynomial is monic)."""
    p = [int(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    if len(p) <= 1:
        return []
    roots = []
    if p[0] == 0:
        roots.append(0)
        while p and p[0] == 0:
            p = p[1:]  # divide out the factor z^k
    if len(p) <= 1:
        return sorted(roots)
    c0 = abs(p[0])
    divisors = set()
    d = 1
    while d * d <= c0:
        if c0 % d == 0:
            divisors.update((d, c0 // d))
        d += 1
    for d in sorted(divisors):
        for cand in (d, -d):
            if evaluate(p, Fraction(cand)) == 0:
                roots.append(cand)
    return sorted(roots)


def deflate(p: Sequence, r: Fraction) -> tuple[Fraction, ...]:
    """Divide out a known exact root r (synthetic division)."""
    p = normalize(p)
    out = [_ZERO] * (len(p) - 1)
    acc = _ZERO
    for i in range(len(p) - 1, 0, -1):
        acc = acc * r + p[i]
        out[i - 1] = acc
    assert acc * r + p[0] == 0, "deflation by a non-root"
    return normalize(out)


def isolate_real_roots(p: Sequence) -> list[Interval]:
    """Isolating intervals for every real root of a squarefree polynomial.

    Returns ascending intervals [lo, hi], each containing exactly one real
    root of p; exact rational roots come back as degenerate [r, r].  For
    non-degenerate intervals the endpoints are non-roots and p changes sign
    across the interval, so plain bisection refines them.
    """
    p = normalize(p)
    if degree(p) < 1:
        return []
    if not is_squarefree(p):
        raise NotSquarefree("root isolation requires a squarefree polynomial")

    # Exact rational roots of a monic integer polynomial are integers.  The
    # fields built here always have monic integer defining polynomials, so
    # peeling integer roots off first leaves a polynomial with no dyadic
    # roots at all, making every bisection midpoint sign-safe.
    work = p
    exact: list[Fraction] = []
    if all(c.denominator == 1 for c in p) and p[-1] == 1:
        for r in integer_roots([c.numerator for c in p]):
            exact.append(Fraction(r))
            work = deflate(work, Fraction(r))

    intervals: list[Interval] = []
    if degree(work) >= 1:
        chain = sturm_chain(work)
        bound = root_bound(work)
        stack = [(-bound, bound, count_roots_between(chain, -bound, bound))]
        while stack:
            lo, hi, n = stack.pop()
            if n == 0:
                continue
            if n == 1:
                intervals.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            left = count_roots_between(chain, lo, mid)
            stack.append((lo, mid, left))
            stack.append((mid, hi, n - left))

        # shrink so no isolating interval also contains a deflated exact root
        shrunk = []
        for lo, hi in intervals:
            while any(lo < r < hi for r in exact):
                lo, hi = bisect_step(work, lo, hi)
            shrunk.append((lo, hi))
        intervals = shrunk

    out = intervals + [(r, r) for r in exact]
    out.sort(key=lambda iv: iv[0] + iv[1])
    return out


def bisect_step(p: Sequence, lo: Fraction, hi: Fraction) -> Interval:
    """One bisection step on a sign-change bracket of a squarefree polynomial."""
    if lo == hi:
        return lo, hi
    mid = (lo + hi) / 2
    vm = evaluate(p, mid)
    if vm == 0:  # only possible for rational roots, which the fields deflate
        return mid, mid
    if (evaluate(p, lo) > 0) != (vm > 0):
        return lo, mid
    return mid, hi


def refine_to_width(p: Sequence, lo: Fraction, hi: Fraction, width: Fraction) -> Interval:
    while hi - lo > width:
        lo, hi = bisect_step(p, lo, hi)
    return lo, hi


def count_roots_in_interval(p: Sequence, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of squarefree p in [lo, hi] (endpoint-exact)."""
    p = normalize(p)
    if degree(p) < 1:
        return 0
    n = 1 if (lo != hi and evaluate(p, lo) == 0) else 0
    if lo == hi:
        return 1 if evaluate(p, lo) == 0 else 0
    return n + count_roots_between(sturm_chain(p), lo, hi)


# ---------------------------------------------------------------------------
# rational interval helpers
# ---------------------------------------------------------------------------

def decimal_str(x: Fraction, places: int, direction: int) -> str:
    """Directed decimal rendering: direction < 0 rounds down, > 0 rounds up,
    so rendered [lo, hi] pairs remain true enclosures."""
    scaled = x * 10 ** places
    n = scaled.numerator // scaled.denominator
    if direction > 0 and n * scaled.denominator != scaled.numerator:
        n += 1
    sign = "-" if n < 0 else ""
    intpart, fracpart = divmod(abs(n), 10 ** places)
    return f"{sign}{intpart}.{str(fracpart).zfill(places)}"


def interval_mul(a: Interval, b: Interval) -> Interval:
    prods = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(prods), max(prods)


def interval_add(a: Interval, b: Interval) -> Interval:
    return a[0] + b[0], a[1] + b[1]


def interval_sub(a: Interval, b: Interval) -> Interval:
    return a[0] - b[1], a[1] - b[0]


def interval_div(a: Interval, b: Interval) -> Interval:
    """a / b for an interval b that excludes zero."""
    if b[0] <= 0 <= b[1]:
        raise ZeroDivisionError("interval divisor contains zero")
    quots = (a[0] / b[0], a[0] / b[1], a[1] / b[0], a[1] / b[1])
    return min(quots), max(quots)


def round_down(x: Fraction, bits: int) -> Fraction:
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def round_up(x: Fraction, bits: int) -> Fraction:
    return Fraction(-((-x.numerator << bits) // x.denominator), 1 << bits)


def round_out_interval(iv: Interval, extra_bits: int = 32) -> Interval:
    """Outward-round an interval to dyadics whose granularity is extra_bits
    finer than the interval width, keeping coordinate sizes bounded."""
    lo, hi = iv
    width = hi - lo
    if width <= 0:
        return iv
    bits = max(0, width.denominator.bit_length() - width.numerator.bit_length()) + extra_bits
    return round_down(lo, bits), round_up(hi, bits)


def sqrt_bounds(value: Fraction, iters: int = 4) -> Interval:
    """Rational enclosure of sqrt(value) for value >= 0, by Heron iteration
    from the arithmetic-mean upper bound (iterates rounded outward so sizes
    stay bounded; the bound directions are preserved)."""
    if value < 0:
        raise ValueError("sqrt of a negative rational")
    if value == 0:
        return _ZERO, _ZERO
    hi = round_up((value + 1) / 2, 96)
    for _ in range(iters):
        hi = round_up((hi + value / hi) / 2, 96)
    return round_down(value / hi, 96), hi


# ---------------------------------------------------------------------------
# complex boxes and interval Newton certification
# ---------------------------------------------------------------------------

def box_add(a: Box, b: Box) -> Box:
    return interval_add(a[0], b[0]), interval_add(a[1], b[1])


def box_mul(a: Box, b: Box) -> Box:
    re = interval_sub(interval_mul(a[0], b[0]), interval_mul(a[1], b[1]))
    im = interval_add(interval_mul(a[0], b[1]), interval_mul(a[1], b[0]))
    return re, im


def box_from_point(re: Fraction, im: Fraction) -> Box:
    return (re, re), (im, im)


def box_contains_zero(b: Box) -> bool:
    return b[0][0] <= 0 <= b[0][1] and b[1][0] <= 0 <= b[1][1]


def box_mod2_bounds(b: Box) -> Interval:
    """Exact bounds on |z|^2 over a rectangle."""
    (rlo, rhi), (ilo, ihi) = b

    def sq_bounds(lo: Fraction, hi: Fraction) -> Interval:
        mx = max(lo * lo, hi * hi)
        mn = _ZERO if lo <= 0 <= hi else min(lo * lo, hi * hi)
        return mn, mx

    rl, rh = sq_bounds(rlo, rhi)
    il, ih = sq_bounds(ilo, ihi)
    return rl + il, rh + ih


def box_div(a: Box, b: Box) -> Box:
    """a / b for a rectangle b excluding the origin: a * conj(b) / |b|^2."""
    conj = (b[0], (-b[1][1], -b[1][0]))
    num = box_mul(a, conj)
    m2 = box_mod2_bounds(b)
    if m2[0] <= 0:
        raise ZeroDivisionError("box divisor contains the origin")
    return interval_div(num[0], m2), interval_div(num[1], m2)


def eval_poly_box(p: Sequence, z: Box) -> Box:
    acc = box_from_point(_ZERO, _ZERO)
    for c in reversed(p):
        acc = box_add(box_mul(acc, z), box_from_point(Fraction(c), _ZERO))
    return acc


def eval_poly_complex_point(p: Sequence, re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    are, aim = _ZERO, _ZERO
    for c in reversed(p):
        are, aim = are * re - aim * im + Fraction(c), are * im + aim * re
    return are, aim


def newton_box_step(p: Sequence, dp: Sequence, b: Box) -> Box | None:
    """One interval Newton step N(b) = mid(b) - p(mid)/p'(b), or None when
    the derivative box contains the origin."""
    dpb = eval_poly_box(dp, b)
    if box_contains_zero(dpb):
        return None
    mre = (b[0][0] + b[0][1]) / 2
    mim = (b[1][0] + b[1][1]) / 2
    fre, fim = eval_poly_complex_point(p, mre, mim)
    quot = box_div(box_from_point(fre, fim), dpb)
    return interval_sub((mre, mre), quot[0]), interval_sub((mim, mim), quot[1])


def _box_strictly_inside(inner: Box, outer: Box) -> bool:
    return (outer[0][0] < inner[0][0] and inner[0][1] < outer[0][1]
            and outer[1][0] < inner[1][0] and inner[1][1] < outer[1][1])


def _box_intersect(a: Box, b: Box) -> Box | None:
    rlo, rhi = max(a[0][0], b[0][0]), min(a[0][1], b[0][1])
    ilo, ihi = max(a[1][0], b[1][0]), min(a[1][1], b[1][1])
    if rlo > rhi or ilo > ihi:
        return None
    return (rlo, rhi), (ilo, ihi)


def certify_box(p: Sequence, dp: Sequence, b: Box) -> Box | None:
    """Certify that b contains exactly one root of p.

    Returns a (possibly smaller) certified box when the interval Newton
    operator maps b strictly into itself, which proves existence and
    uniqueness of a simple root; returns None when certification fails.
    """
    nb = newton_box_step(p, dp, b)
    if nb is None or not _box_strictly_inside(nb, b):
        return None
    nb = round_out_box(nb)
    shrunk = _box_intersect(nb, b)
    return shrunk if shrunk is not None else nb


def round_out_box(b: Box, extra_bits: int = 32) -> Box:
    return round_out_interval(b[0], extra_bits), round_out_interval(b[1], extra_bits)


def refine_certified_box(p: Sequence, dp: Sequence, b: Box) -> Box:
    """Shrink a certified box; outward rounding after the Newton step keeps
    coordinate sizes bounded, and intersecting with the old box keeps the
    contained root and the exactly-one-root certificate."""
    nb = newton_box_step(p, dp, b)
    if nb is None:
        return b
    shrunk = _box_intersect(round_out_box(nb), b)
    return shrunk if shrunk is not None else b


def propose_and_certify_complex_roots(p_int: Sequence[int], n_pairs: int) -> list[Box]:
    """Certified boxes for the n_pairs non-real roots of p with positive
    imaginary part.  numpy proposes, exact rational Newton polishes, and
    interval Newton certifies; floats never enter the certified result.
    """
    if n_pairs == 0:
        return []
    import numpy as np

    p = normalize(p_int)
    dp = derivative(p)
    approx = np.roots([float(c) for c in reversed(p)])
    cands = sorted(
        (complex(z) for z in approx if z.imag > 1e-12),
        key=lambda z: (z.real, z.imag),
    )
    if len(cands) != n_pairs:
        # fall back to the most-imaginary candidates if float noise blurred
        # a nearly-real pair
        cands = sorted(
            (complex(z) for z in approx if z.imag > 0),
            key=lambda z: -z.imag,
        )[:n_pairs]
        cands.sort(key=lambda z: (z.real, z.imag))

    boxes: list[Box] = []
    for z in cands:
        re = Fraction(z.real).limit_denominator(10 ** 17)
        im = Fraction(z.imag).limit_denominator(10 ** 17)
        # polish with exact rational Newton steps so the certification box
        # can be taken very small
        for _ in range(3):
            fre, fim = eval_poly_complex_point(p, re, im)
            dre, dim = eval_poly_complex_point(dp, re, im)
            den = dre * dre + dim * dim
            if den == 0:
                break
            sre = (fre * dre + fim * dim) / den
            sim = (fim * dre - fre * dim) / den
            re = (re - sre).limit_denominator(10 ** 40)
            im = (im - sim).limit_denominator(10 ** 40)
        certified = None
        h = Fraction(1, 10 ** 12)
        while certified is None and h < 1:
            box: Box = ((re - h, re + h), (im - h, im + h))
            if box[1][0] > 0:  # stay strictly above the real axis
                certified = certify_box(p, dp, box)
            h *= 64
        if certified is None:
            raise ArithmeticError(
                "failed to certify a complex root enclosure near "
                f"{float(re):.6g}+{float(im):.6g}i"
            )
        boxes.append(certified)
    return boxes
