"""Exact univariate polynomial arithmetic over the rationals.

A polynomial is a tuple of Fraction coefficients, lowest degree first, with
no trailing zeros; the zero polynomial is the empty tuple. Everything here is
pure and exact. Root counting and isolation use Sturm chains driven by
sign-variation bisection on rational endpoints, so sign decisions on
intervals never touch floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Poly = tuple[Fraction, ...]

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)


def poly(coeffs: Iterable) -> Poly:
    """Build a normalized polynomial from low-to-high coefficients."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def is_zero(p: Poly) -> bool:
    return not p


def degree(p: Poly) -> int:
    """Degree, with the convention degree(0) == -1."""
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return poly(out)


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(c * a for a in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly(out)


def evaluate(p: Poly, x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return poly(i * c for i, c in enumerate(p) if i > 0)


def antiderivative(p: Poly) -> Poly:
    return poly([Fraction(0)] + [c / (i + 1) for i, c in enumerate(p)])


def definite_integral(p: Poly, lo, hi) -> Fraction:
    ad = antiderivative(p)
    return evaluate(ad, hi) - evaluate(ad, lo)


def power_moment(p: Poly, lo, hi, k: int) -> Fraction:
    """Exact ``integral of x^k * p(x) over [lo, hi]``.

    Computed termwise so the degree-(k + deg p) antiderivative is never
    materialized; incremental powers keep this cheap for large k.
    """
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    if not p:
        return Fraction(0)
    lo = Fraction(lo)
    hi = Fraction(hi)
    plo = lo ** (k + 1)
    phi = hi ** (k + 1)
    total = Fraction(0)
    for j, c in enumerate(p):
        if c != 0:
            total += c * (phi - plo) / (k + j + 1)
        plo *= lo
        phi *= hi
    return total


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    dq = len(q) - 1
    lead = q[-1]
    for i in range(len(rem) - 1, dq - 1, -1):
        if rem[i] == 0:
            continue
        f = rem[i] / lead
        quo[i - dq] = f
        for j, b in enumerate(q):
            rem[i - dq + j] -= f * b
    return poly(quo), poly(rem)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor (1 for coprime inputs)."""
    a, b = p, q
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return ZERO
    return scale(a, 1 / a[-1])


def squarefree_part(p: Poly) -> Poly:
    if degree(p) < 1:
        return p
    g = poly_gcd(p, derivative(p))
    if degree(g) < 1:
        return p
    return divmod_poly(p, g)[0]


def deflate(p: Poly, r) -> Poly:
    """Divide out an exact rational root r (synthetic division)."""
    r = Fraction(r)
    out = [Fraction(0)] * (len(p) - 1)
    carry = Fraction(0)
    for i in range(len(p) - 1, 0, -1):
        carry = p[i] + carry * r
        out[i - 1] = carry
    if p[0] + carry * r != 0:
        raise ValueError("not a root, cannot deflate")
    return poly(out)


def sturm_chain(p: Poly) -> list[Poly]:
    """Sturm chain of a squarefree polynomial, leading signs preserved."""
    chain = [p, derivative(p)]
    while chain[-1]:
        r = divmod_poly(chain[-2], chain[-1])[1]
        if not r:
            break
        # positive rescaling keeps signs while taming coefficient growth
        chain.append(scale(neg(r), 1 / abs(r[-1])))
    return [c for c in chain if c]


def _variations(chain: Sequence[Poly], x) -> int:
    signs = []
    for c in chain:
        v = evaluate(c, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_open(chain: Sequence[Poly], lo, hi) -> int:
    """Distinct roots in (lo, hi); endpoints must not be roots of chain[0]."""
    return _variations(chain, lo) - _variations(chain, hi)


def isolate_roots(p: Poly, a, b) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the distinct real roots of p in [a, b].

    Returned in increasing order. A degenerate pair (r, r) is an exact
    rational root; otherwise exactly one root of p lies in the open interval
    and p is nonzero at both endpoints. Raises ValueError for the zero
    polynomial (every point would be a root).
    """
    if is_zero(p):
        raise ValueError("cannot isolate roots of the zero polynomial")
    a = Fraction(a)
    b = Fraction(b)
    if a > b:
        raise ValueError("empty interval")
    q = squarefree_part(p)
    out: list[tuple[Fraction, Fraction]] = []
    if evaluate(q, a) == 0:
        out.append((a, a))
        q = deflate(q, a)
    if b > a and evaluate(q, b) == 0:
        out.append((b, b))
        q = deflate(q, b)
    if degree(q) >= 1 and b > a:
        out.extend(_isolate_open(q, a, b))
    out.sort()
    return out


def _isolate_open(q: Poly, a, b) -> list[tuple[Fraction, Fraction]]:
    chain = sturm_chain(q)
    out = []
    stack = [(a, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots_open(chain, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if evaluate(q, mid) != 0:
            stack.append((lo, mid))
            stack.append((mid, hi))
            continue
        out.append((mid, mid))
        # flank the exact root so both remaining halves have nonroot endpoints
        eps = (hi - lo) / 4
        while True:
            l2, h2 = mid - eps, mid + eps
            if (
                l2 > lo
                and h2 < hi
                and evaluate(q, l2) != 0
                and evaluate(q, h2) != 0
                and count_roots_open(chain, l2, h2) == 1
            ):
                break
            eps /= 2
        stack.append((lo, l2))
        stack.append((h2, hi))
    return out


def _refine_to_interior(q: Poly, chain, lo, hi, keep_off: Fraction, side: str):
    """Shrink an isolating interval until it no longer touches keep_off."""
    while (side == "lo" and lo <= keep_off) or (side == "hi" and hi >= keep_off):
        mid = (lo + hi) / 2
        if evaluate(q, mid) == 0:
            return mid, mid
        if count_roots_open(chain, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def refine_root_below(p: Poly, lo, hi, bound) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval until its upper end is < bound.

    (lo, hi) must contain exactly one distinct root of p with p nonzero at
    both ends, and the root must be < bound. Returns a refined isolating
    interval (possibly degenerate when the root is rational and hit exactly).
    """
    q = squarefree_part(p)
    chain = sturm_chain(q)
    lo, hi, bound = Fraction(lo), Fraction(hi), Fraction(bound)
    while hi >= bound:
        mid = (lo + hi) / 2
        if evaluate(q, mid) == 0:
            return mid, mid
        if count_roots_open(chain, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def region_signs(p: Poly, a, b):
    """Exact sign analysis of p on [a, b].

    Returns (roots, samples, signs) where roots are isolating intervals of
    the distinct roots of p in [a, b], samples are rational points, one in
    each maximal root-free region of [a, b] (in increasing order), and signs
    are the corresponding values of sign(p), all nonzero. If p vanishes
    identically the three tuples are empty.
    """
    if is_zero(p):
        return (), (), ()
    a = Fraction(a)
    b = Fraction(b)
    ivs = isolate_roots(p, a, b)
    if not ivs:
        mid = (a + b) / 2
        v = evaluate(p, mid)
        s = 1 if v > 0 else -1
        return (), (mid,), (s,)

    q = squarefree_part(p)
    for lo, hi in ivs:
        if lo == hi and q and evaluate(q, lo) == 0:
            q = deflate(q, lo)
    chain = sturm_chain(q) if degree(q) >= 1 else None

    # separate isolating intervals from the outer endpoints when those are
    # roots, so every root-free region owns a usable sample point
    fixed = []
    for lo, hi in ivs:
        if lo < hi and chain:
            if lo == a and evaluate(p, a) == 0:
                lo, hi = _refine_to_interior(q, chain, lo, hi, a, "lo")
            if hi == b and evaluate(p, b) == 0 and lo < hi:
                lo, hi = _refine_to_interior(q, chain, lo, hi, b, "hi")
        fixed.append((lo, hi))
    fixed.sort()

    samples = []
    prev = a
    for lo, hi in fixed:
        if prev < lo:
            pt = prev if evaluate(p, prev) != 0 else (prev + lo) / 2
            samples.append(pt if evaluate(p, pt) != 0 else (pt + lo) / 2)
        elif prev == lo and evaluate(p, prev) != 0:
            samples.append(prev)
        prev = hi
    if prev < b:
        pt = (prev + b) / 2 if evaluate(p, prev) == 0 else prev
        samples.append(pt)
    elif prev == b and evaluate(p, b) != 0:
        samples.append(b)

    # dedupe while keeping order
    seen = set()
    pts = []
    for s in samples:
        if s not in seen:
            seen.add(s)
            pts.append(s)
    signs = []
    for s in pts:
        v = evaluate(p, s)
        if v == 0:  # touching sample lies on a root: perturb into the region
            raise AssertionError("sample landed on a root")
        signs.append(1 if v > 0 else -1)
    return tuple(fixed), tuple(pts), tuple(signs)


def nonneg_on(p: Poly, a, b) -> tuple[bool, Fraction | None]:
    """Decide p(x) >= 0 for all x in [a, b]; returns (ok, witness).

    The witness is a rational point with p(witness) < 0 when the check
    fails. The zero polynomial is nonnegative.
    """
    if is_zero(p):
        return True, None
    _, pts, signs = region_signs(p, a, b)
    for pt, s in zip(pts, signs):
        if s < 0:
            return False, pt
    return True, None


def positive_on(p: Poly, a, b) -> bool:
    """Decide p(x) > 0 for all x in [a, b]."""
    if is_zero(p):
        return False
    roots, _, signs = region_signs(p, a, b)
    return not roots and all(s > 0 for s in signs)


def sign_run_pattern(p: Poly, a, b) -> tuple[int, ...]:
    """Compressed sequence of nonzero signs of p across [a, b]."""
    if is_zero(p):
        return ()
    _, _, signs = region_signs(p, a, b)
    out = []
    for s in signs:
        if not out or out[-1] != s:
            out.append(s)
    return tuple(out)


def abs_bound_on(p: Poly, a, b) -> Fraction:
    """Cheap exact upper bound for |p| on [a, b] via coefficient sums."""
    m = max(abs(Fraction(a)), abs(Fraction(b)))
    total = Fraction(0)
    pw = Fraction(1)
    for c in p:
        total += abs(c) * pw
        pw *= m
    return total


def shift(p: Poly, c) -> Poly:
    """Compose with a translation: returns q with q(t) = p(t + c)."""
    c = Fraction(c)
    out: Poly = ()
    for coeff in reversed(p):
        out = add(mul(out, poly([c, 1])), poly([coeff]))
    return out


def shifted_abs_bound_on(p: Poly, a, b) -> Fraction:
    """Exact upper bound for |p| on [a, b] from local-basis coefficients.

    Expanding around a kills the cancellation that makes the global
    coefficient bound useless for bump-like polynomials.
    """
    a, b = Fraction(a), Fraction(b)
    q = shift(p, a)
    w = b - a
    total = Fraction(0)
    pw = Fraction(1)
    for coeff in q:
        total += abs(coeff) * pw
        pw *= w
    return total
