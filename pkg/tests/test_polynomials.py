from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momentorder.polynomials import (
    abs_bound_on,
    add,
    antiderivative,
    definite_integral,
    degree,
    derivative,
    divmod_poly,
    evaluate,
    is_zero,
    isolate_roots,
    mul,
    nonneg_on,
    poly,
    poly_gcd,
    positive_on,
    power_moment,
    refine_root_below,
    region_signs,
    shift,
    shifted_abs_bound_on,
    sign_run_pattern,
    squarefree_part,
    sub,
)

rationals = st.fractions(
    min_value=-5, max_value=5, max_denominator=8
)


def small_polys(max_deg=5):
    return st.lists(rationals, min_size=0, max_size=max_deg + 1).map(poly)


def test_basic_arithmetic():
    p = poly([1, 2])  # 1 + 2x
    q = poly([0, 0, 3])  # 3x^2
    assert add(p, q) == poly([1, 2, 3])
    assert sub(add(p, q), q) == p
    assert mul(p, q) == poly([0, 0, 3, 6])
    assert evaluate(mul(p, q), F(1, 2)) == evaluate(p, F(1, 2)) * evaluate(
        q, F(1, 2)
    )
    assert degree(poly([0, 0, 0])) == -1
    assert is_zero(poly([0]))


def test_calculus_roundtrip():
    p = poly([F(1), F(-3), F(5, 7)])
    assert derivative(antiderivative(p)) == p
    assert definite_integral(poly([1]), 1, 2) == 1
    assert definite_integral(poly([0, 1]), 1, 2) == F(3, 2)


@given(small_polys(), st.integers(min_value=0, max_value=12))
def test_power_moment_matches_direct_integration(p, k):
    xk = poly([0] * k + [1])
    assert power_moment(p, 1, 2, k) == definite_integral(mul(p, xk), 1, 2)


@given(small_polys(max_deg=4), small_polys(max_deg=3))
def test_division_invariant(p, q):
    if is_zero(q):
        return
    quo, rem = divmod_poly(p, q)
    assert add(mul(quo, q), rem) == p
    assert degree(rem) < degree(q) or is_zero(rem)


def test_gcd_and_squarefree():
    p = mul(poly([-1, 1]), poly([-1, 1]))  # (x-1)^2
    q = mul(poly([-1, 1]), poly([-2, 1]))  # (x-1)(x-2)
    assert poly_gcd(p, q) == poly([-1, 1])
    sf = squarefree_part(mul(p, q))  # (x-1)^3 (x-2)
    assert sf == mul(poly([-1, 1]), poly([-2, 1]))


def test_isolate_rational_and_irrational_roots():
    # (x-1)(x-2)^2 on [0, 3]
    p = mul(poly([-1, 1]), mul(poly([-2, 1]), poly([-2, 1])))
    ivs = isolate_roots(p, 0, 3)
    assert len(ivs) == 2
    for (lo, hi), root in zip(ivs, (F(1), F(2))):
        assert lo <= root <= hi
    # x^2 - 2 has a single root in [0, 2]
    q = poly([-2, 0, 1])
    (lo, hi), = isolate_roots(q, 0, 2)
    assert evaluate(q, lo) < 0 < evaluate(q, hi)
    lo2, hi2 = refine_root_below(q, lo, hi, F(3, 2))
    assert hi2 < F(3, 2) and lo2 * lo2 < 2 < hi2 * hi2


def test_isolate_endpoint_roots():
    p = mul(poly([0, 1]), poly([-3, 1]))  # x(x-3)
    ivs = isolate_roots(p, 0, 3)
    assert (F(0), F(0)) in ivs and (F(3), F(3)) in ivs


def test_region_signs_and_patterns():
    p = mul(poly([-1, 1]), mul(poly([-2, 1]), poly([-2, 1])))
    roots, samples, signs = region_signs(p, 0, 3)
    assert signs[0] == -1 and signs[-1] == 1
    assert sign_run_pattern(p, 0, 3) == (-1, 1)  # double root: no flip
    assert sign_run_pattern(poly([-3, 2]), 1, 2) == (-1, 1)
    assert nonneg_on(p, F(3, 2), 3) == (True, None)
    ok, witness = nonneg_on(p, 0, 3)
    assert not ok and evaluate(p, witness) < 0
    assert positive_on(poly([1, 0, 1]), -2, 2)
    assert not positive_on(p, F(3, 2), 3)  # touches zero at 2


@given(
    st.lists(
        st.fractions(min_value=F(1, 4), max_value=4, max_denominator=6),
        min_size=1,
        max_size=4,
    )
)
@settings(max_examples=60)
def test_nonnegativity_of_products_of_squares(roots):
    p = poly([1])
    for r in roots:
        p = mul(p, mul(poly([-r, 1]), poly([-r, 1])))
    assert nonneg_on(p, 0, 5)[0]
    flipped = mul(p, poly([-1]))
    ok, witness = nonneg_on(flipped, 0, 5)
    assert not ok and evaluate(flipped, witness) < 0


@given(small_polys(max_deg=4))
@settings(max_examples=60)
def test_sign_pattern_matches_dense_sampling(p):
    if is_zero(p):
        return
    pattern = sign_run_pattern(p, 0, 2)
    sampled = []
    for i in range(0, 401):
        v = evaluate(p, F(i, 200))
        s = 0 if v == 0 else (1 if v > 0 else -1)
        if s != 0 and (not sampled or sampled[-1] != s):
            sampled.append(s)
    # dense sampling can only miss flips, never invent them
    assert len(sampled) <= len(pattern)
    assert sampled == list(pattern)[: len(sampled)] or sampled == list(pattern)


def test_shift_and_bounds():
    p = poly([1, -2, 1])  # (1-x)^2
    assert shift(p, 1) == poly([0, 0, 1])
    for bound in (abs_bound_on(p, 0, 2), shifted_abs_bound_on(p, 0, 2)):
        for i in range(0, 21):
            assert abs(evaluate(p, F(i, 10))) <= bound


def test_zero_polynomial_root_isolation_rejected():
    with pytest.raises(ValueError):
        isolate_roots(poly([]), 0, 1)
