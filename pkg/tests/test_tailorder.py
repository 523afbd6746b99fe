import random
from fractions import Fraction as F

import pytest

from momentorder.measures import (
    PiecewisePolyDensity,
    alternating_cdf_f_measure,
    alternating_cdf_g_measure,
    delta,
    moment,
    uniform_density,
)
from momentorder.polynomials import poly
from momentorder.tailorder import (
    certify_cdf_dominance,
    certify_eventual_positive,
    compare_empirical,
    decide_piecewise,
    moment_difference_signs,
    verify_rightmost_difference,
)


def linear_ramp():
    # density 2(x-1) on [1, 2], mass one
    return PiecewisePolyDensity((F(1), F(2)), (poly([-2, 2]),))


# closed-form moment oracles, independent of the integration code path
def s_uniform(k):
    return F(2 ** (k + 1) - 1, k + 1)


def s_ramp(k):
    return 2 * (F(2 ** (k + 2) - 1, k + 2) - F(2 ** (k + 1) - 1, k + 1))


def test_equal_measures_give_equal_prefix():
    v = compare_empirical(uniform_density(1, 2), uniform_density(1, 2), 50)
    assert v.kind == "equal-prefix"
    assert v.label == "heuristic"
    assert v.certificate["agree_from"] == 0


def test_point_masses_strict_prefix():
    v = compare_empirical(delta(1), delta(2), 10)
    assert v.kind == "strictly-below"
    assert v.certificate == {"cert": "moment-prefix", "n0": 0, "checked_to": 10}


def test_decide_piecewise_equal():
    assert decide_piecewise(uniform_density(1, 2), uniform_density(1, 2)).to_json() == {
        "verdict": "equal-prefix",
        "label": "proved",
        "certificate": {"cert": "equal-prefix", "agree_from": 0},
    }


def test_decide_piecewise_ramp_vs_uniform():
    u, r = uniform_density(1, 2), linear_ramp()
    v = decide_piecewise(u, r)
    assert v.kind == "strictly-below" and v.label == "proved"
    assert v.certificate["interval"] == ["3/2", "2"]
    assert v.certificate["sign"] == "+"
    assert verify_rightmost_difference(u, r, v.certificate)
    # oracle: the moment difference turns strictly positive and stays so
    diffs = [s_ramp(k) - s_uniform(k) for k in range(201)]
    assert diffs[0] == 0 and all(d > 0 for d in diffs[1:])
    # and the library's own moments agree with the closed forms
    for k in (0, 1, 7, 50):
        assert moment(u, k).value == s_uniform(k)
        assert moment(r, k).value == s_ramp(k)


def test_decide_piecewise_disjoint_supports():
    low = PiecewisePolyDensity((F(1), F(3, 2)), (poly([2]),))
    high = PiecewisePolyDensity((F(7, 4), F(2)), (poly([4]),))
    v = decide_piecewise(low, high)
    assert v.kind == "strictly-below"
    # oracle: both have mass one, so s_k(high) >= (7/4)^k > (3/2)^k >= s_k(low)
    for k in (1, 5, 20):
        assert moment(high, k).value >= F(7, 4) ** k
        assert moment(low, k).value <= F(3, 2) ** k
        assert moment(high, k).value > moment(low, k).value


def test_decide_piecewise_rejects_signed():
    f = PiecewisePolyDensity((F(1), F(2)), (poly([-3, 2]),), signed=True)
    with pytest.raises(ValueError):
        decide_piecewise(f, uniform_density(1, 2))


def test_cdf_dominance_certificates():
    v = certify_cdf_dominance(delta(1), delta(2), F(3, 2))
    assert v.kind == "strictly-below" and v.label == "proved"
    v = certify_cdf_dominance(uniform_density(1, 2), delta(2), F(3, 2))
    assert v.kind == "strictly-below" and v.label == "proved"
    # success implies the empirical scan never shows the opposite strict sign
    signs = moment_difference_signs(uniform_density(1, 2), delta(2), 200)
    assert "-" not in signs


def test_cdf_dominance_failure_on_alternating_pair():
    mu_f = alternating_cdf_f_measure(40)
    mu_g = alternating_cdf_g_measure(F(7, 5), 40)
    v = certify_cdf_dominance(mu_f, mu_g, F(3, 2))
    assert v.kind == "undetermined"
    assert v.certificate["cert"] == "cdf-dominance-failed"
    # the violation shows up at the first shifted support point
    assert v.certificate["violating_x"] == "5/3"
    # while the moment prefix still favors the shifted measure
    signs = moment_difference_signs(mu_f, mu_g, 60)
    assert all(s == "+" for s in signs[1:])


def test_eventual_positivity_certificate_and_oracle():
    f = PiecewisePolyDensity((F(1), F(2)), (poly([-3, 2]),), signed=True)
    cert = certify_eventual_positive(f, F(7, 4))
    assert cert.certified
    # oracle: integral of (2x-3) x^k via the antiderivative closed form
    def s(k):
        return 2 * F(2 ** (k + 2) - 1, k + 2) - 3 * F(2 ** (k + 1) - 1, k + 1)

    first = next(k for k in range(100) if s(k) > 0)
    assert cert.first_positive_order == first == 1
    # the stated hypothesis is checked: at a point where f vanishes it fails
    assert certify_eventual_positive(f, F(3, 2)).status == "failed"
    # wholly nonnegative densities are positive from order zero
    g = PiecewisePolyDensity((F(1), F(2)), (poly([1]),), signed=True)
    assert certify_eventual_positive(g, F(3, 2)).first_positive_order == 0


def _random_unsigned_density(rng):
    cuts = sorted(rng.sample(range(1, 8), rng.randint(1, 3)))
    pts = [F(1)] + [1 + F(c, 8) for c in cuts] + [F(2)]
    pts = sorted(set(pts))
    pieces = []
    for lo, hi in zip(pts, pts[1:]):
        y0 = F(rng.randint(0, 4), rng.choice([1, 2, 4, 8]))
        y1 = F(rng.randint(0, 4), rng.choice([1, 2, 4, 8]))
        slope = (y1 - y0) / (hi - lo)
        pieces.append(poly([y0 - slope * lo, slope]))
    return PiecewisePolyDensity(tuple(pts), tuple(pieces))


def test_decision_agrees_with_deep_prefix_sample():
    rng = random.Random(20240)
    for _ in range(20):
        d1 = _random_unsigned_density(rng)
        d2 = _random_unsigned_density(rng)
        v = decide_piecewise(d1, d2)
        assert v.kind in ("strictly-below", "strictly-above", "equal-prefix")
        for k in (200, 400):
            diff = moment(d2, k).value - moment(d1, k).value
            if v.kind == "strictly-below":
                assert diff > 0
            elif v.kind == "strictly-above":
                assert diff < 0
            else:
                assert diff == 0


def test_antisymmetry_at_prefix_level():
    rng = random.Random(7)
    for _ in range(10):
        d1 = _random_unsigned_density(rng)
        d2 = _random_unsigned_density(rng)
        both_equal = (
            decide_piecewise(d1, d2).kind == "equal-prefix"
            and decide_piecewise(d2, d1).kind == "equal-prefix"
        )
        from momentorder.measures import piecewise_equal

        assert both_equal == piecewise_equal(d1, d2)


def test_tampered_certificate_is_rejected():
    u, r = uniform_density(1, 2), linear_ramp()
    cert = dict(decide_piecewise(u, r).certificate)
    cert["sign"] = "-"
    assert not verify_rightmost_difference(u, r, cert)
