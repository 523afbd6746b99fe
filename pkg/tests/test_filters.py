import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momentorder.filters import (
    CertifiedInfiniteSet,
    StructuredSet,
    UnsupportedSetOperation,
    has_fip,
    in_frechet,
    in_msz_filter,
    is_msz_sequence,
    parse_set,
    theta_measure,
)


def test_theta_divergent_cases():
    res = theta_measure(StructuredSet.from_(1))
    assert not res.converges
    start, step = res.witness
    assert step == 1
    evens = StructuredSet.progression(0, 2)
    res = theta_measure(evens)
    assert not res.converges and res.witness[1] == 2


def test_theta_exact_values():
    assert theta_measure(StructuredSet.finite([2, 3, 5])).value == F(31, 30)
    assert theta_measure(StructuredSet.geometric(1, 2)).value == 2
    assert theta_measure(StructuredSet.finite([0, 4])).value == F(1, 4)


def test_theta_additive_on_disjoint_convergent_sets():
    A = StructuredSet.finite([2, 3])
    B = StructuredSet.geometric(5, 3)  # 5, 15, 45, ...
    U = A.union(B)
    ta, tb, tu = (theta_measure(s) for s in (A, B, U))
    assert ta.converges and tb.converges and tu.converges
    assert tu.value == ta.value + tb.value


def test_filter_membership_examples():
    cofinite = StructuredSet.naturals().difference(StructuredSet.finite([1, 4]))
    assert in_frechet(cofinite) and in_msz_filter(cofinite)
    no_powers = StructuredSet.geometric(1, 2).complement()
    assert not in_frechet(no_powers)
    assert in_msz_filter(no_powers)  # theta of the powers of two is 2
    odds = StructuredSet.progression(1, 2)
    assert not in_frechet(odds) and not in_msz_filter(odds)


def test_msz_sequence_decisions():
    assert is_msz_sequence(StructuredSet.from_(7)).status == "certified"
    geo = is_msz_sequence(StructuredSet.geometric(1, 2))
    assert geo.status == "not-msz" and geo.value == 2
    bare = is_msz_sequence([1, 2, 4, 8])
    assert bare.status == "undecided-prefix"
    assert bare.partial_sum == F(15, 8)


def test_msz_run_certificate():
    prefix = list(range(10, 21)) + list(range(50, 101))
    cert = {"cert": "harmonic-run", "runs": [[10, 20], [50, 100]]}
    assert is_msz_sequence(prefix, cert).status == "certified"
    # a run with harmonic mass below 1/2 is the single-run oracle case
    assert sum(F(1, i) for i in range(10, 21)) == F(
        sum((F(1, i) for i in range(10, 21)), F(0))
    ) >= F(1, 2)
    # broken runs are refused
    bad = {"cert": "harmonic-run", "runs": [[10, 19]]}
    assert is_msz_sequence(prefix, bad).status == "undecided-prefix"
    missing = {"cert": "harmonic-run", "runs": [[30, 60]]}
    assert is_msz_sequence(prefix, missing).status == "undecided-prefix"


def test_fip_basic_cases():
    evens = StructuredSet.progression(0, 2)
    odds = StructuredSet.progression(1, 2)
    res = has_fip([evens, odds])
    assert not res.holds and len(res.witness) == 2
    gens = [
        StructuredSet.naturals().difference(StructuredSet.finite(range(k)))
        for k in (1, 2)
    ]
    assert has_fip(gens + [evens]).holds


def test_fip_certified_infinite_fast_path():
    agreement = CertifiedInfiniteSet((0, 1, 2, 30), {"cert": "construction-extends"})
    cofinite = [StructuredSet.from_(k) for k in range(10)]
    assert has_fip([agreement] + cofinite).holds
    evens = StructuredSet.progression(0, 2)
    with pytest.raises(UnsupportedSetOperation):
        has_fip([agreement, evens, StructuredSet.progression(1, 2)])


def test_parse_grammar():
    s = parse_set("(ap 3 4) | {1,2} \\ {7}")
    members = [n for n in range(26) if n in s]
    assert members == [1, 2, 3, 11, 15, 19, 23]
    t = theta_measure(parse_set("complement((geom 1 2))"))
    assert not t.converges
    assert parse_set("N & (ap 0 3)").equals(StructuredSet.progression(0, 3))
    with pytest.raises(ValueError):
        parse_set("(ap 3)")


def _random_structured(rng: random.Random) -> StructuredSet:
    s = StructuredSet.empty()
    for _ in range(rng.randint(0, 2)):
        s = s.union(
            StructuredSet.progression(rng.randint(0, 24), rng.randint(1, 10))
        )
    if rng.random() < 0.6:
        s = s.union(StructuredSet.finite(rng.sample(range(40), rng.randint(0, 3))))
    if rng.random() < 0.5:
        s = s.difference(
            StructuredSet.finite(rng.sample(range(40), rng.randint(0, 3)))
        )
    if rng.random() < 0.25:
        s = s.complement()
    return s


def test_filter_laws_on_random_sets():
    rng = random.Random(60)
    for _ in range(100):
        S = _random_structured(rng)
        T = _random_structured(rng)
        if in_frechet(S):
            assert in_msz_filter(S)  # Frechet subset of Muntz-Szasz
        U = S.union(T)
        for member, fam in ((S, in_frechet), (S, in_msz_filter)):
            if fam(member):
                assert fam(U)  # supersets stay in the filter
        if in_frechet(S) and in_frechet(T):
            assert in_frechet(S.intersection(T))
        if in_msz_filter(S) and in_msz_filter(T):
            assert in_msz_filter(S.intersection(T))


@given(st.integers(0, 30), st.integers(1, 9), st.integers(0, 30), st.integers(1, 9))
@settings(max_examples=60)
def test_boolean_ops_agree_with_membership(a1, d1, a2, d2):
    A = StructuredSet.progression(a1, d1)
    B = StructuredSet.progression(a2, d2)
    U, I, D, C = A.union(B), A.intersection(B), A.difference(B), A.complement()
    for n in range(0, 100, 7):
        assert (n in U) == ((n in A) or (n in B))
        assert (n in I) == ((n in A) and (n in B))
        assert (n in D) == ((n in A) and n not in B)
        assert (n in C) == (n not in A)


def test_subset_and_equality_semantics():
    evens = StructuredSet.progression(0, 2)
    fours = StructuredSet.progression(0, 4)
    assert fours.is_subset(evens)
    assert not evens.is_subset(fours)
    assert evens.union(StructuredSet.progression(1, 2)).equals(
        StructuredSet.naturals()
    )
