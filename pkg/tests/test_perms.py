import doctest
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import permav.perms as perms_module
from permav.perms import (
    PatternSet,
    avoids_all,
    contains,
    contains_ending_at_last,
    decode_rank_profile,
    family_a,
    family_aki,
    perm_from_string,
    perm_to_string,
    rank_profile,
    ranks,
    standardize,
)
from oracles import oracle_contains

perm_strategy = st.integers(0, 7).flatmap(
    lambda n: st.permutations(tuple(range(1, n + 1))).map(tuple)
)
pattern_strategy = st.integers(1, 4).flatmap(
    lambda n: st.permutations(tuple(range(1, n + 1))).map(tuple)
)


def test_module_doctests():
    failures, _ = doctest.testmod(perms_module)
    assert failures == 0


def test_contains_spec_cases():
    assert contains(perm_from_string("3752416"), perm_from_string("2413"))
    assert not contains((1, 2, 3, 4, 5, 6), (2, 1))
    assert contains((4, 2, 1), (1,))
    assert contains((), ())
    assert not contains((1, 2), (1, 2, 3))


@settings(max_examples=300, deadline=None)
@given(perm_strategy, pattern_strategy)
def test_contains_matches_oracle(p, q):
    assert contains(p, q) == oracle_contains(p, q)


@settings(max_examples=300, deadline=None)
@given(perm_strategy, pattern_strategy)
def test_contains_ending_at_last_matches_oracle(p, q):
    if not p:
        return
    # direct oracle: occurrences forced to use the final position
    k = len(q)
    want = False
    if 0 < k <= len(p):
        for idx in itertools.combinations(range(len(p) - 1), k - 1):
            vals = [p[i] for i in idx] + [p[-1]]
            if all(
                (vals[a] < vals[b]) == (q[a] < q[b])
                for a in range(k)
                for b in range(a + 1, k)
            ):
                want = True
                break
    assert contains_ending_at_last(p, q) == want


def test_contains_monotone_under_prefix():
    # if a prefix of p contains q then p contains q
    p = (3, 7, 5, 2, 4, 1, 6)
    q = (2, 4, 1, 3)
    for cut in range(len(p) + 1):
        prefix = standardize(p[:cut])
        if contains(prefix, q):
            assert contains(p, q)


def test_avoids_all_spec_cases():
    assert avoids_all((1, 3, 2), PatternSet.of("123", "231"))
    assert not avoids_all((1, 2, 3, 4, 5), family_a(5))
    assert avoids_all((), PatternSet.of("123", "21"))


def test_family_a_members():
    assert {perm_to_string(q) for q in family_a(5)} == {
        "12345",
        "12354",
        "12453",
        "13452",
        "23451",
    }
    assert {perm_to_string(q) for q in family_a(3)} == {"123", "132", "231"}
    assert {perm_to_string(q) for q in family_a(4)} == {"1234", "1243", "1342", "2341"}
    assert len(family_a(6)) == 6
    with pytest.raises(ValueError):
        family_a(2)


def test_family_aki_members():
    assert {perm_to_string(q) for q in family_aki(4, 1)} == {"1234", "1243", "1342"}
    assert {perm_to_string(q) for q in family_aki(3, 1)} == {"123", "132"}
    assert {perm_to_string(q) for q in family_aki(5, 5)} == {
        "12354",
        "12453",
        "13452",
        "23451",
    }
    with pytest.raises(ValueError):
        family_aki(4, 0)
    with pytest.raises(ValueError):
        family_aki(4, 5)


def test_pattern_set_label_validation():
    ok = PatternSet(family_a(4).patterns, label="A(4)")
    assert ok.label == "A(4)"
    with pytest.raises(ValueError):
        PatternSet((perm_from_string("123"),), label="A(4)")
    with pytest.raises(ValueError):
        PatternSet(((),))  # empty pattern


def test_pattern_set_dedup_and_parse():
    ps = PatternSet.from_string("132, 123,132")
    assert len(ps) == 2
    assert (1, 3, 2) in ps


def test_rank_profile_spec_cases():
    rp = rank_profile(perm_from_string("3752416"))
    assert rp.by_position == (1, 2, 2, 1, 2, 1, 3)
    assert rp.by_value == (1, 1, 1, 2, 2, 3, 2)
    assert rank_profile((1, 2, 3, 4)).by_position == (1, 2, 3, 4)
    assert rank_profile((1, 2, 3, 4)).by_value == (1, 2, 3, 4)
    assert rank_profile((4, 3, 2, 1)).by_position == (1, 1, 1, 1)
    assert rank_profile((4, 3, 2, 1)).by_value == (1, 1, 1, 1)


def test_rank_profile_invariants_exhaustive():
    for n in range(7):
        for p in itertools.permutations(range(1, n + 1)):
            rp = rank_profile(p)
            if n:
                assert max(rp.by_position) == max(rp.by_value)
            for r in set(rp.by_position):
                positions = [j for j in range(n) if rp.by_position[j] == r]
                values = [p[j] for j in positions]
                assert values == sorted(values, reverse=True)
                assert len(positions) == sum(1 for t in rp.by_value if t == r)


def test_decode_spec_cases():
    assert decode_rank_profile((1, 2, 2, 1, 2, 1, 3), (1, 1, 1, 2, 2, 3, 2)) == (
        3,
        7,
        5,
        2,
        4,
        1,
        6,
    )
    assert decode_rank_profile((1, 2, 3, 4), (1, 2, 3, 4)) == (1, 2, 3, 4)
    assert decode_rank_profile((1, 2), (2, 1)) is None
    assert decode_rank_profile((1,), (1, 1)) is None
    assert decode_rank_profile((9,), (9,)) is None


def test_encode_decode_exhaustive():
    for n in range(7):
        images = set()
        for p in itertools.permutations(range(1, n + 1)):
            rp = rank_profile(p)
            pair = (rp.by_position, rp.by_value)
            assert pair not in images
            images.add(pair)
            assert decode_rank_profile(*pair) == p


@settings(max_examples=200, deadline=None)
@given(perm_strategy)
def test_decode_round_trip_random(p):
    rp = rank_profile(p)
    assert decode_rank_profile(rp.by_position, rp.by_value) == p


@settings(max_examples=200, deadline=None)
@given(perm_strategy)
def test_low_rank_implies_monotone_avoidance(p):
    # if every rank stays below k-1, the prefix avoids the monotone run 12..(k-1)
    if not p:
        return
    top = max(ranks(p))
    monotone = tuple(range(1, top + 2))
    assert not contains(p, monotone)
    assert contains(p, monotone[:-1])


def test_family_avoidance_prefix_identity_exhaustive():
    # avoiding A(k) is the same as the length n-1 prefix avoiding 12..(k-1)
    for k in (3, 4):
        fam = family_a(k)
        run = tuple(range(1, k))
        for n in range(1, 8):
            for p in itertools.permutations(range(1, n + 1)):
                lhs = avoids_all(p, fam)
                rhs = not contains(standardize(p[:-1]), run)
                assert lhs == rhs, (k, p)
