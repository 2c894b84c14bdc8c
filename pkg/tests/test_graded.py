from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enrichsheaf.graded import (
    GradedTopologySpec,
    check_graded_gabriel,
    colon_monomial,
    contains_monomial,
    degree_zero_base_change,
    enumerate_monomial_ideals,
    h_s_member,
    h_s_member_exact,
    ideal_leq,
    monomial_ideal,
    monomials_up_to,
    parse_ideal,
    parse_monomial,
    reproduce_counterexample,
    unit_ideal,
    zero_ideal,
)

S = GradedTopologySpec("x")
T = GradedTopologySpec("y")


def divides(a, b):
    return a[0] <= b[0] and a[1] <= b[1]


def brute_antichains(dmax):
    mons = monomials_up_to(dmax)
    out = []
    for k in range(len(mons) + 1):
        for sub in combinations(mons, k):
            if all(not divides(a, b) for a in sub for b in sub if a != b):
                out.append(frozenset(sub))
    return out


@pytest.mark.parametrize("dmax,count", [(1, 5), (2, 14), (3, 42)])
def test_enumeration_matches_antichains(dmax, count):
    got = {frozenset(i.generators) for i in enumerate_monomial_ideals(dmax)}
    assert got == set(brute_antichains(dmax))
    assert len(got) == count


def test_frozen_count_dmax4():
    assert len(enumerate_monomial_ideals(4)) == 132


def test_parsing_and_labels():
    assert parse_monomial("x^2y") == (2, 1)
    assert parse_monomial("1") == (0, 0)
    i = parse_ideal("y, x^2")
    assert i.label() == "<y, x^2>"
    assert parse_ideal("0") == zero_ideal() and parse_ideal("1") == unit_ideal()
    assert monomial_ideal(["x", "x^2"]).label() == "<x>"
    with pytest.raises(ValueError):
        parse_monomial("z")


def test_membership_examples():
    i = parse_ideal("x^2")
    assert contains_monomial(i, (3, 1)) and not contains_monomial(i, (1, 5))
    assert colon_monomial(i, (1, 0)) == parse_ideal("x")
    assert h_s_member(parse_ideal("x^3"), S, 3) and not h_s_member(parse_ideal("x^3"), T, 3)
    assert not h_s_member(parse_ideal("xy"), S, 3) and not h_s_member(parse_ideal("xy"), T, 3)


def test_bounded_membership_equals_exact():
    for i in enumerate_monomial_ideals(4):
        for spec in (S, T):
            assert h_s_member(i, spec, 4) == h_s_member_exact(i, spec)


def test_gabriel_checks():
    sample = [parse_ideal(t) for t in ["x", "x^2", "x^2, y", "xy", "y", "1", "0"]]
    rep = check_graded_gabriel(S, sample, 4)
    assert not (rep.g1 or rep.g2 or rep.g3)
    assert not check_graded_gabriel([unit_ideal()], sample, 4).g1
    bad = check_graded_gabriel([parse_ideal("x")], sample, 4)
    assert bad.g1 and bad.g1[0].witness == ("<x>", "<1>")


@pytest.mark.parametrize("dmax,sample,members", [(1, 5, 3), (2, 14, 9), (3, 42, 28), (4, 132, 90)])
def test_counterexample(dmax, sample, members):
    r = reproduce_counterexample(dmax)
    assert r.witness == monomial_ideal([(dmax, 0)])
    assert r.witness_in_s and not r.witness_in_t
    assert (r.sample_size, r.members_s, r.members_t) == (sample, members, members)
    assert r.image_s == r.image_t == ("k", "0")


def test_degree_zero_base_change():
    assert degree_zero_base_change(unit_ideal()) == "k"
    assert degree_zero_base_change(parse_ideal("x")) == "0"
    assert degree_zero_base_change(zero_ideal()) == "0"


monomial = st.tuples(st.integers(0, 4), st.integers(0, 4))
ideal = st.lists(monomial, min_size=1, max_size=4).map(monomial_ideal)


@settings(max_examples=200, deadline=None)
@given(ideal, ideal, monomial)
def test_colon_and_order(i, j, m):
    c = colon_monomial(i, m)
    for e in monomials_up_to(6):
        assert contains_monomial(c, e) == contains_monomial(i, (e[0] + m[0], e[1] + m[1]))
        assert contains_monomial(i, e) == any(divides(g, e) for g in i.generators)
    assert ideal_leq(i, c)
    assert ideal_leq(i, j) == all(contains_monomial(j, g) for g in i.generators)
