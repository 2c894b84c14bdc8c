from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import chain3, l3, one, p2, p2e
from enrichsheaf.category import CategoryError, EnrichedCategory, check_category
from enrichsheaf.quantale import make_truncated_additive
from enrichsheaf.sieve import (
    GeneralizedElement,
    admissible_elements,
    compare_pullback_formulas,
    enumerate_presheaves,
    enumerate_sieves,
    is_sieve,
    make_sieve,
    maximal_sieve,
    pullback_lawvere,
    pullback_sieve,
    sieve_join,
    sieve_leq,
    sieve_meet,
    zero_sieve,
)


def brute_sieves(c, x):
    """Every value map under the hom column that is closed under precomposition."""
    q = c.base
    cols = [[v for v in q.elements if q.leq(v, c.hom[z][x])] for z in range(c.size)]
    out = []
    for vals in product(*cols):
        if all(q.leq(q.tensor(c.hom[w][z], vals[z]), vals[w]) for z, w in product(range(c.size), repeat=2)):
            out.append(vals)
    return sorted(out)


def brute_pullback(s, f):
    """Join of every a under C(z, y) whose action on f lands in R(z)."""
    c, q = s.category, s.category.base
    vals = []
    for z in range(c.size):
        ok = [a for a in q.elements if q.leq(a, c.hom[z][f.source]) and q.leq(q.tensor(a, f.g), s.values[z])]
        vals.append(q.join_all(ok))
    return tuple(vals)


@pytest.mark.parametrize(
    "make,counts",
    [(one, [2]), (chain3, [2, 3, 4]), (p2, [11, 11]), (p2e, [11, 11]), (l3, None)],
)
def test_sieve_enumeration_matches_brute_force(make, counts):
    c = make()
    got = [sorted(s.values for s in enumerate_sieves(c, x)) for x in range(c.size)]
    assert got == [brute_sieves(c, x) for x in range(c.size)]
    if counts is not None:
        assert [len(g) for g in got] == counts


def test_pullback_suite_every_case(small_category):
    c = small_category
    cases = 0
    for x in range(c.size):
        top = maximal_sieve(c, x)
        for s in enumerate_sieves(c, x):
            for y in range(c.size):
                for f in admissible_elements(c, x, y):
                    r = pullback_sieve(s, f)
                    assert is_sieve(r) == []
                    assert r.values == brute_pullback(s, f)
                    assert pullback_sieve(top, f) == maximal_sieve(c, y)
                    cases += 1
    assert cases > 0


def test_admissible_elements_are_below_hom():
    c = p2()
    q = c.base
    els = admissible_elements(c, 0, 1)
    assert sorted(q.label(f.g) for f in els) == ["1", "2", "3", "inf"]
    assert all(q.leq(f.g, c.hom[1][0]) for f in els)


def test_literal_metric_formula_breaks_on_p2():
    c = p2()
    s = maximal_sieve(c, "x")
    lit = pullback_lawvere(s, c.base.index("2"), "y")
    assert lit.labels() == {"x": "0", "y": "1"}
    assert [v.law for v in is_sieve(lit)] == ["bound"]
    gen = pullback_sieve(s, GeneralizedElement(c.base.index("2"), 1))
    assert gen.labels() == {"x": "1", "y": "0"}
    rec = compare_pullback_formulas(s, c.base.index("2"), "y")
    assert rec["generic_is_sieve"] and not rec["literal_is_sieve"] and not rec["agree"]


def test_non_sieve_value_map_is_flagged():
    c = chain3()
    bad = make_sieve(c, "t", {"b": "0", "m": "1", "t": "1"})
    assert {v.law for v in is_sieve(bad)} == {"presheaf"}
    assert make_sieve(c, "t", {"b": "1", "m": "1", "t": "0"}).labels() == {"b": "1", "m": "1", "t": "0"}


def test_zero_and_maximal():
    c = p2()
    assert zero_sieve(c, "x").labels() == {"x": "inf", "y": "inf"}
    assert maximal_sieve(c, "x").labels() == {"x": "0", "y": "1"}


def test_presheaf_counts():
    assert len(enumerate_presheaves(one())) == 2
    assert len(enumerate_presheaves(chain3())) == 4
    assert len(enumerate_presheaves(p2e())) == 13


def test_invalid_category_detected():
    t = make_truncated_additive(3, 1)
    # d(a,c) = 3 > d(a,b) + d(b,c) = 2
    hom = ((0, 1, 3), (1, 0, 1), (3, 1, 0))
    c = EnrichedCategory(t, ("a", "b", "c"), hom)
    assert any(v.law == "composition" for v in check_category(c))
    with pytest.raises(CategoryError):
        EnrichedCategory(t, ("a", "a"), ((0, 0), (0, 0)))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["one", "chain3", "P2", "L3"]), st.data())
def test_sieve_lattice_operations(name, data):
    c = {"one": one, "chain3": chain3, "P2": p2, "L3": l3}[name]()
    x = data.draw(st.integers(0, c.size - 1))
    ss = enumerate_sieves(c, x)
    a, b = data.draw(st.sampled_from(ss)), data.draw(st.sampled_from(ss))
    m, j = sieve_meet(a, b), sieve_join(a, b)
    assert is_sieve(m) == [] and is_sieve(j) == []
    assert sieve_leq(m, a) and sieve_leq(m, b) and sieve_leq(a, j) and sieve_leq(b, j)
    # pullback preserves meets
    y = data.draw(st.integers(0, c.size - 1))
    f = data.draw(st.sampled_from(admissible_elements(c, x, y)))
    assert pullback_sieve(m, f) == sieve_meet(pullback_sieve(a, f), pullback_sieve(b, f))
    if sieve_leq(a, b):
        assert sieve_leq(pullback_sieve(a, f), pullback_sieve(b, f))
