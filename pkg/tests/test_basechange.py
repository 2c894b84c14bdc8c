from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import chain3, one, p2, p2e
from enrichsheaf.basechange import (
    HypothesisNotMet,
    NotMonotoneError,
    adjunction_violations,
    analyze,
    collapse_to_two,
    exp_neg,
    identity,
    neg_log,
    presheaf_base_change,
    saturating_neg_log,
    two_into_exponential,
    two_into_saturating_exponential,
)
from enrichsheaf.category import base_change_category, check_category
from enrichsheaf.coverage import base_change_coverage, check_coverage, enumerate_coverages
from enrichsheaf.harness import injectivity_suite
from enrichsheaf.quantale import make_truncated_additive, make_two_element
from enrichsheaf.sieve import base_change_sieve, enumerate_presheaves, enumerate_sieves, is_presheaf, is_sieve

SHIPPED = [
    two_into_exponential,
    neg_log,
    exp_neg,
    collapse_to_two,
    two_into_saturating_exponential,
    saturating_neg_log,
]


def brute_flags(g):
    V, U, G = g.source, g.target, g.map
    pairs = list(product(V.elements, repeat=2))
    return {
        "lax_monoidal": U.leq(U.unit, G[V.unit])
        and all(U.leq(U.tensor(G[a], G[b]), G[V.tensor(a, b)]) for a, b in pairs),
        "conservative": len(set(G)) == V.size,
        "full": all(V.leq(a, b) for a, b in pairs if U.leq(G[a], G[b])),
        # finite lattices: right adjoint iff top and binary meets are preserved
        "right_adjoint": G[V.top] == U.top and all(G[V.meet(a, b)] == U.meet(G[a], G[b]) for a, b in pairs),
    }


@pytest.mark.parametrize("make", SHIPPED)
def test_flags_match_definitions(make):
    g = make()
    for flag, expected in brute_flags(g).items():
        assert getattr(g, flag) == expected, flag
    assert g.faithful


def test_frozen_flags():
    incl = two_into_exponential()
    assert incl.map == (4, 0)
    assert (incl.full, incl.right_adjoint, incl.left_strong_monoidal) == (True, True, False)
    assert [v.law for v in adjunction_violations(incl)] == ["cotensor"] * 3
    assert adjunction_violations(two_into_saturating_exponential()) == []
    assert two_into_saturating_exponential().left_strong_monoidal
    col = collapse_to_two()
    assert col.witnesses["conservative"] == ("2", "1")
    assert not col.full and col.right_adjoint


def test_non_monotone_map_is_rejected():
    q = make_two_element()
    with pytest.raises(NotMonotoneError):
        analyze(q, q, [1, 0])


def test_identity_is_everything():
    g = identity(make_truncated_additive(2, 1))
    assert g.faithful and g.conservative and g.full and g.right_adjoint and g.left_strong_monoidal


def test_collapse_refuses_coverage_base_change():
    c = p2()
    j = enumerate_coverages(c)[0]
    with pytest.raises(HypothesisNotMet):
        base_change_coverage(collapse_to_two(), j)


@pytest.mark.parametrize("make,cat", [(two_into_exponential, chain3), (neg_log, p2e), (exp_neg, p2)])
def test_base_change_preserves_structure(make, cat):
    g = make()
    c = cat()
    gc = base_change_category(g, c)
    assert check_category(gc) == []
    for x in range(c.size):
        for s in enumerate_sieves(c, x):
            assert is_sieve(base_change_sieve(g, s, gc)) == []
    for p in enumerate_presheaves(c):
        assert is_presheaf(presheaf_base_change(g, p, gc)) == []


@pytest.mark.parametrize(
    "make,cat,frozen",
    [
        (two_into_exponential, chain3, (9, 9, 24, 24, 0, 1)),
        (two_into_exponential, one, (2, 2, 2, 2, 0, 1)),
        (two_into_saturating_exponential, chain3, (9, 9, 24, 24, 0, 24)),
        (neg_log, p2e, (22, 22, 1021, 1021, 0, 1021)),
        (exp_neg, p2, (22, 22, 1021, 1021, 0, 1021)),
    ],
)
def test_injectivity_regression(make, cat, frozen):
    s = injectivity_suite(make(), cat())
    assert (s.sieves, s.sieve_images, s.coverages, s.coverage_images, s.meet_failures, s.image_coverages) == frozen


def test_collapse_loses_injectivity():
    s = injectivity_suite(collapse_to_two(), p2())
    assert (s.sieves, s.sieve_images, s.coverages, s.coverage_images) == (22, 4, 1021, 4)
    assert s.meet_failures == 6592
    assert s.sieve_collision == ({"x": "1", "y": "1"}, {"x": "1", "y": "2"})


def test_strong_monoidal_right_adjoint_images_are_coverages():
    g = two_into_saturating_exponential()
    for j in enumerate_coverages(chain3()):
        assert check_coverage(base_change_coverage(g, j)).is_coverage


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_neg_log_roundtrip_on_sieves(data):
    c = p2e()
    x = data.draw(st.integers(0, 1))
    s = data.draw(st.sampled_from(enumerate_sieves(c, x)))
    g, h = neg_log(), exp_neg()
    back = base_change_sieve(h, base_change_sieve(g, s))
    assert back.values == s.values
