"""Small worked examples, each checked on its own."""

from itertools import product

import pytest

from conftest import chain3, one, p2, p2e
from enrichsheaf.basechange import collapse_to_two, exp_neg, identity, neg_log, presheaf_base_change, two_into_exponential
from enrichsheaf.category import (
    EnrichedCategory,
    base_change_category,
    check_category,
    poset,
    underlying_preorder,
)
from enrichsheaf.coverage import (
    base_change_coverage,
    check_coverage,
    coverage_meet,
    discrete,
    enumerate_coverages,
    indiscrete,
    make_coverage,
    topology_closure,
)
from enrichsheaf.graded import (
    colon_monomial,
    contains_monomial,
    degree_zero_base_change,
    h_s_member,
    parse_ideal,
    reproduce_counterexample,
    unit_ideal,
    zero_ideal,
    GradedTopologySpec,
)
from enrichsheaf import ring as rg
from enrichsheaf.quantale import Quantale, check_axioms, make_exponential, make_truncated_additive, make_two_element
from enrichsheaf.sheaf import (
    check_sheafification_commutes,
    closure_of_subpresheaf,
    is_dense,
    is_sheaf,
    sigma,
)
from enrichsheaf.sieve import (
    GeneralizedElement,
    Presheaf,
    base_change_sieve,
    enumerate_presheaves,
    enumerate_sieves,
    is_sieve,
    make_sieve,
    maximal_sieve,
    pullback_lawvere,
    pullback_proxet,
    pullback_sieve,
    sieve_meet,
    zero_sieve,
)

Q2 = make_two_element()
T3 = make_truncated_additive(3, 1)
E3 = make_exponential(3, 1)


def antichain2():
    return poset(Q2, ["x", "y"], [])


# quantales


def test_broken_unit_is_reported():
    q = Q2
    bad = Quantale(q.labels, q.leq_table, ((0, 0), (0, 0)), q.unit, "table", (), "broken")
    unit = [v for v in check_axioms(bad) if v.law == "unit"]
    assert unit and unit[0].witness == ("1",)


def test_truncated_residuation_values():
    i = T3.index
    assert T3.residuate(i("1"), i("3")) == i("2")
    assert T3.residuate(i("inf"), i("inf")) == i("0")
    assert T3.residuate(i("2"), i("inf")) == i("2")
    for q in (Q2, T3, E3):
        assert all(q.residuate(q.unit, b) == b for b in q.elements)


def test_capped_tensors():
    assert T3.labels == ("0", "1", "2", "3", "inf")
    assert T3.label(T3.tensor(T3.index("2"), T3.index("2"))) == "inf"
    e = E3.index
    assert E3.label(E3.tensor(e("exp(-1)"), e("exp(-2)"))) == "exp(-3)"
    assert E3.label(E3.tensor(e("exp(-2)"), e("exp(-2)"))) == "exp(-inf)"


# categories


def test_category_laws():
    assert check_category(p2()) == [] and check_category(one()) == []
    bad = EnrichedCategory(T3, ("x", "y"), ((1, 1), (1, 0)))
    assert [(v.law, v.witness) for v in check_category(bad) if v.law == "identity"] == [("identity", ("x",))]


def test_underlying_preorders():
    assert underlying_preorder(p2()) == {("x", "x"), ("y", "y")}
    full = EnrichedCategory(T3, ("x", "y"), ((0, 0), (0, 0)))
    assert underlying_preorder(full) == set(product("xy", repeat=2))
    c = chain3()
    assert underlying_preorder(c) == {(a, a) for a in "bmt"} | {("b", "m"), ("m", "t"), ("b", "t")}


def test_category_base_change():
    c = base_change_category(two_into_exponential(), chain3())
    assert {c.base.label(v) for row in c.hom for v in row} == {"exp(0)", "exp(-inf)"}
    assert base_change_category(identity(T3), p2()).hom == p2().hom
    pe = base_change_category(exp_neg(), p2())
    assert pe.base.label(pe.hom[0][1]) == "exp(-1)"


# sieves


def test_maximal_sieves():
    assert maximal_sieve(p2(), "x").labels() == {"x": "0", "y": "1"}
    assert maximal_sieve(one(), "*").labels() == {"*": "1"}
    assert maximal_sieve(chain3(), "t").labels() == {"b": "1", "m": "1", "t": "1"}
    assert maximal_sieve(chain3(), "m").labels() == {"b": "1", "m": "1", "t": "0"}


def test_sieve_checks():
    c = p2()
    assert is_sieve(make_sieve(c, "x", {"x": "inf", "y": "inf"})) == []
    bad = is_sieve(make_sieve(c, "y", {"x": "0", "y": "0"}))
    assert [(v.law, v.witness) for v in bad] == [("bound", ("x",))]


def test_pullbacks():
    c = p2()
    assert pullback_sieve(maximal_sieve(c, "x"), GeneralizedElement(c.base.index("2"), 1)) == maximal_sieve(c, "y")
    assert pullback_sieve(maximal_sieve(c, "x"), GeneralizedElement(c.base.unit, 0)) == maximal_sieve(c, "x")
    ch = chain3()
    bottom_on_t = make_sieve(ch, "t", {"b": "1", "m": "0", "t": "0"})
    r = pullback_sieve(bottom_on_t, GeneralizedElement(1, ch.index("m")))
    assert r.labels() == {"b": "1", "m": "0", "t": "0"} and r.target == ch.index("m")


def test_closed_forms_at_the_unit():
    c = p2()
    s = maximal_sieve(c, "x")
    assert pullback_lawvere(s, c.base.unit, "x") == pullback_sieve(s, GeneralizedElement(c.base.unit, 0))
    e = p2e()
    se = maximal_sieve(e, "x")
    assert pullback_proxet(se, e.base.unit, "x") == pullback_sieve(se, GeneralizedElement(e.base.unit, 0))
    assert pullback_lawvere(s, c.base.index("2"), "y").labels() == {"x": "0", "y": "1"}


def test_small_sieve_counts():
    assert [s.labels() for s in enumerate_sieves(one(), "*")] == [{"*": "0"}, {"*": "1"}]
    on_x = enumerate_sieves(antichain2(), "x")
    assert sorted(s.values for s in on_x) == [(0, 0), (1, 0)]
    empty = EnrichedCategory(Q2, (), ())
    assert enumerate_presheaves(empty) == [Presheaf(empty, ())]
    assert enumerate_coverages(empty) == [make_coverage(empty, [])]


def test_sieve_meet_and_base_change():
    c = p2()
    for s in enumerate_sieves(c, "x"):
        assert sieve_meet(maximal_sieve(c, "x"), s) == s
        assert base_change_sieve(identity(T3), s).values == s.values
    ch = chain3()
    s = make_sieve(ch, "t", {"b": "1", "m": "0", "t": "0"})
    img = base_change_sieve(two_into_exponential(), s)
    assert img.labels() == {"b": "exp(0)", "m": "exp(-inf)", "t": "exp(-inf)"}


# coverages


def test_trivial_coverages_are_topologies():
    for j in (indiscrete(p2()), discrete(p2())):
        r = check_coverage(j)
        assert r.is_coverage and r.is_topology


def test_t2_failure_witness():
    c = p2()
    j = make_coverage(c, [[maximal_sieve(c, "x"), zero_sieve(c, "x")], [maximal_sieve(c, "y")]])
    r = check_coverage(j)
    assert r.t2 and not r.t1


def test_meets():
    c = p2()
    j = enumerate_coverages(c)[5]
    assert coverage_meet([j, discrete(c)]) == j
    assert coverage_meet([j, indiscrete(c)]) == indiscrete(c)
    two = [k for k in enumerate_coverages(chain3()) if sum(len(f) for f in k.families) == 4]
    a, b = two[0], two[1]
    m = coverage_meet([a, b])
    assert m.families == tuple(fa & fb for fa, fb in zip(a.families, b.families))


def test_closures():
    c = antichain2()
    seed = make_coverage(c, [[maximal_sieve(c, "x"), zero_sieve(c, "x")], [maximal_sieve(c, "y")]])
    cl = topology_closure(seed)
    assert zero_sieve(c, "x") in cl[0] and zero_sieve(c, "y") not in cl[1]
    for d in (indiscrete(p2()), discrete(p2())):
        assert topology_closure(d) == d
    # on P2 the zero sieve on x pulls back to the zero sieve on y
    j = make_coverage(p2(), [[maximal_sieve(p2(), "x"), zero_sieve(p2(), "x")], [maximal_sieve(p2(), "y")]])
    assert zero_sieve(p2(), "y") in topology_closure(j)[1]


def test_coverage_base_change():
    c = p2()
    for j in enumerate_coverages(c)[:50]:
        assert base_change_coverage(identity(T3), j).families == j.families
    imgs = {base_change_coverage(two_into_exponential(), j) for j in enumerate_coverages(chain3())}
    assert len(imgs) == 24
    pe = p2e()
    imgs = {base_change_coverage(neg_log(), j) for j in enumerate_coverages(pe)}
    assert len(imgs) == 1021


def test_one_object_coverages():
    covs = enumerate_coverages(one())
    assert sorted(len(j[0]) for j in covs) == [1, 2]


# base change


def test_flag_examples():
    incl = two_into_exponential()
    assert incl.lax_monoidal and incl.right_adjoint and incl.faithful and incl.conservative and incl.full
    # exp(-q) goes to 1 exactly when q is finite
    assert incl.left_adjoint == (1, 1, 1, 1, 0)
    nl = neg_log()
    assert all((nl.lax_monoidal, nl.right_adjoint, nl.conservative, nl.full, nl.left_strong_monoidal))
    col = collapse_to_two()
    assert col.map == (1, 0, 0, 0, 0) and col.lax_monoidal and not col.conservative
    assert col.witnesses["conservative"] == ("2", "1")


def test_presheaf_base_change_examples():
    c = p2()
    for p in enumerate_presheaves(c):
        assert presheaf_base_change(identity(T3), p).values == p.values
    top = Presheaf(c, (0, 0))
    assert presheaf_base_change(exp_neg(), top).labels() == {"x": "exp(0)", "y": "exp(0)"}
    p = Presheaf(c, (1, 0))
    assert presheaf_base_change(exp_neg(), p).labels() == {"x": "exp(-1)", "y": "exp(0)"}


# sheaves


def test_sheaf_examples():
    c = p2()
    for p in enumerate_presheaves(c):
        assert is_sheaf(p, indiscrete(c))
    o = one()
    assert is_sheaf(Presheaf(o, (o.hom[0][0],)), discrete(o))
    j = topology_closure(
        make_coverage(c, [[maximal_sieve(c, "x"), zero_sieve(c, "x")], [maximal_sieve(c, "y")]])
    )
    # the terminal presheaf is a sheaf for every coverage; the representable is not
    assert is_sheaf(Presheaf(c, (0, 0)), j)
    rep_x = Presheaf(c, tuple(c.hom[z][0] for z in range(2)))
    assert not is_sheaf(rep_x, j)


def test_sigma_on_representables_for_indiscrete():
    for c in (p2(), chain3()):
        for x in range(c.size):
            rep = Presheaf(c, tuple(c.hom[z][x] for z in range(c.size)))
            assert sigma(sigma(rep, indiscrete(c)), indiscrete(c)) == rep


def test_density_examples():
    c = p2()
    for j in (indiscrete(c), discrete(c)):
        assert is_dense(maximal_sieve(c, "x"), j)
    assert not is_dense(zero_sieve(c, "x"), indiscrete(c))
    assert closure_of_subpresheaf(zero_sieve(c, "x"), discrete(c)) == maximal_sieve(c, "x")


def test_commutation_examples():
    c = p2()
    for p in enumerate_presheaves(c)[:5]:
        assert check_sheafification_commutes(identity(T3), p, discrete(c)).equal
    pe = p2e()
    for p in enumerate_presheaves(pe):
        assert check_sheafification_commutes(neg_log(), p, indiscrete(pe)).equal


# rings


def test_ring_examples():
    z6 = rg.zmod(6)
    assert [i.label() for i in rg.enumerate_right_ideals(rg.zmod(5))] == ["(0)", "(1)"]
    assert [i.label() for i in rg.enumerate_right_ideals(rg.zmod(4))] == ["(0)", "(2)", "(1)"]
    for i in rg.enumerate_right_ideals(z6):
        assert rg.colon(i, 1) == i
        assert rg.colon(rg.unit_ideal(z6), i.generators[0] if i.generators else 0) == rg.unit_ideal(z6)
    three = rg.make_ideal(z6, [0, 3])
    assert rg.check_gabriel(rg.make_topology(z6, [three])).r1
    for n in (2, 6, 8):
        r = rg.zmod(n)
        assert rg.check_gabriel(rg.make_topology(r, [rg.unit_ideal(r)])).ok


def test_mult_set_examples():
    z6 = rg.zmod(6)
    assert rg.from_mult_set(z6, [1]).label() == "{(1)}"
    improper = rg.make_topology(z6, [rg.unit_ideal(z6)])
    assert rg.torsion(z6, improper).label() == "(0)"
    z2 = rg.zmod(2)
    disc = rg.make_topology(z2, rg.enumerate_right_ideals(z2))
    assert rg.check_gabriel(disc).ok and rg.torsion(z2, disc).label() == "(1)"


def test_closed_module_examples():
    z6 = rg.zmod(6)
    improper = rg.make_topology(z6, [rg.unit_ideal(z6)])
    assert rg.is_j_closed_module(rg.ring_as_module(z6), improper).ok
    loc = rg.localize(z6, improper)
    assert rg.find_isomorphism(loc.ring_structure, z6) is not None


def test_fraction_examples():
    z6, z4 = rg.zmod(6), rg.zmod(4)
    assert rg.find_isomorphism(rg.ring_of_fractions_oracle(z6, [1]), z6) is not None
    assert rg.identify(rg.ring_of_fractions_oracle(z4, [1, 3])) == "zmod4"
    assert rg.identify(rg.ring_of_fractions_oracle(z6, [1, 3])) == "zmod2"


# graded


def test_graded_examples():
    i = parse_ideal("x^2")
    assert colon_monomial(i, (0, 0)) == i
    assert contains_monomial(i, (3, 1)) and not contains_monomial(i, (1, 5))
    s, t = GradedTopologySpec("x"), GradedTopologySpec("y")
    assert h_s_member(unit_ideal(), s) and h_s_member(unit_ideal(), t)
    assert degree_zero_base_change(unit_ideal()) == "k"
    assert degree_zero_base_change(parse_ideal("x")) == "0"
    assert degree_zero_base_change(zero_ideal()) == "0"


@pytest.mark.parametrize("dmax,witness", [(1, "<x>"), (2, "<x^2>"), (3, "<x^3>")])
def test_counterexample_witnesses(dmax, witness):
    r = reproduce_counterexample(dmax)
    assert r.witness.label() == witness
    assert r.image_s == r.image_t == ("k", "0")
