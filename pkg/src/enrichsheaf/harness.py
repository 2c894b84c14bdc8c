"""Exhaustive verification suites and the per-command report builders used by the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from . import graded as gr
from . import ring as rg
from .basechange import BaseChange, adjunction_violations, presheaf_base_change
from .category import EnrichedCategory, base_change_category, check_category, underlying_preorder
from .config import EnumerationTooLarge
from .coverage import (
    Coverage,
    SieveUniverse,
    base_change_coverage,
    check_coverage,
    coverage_join_closure,
    coverage_meet,
    discrete,
    enumerate_coverages,
    indiscrete,
    refinement_leq,
    topology_closure,
)
from .instance import Instance
from .quantale import check_axioms
from .report import Report
from .sheaf import (
    check_sheafification_commutes,
    closure_of_subpresheaf,
    is_dense,
    is_sheaf,
    sheafify,
    sheafify_oracle,
)
from .sieve import (
    GeneralizedElement,
    InvariantBroken,
    admissible_elements,
    base_change_sieve,
    compare_pullback_formulas,
    enumerate_presheaves,
    enumerate_sieves,
    is_presheaf,
    is_sieve,
    maximal_sieve,
    pullback_sieve,
)

ANCHORS = {
    "pullback": "sieve-pullback",
    "formula": "metric-pullback-formula",
    "lattice": "coverage-lattice",
    "sieves": "injective-sieves",
    "coverages": "injective-coverages",
    "bc_coverage": "base-changed-coverage",
    "sheafify": "sheafification",
    "commute": "sheafification-commutes",
    "gabriel": "gabriel-axioms",
    "equivalence": "gabriel-topology-equivalence",
    "localize": "localization-fractions",
    "torsion": "torsion-kernel",
    "counterexample": "graded-counterexample",
}


LATTICE_LIMIT = 64


@dataclass
class Options:
    dmax: int | None = None
    cap: int | None = None
    generators: str = "full"


# suites


@dataclass
class PullbackSuite:
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    maximal_failures: list[str] = field(default_factory=list)


def pullback_suite(c: EnrichedCategory, cap: int | None = None) -> PullbackSuite:
    """Every sieve pulled back along every admissible generalized element."""
    out = PullbackSuite()
    for x in range(c.size):
        top = maximal_sieve(c, x)
        for s in enumerate_sieves(c, x, cap):
            for y in range(c.size):
                for f in admissible_elements(c, x, y):
                    out.cases += 1
                    p = pullback_sieve(s, f)
                    if is_sieve(p):
                        out.failures.append(f"{s!r} along {c.base.labels[f.g]} at {c.objects[y]}")
                    if s == top and p != maximal_sieve(c, y):
                        out.maximal_failures.append(f"{c.objects[x]} along {c.base.labels[f.g]} at {c.objects[y]}")
    return out


@dataclass
class LatticeSuite:
    coverages: int
    topologies: int
    top_ok: bool
    bottom_ok: bool
    meet_failures: int
    join_failures: int
    closure_failures: int
    pairs: int


def lattice_suite(c: EnrichedCategory, cap: int | None = None) -> LatticeSuite:
    covs = enumerate_coverages(c, cap)
    top, bottom = discrete(c), indiscrete(c)
    top_ok = top in covs and all(refinement_leq(j, top) for j in covs)
    bottom_ok = bottom in covs and all(refinement_leq(bottom, j) for j in covs)
    cset = set(covs)
    topos = [j for j in covs if check_coverage(j).is_topology]
    closures = {j: topology_closure(j) for j in covs}
    meet_bad = join_bad = clos_bad = 0
    for j in covs:
        t = closures[j]
        if t not in topos or not refinement_leq(j, t) or topology_closure(t) != t:
            clos_bad += 1
        if any(refinement_leq(j, k) and not refinement_leq(t, k) for k in topos):
            clos_bad += 1
    for j, k in product(covs, repeat=2):
        m = coverage_meet([j, k])
        below = [h for h in covs if refinement_leq(h, j) and refinement_leq(h, k)]
        if m not in cset or not all(refinement_leq(h, m) for h in below):
            meet_bad += 1
        u = coverage_join_closure([j, k])
        above = [h for h in covs if refinement_leq(j, h) and refinement_leq(k, h)]
        if u not in cset or not all(refinement_leq(u, h) for h in above):
            join_bad += 1
        if refinement_leq(j, k) and not refinement_leq(closures[j], closures[k]):
            clos_bad += 1
    return LatticeSuite(len(covs), len(topos), top_ok, bottom_ok, meet_bad, join_bad, clos_bad, len(covs) ** 2)


@dataclass
class InjectivitySuite:
    sieves: int
    sieve_images: int
    coverages: int
    coverage_images: int
    meet_failures: int
    pairs: int
    image_coverages: int
    sieve_collision: tuple | None = None
    coverage_collision: tuple | None = None


def injectivity_suite(g: BaseChange, c: EnrichedCategory, cap: int | None = None) -> InjectivitySuite:
    """Base change on every sieve and every coverage of ``c``.

    Coverages are handled as bitmasks over the sieve universe, so the meet of two
    coverages is a mask intersection and its image is looked up, not recomputed.
    """
    gc = base_change_category(g, c)
    hyp = g.faithful and g.conservative
    u = SieveUniverse(c)
    img = [base_change_sieve(g, s, gc) for s in u.sieves]
    sieve_seen: dict = {}
    sieve_collision = None
    for s, t in zip(u.sieves, img):
        if t in sieve_seen and sieve_collision is None:
            sieve_collision = (sieve_seen[t].labels(), s.labels())
        sieve_seen.setdefault(t, s)
    tpos = {t: k for k, t in enumerate(sorted(set(img), key=lambda t: (t.target, t.values)))}
    bit = [1 << tpos[t] for t in img]

    def image_mask(m: int) -> int:
        out = 0
        while m:
            b = m & -m
            out |= bit[b.bit_length() - 1]
            m ^= b
        return out

    masks = u.coverage_masks(cap)
    images: dict[int, int] = {}
    seen: dict[tuple, int] = {}
    coverage_collision = None
    image_coverages = 0
    for m in masks:
        j = u.coverage(m)
        images[m] = image_mask(m)
        # outside the hypotheses only the pointwise image is defined
        gj = base_change_coverage(g, j, gc) if hyp else _mask_coverage(tpos, images[m], gc)
        if check_coverage(gj, check_t3=False).is_coverage:
            image_coverages += 1
        key = gj.canonical()
        if key in seen and coverage_collision is None:
            coverage_collision = (u.coverage(seen[key]).canonical(), j.canonical())
        seen.setdefault(key, m)
        if gj != _mask_coverage(tpos, images[m], gc):
            raise InvariantBroken("mask image disagrees with base_change_coverage")
    meet_bad = 0
    for a, b in product(masks, repeat=2):
        ab = a & b
        im = images.get(ab)
        if im is None:
            im = image_mask(ab)
        if im != images[a] & images[b]:
            meet_bad += 1
    return InjectivitySuite(
        sieves=len(u.sieves),
        sieve_images=len(sieve_seen),
        coverages=len(masks),
        coverage_images=len(seen),
        meet_failures=meet_bad,
        pairs=len(masks) ** 2,
        image_coverages=image_coverages,
        sieve_collision=sieve_collision,
        coverage_collision=coverage_collision,
    )


def _mask_coverage(tpos: dict, mask: int, gc: EnrichedCategory) -> Coverage:
    inv = {k: t for t, k in tpos.items()}
    fams = [set() for _ in range(gc.size)]
    for k, t in inv.items():
        if mask >> k & 1:
            fams[t.target].add(t)
    return Coverage(gc, tuple(frozenset(f) for f in fams))


@dataclass
class SheafSuite:
    topologies: int
    presheaves: int
    not_sheaf: int = 0
    not_fixed: int = 0
    not_idempotent: int = 0
    oracle_mismatch: int = 0


def sheaf_suite(c: EnrichedCategory, cap: int | None = None) -> SheafSuite:
    covs = enumerate_coverages(c, cap)
    tops = [j for j in covs if check_coverage(j).is_topology]
    ps = enumerate_presheaves(c)
    out = SheafSuite(len(tops), len(ps))
    for j in tops:
        for p in ps:
            s = sheafify(p, j)
            if not is_sheaf(s, j):
                out.not_sheaf += 1
            if sheafify(s, j) != s:
                out.not_idempotent += 1
            if is_sheaf(p, j) and s != p:
                out.not_fixed += 1
            o = sheafify_oracle(p, j)
            if o is None or o.values != s.values:
                out.oracle_mismatch += 1
    return out


@dataclass
class CommuteSuite:
    pairs: int = 0
    equal: int = 0
    leq: int = 0
    image_not_coverage: int = 0
    first_mismatch: str = ""


def commute_suite(g: BaseChange, c: EnrichedCategory, cap: int | None = None) -> CommuteSuite:
    covs = enumerate_coverages(c, cap)
    ps = enumerate_presheaves(c)
    out = CommuteSuite()
    for j in covs:
        for p in ps:
            r = check_sheafification_commutes(g, p, j)
            out.pairs += 1
            out.equal += r.equal
            out.leq += r.comparison_leq
            out.image_not_coverage += not r.image_is_coverage
            if not r.equal and not out.first_mismatch:
                out.first_mismatch = f"{r.presheaf}: {' / '.join(r.lines()[:2])}"
    return out


# command builders


def _cats_over(inst: Instance, q) -> list[tuple[str, EnrichedCategory]]:
    return [(n, c) for n, c in sorted(inst.categories.items()) if c.base == q]


def cmd_validate(inst: Instance, opt: Options) -> Report:
    rep = Report("validate", inst.source)
    for n, q in sorted(inst.quantales.items()):
        bad = check_axioms(q)
        rep.check(f"quantale {n} laws", not bad, str(bad[0]) if bad else f"{q.size} elements")
    for n, c in sorted(inst.categories.items()):
        bad = check_category(c)
        rep.check(f"category {n} identity and composition", not bad, str(bad[0]) if bad else "")
        rep.value(f"category {n} underlying order pairs", len(underlying_preorder(c)))
    for n, s in sorted(inst.sieves.items()):
        bad = is_sieve(s)
        rep.check(f"sieve {n}", not bad, str(bad[0]) if bad else "")
    for n, p in sorted(inst.presheaves.items()):
        bad = is_presheaf(p)
        rep.check(f"presheaf {n}", not bad, str(bad[0]) if bad else "")
    for n, j in sorted(inst.coverages.items()):
        _coverage_checks(rep, n, j, inst.coverage_expect.get(n, "coverage"), opt)
    for n, g in sorted(inst.base_changes.items()):
        rep.check(f"base change {n} monotone", True)
        rep.info(f"base change {n} flags", _flags(g))
    for n, r in sorted(inst.rings.items()):
        rep.check(f"ring {n} axioms", not rg.ring_violations(r), f"{r.size} elements")
    for n, t in sorted(inst.topologies.items()):
        fam = _topology(t)
        g = rg.check_gabriel(fam)
        rep.check(f"topology {n} R1-R3", g.ok, _gabriel_detail(g), ANCHORS["gabriel"])
    for n, e in sorted(inst.graded.items()):
        _graded_check(rep, n, e, opt)
    return rep


def _flags(g: BaseChange) -> str:
    return ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in g.flags().items())


def _coverage_checks(rep: Report, n: str, j: Coverage, expect: str, opt: Options) -> None:
    r = check_coverage(j, check_t3=True, cap=opt.cap)
    if expect == "none":
        rep.info(f"coverage {n}", f"T1 {r.status('T1')}, T2 {r.status('T2')}, T3 {r.status('T3')}")
        return
    rep.check(f"coverage {n} members are sieves", not r.members, str(r.members[0]) if r.members else "")
    rep.check(f"coverage {n} T1", not r.t1, str(r.t1[0]) if r.t1 else "")
    rep.check(f"coverage {n} T2", not r.t2, str(r.t2[0]) if r.t2 else "")
    if expect == "topology":
        if r.t3 is None:
            rep.not_checked(f"coverage {n} T3", r.t3_reason)
        else:
            rep.check(f"coverage {n} T3", not r.t3, str(r.t3[0]) if r.t3 else "")
    else:
        rep.info(f"coverage {n} T3", r.status("T3") + (f" ({r.t3_reason})" if r.t3_reason else ""))


def cmd_coverage_check(inst: Instance, opt: Options) -> Report:
    rep = Report("coverage-check", inst.source)
    for n, j in sorted(inst.coverages.items()):
        _coverage_checks(rep, n, j, inst.coverage_expect.get(n, "coverage"), opt)
    for n, c in sorted(inst.categories.items()):
        try:
            count = len(SieveUniverse(c).coverage_masks(opt.cap))
        except EnumerationTooLarge as e:
            rep.not_checked(f"coverage lattice on {n}", str(e), ANCHORS["lattice"])
            continue
        if count > LATTICE_LIMIT:
            rep.value(f"{n} coverages", count)
            rep.info(f"coverage lattice on {n}", f"pairwise laws skipped: {count} coverages exceed {LATTICE_LIMIT}")
            continue
        s = lattice_suite(c, opt.cap)
        rep.value(f"{n} coverages", s.coverages)
        rep.value(f"{n} topologies", s.topologies)
        rep.check(
            f"coverage lattice on {n}",
            s.top_ok and s.bottom_ok and not (s.meet_failures or s.join_failures or s.closure_failures),
            f"{s.pairs} pairs; meet failures {s.meet_failures}, join failures {s.join_failures}, "
            f"closure failures {s.closure_failures}",
            ANCHORS["lattice"],
        )
    return rep


def cmd_close(inst: Instance, opt: Options) -> Report:
    rep = Report("close", inst.source)
    for n, j in sorted(inst.coverages.items()):
        c = j.category
        t = topology_closure(j, opt.cap)
        u = coverage_join_closure([j])
        rep.check(f"coverage closure of {n} is a coverage containing it", check_coverage(u, check_t3=False).is_coverage and refinement_leq(j, u))
        r = check_coverage(t, cap=opt.cap)
        rep.check(f"topology closure of {n} is a topology containing it", r.is_topology and refinement_leq(j, t))
        rep.check(f"topology closure of {n} is idempotent", topology_closure(t, opt.cap) == t)
        rep.value(f"{n} closure family sizes", " ".join(f"{c.objects[x]}={len(t[x])}" for x in range(c.size)))
        for x in range(c.size):
            for s in sorted(t[x], key=lambda s: s.values):
                rep.note(f"{n} closure on {c.objects[x]}: {_show(s.labels())}")
    return rep


def _show(d: dict) -> str:
    return "{" + ", ".join(f"{k}: {v}" for k, v in d.items()) + "}"


def cmd_pullback(inst: Instance, opt: Options) -> Report:
    rep = Report("pullback", inst.source)
    for n, (s, g, y) in sorted(inst.pullbacks.items()):
        c = s.category
        p = pullback_sieve(s, GeneralizedElement(g, y))
        rep.check(f"pullback {n} is a sieve", not is_sieve(p), _show(p.labels()), ANCHORS["pullback"])
        if c.base.kind in ("truncated_additive", "exponential"):
            cmp = compare_pullback_formulas(s, g, y)
            rep.note(f"pullback {n} generic: {_show(cmp['generic'])}")
            rep.note(f"pullback {n} closed-form {cmp['formula']}: {_show(cmp['literal'])}")
            detail = "agrees" if cmp["agree"] else (
                "disagrees; closed form " + ("is" if cmp["literal_is_sieve"] else "is not")
                + " a sieve" + (f" ({cmp['literal_violations'][0]})" if cmp["literal_violations"] else "")
            )
            rep.info(f"pullback {n} closed-form comparison", detail + f"  (anchor: {ANCHORS['formula']})")
    for n, c in sorted(inst.categories.items()):
        try:
            s = pullback_suite(c, opt.cap)
        except EnumerationTooLarge as e:
            rep.not_checked(f"pullbacks on {n}", str(e), ANCHORS["pullback"])
            continue
        rep.check(
            f"pullbacks on {n} are sieves",
            not s.failures,
            f"{s.cases} cases" + (f"; first failure {s.failures[0]}" if s.failures else ""),
            ANCHORS["pullback"],
        )
        rep.check(f"maximal sieves on {n} pull back to maximal sieves", not s.maximal_failures, "", ANCHORS["pullback"])
    return rep


def cmd_base_change(inst: Instance, opt: Options) -> Report:
    rep = Report("base-change", inst.source)
    for gn, g in sorted(inst.base_changes.items()):
        rep.info(f"base change {gn} flags", _flags(g))
        if g.right_adjoint:
            bad = adjunction_violations(g)
            rep.info(f"base change {gn} adjunction laws", "all hold" if not bad else f"{len(bad)} violations, first {bad[0]}")
        for cn, c in _cats_over(inst, g.source):
            gc = base_change_category(g, c)
            rep.check(f"{gn} applied to category {cn}", not check_category(gc))
            for sn, s in sorted(inst.sieves.items()):
                if s.category == c:
                    t = base_change_sieve(g, s, gc)
                    rep.check(f"{gn} applied to sieve {sn}", not is_sieve(t), _show(t.labels()))
            for pn, p in sorted(inst.presheaves.items()):
                if p.category == c:
                    t = presheaf_base_change(g, p, gc)
                    rep.check(f"{gn} applied to presheaf {pn}", not is_presheaf(t), _show(t.labels()))
            if not (g.faithful and g.conservative):
                rep.info(f"{gn} on coverages of {cn}", "skipped: base change is not faithful and conservative")
                continue
            for jn, j in sorted(inst.coverages.items()):
                if j.category != c or not check_coverage(j, check_t3=False).is_coverage:
                    continue
                gj = base_change_coverage(g, j, gc)
                r = check_coverage(gj, check_t3=False)
                name = f"{gn} applied to coverage {jn} is a coverage"
                if g.right_adjoint and g.left_strong_monoidal:
                    rep.check(name, r.is_coverage, "" if r.is_coverage else str((r.t1 + r.t2)[0]), ANCHORS["bc_coverage"])
                else:
                    rep.info(name, ("yes" if r.is_coverage else f"no, {(r.t1 + r.t2)[0]}")
                             + "; left adjoint is not strong monoidal, so no guarantee applies")
    return rep


def cmd_injectivity(inst: Instance, opt: Options) -> Report:
    rep = Report("injectivity", inst.source)
    for gn, g in sorted(inst.base_changes.items()):
        hyp = g.faithful and g.conservative
        for cn, c in _cats_over(inst, g.source):
            try:
                s = injectivity_suite(g, c, opt.cap)
            except EnumerationTooLarge as e:
                rep.not_checked(f"{gn} on {cn}", str(e), ANCHORS["coverages"])
                continue
            rep.value(f"{gn} on {cn} sieves enumerated", s.sieves)
            rep.value(f"{gn} on {cn} sieve images distinct", s.sieve_images)
            rep.value(f"{gn} on {cn} coverages enumerated", s.coverages)
            rep.value(f"{gn} on {cn} images distinct", s.coverage_images)
            rep.value(f"{gn} on {cn} images that are coverages", s.image_coverages)
            rep.note(f"{gn} on {cn}: coverages enumerated: {s.coverages}; images distinct: {s.coverage_images}")
            sieve_ok = s.sieve_images == s.sieves
            cov_ok = s.coverage_images == s.coverages and s.meet_failures == 0
            sieve_detail = "0 collisions" if sieve_ok else f"collision {s.sieve_collision}"
            cov_detail = (
                f"{s.coverages - s.coverage_images} collisions, {s.meet_failures} of {s.pairs} meets not preserved"
            )
            if hyp:
                rep.check(f"{gn} injective on sieves of {cn}", sieve_ok, sieve_detail, ANCHORS["sieves"])
                rep.check(f"{gn} injective and meet-preserving on coverages of {cn}", cov_ok, cov_detail, ANCHORS["coverages"])
            else:
                rep.info(f"{gn} on sieves of {cn} (hypotheses not met)", sieve_detail)
                rep.info(f"{gn} on coverages of {cn} (hypotheses not met)", cov_detail)
    return rep


def cmd_sheaf_check(inst: Instance, opt: Options) -> Report:
    rep = Report("sheaf-check", inst.source)
    for jn, j in sorted(inst.coverages.items()):
        ok = check_coverage(j, check_t3=False).is_coverage
        rep.check(f"coverage {jn} is a coverage", ok)
        if not ok:
            continue
        for pn, p in sorted(inst.presheaves.items()):
            if p.category == j.category:
                r = is_sheaf(p, j)
                rep.info(f"presheaf {pn} under {jn}", "sheaf" if r else f"not a sheaf, witness {r.witness}")
        for sn, s in sorted(inst.sieves.items()):
            if s.category == j.category:
                cl = closure_of_subpresheaf(s, j)
                rep.info(f"sieve {sn} under {jn}", f"closure {_show(cl.labels())}; dense: {'yes' if is_dense(s, j) else 'no'}")
    return rep


def cmd_sheafify(inst: Instance, opt: Options) -> Report:
    rep = Report("sheafify", inst.source)
    for jn, j in sorted(inst.coverages.items()):
        r = check_coverage(j, cap=opt.cap)
        if not r.is_coverage:
            rep.check(f"coverage {jn} is a coverage", False)
            continue
        for pn, p in sorted(inst.presheaves.items()):
            if p.category != j.category:
                continue
            s = sheafify(p, j)
            rep.value(f"sheafification of {pn} under {jn}", _show(s.labels()))
            if r.is_topology:
                rep.check(f"sheafification of {pn} under {jn} is a sheaf", bool(is_sheaf(s, j)), "", ANCHORS["sheafify"])
                rep.check(f"sheafification of {pn} under {jn} is idempotent", sheafify(s, j) == s, "", ANCHORS["sheafify"])
                if is_sheaf(p, j):
                    rep.check(f"{pn} is a sheaf under {jn} and is fixed", s == p, "", ANCHORS["sheafify"])
            else:
                rep.info(f"sheafification of {pn} under {jn}", ("a sheaf" if is_sheaf(s, j) else "not a sheaf") + "; coverage is not a topology")
    for cn, c in sorted(inst.categories.items()):
        try:
            s = sheaf_suite(c, opt.cap)
        except EnumerationTooLarge as e:
            rep.not_checked(f"sheafification suite on {cn}", str(e), ANCHORS["sheafify"])
            continue
        rep.check(
            f"sheafification suite on {cn}",
            not (s.not_sheaf or s.not_fixed or s.not_idempotent or s.oracle_mismatch),
            f"{s.topologies} topologies x {s.presheaves} presheaves; not sheaf {s.not_sheaf}, "
            f"not fixed {s.not_fixed}, not idempotent {s.not_idempotent}, oracle mismatch {s.oracle_mismatch}",
            ANCHORS["sheafify"],
        )
    return rep


def cmd_commute_check(inst: Instance, opt: Options) -> Report:
    rep = Report("commute-check", inst.source)
    for gn, g in sorted(inst.base_changes.items()):
        if not (g.faithful and g.conservative and g.right_adjoint):
            rep.info(f"{gn}", "skipped: needs faithful, conservative and a left adjoint")
            continue
        for cn, c in _cats_over(inst, g.source):
            try:
                s = commute_suite(g, c, opt.cap)
            except EnumerationTooLarge as e:
                rep.not_checked(f"{gn} on {cn}", str(e), ANCHORS["commute"])
                continue
            rep.value(f"{gn} on {cn} pairs", s.pairs)
            rep.value(f"{gn} on {cn} equal", s.equal)
            rep.value(f"{gn} on {cn} image families that are not coverages", s.image_not_coverage)
            detail = f"{s.equal} of {s.pairs} equal" + (f"; first mismatch {s.first_mismatch}" if s.first_mismatch else "")
            if g.full:
                if not g.left_strong_monoidal:
                    detail += "; left adjoint is not strong monoidal"
                rep.check(f"sheafification commutes with {gn} on {cn}", s.equal == s.pairs, detail, ANCHORS["commute"])
            else:
                rep.info(f"sheafification vs {gn} on {cn} (not full)", detail + f"; {s.leq} comparisons hold")
    return rep


def _topology(t: dict) -> rg.GabrielTopology:
    r = t["ring"]
    if t["mult_set"] is not None:
        return rg.from_mult_set(r, t["mult_set"])
    if t["close"]:
        return rg.gabriel_closure(r, t["seeds"])
    return t["family"]


def _gabriel_detail(g: rg.GabrielReport) -> str:
    bad = g.r1 + g.r2 + g.r3
    if not g.nonempty:
        return "empty family"
    return str(bad[0]) if bad else "R1 pass, R2 pass, R3 pass"


def cmd_ideals(inst: Instance, opt: Options) -> Report:
    rep = Report("ideals", inst.source)
    for n, r in sorted(inst.rings.items()):
        try:
            ids = rg.enumerate_right_ideals(r)
        except EnumerationTooLarge as e:
            rep.not_checked(f"ideals of {n}", str(e))
            continue
        rep.check(f"ideals of {n} are right ideals", all(not rg.right_ideal_violations(r, i.elements) for i in ids))
        rep.value(f"{n} right ideals", len(ids))
        rep.note(f"{n}: " + ", ".join(i.label() for i in ids))
    return rep


def cmd_gabriel_check(inst: Instance, opt: Options) -> Report:
    rep = Report("gabriel-check", inst.source)
    for n, t in sorted(inst.topologies.items()):
        fam = _topology(t)
        g = rg.check_gabriel(fam)
        rep.note(f"{n}: {fam.label()}")
        for ax in ("nonempty", "R1", "R2", "R3"):
            bad = getattr(g, ax.lower(), ()) if ax != "nonempty" else ()
            ok = g.nonempty if ax == "nonempty" else not bad
            rep.check(f"topology {n} {ax}", ok, str(bad[0]) if bad else "", ANCHORS["gabriel"])
        tr = rg.translated_topology_report(fam.ring, fam.ideals)
        rep.check(
            f"topology {n} R1-R3 agrees with T1-T3",
            g.ok == all(tr.values()),
            ", ".join(f"{k} {'pass' if v else 'fail'}" for k, v in tr.items()),
            ANCHORS["equivalence"],
        )
    for n, r in sorted(inst.rings.items()):
        bad = equivalence_mismatches(r)
        rep.check(f"every ideal family on {n}: R1-R3 iff T1-T3", not bad, f"{bad[0]}" if bad else "", ANCHORS["equivalence"])
    return rep


def equivalence_mismatches(r: rg.FiniteRing, limit: int = 16) -> list[str]:
    lat = rg.enumerate_right_ideals(r)
    if len(lat) > limit:
        raise EnumerationTooLarge(f"{2 ** len(lat)} ideal families exceed the enumeration limit")
    out = []
    for k in range(len(lat) + 1):
        for fam in combinations(lat, k):
            g = rg.check_gabriel(rg.make_topology(r, fam)).ok
            t = all(rg.translated_topology_report(r, fam).values())
            if g != t:
                out.append("{" + ", ".join(i.label() for i in fam) + "}")
    return out


def cmd_gabriel_close(inst: Instance, opt: Options) -> Report:
    rep = Report("gabriel-close", inst.source)
    for n, t in sorted(inst.topologies.items()):
        if t["seeds"] is None:
            continue
        closed = rg.gabriel_closure(t["ring"], t["seeds"])
        rep.note(f"{n}: seeds {{{', '.join(i.label() for i in t['seeds'])}}} close to {closed.label()}")
        rep.check(f"closure of {n} passes R1-R3", rg.check_gabriel(closed).ok, "", ANCHORS["gabriel"])
        rep.value(f"{n} closure size", len(closed.ideals))
    return rep


def cmd_localize(inst: Instance, opt: Options) -> Report:
    rep = Report("localize", inst.source)
    for n, t in sorted(inst.topologies.items()):
        r = t["ring"]
        fam = _topology(t)
        loc = rg.localize(r, fam, opt.cap or 10**6)
        rep.note(f"{n}: topology {fam.label()}; t(A) = {loc.torsion.label()}; I_min = {loc.i_min.label()}")
        kernel = [a for a in r.elements if loc.canonical[a] == loc.module.zero]
        rep.check(
            f"{n} torsion is the kernel of A -> A_t",
            frozenset(kernel) == loc.torsion.elements,
            f"kernel {{{', '.join(r.labels[a] for a in kernel)}}}",
            ANCHORS["torsion"],
        )
        rep.value(f"{n} localization size", loc.size)
        name = rg.identify(loc.ring_structure) if loc.ring_structure is not None else f"module of order {loc.size}"
        if loc.note:
            rep.info(f"{n} ring structure", loc.note)
        if t["mult_set"] is None or not r.commutative:
            rep.note(f"A_R ≅ {name}")
            continue
        oracle = rg.ring_of_fractions_oracle(r, t["mult_set"])
        iso = loc.ring_structure is not None and rg.find_isomorphism(loc.ring_structure, oracle) is not None
        rep.note(f"A_R ≅ {name}; oracle A[S^{{-1}}] ≅ {rg.identify(oracle)}; isomorphic: {'yes' if iso else 'no'}")
        hyp = t["mult_set"] <= r.units | _non_zero_divisors(r)
        if hyp:
            rep.check(f"{n} A_R is isomorphic to A[S^-1]", iso, "", ANCHORS["localize"])
        else:
            rep.info(f"{n} A_R vs A[S^-1] (S contains zero divisors)", "isomorphic" if iso else "not isomorphic")
    return rep


def _non_zero_divisors(r: rg.FiniteRing) -> frozenset[int]:
    return frozenset(a for a in r.elements if all(r.mul[a][b] != r.zero for b in r.elements if b != r.zero))


def cmd_counterexample(inst: Instance | None, opt: Options) -> Report:
    rep = Report("counterexample", inst.source if inst else "-")
    dmax = opt.dmax or 3
    c = gr.reproduce_counterexample(dmax)
    rep.note(f"dmax = {dmax}; monomial ideals with generators of degree <= {dmax}: {c.sample_size}")
    rep.note(f"separating ideal {c.witness.label()}: in H_S {'yes' if c.witness_in_s else 'no'}, in H_T {'yes' if c.witness_in_t else 'no'}")
    rep.note(f"G~H_S = {{{', '.join(c.image_s)}}}; G~H_T = {{{', '.join(c.image_t)}}}")
    rep.check("H_S and H_T differ", c.families_differ, f"witness {c.witness.label()}", ANCHORS["counterexample"])
    rep.check("degree-zero images of H_S and H_T coincide", c.images_equal, "", ANCHORS["counterexample"])
    rep.check("image family is {k, 0}", set(c.image_s) == {"k", "0"}, "", ANCHORS["counterexample"])
    a, b = c.collision
    rep.info(
        "degree-zero base change is not injective on H_S members",
        f"{a.label()} and {b.label()} both map to {gr.degree_zero_base_change(a)}; hom(k, -) is not faithful",
    )
    rep.value("H_S members in sample", c.members_s)
    rep.value("H_T members in sample", c.members_t)
    if inst is not None:
        for n, e in sorted(inst.graded.items()):
            _graded_check(rep, n, e, opt)
    return rep


def _graded_check(rep: Report, n: str, e: dict, opt: Options) -> None:
    dmax = opt.dmax or int(e.get("dmax") or 6)
    fam = e["spec"] if e["spec"] is not None else e["family"]
    r = gr.check_graded_gabriel(fam, e["sample"], dmax)
    for ax in ("G1", "G2", "G3"):
        bad = getattr(r, ax.lower())
        rep.check(f"graded {n} {ax}", not bad, str(bad[0]) if bad else f"{len(r.sample)} ideals in closed sample")
    rep.info(f"graded {n} members", ", ".join(i.label() for i in r.members) or "none")
    rep.info(f"graded {n} scope", r.notes[0])


COMMANDS = {
    "validate": cmd_validate,
    "coverage-check": cmd_coverage_check,
    "close": cmd_close,
    "pullback": cmd_pullback,
    "base-change": cmd_base_change,
    "injectivity": cmd_injectivity,
    "sheaf-check": cmd_sheaf_check,
    "sheafify": cmd_sheafify,
    "commute-check": cmd_commute_check,
    "ideals": cmd_ideals,
    "gabriel-check": cmd_gabriel_check,
    "gabriel-close": cmd_gabriel_close,
    "localize": cmd_localize,
    "counterexample": cmd_counterexample,
}
