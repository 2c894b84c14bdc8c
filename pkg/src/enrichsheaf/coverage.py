"""Coverages and Grothendieck topologies on quantale-enriched categories.

A coverage assigns to each object a finite set of sieves on it.  Membership
is by value map, which is exact here because subobject classes are singletons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .category import BaseMismatchError, EnrichedCategory, base_change_category
from .config import DEFAULT_COVERAGE_CAP, EnumerationTooLarge
from .quantale import Violation
from .sieve import (
    GeneralizedElement,
    InvariantBroken,
    Sieve,
    admissible_elements,
    base_change_sieve,
    enumerate_sieves,
    is_sieve,
    maximal_sieve,
    pullback_sieve,
)


@dataclass(frozen=True)
class Coverage:
    category: EnrichedCategory
    families: tuple[frozenset, ...]

    def __post_init__(self) -> None:
        if len(self.families) != self.category.size:
            raise ValueError("one sieve family per object is required")
        for x, fam in enumerate(self.families):
            for s in fam:
                if s.target != x or s.category != self.category:
                    raise ValueError(f"{s!r} does not live on object {self.category.objects[x]}")

    def __hash__(self) -> int:
        return hash(self.families)

    def __getitem__(self, x: int) -> frozenset:
        return self.families[x]

    def canonical(self) -> tuple:
        return tuple(tuple(sorted(s.values for s in fam)) for fam in self.families)

    def __repr__(self) -> str:
        c = self.category
        parts = [f"{c.objects[x]}: {len(f)}" for x, f in enumerate(self.families)]
        return f"Coverage({', '.join(parts)})"

    def size(self) -> int:
        return sum(len(f) for f in self.families)


def make_coverage(c: EnrichedCategory, families: Sequence[Iterable[Sieve]]) -> Coverage:
    return Coverage(c, tuple(frozenset(f) for f in families))


def discrete(c: EnrichedCategory) -> Coverage:
    """Every sieve covers: the top of the coverage lattice."""
    return make_coverage(c, [enumerate_sieves(c, x) for x in range(c.size)])


def indiscrete(c: EnrichedCategory) -> Coverage:
    """Only maximal sieves cover: the bottom of the coverage lattice."""
    return make_coverage(c, [[maximal_sieve(c, x)] for x in range(c.size)])


# pullback structure, cached per category


@lru_cache(maxsize=1 << 16)
def _pullbacks(s: Sieve) -> tuple[Sieve, ...]:
    c = s.category
    out = []
    for y in range(c.size):
        for f in admissible_elements(c, s.target, y):
            out.append(pullback_sieve(s, f))
    return tuple(dict.fromkeys(out))


def all_pullbacks(s: Sieve) -> tuple[Sieve, ...]:
    """Distinct pullbacks of ``s`` along every generalized element into its target."""
    return _pullbacks(s)


def _pullbacks_within(r: Sieve, s: Sieve) -> Iterable[Sieve]:
    # generalized elements g -> S(y), pulled back along the composite into C(y, x)
    c = r.category
    q = c.base
    for y in range(c.size):
        for g in q.elements:
            if q.leq(g, s.values[y]):
                yield pullback_sieve(r, GeneralizedElement(g, y))


@dataclass
class CoverageReport:
    t1: list[Violation] = field(default_factory=list)
    t2: list[Violation] = field(default_factory=list)
    t3: list[Violation] | None = None
    t3_reason: str = ""
    members: list[Violation] = field(default_factory=list)

    @property
    def is_coverage(self) -> bool:
        return not (self.t1 or self.t2 or self.members)

    @property
    def is_topology(self) -> bool:
        return self.is_coverage and self.t3 is not None and not self.t3

    def status(self, axiom: str) -> str:
        if axiom == "T3" and self.t3 is None:
            return "not-checked"
        bad = {"T1": self.t1, "T2": self.t2, "T3": self.t3, "members": self.members}[axiom]
        return "fail" if bad else "pass"


def check_coverage(j: Coverage, check_t3: bool = True, cap: int | None = None) -> CoverageReport:
    """T1, T2 and (optionally) T3 with witnesses; results are memoized per coverage."""
    rep = _check_coverage(j, check_t3, cap)
    return CoverageReport(
        list(rep.t1), list(rep.t2), None if rep.t3 is None else list(rep.t3), rep.t3_reason, list(rep.members)
    )


@lru_cache(maxsize=1 << 13)
def _check_coverage(j: Coverage, check_t3: bool, cap: int | None) -> CoverageReport:
    c = j.category
    ob = c.objects
    rep = CoverageReport()
    for x, fam in enumerate(j.families):
        for s in fam:
            for v in is_sieve(s):
                rep.members.append(Violation("member", (ob[x], str(s.labels())), str(v)))
    if rep.members:
        return rep
    for x in range(c.size):
        if maximal_sieve(c, x) not in j[x]:
            rep.t1.append(Violation("T1", (ob[x],), "maximal sieve missing"))
    for x, fam in enumerate(j.families):
        for s in sorted(fam, key=lambda s: s.values):
            for y in range(c.size):
                for f in admissible_elements(c, x, y):
                    p = pullback_sieve(s, f)
                    if p not in j[y]:
                        rep.t2.append(
                            Violation(
                                "T2",
                                (ob[x], str(s.labels()), c.base.labels[f.g], ob[y]),
                                f"pullback {p.labels()} missing from J({ob[y]})",
                            )
                        )
    if not check_t3:
        rep.t3_reason = "not requested"
        return rep
    try:
        universe = [enumerate_sieves(c, x, cap) for x in range(c.size)]
    except EnumerationTooLarge as exc:
        rep.t3_reason = str(exc)
        return rep
    rep.t3 = []
    for x in range(c.size):
        for r in universe[x]:
            if r in j[x]:
                continue
            for s in sorted(j[x], key=lambda s: s.values):
                if all(p in j[p.target] for p in _pullbacks_within(r, s)):
                    rep.t3.append(
                        Violation("T3", (ob[x], str(r.labels()), str(s.labels())), "locally covered but missing")
                    )
                    break
    return rep


def is_coverage(j: Coverage) -> bool:
    return check_coverage(j, check_t3=False).is_coverage


def _same_category(js: Sequence[Coverage]) -> EnrichedCategory:
    if not js:
        raise ValueError("at least one coverage is required")
    c = js[0].category
    if any(j.category != c for j in js):
        raise ValueError("coverages live on different categories")
    return c


def coverage_meet(js: Sequence[Coverage]) -> Coverage:
    c = _same_category(js)
    fams = [frozenset.intersection(*(j[x] for j in js)) for x in range(c.size)]
    out = Coverage(c, tuple(fams))
    rep = check_coverage(out, check_t3=False)
    if not rep.is_coverage and all(check_coverage(j, check_t3=False).is_coverage for j in js):
        raise InvariantBroken("meet of coverages is not a coverage")
    return out


def refinement_leq(j: Coverage, k: Coverage) -> bool:
    """``j`` is contained in ``k`` objectwise (``k`` refines ``j``)."""
    _same_category([j, k])
    return all(j[x] <= k[x] for x in range(j.category.size))


def _t2_saturate(c: EnrichedCategory, fams: list[set]) -> None:
    todo = [s for fam in fams for s in fam]
    while todo:
        s = todo.pop()
        for p in all_pullbacks(s):
            if p not in fams[p.target]:
                fams[p.target].add(p)
                todo.append(p)


def coverage_join_closure(js: Sequence[Coverage]) -> Coverage:
    """Least coverage containing every input: union, maximal sieves, then pullback saturation."""
    c = _same_category(js)
    fams = [set().union(*(j[x] for j in js)) | {maximal_sieve(c, x)} for x in range(c.size)]
    _t2_saturate(c, fams)
    return Coverage(c, tuple(frozenset(f) for f in fams))


def topology_closure(j: Coverage, cap: int | None = None) -> Coverage:
    """Least topology containing ``j``: alternate pullback saturation and local-character saturation."""
    c = j.category
    fams = [set(j[x]) | {maximal_sieve(c, x)} for x in range(c.size)]
    universe = [enumerate_sieves(c, x, cap) for x in range(c.size)]
    changed = True
    while changed:
        _t2_saturate(c, fams)
        changed = False
        for x in range(c.size):
            for r in universe[x]:
                if r in fams[x]:
                    continue
                for s in list(fams[x]):
                    if all(p in fams[p.target] for p in _pullbacks_within(r, s)):
                        fams[x].add(r)
                        changed = True
                        break
    return Coverage(c, tuple(frozenset(f) for f in fams))


def base_change_coverage(g, j: Coverage, target_category: EnrichedCategory | None = None) -> Coverage:
    """Image of every member sieve under ``g``; needs ``g`` faithful and conservative.

    When ``g`` is moreover a right adjoint whose left adjoint is strong monoidal,
    the image is guaranteed to satisfy T1 and T2 and a failure raises
    :class:`InvariantBroken`.  Without strong monoidality the guarantee is gone,
    so the image is returned as is and callers should run :func:`check_coverage`.
    """
    g.require("faithful", "conservative")
    if j.category.base != g.source:
        raise BaseMismatchError("coverage base differs from base-change source")
    rep = check_coverage(j, check_t3=False)
    if not rep.is_coverage:
        raise ValueError(f"input is not a coverage: {(rep.t1 + rep.t2 + rep.members)[0]}")
    gc = target_category or base_change_category(g, j.category)
    fams = [frozenset(base_change_sieve(g, s, gc) for s in j[x]) for x in range(gc.size)]
    out = Coverage(gc, tuple(fams))
    if g.right_adjoint and g.left_strong_monoidal:
        rep = check_coverage(out, check_t3=False)
        if not rep.is_coverage:
            raise InvariantBroken(f"base-changed coverage fails {(rep.t1 + rep.t2)[0]}")
    return out


# exhaustive enumeration


class SieveUniverse:
    """All sieves of a category, indexed, with coverages encoded as bitmasks.

    Coverages are exactly the sets containing every maximal sieve and closed
    under pullback; closed sets are unions of principal closures, which is how
    :meth:`coverages` walks them.
    """

    def __init__(self, c: EnrichedCategory, cap: int | None = None):
        self.category = c
        self.sieves: list[Sieve] = [s for x in range(c.size) for s in enumerate_sieves(c, x, cap)]
        self.position = {s: i for i, s in enumerate(self.sieves)}
        self.succ = [
            sum(1 << self.position[p] for p in all_pullbacks(s)) for s in self.sieves
        ]
        self.principal = [self._reach(i) for i in range(len(self.sieves))]
        self.base = 0
        for x in range(c.size):
            self.base |= self.principal[self.position[maximal_sieve(c, x)]]

    def _reach(self, i: int) -> int:
        seen = 1 << i
        todo = [i]
        while todo:
            k = todo.pop()
            m = self.succ[k] & ~seen
            seen |= m
            while m:
                b = m & -m
                todo.append(b.bit_length() - 1)
                m ^= b
        return seen

    def mask(self, j: Coverage) -> int:
        return sum(1 << self.position[s] for fam in j.families for s in fam)

    def coverage(self, mask: int) -> Coverage:
        fams = [set() for _ in range(self.category.size)]
        for i, s in enumerate(self.sieves):
            if mask >> i & 1:
                fams[s.target].add(s)
        return Coverage(self.category, tuple(frozenset(f) for f in fams))

    def close(self, mask: int) -> int:
        out = self.base | mask
        m = mask
        while m:
            b = m & -m
            out |= self.principal[b.bit_length() - 1]
            m ^= b
        return out

    def candidate_count(self) -> int:
        c = self.category
        n = 1
        for x in range(c.size):
            n *= 2 ** (sum(1 for s in self.sieves if s.target == x) - 1)
        return n

    def coverage_masks(self, cap: int | None = None) -> list[int]:
        cap = DEFAULT_COVERAGE_CAP if cap is None else cap
        if self.candidate_count() > cap:
            raise EnumerationTooLarge(
                f"{self.candidate_count()} candidate sieve-family assignments exceed cap {cap}"
            )
        seen = {self.base}
        todo = [self.base]
        n = len(self.sieves)
        while todo:
            m = todo.pop()
            for i in range(n):
                if not m >> i & 1:
                    m2 = m | self.principal[i]
                    if m2 not in seen:
                        seen.add(m2)
                        todo.append(m2)
        return sorted(seen)


def enumerate_coverages(c: EnrichedCategory, cap: int | None = None, sieve_cap: int | None = None) -> list[Coverage]:
    """Every coverage on ``c`` (sets with all maximal sieves, closed under pullback)."""
    u = SieveUniverse(c, sieve_cap)
    out = [u.coverage(m) for m in u.coverage_masks(cap)]
    out.sort(key=Coverage.canonical)
    return out
