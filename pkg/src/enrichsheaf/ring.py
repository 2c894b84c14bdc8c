"""Finite rings as one-object Ab-enriched categories.

Sieves on the single object are right ideals, pullback along ``x`` is the
colon ideal ``(I : x)``, and Grothendieck topologies are Gabriel topologies.
Rings and modules are stored as integer tables over ``range(size)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .config import DEFAULT_CAP, EnumerationTooLarge
from .quantale import Violation
from .sieve import InvariantBroken

RING_CAP = 256


class RingStructureError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteRing:
    labels: tuple[str, ...]
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int
    one: int
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n == 0 or n > RING_CAP:
            raise RingStructureError(f"carrier size {n} outside 1..{RING_CAP}")
        for t in (self.add, self.mul):
            if len(t) != n or any(len(r) != n or any(not 0 <= v < n for v in r) for r in t):
                raise RingStructureError("operation tables must be square over the carrier")
        bad = ring_violations(self)
        if bad:
            raise RingStructureError(f"not a ring: {bad[0]}")

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.add, self.mul, self.zero, self.one))

    def __repr__(self) -> str:
        return self.name or f"FiniteRing(size={self.size})"

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(self.size)

    def index(self, label: str | int) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.size:
                raise KeyError(label)
            return label
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"{label!r} is not an element of {self!r}") from None

    @cached_property
    def neg(self) -> tuple[int, ...]:
        return tuple(next(b for b in self.elements if self.add[a][b] == self.zero) for a in self.elements)

    @cached_property
    def commutative(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a, b in product(self.elements, repeat=2))

    @cached_property
    def units(self) -> frozenset[int]:
        return frozenset(a for a in self.elements if any(self.mul[a][b] == self.one == self.mul[b][a] for b in self.elements))


def ring_violations(r: FiniteRing) -> list[Violation]:
    E = range(len(r.labels))
    A, M, z, o = r.add, r.mul, r.zero, r.one
    out = []
    for a in E:
        if A[a][z] != a:
            out.append(Violation("additive identity", (a,)))
        if not any(A[a][b] == z for b in E):
            out.append(Violation("additive inverse", (a,)))
        if M[a][o] != a or M[o][a] != a:
            out.append(Violation("multiplicative identity", (a,)))
    for a, b in product(E, repeat=2):
        if A[a][b] != A[b][a]:
            out.append(Violation("additive commutativity", (a, b)))
    for a, b, c in product(E, repeat=3):
        if A[A[a][b]][c] != A[a][A[b][c]]:
            out.append(Violation("additive associativity", (a, b, c)))
        if M[M[a][b]][c] != M[a][M[b][c]]:
            out.append(Violation("multiplicative associativity", (a, b, c)))
        if M[a][A[b][c]] != A[M[a][b]][M[a][c]] or M[A[a][b]][c] != A[M[a][c]][M[b][c]]:
            out.append(Violation("distributivity", (a, b, c)))
        if len(out) > 20:
            break
    return out


@lru_cache(maxsize=None)
def zmod(n: int) -> FiniteRing:
    if not 1 <= n <= RING_CAP:
        raise RingStructureError(f"zmod needs 1 <= n <= {RING_CAP}")
    E = range(n)
    return FiniteRing(
        labels=tuple(str(a) for a in E),
        add=tuple(tuple((a + b) % n for b in E) for a in E),
        mul=tuple(tuple((a * b) % n for b in E) for a in E),
        zero=0,
        one=1 % n,
        name=f"zmod{n}",
    )


def ring_from_tables(
    labels: Sequence[str],
    add: Sequence[Sequence[int | str]],
    mul: Sequence[Sequence[int | str]],
    zero: str,
    one: str,
    name: str = "",
) -> FiniteRing:
    """Build a ring from tables whose entries are labels or indices."""
    labels = tuple(str(x) for x in labels)
    pos = {lab: i for i, lab in enumerate(labels)}

    def conv(t):
        return tuple(tuple(v if isinstance(v, int) else pos[str(v)] for v in row) for row in t)

    return FiniteRing(labels, conv(add), conv(mul), pos[str(zero)], pos[str(one)], name=name)


def matrix_ring_f2() -> FiniteRing:
    """Upper triangular 2x2 matrices over F2: the smallest non-commutative test ring."""
    mats = [(a, b, d) for a in (0, 1) for b in (0, 1) for d in (0, 1)]
    pos = {m: i for i, m in enumerate(mats)}

    def add(m, n):
        return tuple((x + y) % 2 for x, y in zip(m, n))

    def mul(m, n):
        a, b, d = m
        e, f, h = n
        return (a * e % 2, (a * f + b * h) % 2, d * h % 2)

    return FiniteRing(
        labels=tuple(f"[{a}{b};0{d}]" for a, b, d in mats),
        add=tuple(tuple(pos[add(m, n)] for n in mats) for m in mats),
        mul=tuple(tuple(pos[mul(m, n)] for n in mats) for m in mats),
        zero=pos[(0, 0, 0)],
        one=pos[(1, 0, 1)],
        name="UT2(F2)",
    )


# right ideals


def _additive_span(r: FiniteRing, gens: Iterable[int]) -> frozenset[int]:
    gens = list(dict.fromkeys(gens))
    span = {r.zero}
    frontier = [r.zero]
    while frontier:
        a = frontier.pop()
        for g in gens:
            b = r.add[a][g]
            if b not in span:
                span.add(b)
                frontier.append(b)
    return frozenset(span)


@dataclass(frozen=True)
class RightIdeal:
    ring: FiniteRing
    elements: frozenset[int]

    def __hash__(self) -> int:
        return hash(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self.elements

    def __le__(self, other: "RightIdeal") -> bool:
        return self.elements <= other.elements

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Lexicographically first generating set of minimal size."""
        r = self.ring
        if self.elements == {r.zero}:
            return ()
        cand = sorted(self.elements - {r.zero})
        for k in range(1, len(cand) + 1):
            for gens in combinations(cand, k):
                if generated_ideal(r, gens).elements == self.elements:
                    return gens
        raise InvariantBroken("ideal is not generated by its own elements")

    def label(self) -> str:
        gens = self.generators
        if not gens:
            return "(0)"
        if self.elements == frozenset(self.ring.elements) and gens == (self.ring.one,):
            return "(1)"
        return "(" + ",".join(self.ring.labels[g] for g in gens) + ")"

    def sort_key(self) -> tuple:
        return (len(self.elements), tuple(sorted(self.elements)))

    def __repr__(self) -> str:
        return self.label()


def right_ideal_violations(r: FiniteRing, s: frozenset[int]) -> list[Violation]:
    out = []
    if r.zero not in s:
        out.append(Violation("contains zero", ()))
    for a in s:
        if r.neg[a] not in s:
            out.append(Violation("closed under negation", (r.labels[a],)))
        for b in s:
            if r.add[a][b] not in s:
                out.append(Violation("closed under addition", (r.labels[a], r.labels[b])))
        for x in r.elements:
            if r.mul[a][x] not in s:
                out.append(Violation("closed under right multiplication", (r.labels[a], r.labels[x])))
    return out


def make_ideal(r: FiniteRing, elements: Iterable[int]) -> RightIdeal:
    s = frozenset(elements)
    bad = right_ideal_violations(r, s)
    if bad:
        raise ValueError(f"not a right ideal: {bad[0]}")
    return RightIdeal(r, s)


def generated_ideal(r: FiniteRing, gens: Iterable[int]) -> RightIdeal:
    """Smallest right ideal containing ``gens``: the additive span of all ``g * x``."""
    return RightIdeal(r, _additive_span(r, (r.mul[g][x] for g in gens for x in r.elements)))


def unit_ideal(r: FiniteRing) -> RightIdeal:
    return RightIdeal(r, frozenset(r.elements))


def zero_ideal(r: FiniteRing) -> RightIdeal:
    return RightIdeal(r, frozenset({r.zero}))


@lru_cache(maxsize=64)
def enumerate_right_ideals(r: FiniteRing, cap: int = RING_CAP) -> tuple[RightIdeal, ...]:
    """Every right ideal, found by adjoining one generator at a time from ``(0)``.

    Sorted by size then elements, a linear extension of inclusion.
    """
    if r.size > cap:
        raise EnumerationTooLarge(f"ring of size {r.size} exceeds cap {cap}")
    seen = {zero_ideal(r).elements}
    frontier = [zero_ideal(r).elements]
    while frontier:
        cur = frontier.pop()
        for a in r.elements:
            if a in cur:
                continue
            nxt = _additive_span(r, list(cur) + [r.mul[a][x] for x in r.elements])
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    out = []
    for s in seen:
        bad = right_ideal_violations(r, s)
        if bad:
            raise InvariantBroken(f"enumerated set is not a right ideal: {bad[0]}")
        out.append(RightIdeal(r, s))
    return tuple(sorted(out, key=RightIdeal.sort_key))


def colon(i: RightIdeal, x: int) -> RightIdeal:
    """``(I : x) = {r : x r in I}``."""
    r = i.ring
    s = frozenset(a for a in r.elements if r.mul[x][a] in i.elements)
    bad = right_ideal_violations(r, s)
    if bad:
        raise InvariantBroken(f"colon is not a right ideal: {bad[0]}")
    return RightIdeal(r, s)


def pullback_along(i: RightIdeal, x: int) -> RightIdeal:
    """Fiber product of ``I -> A`` and left multiplication ``x * - : A -> A``, projected to ``A``.

    Computed from the pairs ``(i, a)`` with ``i = x a`` rather than through :func:`colon`.
    """
    r = i.ring
    pairs = {(m, a) for m in i.elements for a in r.elements if r.mul[x][a] == m}
    return RightIdeal(r, frozenset(a for _, a in pairs))


# Gabriel topologies


@dataclass(frozen=True)
class GabrielTopology:
    ring: FiniteRing
    ideals: frozenset[RightIdeal]

    def __contains__(self, i: RightIdeal) -> bool:
        return i in self.ideals

    def sorted(self) -> list[RightIdeal]:
        return sorted(self.ideals, key=RightIdeal.sort_key)

    def label(self) -> str:
        return "{" + ", ".join(i.label() for i in self.sorted()) + "}"

    def __repr__(self) -> str:
        return self.label()


def make_topology(r: FiniteRing, ideals: Iterable[RightIdeal]) -> GabrielTopology:
    return GabrielTopology(r, frozenset(ideals))


@dataclass(frozen=True)
class GabrielReport:
    nonempty: bool
    r1: tuple[Violation, ...]
    r2: tuple[Violation, ...]
    r3: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return self.nonempty and not (self.r1 or self.r2 or self.r3)

    def status(self, axiom: str) -> str:
        if axiom == "nonempty":
            return "pass" if self.nonempty else "fail"
        return "fail" if getattr(self, axiom.lower()) else "pass"


def _saturation_premise(t_ideals: frozenset[RightIdeal], i: RightIdeal) -> RightIdeal | None:
    for j in sorted(t_ideals, key=RightIdeal.sort_key):
        if all(colon(i, x) in t_ideals for x in j.elements):
            return j
    return None


def check_gabriel(t: GabrielTopology) -> GabrielReport:
    r = t.ring
    lat = enumerate_right_ideals(r)
    members = t.ideals
    r1, r2, r3 = [], [], []
    for i in t.sorted():
        for j in lat:
            if i <= j and j not in members:
                r1.append(Violation("R1", (i.label(), j.label()), f"{j.label()} contains a member but is missing"))
        for x in r.elements:
            c = colon(i, x)
            if c not in members:
                r2.append(Violation("R2", (i.label(), r.labels[x]), f"({i.label()} : {r.labels[x]}) = {c.label()} is missing"))
    for i in lat:
        if i in members:
            continue
        j = _saturation_premise(members, i)
        if j is not None:
            r3.append(Violation("R3", (i.label(), j.label()), f"every colon of {i.label()} by {j.label()} is a member"))
    return GabrielReport(bool(members), tuple(r1), tuple(r2), tuple(r3))


def gabriel_closure(r: FiniteRing, seeds: Iterable[RightIdeal]) -> GabrielTopology:
    """Least family containing ``seeds`` and ``(1)`` that satisfies R1 to R3."""
    lat = enumerate_right_ideals(r)
    cur = set(seeds) | {unit_ideal(r)}
    while True:
        nxt = set(cur)
        for i in cur:
            nxt.update(j for j in lat if i <= j)
            nxt.update(colon(i, x) for x in r.elements)
        frozen = frozenset(nxt)
        nxt.update(i for i in lat if i not in frozen and _saturation_premise(frozen, i) is not None)
        if nxt == cur:
            break
        cur = nxt
    t = GabrielTopology(r, frozenset(cur))
    rep = check_gabriel(t)
    if not rep.ok:
        raise InvariantBroken(f"closure is not a Gabriel topology: {(rep.r1 + rep.r2 + rep.r3)[0]}")
    return t


def check_mult_set(r: FiniteRing, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    if r.one not in s:
        raise ValueError("multiplicative set must contain 1")
    for a, b in product(s, repeat=2):
        if r.mul[a][b] not in s:
            raise ValueError(f"multiplicative set is not closed: {r.labels[a]} * {r.labels[b]}")
    return s


def from_mult_set(r: FiniteRing, s: Iterable[int]) -> GabrielTopology:
    """``H_S``: right ideals all of whose colons meet ``S``."""
    s = check_mult_set(r, s)
    members = frozenset(
        i for i in enumerate_right_ideals(r)
        if all(colon(i, a).elements & s for a in r.elements)
    )
    t = GabrielTopology(r, members)
    rep = check_gabriel(t)
    if not rep.ok:
        w = (rep.r1 + rep.r2 + rep.r3)
        msg = f"H_S is not a Gabriel topology: {w[0] if w else 'empty'}"
        if r.commutative:
            raise InvariantBroken(msg)
        raise ValueError(msg)
    return t


def enumerate_mult_sets(r: FiniteRing) -> list[frozenset[int]]:
    """Every multiplicatively closed subset containing 1, sorted by (size, elements)."""
    rest = [a for a in r.elements if a != r.one]
    out = set()
    frontier = [frozenset({r.one})]
    out.add(frontier[0])
    while frontier:
        cur = frontier.pop()
        for a in rest:
            if a in cur:
                continue
            grown = set(cur) | {a}
            changed = True
            while changed:
                new = {r.mul[x][y] for x in grown for y in grown} - grown
                changed = bool(new)
                grown |= new
            f = frozenset(grown)
            if f not in out:
                out.add(f)
                frontier.append(f)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def translated_topology_report(r: FiniteRing, family: Iterable[RightIdeal]) -> dict[str, bool]:
    """T1 to T3 for the one-object category with sieves read as right ideals.

    Pullbacks are computed as fiber products, independently of :func:`colon`.
    """
    fam = frozenset(family)
    lat = enumerate_right_ideals(r)
    t1 = unit_ideal(r) in fam
    t2 = all(pullback_along(i, x) in fam for i in fam for x in r.elements)
    t3 = True
    for s in fam:
        for i in lat:
            if i not in fam and all(pullback_along(i, x) in fam for x in s.elements):
                t3 = False
                break
        if not t3:
            break
    return {"T1": t1, "T2": t2, "T3": t3}


def torsion(r: FiniteRing, t: GabrielTopology) -> RightIdeal:
    """``t(A) = {x : x J = 0 for some J in t}``."""
    s = frozenset(
        x for x in r.elements
        if any(all(r.mul[x][j] == r.zero for j in J.elements) for J in t.ideals)
    )
    bad = right_ideal_violations(r, s)
    if bad:
        raise InvariantBroken(f"torsion is not a right ideal: {bad[0]}")
    return RightIdeal(r, s)


# modules


@dataclass(frozen=True)
class FiniteModule:
    """A right module: ``act[m][a] = m . a``."""

    ring: FiniteRing
    labels: tuple[str, ...]
    add: tuple[tuple[int, ...], ...]
    act: tuple[tuple[int, ...], ...]
    zero: int
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        bad = module_violations(self)
        if bad:
            raise RingStructureError(f"not a right module: {bad[0]}")

    def __hash__(self) -> int:
        return hash((self.add, self.act, self.zero))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(self.size)

    def __repr__(self) -> str:
        return self.name or f"FiniteModule(size={self.size})"


def module_violations(m: FiniteModule) -> list[Violation]:
    r = m.ring
    E = range(len(m.labels))
    A, act, z = m.add, m.act, m.zero
    out = []
    for a in E:
        if A[a][z] != a:
            out.append(Violation("additive identity", (a,)))
        if act[a][r.one] != a:
            out.append(Violation("unital action", (a,)))
    for a, b in product(E, repeat=2):
        if A[a][b] != A[b][a]:
            out.append(Violation("additive commutativity", (a, b)))
    for a, b, c in product(E, repeat=3):
        if A[A[a][b]][c] != A[a][A[b][c]]:
            out.append(Violation("additive associativity", (a, b, c)))
    for mm, x, y in product(E, r.elements, r.elements):
        if act[act[mm][x]][y] != act[mm][r.mul[x][y]]:
            out.append(Violation("associative action", (mm, x, y)))
        if act[mm][r.add[x][y]] != A[act[mm][x]][act[mm][y]]:
            out.append(Violation("distributive over ring addition", (mm, x, y)))
    for a, b, x in product(E, E, r.elements):
        if act[A[a][b]][x] != A[act[a][x]][act[b][x]]:
            out.append(Violation("distributive over module addition", (a, b, x)))
    return out


def ring_as_module(r: FiniteRing) -> FiniteModule:
    return FiniteModule(r, r.labels, r.add, r.mul, r.zero, name=f"{r!r} as a module")


def quotient_module(r: FiniteRing, i: RightIdeal) -> tuple[FiniteModule, tuple[int, ...]]:
    """``A / I`` with cosets labelled by their least representative, and the projection."""
    rep = {}
    for a in r.elements:
        rep[a] = min(r.add[a][b] for b in i.elements)
    reps = sorted(set(rep.values()))
    pos = {c: k for k, c in enumerate(reps)}
    proj = tuple(pos[rep[a]] for a in r.elements)
    add = tuple(tuple(proj[r.add[a][b]] for b in reps) for a in reps)
    act = tuple(tuple(proj[r.mul[a][x]] for x in r.elements) for a in reps)
    mod = FiniteModule(r, tuple(f"[{r.labels[a]}]" for a in reps), add, act, proj[r.zero], name=f"{r!r}/{i.label()}")
    return mod, proj


def module_homs(i: RightIdeal, m: FiniteModule, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """All A-linear maps ``I -> M`` as tuples indexed by ring element (zero off ``I``).

    A map is fixed by its values on a generating set of ``I``; every candidate
    assignment is extended additively and then checked on all of ``I``.
    """
    r = i.ring
    if m.ring != r:
        raise ValueError("module and ideal live over different rings")
    gens = i.generators
    if m.size ** len(gens) > cap:
        raise EnumerationTooLarge(f"{m.size}^{len(gens)} candidate maps exceed cap {cap}")
    elems = sorted(i.elements)
    terms = [(g, x) for g in gens for x in r.elements]
    out = []
    for vals in product(m.elements, repeat=len(gens)):
        img = dict(zip(gens, vals))
        f = {r.zero: m.zero}
        frontier = [r.zero]
        ok = True
        while frontier and ok:
            a = frontier.pop()
            for g, x in terms:
                b = r.add[a][r.mul[g][x]]
                v = m.add[f[a]][m.act[img[g]][x]]
                if b not in f:
                    f[b] = v
                    frontier.append(b)
                elif f[b] != v:
                    ok = False
                    break
        if not ok:
            continue
        if any(f[r.add[a][b]] != m.add[f[a]][f[b]] for a in elems for b in elems):
            continue
        if any(f[r.mul[a][x]] != m.act[f[a]][x] for a in elems for x in r.elements):
            continue
        out.append(tuple(f.get(a, m.zero) for a in r.elements))
    return sorted(out)


def restriction(m: FiniteModule, i: RightIdeal, v: int) -> tuple[int, ...]:
    """The map ``i -> v . i`` on ``I`` (zero off ``I``)."""
    return tuple(m.act[v][a] if a in i.elements else m.zero for a in m.ring.elements)


@dataclass(frozen=True)
class ClosedCheck:
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_j_closed_module(m: FiniteModule, t: GabrielTopology, cap: int = DEFAULT_CAP) -> ClosedCheck:
    """Restriction ``M = hom(A, M) -> hom(I, M)`` is a bijection for every ``I`` in ``t``."""
    r = m.ring
    for i in t.sorted():
        homs = module_homs(i, m, cap)
        seen: dict[tuple, int] = {}
        for v in m.elements:
            f = restriction(m, i, v)
            if f in seen:
                return ClosedCheck(False, (i.label(), "not injective", m.labels[seen[f]], m.labels[v]))
            seen[f] = v
        for f in homs:
            if f not in seen:
                shown = {r.labels[a]: m.labels[f[a]] for a in sorted(i.elements)}
                return ClosedCheck(False, (i.label(), "not surjective", shown))
    return ClosedCheck(True)


# localization


@dataclass(frozen=True)
class Localization:
    ring: FiniteRing
    topology: GabrielTopology
    i_min: RightIdeal
    torsion: RightIdeal
    maps: tuple[tuple[int, ...], ...]
    module: FiniteModule
    canonical: tuple[int, ...]
    ring_structure: FiniteRing | None
    note: str = ""

    @property
    def size(self) -> int:
        return len(self.maps)


def minimal_member(t: GabrielTopology) -> RightIdeal:
    r = t.ring
    elems = frozenset(r.elements)
    for i in t.ideals:
        elems &= i.elements
    i_min = RightIdeal(r, elems)
    if i_min not in t.ideals:
        raise InvariantBroken(f"intersection {i_min.label()} of the topology is not a member")
    return i_min


def localize(r: FiniteRing, t: GabrielTopology, cap: int = DEFAULT_CAP) -> Localization:
    """``A_t = hom_A(I_min, A/t(A))``; the colimit over ``t`` is attained at its least member."""
    rep = check_gabriel(t)
    if not rep.ok:
        raise ValueError(f"not a Gabriel topology: {(rep.r1 + rep.r2 + rep.r3 or ('empty',))[0]}")
    i_min = minimal_member(t)
    tor = torsion(r, t)
    q, proj = quotient_module(r, tor)
    maps = tuple(module_homs(i_min, q, cap))
    pos = {f: k for k, f in enumerate(maps)}
    # f . a := f(a -) is defined on I_min because (I_min : a) is a member and so contains I_min
    act = []
    for f in maps:
        row = []
        for a in r.elements:
            g = tuple(f[r.mul[a][i]] if i in i_min.elements else q.zero for i in r.elements)
            if g not in pos:
                raise InvariantBroken("action does not preserve A-linear maps")
            row.append(pos[g])
        act.append(tuple(row))
    add = tuple(
        tuple(pos[tuple(q.add[x][y] for x, y in zip(f, g))] for g in maps) for f in maps
    )
    zero = pos[tuple(q.zero for _ in r.elements)]
    canonical = tuple(
        pos[tuple(proj[r.mul[a][i]] if i in i_min.elements else q.zero for i in r.elements)]
        for a in r.elements
    )
    labels = []
    for k in range(len(maps)):
        pre = [a for a in r.elements if canonical[a] == k]
        labels.append(f"[{r.labels[pre[0]]}]" if pre else f"f{k}")
    mod = FiniteModule(r, tuple(labels), add, tuple(act), zero, name=f"{r!r}_t")
    ring_structure, note = None, ""
    if not r.commutative:
        note = "ring structure not installed on a non-commutative ring"
    elif set(canonical) != set(range(len(maps))):
        note = "canonical map is not surjective; ring structure not installed"
    else:
        ring_structure = _ring_through_canonical(r, canonical, tuple(labels), zero, f"{r!r}_t")
    return Localization(r, t, i_min, tor, maps, mod, canonical, ring_structure, note)


def _ring_through_canonical(r: FiniteRing, canonical, labels, zero: int, name: str) -> FiniteRing:
    n = len(labels)
    lift = [min(a for a in r.elements if canonical[a] == k) for k in range(n)]
    mul = []
    for k in range(n):
        row = []
        for l in range(n):
            vals = {canonical[r.mul[a][b]] for a in r.elements if canonical[a] == k for b in r.elements if canonical[b] == l}
            if len(vals) != 1:
                raise InvariantBroken("multiplication through the canonical map is not well defined")
            row.append(vals.pop())
        mul.append(tuple(row))
    add = tuple(tuple(canonical[r.add[lift[k]][lift[l]]] for l in range(n)) for k in range(n))
    return FiniteRing(labels, add, tuple(mul), zero, canonical[r.one], name=name)


def ring_of_fractions_oracle(r: FiniteRing, s: Iterable[int]) -> FiniteRing:
    """``A[S^-1]`` from pairs ``a/s`` with ``a/s ~ b/t`` iff ``u(at - bs) = 0`` for some ``u`` in ``S``."""
    if not r.commutative:
        raise ValueError("ring of fractions oracle needs a commutative ring")
    s = sorted(check_mult_set(r, s))
    M, A, neg = r.mul, r.add, r.neg
    pairs = [(a, d) for d in s for a in r.elements]

    def equiv(p, q):
        (a, d), (b, e) = p, q
        diff = A[M[a][e]][neg[M[b][d]]]
        return any(M[u][diff] == r.zero for u in s)

    cls: dict[tuple[int, int], int] = {}
    reps: list[tuple[int, int]] = []
    # prefer representatives with denominator 1 so labels read as ring elements
    for p in sorted(pairs, key=lambda p: (p[1] != r.one, p[1], p[0])):
        for k, q in enumerate(reps):
            if equiv(p, q):
                cls[p] = k
                break
        else:
            cls[p] = len(reps)
            reps.append(p)
    n = len(reps)
    add = tuple(
        tuple(cls[(A[M[a][e]][M[b][d]], M[d][e])] for (b, e) in reps) for (a, d) in reps
    )
    mul = tuple(tuple(cls[(M[a][b], M[d][e])] for (b, e) in reps) for (a, d) in reps)
    labels = tuple(r.labels[a] if d == r.one else f"{r.labels[a]}/{r.labels[d]}" for a, d in reps)
    return FiniteRing(labels, add, mul, cls[(r.zero, r.one)], cls[(r.one, r.one)], name=f"{r!r}[S^-1]")


# isomorphism


def _additive_order(r: FiniteRing, a: int) -> int:
    k, cur = 1, a
    while cur != r.zero:
        cur = r.add[cur][a]
        k += 1
    return k


def _additive_basis(r: FiniteRing) -> list[int]:
    gens: list[int] = []
    span = frozenset({r.zero})
    for a in sorted(r.elements, key=lambda a: (-_additive_order(r, a), a)):
        if a not in span:
            gens.append(a)
            span = _additive_span(r, gens)
        if len(span) == r.size:
            break
    return gens


@lru_cache(maxsize=256)
def find_isomorphism(r1: FiniteRing, r2: FiniteRing) -> tuple[int, ...] | None:
    """A ring isomorphism ``r1 -> r2`` as an image tuple, or ``None``."""
    if r1.size != r2.size or r1.commutative != r2.commutative:
        return None
    gens = _additive_basis(r1)
    cands = [[b for b in r2.elements if _additive_order(r2, b) == _additive_order(r1, g)] for g in gens]
    for imgs in product(*cands):
        f = {r1.zero: r2.zero}
        frontier = [r1.zero]
        ok = True
        while frontier and ok:
            a = frontier.pop()
            for g, h in zip(gens, imgs):
                b, v = r1.add[a][g], r2.add[f[a]][h]
                if b not in f:
                    f[b] = v
                    frontier.append(b)
                elif f[b] != v:
                    ok = False
                    break
        if not ok or len(set(f.values())) != r1.size or f[r1.one] != r2.one:
            continue
        if all(f[r1.mul[a][b]] == r2.mul[f[a]][f[b]] for a in r1.elements for b in r1.elements):
            return tuple(f[a] for a in r1.elements)
    return None


def identify(r: FiniteRing) -> str:
    """``zmodN`` when the ring is cyclic, otherwise a size description."""
    if r.size and find_isomorphism(r, zmod(r.size)) is not None:
        return f"zmod{r.size}"
    return f"non-cyclic ring of order {r.size}"
