"""Monomial ideals of k[x, y] and graded Gabriel topologies built from them.

An ideal is stored as the antichain of exponents of its minimal monomial
generators.  The field k is never materialized: everything is exponent
combinatorics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .config import DEFAULT_DMAX, EnumerationTooLarge
from .quantale import Violation

Exponent = tuple[int, int]
VARIABLES = ("x", "y")


def _leq(a: Exponent, b: Exponent) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


def _minimal(points: Iterable[Exponent]) -> frozenset[Exponent]:
    pts = set(points)
    return frozenset(p for p in pts if not any(q != p and _leq(q, p) for q in pts))


@dataclass(frozen=True)
class MonomialIdeal:
    generators: frozenset[Exponent]

    def __post_init__(self) -> None:
        for g in self.generators:
            if len(g) != 2 or min(g) < 0:
                raise ValueError(f"exponent {g!r} is not a pair of non-negative integers")
        if _minimal(self.generators) != self.generators:
            raise ValueError("generators must be pairwise incomparable")

    def __hash__(self) -> int:
        return hash(self.generators)

    @cached_property
    def sorted_generators(self) -> tuple[Exponent, ...]:
        return tuple(sorted(self.generators, key=lambda e: (e[0] + e[1], -e[0])))

    def is_unit(self) -> bool:
        return self.generators == {(0, 0)}

    def is_zero(self) -> bool:
        return not self.generators

    def label(self) -> str:
        if self.is_zero():
            return "<0>"
        return "<" + ", ".join(monomial_label(e) for e in self.sorted_generators) + ">"

    def sort_key(self) -> tuple:
        return (len(self.generators), self.sorted_generators)

    def __repr__(self) -> str:
        return self.label()


def monomial_label(e: Exponent) -> str:
    parts = []
    for var, k in zip(VARIABLES, e):
        if k == 1:
            parts.append(var)
        elif k > 1:
            parts.append(f"{var}^{k}")
    return "".join(parts) or "1"


_TERM = re.compile(r"([xy])(?:\^(\d+))?")


def parse_monomial(text: str) -> Exponent:
    s = text.replace(" ", "").replace("*", "")
    if s == "1":
        return (0, 0)
    exp = {"x": 0, "y": 0}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse monomial {text!r}")
        exp[m.group(1)] += int(m.group(2) or 1)
        pos = m.end()
    if not s:
        raise ValueError("empty monomial")
    return (exp["x"], exp["y"])


def monomial_ideal(gens: Iterable[Exponent | str]) -> MonomialIdeal:
    """Ideal generated by the given monomials; redundant generators are dropped."""
    pts = [parse_monomial(g) if isinstance(g, str) else tuple(g) for g in gens]
    return MonomialIdeal(_minimal(pts))


def parse_ideal(text: str) -> MonomialIdeal:
    s = text.strip().strip("<>()").strip()
    if s in ("", "0"):
        return zero_ideal()
    return monomial_ideal(t for t in s.split(","))


def unit_ideal() -> MonomialIdeal:
    return MonomialIdeal(frozenset({(0, 0)}))


def zero_ideal() -> MonomialIdeal:
    return MonomialIdeal(frozenset())


def contains_monomial(i: MonomialIdeal, e: Exponent) -> bool:
    return any(_leq(g, e) for g in i.generators)


def ideal_leq(i: MonomialIdeal, j: MonomialIdeal) -> bool:
    return all(contains_monomial(j, g) for g in i.generators)


def colon_monomial(i: MonomialIdeal, e: Exponent) -> MonomialIdeal:
    """``(I : m)`` for the monomial ``m`` with exponent ``e``."""
    return MonomialIdeal(_minimal((max(g[0] - e[0], 0), max(g[1] - e[1], 0)) for g in i.generators))


def monomials_up_to(dmax: int) -> list[Exponent]:
    return [(i, d - i) for d in range(dmax + 1) for i in range(d, -1, -1)]


# topologies


@dataclass(frozen=True)
class GradedTopologySpec:
    """``H_S`` for ``S`` the powers of one variable."""

    variable: str = "x"
    kind: str = "powers_of"

    def __post_init__(self) -> None:
        if self.kind != "powers_of" or self.variable not in VARIABLES:
            raise ValueError(f"unsupported topology spec {self.kind} {self.variable}")

    def power(self, n: int) -> Exponent:
        return (n, 0) if self.variable == "x" else (0, n)

    def label(self) -> str:
        return f"H_S(S = powers of {self.variable})"


def h_s_member(i: MonomialIdeal, s: GradedTopologySpec, dmax: int = DEFAULT_DMAX) -> bool:
    """Every colon by a monomial of degree at most ``dmax`` contains a power of the
    variable of exponent at most ``dmax``."""
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    powers = [s.power(n) for n in range(dmax + 1)]
    return all(
        any(contains_monomial(colon_monomial(i, a), p) for p in powers) for a in monomials_up_to(dmax)
    )


def h_s_member_exact(i: MonomialIdeal, s: GradedTopologySpec) -> bool:
    """Unbounded membership: taking ``a = 1`` forces a pure power into ``I``, and
    a pure power in ``I`` lies in every colon."""
    k = 1 if s.variable == "x" else 0
    return any(g[k] == 0 for g in i.generators)


def max_generator_degree(i: MonomialIdeal) -> int:
    return max((g[0] + g[1] for g in i.generators), default=0)


def enumerate_monomial_ideals(dmax: int, cap: int = 200_000) -> list[MonomialIdeal]:
    """Every monomial ideal whose minimal generators have degree at most ``dmax``."""
    pts = monomials_up_to(dmax)
    out: list[frozenset[Exponent]] = []

    def grow(k: int, cur: list[Exponent]) -> None:
        if len(out) > cap:
            raise EnumerationTooLarge(f"more than {cap} monomial ideals with generators of degree <= {dmax}")
        if k == len(pts):
            out.append(frozenset(cur))
            return
        grow(k + 1, cur)
        p = pts[k]
        if all(not _leq(q, p) and not _leq(p, q) for q in cur):
            cur.append(p)
            grow(k + 1, cur)
            cur.pop()

    grow(0, [])
    return sorted((MonomialIdeal(g) for g in out), key=MonomialIdeal.sort_key)



@dataclass(frozen=True)
class GradedGabrielReport:
    family: str
    sample: tuple[MonomialIdeal, ...]
    added_by_closure: int
    members: tuple[MonomialIdeal, ...]
    g1: tuple[Violation, ...]
    g2: tuple[Violation, ...]
    g3: tuple[Violation, ...]
    dmax: int
    notes: tuple[str, ...] = field(default=())

    @property
    def nonempty(self) -> bool:
        return bool(self.members)

    @property
    def ok(self) -> bool:
        return self.nonempty and not (self.g1 or self.g2 or self.g3)

    def status(self, axiom: str) -> str:
        return "fail" if getattr(self, axiom.lower()) else "pass"


def _close_sample(sample: Iterable[MonomialIdeal], dmax: int, cap: int) -> list[MonomialIdeal]:
    cur = set(sample)
    frontier = list(cur)
    mons = monomials_up_to(dmax)
    while frontier:
        i = frontier.pop()
        for a in mons:
            c = colon_monomial(i, a)
            if c not in cur:
                cur.add(c)
                frontier.append(c)
                if len(cur) > cap:
                    raise EnumerationTooLarge(f"sample grew past {cap} ideals under colon closure")
    return sorted(cur, key=MonomialIdeal.sort_key)


def check_graded_gabriel(
    family: GradedTopologySpec | Iterable[MonomialIdeal],
    sample: Iterable[MonomialIdeal],
    dmax: int = DEFAULT_DMAX,
    cap: int = 10_000,
) -> GradedGabrielReport:
    """G1 to G3 on ``sample`` closed under colons, with homogeneous elements read as
    monomials of degree at most ``dmax``."""
    if isinstance(family, GradedTopologySpec):
        spec = family

        def member(i):
            return h_s_member(i, spec, dmax)

        name = spec.label()
        explicit: frozenset = frozenset()
    else:
        explicit = frozenset(family)

        def member(i):
            return i in explicit

        name = "{" + ", ".join(i.label() for i in sorted(explicit, key=MonomialIdeal.sort_key)) + "}"
    base = set(sample) | set(explicit)
    closed = _close_sample(base, dmax, cap)
    mons = monomials_up_to(dmax)
    members = [i for i in closed if member(i)]
    g1, g2, g3 = [], [], []
    for i in members:
        for j in closed:
            if ideal_leq(i, j) and not member(j):
                g1.append(Violation("G1", (i.label(), j.label())))
        for a in mons:
            c = colon_monomial(i, a)
            if not member(c):
                g2.append(Violation("G2", (i.label(), monomial_label(a)), f"colon is {c.label()}"))
    for j in closed:
        if member(j):
            continue
        for i in members:
            elems = [a for a in mons if contains_monomial(i, a)]
            if elems and all(member(colon_monomial(j, a)) for a in elems):
                g3.append(Violation("G3", (j.label(), i.label())))
                break
    notes = (
        "homogeneous elements restricted to monomials; saturation over all homogeneous ideals is not settled",
    )
    return GradedGabrielReport(
        family=name,
        sample=tuple(closed),
        added_by_closure=len(closed) - len(base),
        members=tuple(members),
        g1=tuple(g1),
        g2=tuple(g2),
        g3=tuple(g3),
        dmax=dmax,
        notes=notes,
    )


# base change to Set along the degree-zero part


def degree_zero_base_change(i: MonomialIdeal) -> str:
    """Degree-zero component: ``k`` for the unit ideal, ``0`` otherwise."""
    return "k" if contains_monomial(i, (0, 0)) else "0"


@dataclass(frozen=True)
class CounterexampleReport:
    dmax: int
    witness: MonomialIdeal
    witness_in_s: bool
    witness_in_t: bool
    sample_size: int
    members_s: int
    members_t: int
    image_s: tuple[str, ...]
    image_t: tuple[str, ...]
    collision: tuple[MonomialIdeal, MonomialIdeal]

    @property
    def families_differ(self) -> bool:
        return self.witness_in_s != self.witness_in_t

    @property
    def images_equal(self) -> bool:
        return self.image_s == self.image_t

    @property
    def ok(self) -> bool:
        return self.families_differ and self.images_equal and set(self.image_s) == {"k", "0"}


def reproduce_counterexample(dmax: int = 3) -> CounterexampleReport:
    """Two distinct topologies that become equal after taking degree-zero parts."""
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    S, T = GradedTopologySpec("x"), GradedTopologySpec("y")
    witness = monomial_ideal([(dmax, 0)])
    sample = enumerate_monomial_ideals(dmax)
    hs = [i for i in sample if h_s_member(i, S, dmax)]
    ht = [i for i in sample if h_s_member(i, T, dmax)]

    def image(fam):
        return tuple(sorted({degree_zero_base_change(i) for i in fam}, key=("k", "0").index))

    nonunit = [i for i in hs if not i.is_unit()]
    collision = (nonunit[0], nonunit[1]) if len(nonunit) > 1 else (witness, witness)
    return CounterexampleReport(
        dmax=dmax,
        witness=witness,
        witness_in_s=h_s_member(witness, S, dmax),
        witness_in_t=h_s_member(witness, T, dmax),
        sample_size=len(sample),
        members_s=len(hs),
        members_t=len(ht),
        image_s=image(hs),
        image_t=image(ht),
        collision=collision,
    )
