"""Presheaves and sieves on quantale-enriched categories.

In a poset-enriched setting a subobject of ``C(-, x)`` has exactly one
representative value map, so a :class:`Sieve` *is* its subobject class.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

from .category import BaseMismatchError, EnrichedCategory, base_change_category
from .config import EnumerationTooLarge, sieve_cap
from .quantale import Violation


class PullbackPreconditionError(ValueError):
    pass


class InvariantBroken(AssertionError):
    """A result that is guaranteed by theory failed its check. Always a bug."""


@dataclass(frozen=True)
class Presheaf:
    category: EnrichedCategory
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_shape(self.category, self.values)

    def __hash__(self) -> int:
        return hash(self.values)

    def labels(self) -> dict[str, str]:
        c = self.category
        return {c.objects[z]: c.base.labels[v] for z, v in enumerate(self.values)}

    def __repr__(self) -> str:
        return f"Presheaf({self.labels()})"


@dataclass(frozen=True)
class Sieve:
    category: EnrichedCategory
    target: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_shape(self.category, self.values)
        if not 0 <= self.target < self.category.size:
            raise KeyError(f"sieve target {self.target} out of range")

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.target, self.values))

    def labels(self) -> dict[str, str]:
        c = self.category
        return {c.objects[z]: c.base.labels[v] for z, v in enumerate(self.values)}

    def __repr__(self) -> str:
        return f"Sieve(on {self.category.objects[self.target]}: {self.labels()})"

    def as_presheaf(self) -> Presheaf:
        return Presheaf(self.category, self.values)


@dataclass(frozen=True)
class GeneralizedElement:
    """A morphism ``g -> C(source, x)``, i.e. a carrier element below that hom value."""

    g: int
    source: int


def _check_shape(c: EnrichedCategory, values: tuple[int, ...]) -> None:
    if len(values) != c.size:
        raise ValueError(f"value map has {len(values)} entries for {c.size} objects")
    for v in values:
        if not 0 <= v < c.base.size:
            raise ValueError(f"value {v!r} is not an element of the base")


def make_sieve(c: EnrichedCategory, target: str | int, values: dict[str, str]) -> Sieve:
    x = c.index(target)
    vals = []
    for z in c.objects:
        if z not in values:
            raise KeyError(f"sieve value missing for object {z!r}")
        vals.append(c.base.index(values[z]))
    return Sieve(c, x, tuple(vals))


def make_presheaf(c: EnrichedCategory, values: dict[str, str]) -> Presheaf:
    vals = []
    for z in c.objects:
        if z not in values:
            raise KeyError(f"presheaf value missing for object {z!r}")
        vals.append(c.base.index(values[z]))
    return Presheaf(c, tuple(vals))


# validity


def presheaf_violations(c: EnrichedCategory, values: tuple[int, ...]) -> list[Violation]:
    q = c.base
    ob = c.objects
    out = []
    for z, z2 in product(range(c.size), repeat=2):
        if not q.leq(q.tensor(c.hom[z2][z], values[z]), values[z2]):
            out.append(Violation("presheaf", (ob[z], ob[z2]), f"C({ob[z2]},{ob[z]}) * P({ob[z]}) not below P({ob[z2]})"))
    return out


def is_presheaf(p: Presheaf) -> list[Violation]:
    return presheaf_violations(p.category, p.values)


def is_sieve(s: Sieve) -> list[Violation]:
    """Violations of the subfunctor bound and of the presheaf law; empty iff ``s`` is a sieve."""
    c = s.category
    q = c.base
    x = s.target
    out = []
    for z in range(c.size):
        if not q.leq(s.values[z], c.hom[z][x]):
            out.append(
                Violation("bound", (c.objects[z],), f"R({c.objects[z]}) not below C({c.objects[z]},{c.objects[x]})")
            )
    return out + presheaf_violations(c, s.values)


def _assert_sieve(s: Sieve, what: str) -> Sieve:
    bad = is_sieve(s)
    if bad:
        raise InvariantBroken(f"{what} is not a sieve: {bad[0]}")
    return s


# construction


def maximal_sieve(c: EnrichedCategory, x: str | int) -> Sieve:
    x = c.index(x)
    return Sieve(c, x, tuple(c.hom[z][x] for z in range(c.size)))


def zero_sieve(c: EnrichedCategory, x: str | int) -> Sieve:
    x = c.index(x)
    return Sieve(c, x, (c.base.bottom,) * c.size)


def admissible_elements(c: EnrichedCategory, x: int, y: int) -> list[GeneralizedElement]:
    """All generalized elements of ``C(y, x)``, the generating family being the full carrier."""
    bound = c.hom[y][x]
    return [GeneralizedElement(g, y) for g in c.base.elements if c.base.leq(g, bound)]


@lru_cache(maxsize=1 << 17)
def pullback_sieve(s: Sieve, f: GeneralizedElement) -> Sieve:
    """Pointwise pullback of ``C(z,y) -> [g, C(z,x)] <- [g, R(z)]``.

    In a poset the pullback of two subobjects of a common object is their meet,
    giving ``R_f(z) = C(z, y) /\\ [g, R(z)]``.
    """
    c = s.category
    q = c.base
    x, y, g = s.target, f.source, f.g
    if not q.leq(g, c.hom[y][x]):
        raise PullbackPreconditionError(
            f"generalized element {q.labels[g]} -> C({c.objects[y]},{c.objects[x]}) does not exist"
        )
    vals = tuple(q.meet(c.hom[z][y], q.residuate(g, s.values[z])) for z in range(c.size))
    return _assert_sieve(Sieve(c, y, vals), "pullback")


def _example_formula(s: Sieve, q_el: int, y: int, kind: str) -> Sieve:
    c = s.category
    q = c.base
    if q.kind != kind:
        raise ValueError(f"formula is stated for a {kind} base, got {q.kind}")
    y = c.index(y)
    if not q.leq(q_el, c.hom[y][s.target]):
        raise PullbackPreconditionError(
            f"{q.labels[q_el]} is not below C({c.objects[y]},{c.objects[s.target]})"
        )
    # numeric max (additive, reversed order) and numeric min (multiplicative) are both the categorical meet
    vals = tuple(q.meet(s.values[z], q.residuate(q_el, c.hom[z][y])) for z in range(c.size))
    return Sieve(c, y, vals)


def pullback_lawvere(s: Sieve, q_el: int, y: str | int) -> Sieve:
    """``r_q(z) = max{r(z), V(q, d(z, y))}`` evaluated literally; the result is NOT checked."""
    return _example_formula(s, q_el, y, "truncated_additive")


def pullback_proxet(s: Sieve, q_el: int, y: str | int) -> Sieve:
    """``r_q(z) = min{r(z), U(q, L(z, y))}`` evaluated literally; the result is NOT checked."""
    return _example_formula(s, q_el, y, "exponential")


def compare_pullback_formulas(s: Sieve, q_el: int, y: str | int) -> dict:
    """Side-by-side record of the generic pullback and the literal metric-space formula."""
    c = s.category
    q = c.base
    y = c.index(y)
    literal = pullback_lawvere(s, q_el, y) if q.kind == "truncated_additive" else pullback_proxet(s, q_el, y)
    generic = pullback_sieve(s, GeneralizedElement(q_el, y))
    lit_bad = is_sieve(literal)
    return {
        "formula": "r_q(z) = max{r(z), V(q, d(z,y))}" if q.kind == "truncated_additive"
        else "r_q(z) = min{r(z), U(q, L(z,y))}",
        "sieve": s.labels(),
        "target": c.objects[s.target],
        "q": q.labels[q_el],
        "y": c.objects[y],
        "generic": generic.labels(),
        "generic_is_sieve": True,
        "literal": literal.labels(),
        "literal_is_sieve": not lit_bad,
        "literal_violations": [str(v) for v in lit_bad],
        "agree": generic.values == literal.values,
        "admissible_generic": q.leq(q_el, c.hom[y][s.target]),
        "admissible_literal": q.leq(q_el, c.hom[s.target][y]),
    }


def enumerate_sieves(c: EnrichedCategory, x: str | int, cap: int | None = None) -> list[Sieve]:
    """Every sieve on ``x``, in canonical order (lexicographic on value indices)."""
    x = c.index(x)
    cap = sieve_cap() if cap is None else cap
    q = c.base
    if q.size ** c.size > cap:
        raise EnumerationTooLarge(
            f"{q.size}^{c.size} candidate value maps on {c.objects[x]} exceed cap {cap}"
        )
    choices = [[v for v in q.elements if q.leq(v, c.hom[z][x])] for z in range(c.size)]
    out = []
    for vals in product(*choices):
        if not presheaf_violations(c, vals):
            out.append(Sieve(c, x, tuple(vals)))
    out.sort(key=lambda s: s.values)
    return out


def enumerate_presheaves(c: EnrichedCategory, cap: int | None = None) -> list[Presheaf]:
    cap = sieve_cap() if cap is None else cap
    q = c.base
    if q.size ** c.size > cap:
        raise EnumerationTooLarge(f"{q.size}^{c.size} candidate presheaves exceed cap {cap}")
    out = [
        Presheaf(c, vals)
        for vals in product(q.elements, repeat=c.size)
        if not presheaf_violations(c, vals)
    ]
    out.sort(key=lambda p: p.values)
    return out


# lattice operations


def _same_place(s1: Sieve, s2: Sieve) -> None:
    if s1.category != s2.category or s1.target != s2.target:
        raise ValueError("sieves live on different objects or categories")


def sieve_meet(s1: Sieve, s2: Sieve) -> Sieve:
    _same_place(s1, s2)
    q = s1.category.base
    vals = tuple(q.meet(a, b) for a, b in zip(s1.values, s2.values))
    return _assert_sieve(Sieve(s1.category, s1.target, vals), "meet")


def sieve_join(s1: Sieve, s2: Sieve) -> Sieve:
    _same_place(s1, s2)
    q = s1.category.base
    vals = tuple(q.join(a, b) for a, b in zip(s1.values, s2.values))
    return _assert_sieve(Sieve(s1.category, s1.target, vals), "join")


def sieve_leq(s1: Sieve, s2: Sieve) -> bool:
    _same_place(s1, s2)
    q = s1.category.base
    return all(q.leq(a, b) for a, b in zip(s1.values, s2.values))


def base_change_sieve(g, s: Sieve, target_category: EnrichedCategory | None = None) -> Sieve:
    """Apply ``g`` pointwise; the image lives on the base-changed category."""
    if s.category.base != g.source:
        raise BaseMismatchError("sieve base differs from base-change source")
    gc = target_category or base_change_category(g, s.category)
    return _assert_sieve(Sieve(gc, s.target, tuple(g.map[v] for v in s.values)), "base-changed sieve")
