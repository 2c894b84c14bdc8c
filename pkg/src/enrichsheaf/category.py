"""Small categories enriched in a finite quantale.

Hom convention, used everywhere in the package: ``c.hom[z][x]`` is ``C(z, x)``,
the contravariant slot first, so a sieve on ``x`` is bounded by the column
``z -> c.hom[z][x]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .quantale import Quantale, Violation, check_axioms


class CategoryError(ValueError):
    pass


class BaseMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class EnrichedCategory:
    base: Quantale
    objects: tuple[str, ...]
    hom: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        n = len(self.objects)
        if len(set(self.objects)) != n:
            raise CategoryError("duplicate object labels")
        if len(self.hom) != n or any(len(row) != n for row in self.hom):
            raise CategoryError(f"hom matrix is not {n}x{n}")
        for row in self.hom:
            for v in row:
                if not 0 <= v < self.base.size:
                    raise CategoryError(f"hom entry {v!r} is not an element of the base")

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.base, self.objects, self.hom))

    def __repr__(self) -> str:
        return f"EnrichedCategory({self.name or '?'}, objects={list(self.objects)})"

    @property
    def size(self) -> int:
        return len(self.objects)

    def index(self, obj: str | int) -> int:
        if isinstance(obj, int):
            if not 0 <= obj < len(self.objects):
                raise KeyError(f"object index {obj} out of range")
            return obj
        try:
            return self.objects.index(obj)
        except ValueError:
            raise KeyError(f"unknown object {obj!r}") from None


def make_category(
    base: Quantale,
    objects: Sequence[str],
    hom: Mapping[str, Mapping[str, str]] | Sequence[Sequence[int]],
    name: str = "",
) -> EnrichedCategory:
    """Build from labels; ``hom[z][x]`` gives ``C(z, x)`` by object and element label."""
    objs = tuple(str(o) for o in objects)
    if isinstance(hom, Mapping):
        rows = []
        for z in objs:
            if z not in hom:
                raise CategoryError(f"hom matrix has no row for {z!r}")
            row = []
            for x in objs:
                if x not in hom[z]:
                    raise CategoryError(f"hom matrix has no entry C({z}, {x})")
                row.append(base.index(hom[z][x]))
            rows.append(tuple(row))
        matrix = tuple(rows)
    else:
        matrix = tuple(tuple(r) for r in hom)
    return EnrichedCategory(base, objs, matrix, name=name)


def check_category(c: EnrichedCategory) -> list[Violation]:
    base_report = check_axioms(c.base)
    if base_report:
        raise CategoryError(f"base quantale is invalid: {base_report[0]}")
    q = c.base
    ob = c.objects
    out = []
    for x in range(c.size):
        if not q.leq(q.unit, c.hom[x][x]):
            out.append(Violation("identity", (ob[x],), f"unit not below C({ob[x]},{ob[x]})"))
    for x, y, z in product(range(c.size), repeat=3):
        if not q.leq(q.tensor(c.hom[y][z], c.hom[x][y]), c.hom[x][z]):
            out.append(Violation("composition", (ob[x], ob[y], ob[z])))
    return out


def underlying_preorder(c: EnrichedCategory) -> frozenset[tuple[str, str]]:
    """Pairs ``(x, y)`` whose hom ``C(x, y)`` receives a map from the unit."""
    q = c.base
    return frozenset(
        (c.objects[x], c.objects[y])
        for x, y in product(range(c.size), repeat=2)
        if q.leq(q.unit, c.hom[x][y])
    )


def base_change_category(g, c: EnrichedCategory) -> EnrichedCategory:
    """Apply ``g`` entrywise to the hom matrix; the result is checked, not trusted."""
    if c.base != g.source:
        raise BaseMismatchError(f"{c!r} is over {c.base!r}, base change starts at {g.source!r}")
    hom = tuple(tuple(g.map[v] for v in row) for row in c.hom)
    out = EnrichedCategory(g.target, c.objects, hom, name=f"{g.name}*{c.name}" if c.name else "")
    bad = check_category(out)
    if bad:
        raise CategoryError(f"base change produced an invalid category: {bad[0]}")
    return out


# shipped categories


def one_object(base: Quantale, value: int | None = None) -> EnrichedCategory:
    v = base.unit if value is None else value
    return EnrichedCategory(base, ("*",), ((v,),), name="one")


def discrete_metric(base: Quantale, objects: Sequence[str], off: str, name: str = "") -> EnrichedCategory:
    """All off-diagonal homs equal to ``off``; diagonal is the unit."""
    o = base.index(off)
    n = len(objects)
    hom = tuple(tuple(base.unit if i == j else o for j in range(n)) for i in range(n))
    return EnrichedCategory(base, tuple(objects), hom, name=name)


def poset(base: Quantale, objects: Sequence[str], below: Sequence[tuple[str, str]], name: str = "") -> EnrichedCategory:
    """Preorder generated by ``below`` pairs ``(a, b)`` meaning ``a <= b``, over a two-element base.

    Related pairs get the top element, unrelated ones the bottom.
    """
    objs = tuple(objects)
    n = len(objs)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in below:
        rel[objs.index(a)][objs.index(b)] = True
    for k, i, j in product(range(n), repeat=3):
        if rel[i][k] and rel[k][j]:
            rel[i][j] = True
    hom = tuple(tuple(base.top if rel[i][j] else base.bottom for j in range(n)) for i in range(n))
    return EnrichedCategory(base, objs, hom, name=name)
