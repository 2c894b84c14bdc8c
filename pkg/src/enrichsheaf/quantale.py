"""Finite commutative unital quantales with exact, table-driven operations.

Elements are plain ``int`` indices into ``Quantale.labels``.  The order is the
categorical one: ``q.leq(a, b)`` holds iff there is a morphism ``a -> b``.
Meets, joins and the internal hom are all derived from the tables by
exhaustive search, so nothing here depends on a closed-form formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable

# carrier size ceiling for the parametric families; tables are quadratic in it
MAX_CARRIER = 4096

INF_LABEL = "inf"


class QuantaleStructureError(ValueError):
    """Tables are malformed (wrong shape, index out of range, duplicate labels)."""


class QuantaleConstructionError(ValueError):
    """A parametric family was asked for an unsupported size."""


class NotALatticeError(ValueError):
    """A meet or join required by an operation does not exist."""


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        w = ", ".join(str(x) for x in self.witness)
        text = f"{self.law}({w})"
        return f"{text}: {self.detail}" if self.detail else text


@dataclass(frozen=True)
class Quantale:
    labels: tuple[str, ...]
    leq_table: tuple[tuple[bool, ...], ...]
    tensor_table: tuple[tuple[int, ...], ...]
    unit: int
    kind: str = "table"
    params: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise QuantaleStructureError("duplicate element labels")
        for tname, table in (("leq", self.leq_table), ("tensor", self.tensor_table)):
            if len(table) != n or any(len(row) != n for row in table):
                raise QuantaleStructureError(f"{tname} table is not {n}x{n}")
        for row in self.tensor_table:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise QuantaleStructureError(f"tensor entry {v!r} out of range")
        if not 0 <= self.unit < n:
            raise QuantaleStructureError(f"unit {self.unit!r} out of range")

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.labels, self.leq_table, self.tensor_table, self.unit))

    def __repr__(self) -> str:
        tag = self.name or self.kind
        return f"Quantale({tag}, {len(self.labels)} elements)"

    # basic access

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"{label!r} is not an element of {self!r}") from None

    def label(self, a: int) -> str:
        return self.labels[a]

    def leq(self, a: int, b: int) -> bool:
        return self.leq_table[a][b]

    def tensor(self, a: int, b: int) -> int:
        return self.tensor_table[a][b]

    # lattice structure

    def _least(self, candidates: Iterable[int]) -> int | None:
        cands = list(candidates)
        for c in cands:
            if all(self.leq(c, o) for o in cands):
                return c
        return None

    def _greatest(self, candidates: Iterable[int]) -> int | None:
        cands = list(candidates)
        for c in cands:
            if all(self.leq(o, c) for o in cands):
                return c
        return None

    def _join_or_none(self, xs: Iterable[int]) -> int | None:
        xs = list(xs)
        upper = [u for u in self.elements if all(self.leq(x, u) for x in xs)]
        return self._least(upper)

    def _meet_or_none(self, xs: Iterable[int]) -> int | None:
        xs = list(xs)
        lower = [u for u in self.elements if all(self.leq(u, x) for x in xs)]
        return self._greatest(lower)

    @cached_property
    def _join_table(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for a in self.elements:
            row = []
            for b in self.elements:
                j = self._join_or_none((a, b))
                if j is None:
                    raise NotALatticeError(f"no join of {self.labels[a]} and {self.labels[b]}")
                row.append(j)
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def _meet_table(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for a in self.elements:
            row = []
            for b in self.elements:
                m = self._meet_or_none((a, b))
                if m is None:
                    raise NotALatticeError(f"no meet of {self.labels[a]} and {self.labels[b]}")
                row.append(m)
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def top(self) -> int:
        t = self._join_or_none(self.elements)
        if t is None:
            raise NotALatticeError("no top element")
        return t

    @cached_property
    def bottom(self) -> int:
        b = self._meet_or_none(self.elements)
        if b is None:
            raise NotALatticeError("no bottom element")
        return b

    def join(self, a: int, b: int) -> int:
        return self._join_table[a][b]

    def meet(self, a: int, b: int) -> int:
        return self._meet_table[a][b]

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        for x in xs:
            acc = self._join_table[acc][x]
        return acc

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            acc = self._meet_table[acc][x]
        return acc

    @cached_property
    def _residuation_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(
                self.join_all(p for p in self.elements if self.leq(self.tensor(p, a), b))
                for b in self.elements
            )
            for a in self.elements
        )

    def residuate(self, a: int, b: int) -> int:
        """Internal hom ``[a, b]``: the join of every ``p`` with ``p * a <= b``."""
        return self._residuation_table[a][b]


def residuate(q: Quantale, a: int, b: int) -> int:
    return q.residuate(a, b)


def check_axioms(q: Quantale) -> list[Violation]:
    """Every violated quantale law, each with a witness tuple of labels.

    An empty list means ``q`` is a finite commutative unital quantale.
    Structural problems never reach this point: the constructor rejects them.
    """
    return list(_check_axioms(q))


@lru_cache(maxsize=256)
def _check_axioms(q: Quantale) -> list[Violation]:
    lab = q.labels
    E = list(q.elements)
    out: list[Violation] = []

    for a in E:
        if not q.leq(a, a):
            out.append(Violation("reflexive", (lab[a],)))
    for a, b in product(E, E):
        if a != b and q.leq(a, b) and q.leq(b, a):
            out.append(Violation("antisymmetric", (lab[a], lab[b])))
    for a, b, c in product(E, E, E):
        if q.leq(a, b) and q.leq(b, c) and not q.leq(a, c):
            out.append(Violation("transitive", (lab[a], lab[b], lab[c])))
    if out:
        return out

    lattice_ok = True
    if q._join_or_none(E) is None or q._meet_or_none(E) is None:
        out.append(Violation("bounded", (), "no top or no bottom"))
        lattice_ok = False
    for a, b in product(E, E):
        if a < b:
            if q._join_or_none((a, b)) is None:
                out.append(Violation("join", (lab[a], lab[b])))
                lattice_ok = False
            if q._meet_or_none((a, b)) is None:
                out.append(Violation("meet", (lab[a], lab[b])))
                lattice_ok = False

    t = q.tensor
    u = q.unit
    for a in E:
        if t(u, a) != a or t(a, u) != a:
            out.append(Violation("unit", (lab[a],), f"{lab[u]} * {lab[a]} != {lab[a]}"))
    for a, b in product(E, E):
        if t(a, b) != t(b, a):
            out.append(Violation("commutative", (lab[a], lab[b])))
    for a, b, c in product(E, E, E):
        if t(t(a, b), c) != t(a, t(b, c)):
            out.append(Violation("associative", (lab[a], lab[b], lab[c])))
    for a, b, c in product(E, E, E):
        if q.leq(a, b) and not q.leq(t(a, c), t(b, c)):
            out.append(Violation("monotone", (lab[a], lab[b], lab[c])))

    if not lattice_ok:
        return out
    bot = q.bottom
    for a in E:
        if t(a, bot) != bot:
            out.append(Violation("distributive", (lab[a], "bottom"), "a * bottom != bottom"))
    for a, b, c in product(E, E, E):
        if b < c and t(a, q.join(b, c)) != q.join(t(a, b), t(a, c)):
            out.append(Violation("distributive", (lab[a], lab[b], lab[c])))
    if out:
        return out
    for a, b, p in product(E, E, E):
        if q.leq(p, q.residuate(a, b)) != q.leq(t(p, a), b):
            out.append(Violation("residuation", (lab[p], lab[a], lab[b])))
    return out


# built-in families


def make_two_element() -> Quantale:
    """``({0, 1}, and, 1)``: the base whose enriched categories are preorders."""
    return Quantale(
        labels=("0", "1"),
        leq_table=((True, True), (False, True)),
        tensor_table=((0, 0), (0, 1)),
        unit=1,
        kind="two_element",
        name="Q2",
    )


def _grid(N: int, d: int) -> int:
    if not (isinstance(N, int) and isinstance(d, int)) or N < 1 or d < 1:
        raise QuantaleConstructionError(f"N and d must be positive integers, got N={N!r}, d={d!r}")
    top = N * d
    if top + 2 > MAX_CARRIER:
        raise QuantaleConstructionError(
            f"carrier of size {top + 2} exceeds the supported maximum {MAX_CARRIER}"
        )
    return top


def _capped_tables(top: int, saturate: bool = False) -> tuple[tuple, tuple]:
    # index k < top+1 stands for k/d, index top+1 for infinity
    inf = top + 1
    n = top + 2
    over = top if saturate else inf
    leq = tuple(tuple(a >= b for b in range(n)) for a in range(n))
    tensor = tuple(
        tuple(inf if (a == inf or b == inf) else (over if a + b > top else a + b) for b in range(n))
        for a in range(n)
    )
    return leq, tensor


def make_truncated_additive(N: int, d: int) -> Quantale:
    """Grid ``{k/d : 0 <= k <= N*d} u {inf}`` under addition capped to ``inf`` above ``N``.

    The categorical order is reversed numeric order (``a -> b`` iff ``a >= b``),
    so ``0`` is top and unit and ``inf`` is bottom.
    """
    top = _grid(N, d)
    leq, tensor = _capped_tables(top)
    labels = tuple(str(Fraction(k, d)) for k in range(top + 1)) + (INF_LABEL,)
    return Quantale(labels, leq, tensor, 0, kind="truncated_additive", params=(N, d), name=f"T{N}/{d}")


def _exp_label(k: int, d: int) -> str:
    return f"exp(-{Fraction(k, d)})" if k else "exp(0)"


def make_exponential(N: int, d: int) -> Quantale:
    """Multiplicative model ``exp(-q)`` of the same grid, with numeric order.

    ``exp(-q) * exp(-q') = exp(-(q (+) q'))`` where ``(+)`` is the capped sum, so
    the index-identity map to :func:`make_truncated_additive` is an isomorphism.
    """
    top = _grid(N, d)
    leq, tensor = _capped_tables(top)
    labels = tuple(_exp_label(k, d) for k in range(top + 1)) + ("exp(-inf)",)
    return Quantale(labels, leq, tensor, 0, kind="exponential", params=(N, d), name=f"E{N}/{d}")


def make_saturating_additive(N: int, d: int) -> Quantale:
    """Same grid as :func:`make_truncated_additive`, but sums above ``N`` clamp to ``N``.

    ``N`` then reads "at least N" and only ``inf`` is absorbing, so ``inf`` has
    no nontrivial tensor factors.  This keeps left adjoints out of ``{0, 1}``
    strong monoidal, which the truncated family does not.
    """
    top = _grid(N, d)
    leq, tensor = _capped_tables(top, saturate=True)
    labels = tuple(str(Fraction(k, d)) for k in range(top)) + (f">={N}", INF_LABEL)
    return Quantale(labels, leq, tensor, 0, kind="saturating_additive", params=(N, d), name=f"S{N}/{d}")


def make_saturating_exponential(N: int, d: int) -> Quantale:
    """Multiplicative relabelling of :func:`make_saturating_additive`."""
    top = _grid(N, d)
    leq, tensor = _capped_tables(top, saturate=True)
    labels = tuple(_exp_label(k, d) for k in range(top)) + (f"exp(<=-{N})", "exp(-inf)")
    return Quantale(labels, leq, tensor, 0, kind="saturating_exponential", params=(N, d), name=f"SE{N}/{d}")


def from_tables(
    carrier: list[str],
    leq_pairs: Iterable[tuple[str, str]],
    tensor: dict[tuple[str, str], str] | list[list[str]],
    unit: str,
    name: str = "",
) -> Quantale:
    """Build a quantale from labelled tables (the ``kind: table`` instance block).

    ``leq_pairs`` lists the related pairs; reflexive pairs are not added.
    ``tensor`` is a row-major label matrix or a mapping keyed by label pairs.
    """
    labels = tuple(str(c) for c in carrier)
    pos = {lab: i for i, lab in enumerate(labels)}

    def idx(x: str) -> int:
        try:
            return pos[str(x)]
        except KeyError:
            raise QuantaleStructureError(f"unknown element {x!r}") from None

    n = len(labels)
    rel = [[False] * n for _ in range(n)]
    for a, b in leq_pairs:
        rel[idx(a)][idx(b)] = True
    tab = [[None] * n for _ in range(n)]
    if isinstance(tensor, dict):
        for (a, b), c in tensor.items():
            tab[idx(a)][idx(b)] = idx(c)
    else:
        if len(tensor) != n or any(len(r) != n for r in tensor):
            raise QuantaleStructureError(f"tensor table is not {n}x{n}")
        for i, r in enumerate(tensor):
            for j, c in enumerate(r):
                tab[i][j] = idx(c)
    missing = [(labels[i], labels[j]) for i in range(n) for j in range(n) if tab[i][j] is None]
    if missing:
        raise QuantaleStructureError(f"tensor table not total, missing {missing[0]}")
    return Quantale(
        labels,
        tuple(tuple(r) for r in rel),
        tuple(tuple(r) for r in tab),
        idx(unit),
        kind="table",
        name=name,
    )
