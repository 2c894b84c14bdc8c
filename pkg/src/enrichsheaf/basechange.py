"""Monotone lax monoidal maps between finite quantales.

Every flag on a :class:`BaseChange` is computed by exhaustion in :func:`analyze`;
nothing is taken on trust from the caller.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .category import BaseMismatchError, base_change_category
from .quantale import (
    Quantale,
    Violation,
    check_axioms,
    make_exponential,
    make_saturating_additive,
    make_saturating_exponential,
    make_truncated_additive,
    make_two_element,
)
from .sieve import InvariantBroken, Presheaf, presheaf_violations

FAITHFUL_NOTE = (
    "faithful holds vacuously: hom-sets of a poset have at most one element, "
    "so any functor between posets is injective on them"
)


class NotMonotoneError(ValueError):
    """The map does not define a functor between the underlying posets."""


class HypothesisNotMet(ValueError):
    """A base change lacks a flag that an operation needs."""


@dataclass(frozen=True)
class BaseChange:
    source: Quantale
    target: Quantale
    map: tuple[int, ...]
    left_adjoint: tuple[int, ...]
    lax_monoidal: bool
    faithful: bool
    conservative: bool
    full: bool
    right_adjoint: bool
    left_strong_monoidal: bool
    witnesses: dict = field(default_factory=dict, compare=False, hash=False)
    name: str = field(default="G", compare=False)

    def __call__(self, v: int) -> int:
        return self.map[v]

    def __repr__(self) -> str:
        return f"BaseChange({self.name}: {self.source!r} -> {self.target!r})"

    def flags(self) -> dict[str, bool]:
        return {
            "lax_monoidal": self.lax_monoidal,
            "faithful": self.faithful,
            "conservative": self.conservative,
            "full": self.full,
            "right_adjoint": self.right_adjoint,
            "left_strong_monoidal": self.left_strong_monoidal,
        }

    def require(self, *flags: str) -> None:
        missing = [f for f in flags if not getattr(self, f)]
        if missing:
            detail = "; ".join(f"{f}: {self.witnesses.get(f, 'fails')}" for f in missing)
            raise HypothesisNotMet(f"{self.name} is not {', '.join(missing)} ({detail})")


def analyze(source: Quantale, target: Quantale, mapping: Sequence[int], name: str = "G") -> BaseChange:
    V, U = source, target
    G = tuple(mapping)
    if len(G) != V.size or any(not 0 <= u < U.size for u in G):
        raise ValueError("map must send every source element to a target element")
    for qq, role in ((V, "source"), (U, "target")):
        bad = check_axioms(qq)
        if bad:
            raise ValueError(f"{role} quantale is invalid: {bad[0]}")
    lv, lu = V.labels, U.labels
    wit: dict = {}

    for a, b in product(V.elements, repeat=2):
        if V.leq(a, b) and not U.leq(G[a], G[b]):
            raise NotMonotoneError(f"{lv[a]} <= {lv[b]} but {lu[G[a]]} is not below {lu[G[b]]}")

    lax = U.leq(U.unit, G[V.unit])
    if not lax:
        wit["lax_monoidal"] = f"unit {lu[U.unit]} not below G(unit) = {lu[G[V.unit]]}"
    else:
        for a, b in product(V.elements, repeat=2):
            if not U.leq(U.tensor(G[a], G[b]), G[V.tensor(a, b)]):
                lax = False
                wit["lax_monoidal"] = f"G{lv[a]} * G{lv[b]} not below G({lv[a]} * {lv[b]})"
                break

    conservative = True
    for a, b in product(V.elements, repeat=2):
        if a != b and V.leq(a, b) and G[a] == G[b]:
            conservative = False
            wit["conservative"] = (lv[a], lv[b])
            break

    full = True
    for a, b in product(V.elements, repeat=2):
        if U.leq(G[a], G[b]) and not V.leq(a, b):
            full = False
            wit["full"] = (lv[a], lv[b])
            break

    F = tuple(V.meet_all(v for v in V.elements if U.leq(u, G[v])) for u in U.elements)
    right_adjoint = True
    for u, v in product(U.elements, V.elements):
        if V.leq(F[u], v) != U.leq(u, G[v]):
            right_adjoint = False
            wit["right_adjoint"] = (lu[u], lv[v])
            break

    strong = F[U.unit] == V.unit and all(
        F[U.tensor(u, w)] == V.tensor(F[u], F[w]) for u, w in product(U.elements, repeat=2)
    )
    if not strong:
        wit["left_strong_monoidal"] = "candidate left adjoint does not preserve unit and tensor"
    wit["faithful"] = FAITHFUL_NOTE

    return BaseChange(
        source=V,
        target=U,
        map=G,
        left_adjoint=F,
        lax_monoidal=lax,
        faithful=True,
        conservative=conservative,
        full=full,
        right_adjoint=right_adjoint,
        left_strong_monoidal=strong,
        witnesses=wit,
        name=name,
    )


def analyze_labels(source: Quantale, target: Quantale, mapping: Mapping[str, str], name: str = "G") -> BaseChange:
    m = []
    for lab in source.labels:
        if lab not in mapping:
            raise ValueError(f"base change map is not total: no image for {lab!r}")
        m.append(target.index(mapping[lab]))
    return analyze(source, target, m, name=name)


def adjunction_violations(g: BaseChange) -> list[Violation]:
    """Triangle identities, meet/join preservation, and compatibility with internal homs."""
    V, U, G, F = g.source, g.target, g.map, g.left_adjoint
    out = []
    if not g.right_adjoint:
        return [Violation("right_adjoint", (), "no left adjoint")]
    for v in V.elements:
        if G[F[G[v]]] != G[v]:
            out.append(Violation("triangle GFG", (V.labels[v],)))
    for u in U.elements:
        if F[G[F[u]]] != F[u]:
            out.append(Violation("triangle FGF", (U.labels[u],)))
    for a, b in product(V.elements, repeat=2):
        if G[V.meet(a, b)] != U.meet(G[a], G[b]):
            out.append(Violation("G preserves meets", (V.labels[a], V.labels[b])))
    if G[V.top] != U.top:
        out.append(Violation("G preserves top", ()))
    for a, b in product(U.elements, repeat=2):
        if F[U.join(a, b)] != V.join(F[a], F[b]):
            out.append(Violation("F preserves joins", (U.labels[a], U.labels[b])))
    if F[U.bottom] != V.bottom:
        out.append(Violation("F preserves bottom", ()))
    for u, r in product(U.elements, V.elements):
        if G[V.residuate(F[u], r)] != U.residuate(u, G[r]):
            out.append(Violation("cotensor", (U.labels[u], V.labels[r]), "G[Fu, r] != [u, Gr]"))
    return out


def presheaf_base_change(g: BaseChange, p: Presheaf, target_category=None) -> Presheaf:
    if p.category.base != g.source:
        raise BaseMismatchError("presheaf base differs from base-change source")
    gc = target_category or base_change_category(g, p.category)
    vals = tuple(g.map[v] for v in p.values)
    bad = presheaf_violations(gc, vals)
    if bad:
        raise InvariantBroken(f"base-changed presheaf breaks the presheaf law: {bad[0]}")
    return Presheaf(gc, vals)


# shipped base changes


def identity(q: Quantale) -> BaseChange:
    return analyze(q, q, tuple(q.elements), name="id")


def two_into_exponential(N: int = 3, d: int = 1) -> BaseChange:
    """``{0,1} -> exponential(N, d)`` sending 0 to ``exp(-inf)`` and 1 to ``exp(0)``."""
    Q2, E = make_two_element(), make_exponential(N, d)
    return analyze(Q2, E, (E.index("exp(-inf)"), E.index("exp(0)")), name="incl")


def neg_log(N: int = 3, d: int = 1) -> BaseChange:
    """``-log``: exponential(N, d) -> truncated_additive(N, d)."""
    E, T = make_exponential(N, d), make_truncated_additive(N, d)
    return analyze(E, T, tuple(E.elements), name="-log")


def exp_neg(N: int = 3, d: int = 1) -> BaseChange:
    """``exp(-x)``: truncated_additive(N, d) -> exponential(N, d), inverse of :func:`neg_log`."""
    T, E = make_truncated_additive(N, d), make_exponential(N, d)
    return analyze(T, E, tuple(T.elements), name="exp(-)")


def collapse_to_two(N: int = 3, d: int = 1) -> BaseChange:
    """Send ``0`` to ``1`` and everything else to ``0``: lax and a right adjoint, not conservative."""
    T, Q2 = make_truncated_additive(N, d), make_two_element()
    return analyze(T, Q2, tuple(1 if v == T.unit else 0 for v in T.elements), name="collapse")


def two_into_saturating_exponential(N: int = 3, d: int = 1) -> BaseChange:
    Q2, E = make_two_element(), make_saturating_exponential(N, d)
    return analyze(Q2, E, (E.index("exp(-inf)"), E.index("exp(0)")), name="incl_sat")


def saturating_neg_log(N: int = 3, d: int = 1) -> BaseChange:
    E, T = make_saturating_exponential(N, d), make_saturating_additive(N, d)
    return analyze(E, T, tuple(E.elements), name="-log_sat")
