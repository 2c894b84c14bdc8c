"""Sheaf condition and sheafification for quantale-valued presheaves.

With poset-valued homs, uniqueness in the sheaf condition is automatic and
every colimit over a covering family is a join, so everything reduces to
finite meets, joins and internal homs in the base.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .basechange import BaseChange, presheaf_base_change
from .category import base_change_category
from .coverage import Coverage, base_change_coverage, check_coverage
from .sieve import (
    InvariantBroken,
    Presheaf,
    Sieve,
    enumerate_presheaves,
    maximal_sieve,
    presheaf_violations,
)


class NotACoverage(ValueError):
    pass


def _require_coverage(j: Coverage) -> None:
    rep = check_coverage(j, check_t3=False)
    if not rep.is_coverage:
        raise NotACoverage(f"sheaf operations need a coverage: {(rep.members + rep.t1 + rep.t2)[0]}")


def hom_into(values: tuple[int, ...], p: Presheaf) -> int:
    """Enriched hom ``[C^op, V](R, P)``: the meet over ``z`` of ``[R(z), P(z)]``."""
    q = p.category.base
    return q.meet_all(q.residuate(r, v) for r, v in zip(values, p.values))


@dataclass(frozen=True)
class SheafCheck:
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_sheaf(p: Presheaf, j: Coverage, validate: bool = True) -> SheafCheck:
    """For every ``x``, covering ``R`` and ``g``: if ``g * R(z) <= P(z)`` for all ``z``
    then ``g * C(z, x) <= P(z)`` for all ``z``.  The witness is the first failing
    ``(x, R, g)`` as labels."""
    if validate:
        _require_coverage(j)
    c = p.category
    q = c.base
    P = p.values
    for x in range(c.size):
        for r in sorted(j[x], key=lambda s: s.values):
            for g in q.elements:
                if all(q.leq(q.tensor(g, rz), pz) for rz, pz in zip(r.values, P)):
                    if not all(q.leq(q.tensor(g, c.hom[z][x]), P[z]) for z in range(c.size)):
                        return SheafCheck(False, (c.objects[x], r.labels(), q.labels[g]))
    return SheafCheck(True)


def sigma(p: Presheaf, j: Coverage) -> Presheaf:
    """One step: ``x -> join over R in J(x) of [R, P]``."""
    c = p.category
    q = c.base
    vals = tuple(q.join_all(hom_into(r.values, p) for r in j[x]) for x in range(c.size))
    bad = presheaf_violations(c, vals)
    if bad:
        raise InvariantBroken(f"sigma produced a non-presheaf: {bad[0]}")
    return Presheaf(c, vals)


def sheafify(p: Presheaf, j: Coverage, validate: bool = True) -> Presheaf:
    if validate:
        _require_coverage(j)
    return sigma(sigma(p, j), j)


def sheafify_oracle(p: Presheaf, j: Coverage) -> Presheaf | None:
    """Smallest sheaf above ``p`` by enumerating every presheaf; ``None`` if the
    pointwise meet of the sheaves above ``p`` is not itself a sheaf."""
    c = p.category
    q = c.base
    above = [
        s for s in enumerate_presheaves(c)
        if all(q.leq(a, b) for a, b in zip(p.values, s.values)) and is_sheaf(s, j, validate=False)
    ]
    vals = tuple(q.meet_all(s.values[z] for s in above) for z in range(c.size))
    cand = Presheaf(c, vals)
    return cand if is_sheaf(cand, j, validate=False) else None


def closure_of_subpresheaf(r: Sieve, j: Coverage) -> Sieve:
    """Pullback of the unit ``C(-, x) -> l C(-, x)`` against ``l R -> l C(-, x)``."""
    c = r.category
    q = c.base
    lr = sheafify(r.as_presheaf(), j)
    vals = tuple(q.meet(c.hom[z][r.target], lr.values[z]) for z in range(c.size))
    return Sieve(c, r.target, vals)


def is_dense(r: Sieve, j: Coverage) -> bool:
    return closure_of_subpresheaf(r, j) == maximal_sieve(r.category, r.target)


@dataclass(frozen=True)
class CommuteReport:
    base_change: str
    presheaf: dict
    image_of_sheafification: tuple[str, ...]
    sheafification_of_image: tuple[str, ...]
    equal: bool
    comparison_leq: bool
    full: bool
    image_is_coverage: bool

    def lines(self) -> list[str]:
        rel = "=" if self.equal else ("<=" if self.comparison_leq else "incomparable")
        return [
            f"G(l P) = {list(self.image_of_sheafification)}",
            f"l_G(G P) = {list(self.sheafification_of_image)}",
            f"relation: G(l P) {rel} l_G(G P)",
            f"image family is a coverage: {'yes' if self.image_is_coverage else 'no'}",
        ]


def check_sheafification_commutes(g: BaseChange, p: Presheaf, j: Coverage) -> CommuteReport:
    """Compare base change of the sheafification with sheafification of the base change.

    Equality is asserted when ``g`` is full; otherwise only the direction of the
    comparison is recorded.
    """
    g.require("faithful", "conservative", "right_adjoint")
    gc = base_change_category(g, p.category)
    gj = base_change_coverage(g, j, gc)
    image_is_coverage = check_coverage(gj, check_t3=False).is_coverage
    lhs = presheaf_base_change(g, sheafify(p, j), gc)
    # the double-sigma formula is evaluated on the image family even when it is not a coverage
    rhs = sheafify(presheaf_base_change(g, p, gc), gj, validate=False)
    U = g.target
    equal = lhs.values == rhs.values
    leq = all(U.leq(a, b) for a, b in zip(lhs.values, rhs.values))
    if g.full and g.left_strong_monoidal and not equal:
        raise InvariantBroken(
            f"sheafification does not commute with full base change {g.name} at {p.labels()}"
        )
    return CommuteReport(
        base_change=g.name,
        presheaf=p.labels(),
        image_of_sheafification=tuple(U.labels[v] for v in lhs.values),
        sheafification_of_image=tuple(U.labels[v] for v in rhs.values),
        equal=equal,
        comparison_leq=leq,
        full=g.full,
        image_is_coverage=image_is_coverage,
    )
