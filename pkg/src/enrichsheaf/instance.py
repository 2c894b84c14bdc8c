"""Declarative instance files.

An instance file is YAML with optional top-level blocks ``quantales``,
``categories``, ``sieves``, ``presheaves``, ``coverages``, ``base_changes``,
``pullbacks``, ``rings``, ``topologies`` and ``graded``.  Each block maps names
to entries; entries refer to each other by name.  See ``docs/instance-format.md``
for the grammar.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any, Callable

import yaml

from . import basechange as bc
from . import category as cat
from . import coverage as cov
from . import graded as gr
from . import quantale as qt
from . import ring as rg
from . import sieve as sv

BLOCKS = (
    "quantales",
    "categories",
    "sieves",
    "presheaves",
    "coverages",
    "base_changes",
    "pullbacks",
    "rings",
    "topologies",
    "graded",
)

BUILTIN_DIR = "instances"
_SCALARS = yaml.constructor.SafeConstructor()
_BOOL, _NULL = "tag:yaml.org,2002:bool", "tag:yaml.org,2002:null"
# marks under path + (KEY,) point at the key rather than its value
KEY = object()


class InstanceError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


# YAML with positions


def _convert(node: yaml.Node, marks: dict, path: tuple) -> Any:
    marks[path] = (node.start_mark.line + 1, node.start_mark.column + 1)
    if isinstance(node, yaml.MappingNode):
        out = {}
        for knode, vnode in node.value:
            if not isinstance(knode, yaml.ScalarNode):
                raise InstanceError("mapping keys must be scalars", *_pos(knode))
            key = knode.value
            if key in out:
                raise InstanceError(f"duplicate key {key!r}", *_pos(knode))
            marks[path + (key, KEY)] = _pos(knode)
            out[key] = _convert(vnode, marks, path + (key,))
        return out
    if isinstance(node, yaml.SequenceNode):
        return [_convert(v, marks, path + (i,)) for i, v in enumerate(node.value)]
    # scalars stay text so labels such as 1, 1/2 or no are never reinterpreted
    if node.tag in (_BOOL, _NULL) and node.style is None:
        return _SCALARS.construct_object(node)
    return node.value


def _pos(node: yaml.Node) -> tuple[int, int]:
    return node.start_mark.line + 1, node.start_mark.column + 1


def parse_text(text: str) -> tuple[dict, dict]:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark or e.context_mark
        line, col = (mark.line + 1, mark.column + 1) if mark else (None, None)
        raise InstanceError(f"parse error: {e.problem or e.context}", line, col) from None
    if root is None:
        return {}, {}
    if not isinstance(root, yaml.MappingNode):
        raise InstanceError("an instance file is a mapping of named blocks", *_pos(root))
    marks: dict = {}
    doc = _convert(root, marks, ())
    for k in doc:
        if k not in BLOCKS:
            raise InstanceError(f"unknown block {k!r}; expected one of {', '.join(BLOCKS)}", *marks[(k, KEY)])
        if not isinstance(doc[k], dict):
            raise InstanceError(f"block {k!r} must map names to entries", *marks[(k,)])
    return doc, marks


def canonical_text(doc: dict) -> str:
    """Canonical serialization: sorted keys, block style."""
    return yaml.safe_dump(doc, sort_keys=True, default_flow_style=False, allow_unicode=True)


# resolved instance


@dataclass
class Instance:
    source: str
    quantales: dict[str, qt.Quantale] = field(default_factory=dict)
    categories: dict[str, cat.EnrichedCategory] = field(default_factory=dict)
    sieves: dict[str, sv.Sieve] = field(default_factory=dict)
    presheaves: dict[str, sv.Presheaf] = field(default_factory=dict)
    coverages: dict[str, cov.Coverage] = field(default_factory=dict)
    coverage_expect: dict[str, str] = field(default_factory=dict)
    base_changes: dict[str, bc.BaseChange] = field(default_factory=dict)
    pullbacks: dict[str, tuple[sv.Sieve, int, int]] = field(default_factory=dict)
    rings: dict[str, rg.FiniteRing] = field(default_factory=dict)
    topologies: dict[str, dict] = field(default_factory=dict)
    graded: dict[str, dict] = field(default_factory=dict)

    def category_name(self, c: cat.EnrichedCategory) -> str:
        for k, v in self.categories.items():
            if v == c:
                return k
        return c.name or "?"


class _Resolver:
    def __init__(self, doc: dict, marks: dict, source: str):
        self.doc = doc
        self.marks = marks
        self.inst = Instance(source)

    def fail(self, path: tuple, msg: str) -> InstanceError:
        while path and path not in self.marks:
            path = path[:-1]
        return InstanceError(msg, *self.marks.get(path, (None, None)))

    def field(self, path: tuple, entry: dict, key: str, default: Any = ...) -> Any:
        if key in entry:
            return entry[key]
        if default is ...:
            raise self.fail(path, f"missing field {key!r}")
        return default

    def element(self, path: tuple, lookup: Callable[[str], int], text: Any) -> int:
        """Resolve a label, reporting failures at the field that holds it."""
        try:
            return lookup(str(text))
        except (ValueError, KeyError) as e:
            msg = e.args[0] if isinstance(e, KeyError) and e.args else e
            raise self.fail(path, f"{'.'.join(str(p) for p in path)}: {msg}") from None

    def ref(self, path: tuple, table: str, name: Any) -> Any:
        pool = getattr(self.inst, table)
        if str(name) not in pool:
            raise self.fail(path, f"unresolved reference {name!r}: no entry in {table}")
        return pool[str(name)]

    def each(self, block: str, build: Callable[[tuple, str, dict], Any], store: dict) -> None:
        for name in sorted(self.doc.get(block, {})):
            entry = self.doc[block][name]
            path = (block, name)
            if not isinstance(entry, dict):
                raise self.fail(path, f"{block}.{name} must be a mapping")
            try:
                store[name] = build(path, name, entry)
            except InstanceError:
                raise
            except (ValueError, KeyError, TypeError, IndexError) as e:
                msg = e.args[0] if isinstance(e, KeyError) and e.args else e
                raise self.fail(path, f"{block}.{name}: {msg}") from None

    def run(self) -> Instance:
        i = self.inst
        self.each("quantales", self.quantale, i.quantales)
        self.each("categories", self.category, i.categories)
        self.each("sieves", self.sieve, i.sieves)
        self.each("presheaves", self.presheaf, i.presheaves)
        self.each("coverages", self.coverage, i.coverages)
        self.each("base_changes", self.base_change, i.base_changes)
        self.each("pullbacks", self.pullback, i.pullbacks)
        self.each("rings", self.ring, i.rings)
        self.each("topologies", self.topology, i.topologies)
        self.each("graded", self.graded, i.graded)
        return i

    # builders

    def quantale(self, path, name, e):
        kind = self.field(path, e, "kind")
        if kind == "two_element":
            return qt.make_two_element()
        if kind in ("truncated_additive", "exponential", "saturating_additive", "saturating_exponential"):
            N, d = int(self.field(path, e, "N")), int(self.field(path, e, "d", 1))
            make = {
                "truncated_additive": qt.make_truncated_additive,
                "exponential": qt.make_exponential,
                "saturating_additive": qt.make_saturating_additive,
                "saturating_exponential": qt.make_saturating_exponential,
            }[kind]
            return make(N, d)
        if kind == "table":
            carrier = [str(x) for x in self.field(path, e, "carrier")]
            leq = [tuple(str(v) for v in p) for p in self.field(path, e, "leq")]
            tensor = self.field(path, e, "tensor")
            if isinstance(tensor, dict):
                tensor = {(str(a), str(b)): str(c) for a, row in tensor.items() for b, c in row.items()}
            else:
                tensor = [[str(c) for c in row] for row in tensor]
            q = qt.from_tables(carrier, leq, tensor, str(self.field(path, e, "unit")), name=name)
            bad = qt.check_axioms(q)
            if bad:
                raise self.fail(path, f"quantale {name} violates {bad[0]}")
            return q
        raise self.fail(path + ("kind",), f"unknown quantale kind {kind!r}")

    def category(self, path, name, e):
        base = self.ref(path + ("base",), "quantales", self.field(path, e, "base"))
        kind = e.get("kind", "matrix")
        if kind == "one_object":
            value = e.get("value")
            c = cat.one_object(base, None if value is None else self.element(path + ("value",), base.index, value))
        elif kind == "discrete_metric":
            off = str(self.field(path, e, "off_diagonal"))
            self.element(path + ("off_diagonal",), base.index, off)
            c = cat.discrete_metric(base, [str(o) for o in self.field(path, e, "objects")], off)
        elif kind == "poset":
            below = [tuple(str(v) for v in p) for p in e.get("below", [])]
            c = cat.poset(base, [str(o) for o in self.field(path, e, "objects")], below)
        elif kind == "matrix":
            hom = {str(z): {str(x): str(v) for x, v in row.items()} for z, row in self.field(path, e, "hom").items()}
            c = cat.make_category(base, [str(o) for o in self.field(path, e, "objects")], hom)
        else:
            raise self.fail(path + ("kind",), f"unknown category kind {kind!r}")
        c = cat.EnrichedCategory(c.base, c.objects, c.hom, name=name)
        bad = cat.check_category(c)
        if bad:
            raise self.fail(path, f"category {name} violates {bad[0]}")
        return c

    def _values(self, path, c, values):
        if not isinstance(values, dict):
            raise self.fail(path, "values must map objects to elements")
        return {str(k): str(v) for k, v in values.items()}

    def sieve(self, path, name, e):
        c = self.ref(path + ("category",), "categories", self.field(path, e, "category"))
        target = str(self.field(path, e, "target"))
        if e.get("maximal"):
            return sv.maximal_sieve(c, target)
        if e.get("zero"):
            return sv.zero_sieve(c, target)
        s = sv.make_sieve(c, target, self._values(path + ("values",), c, self.field(path, e, "values")))
        bad = sv.is_sieve(s)
        if bad:
            raise self.fail(path, f"sieve {name} is not a sieve: {bad[0]}")
        return s

    def presheaf(self, path, name, e):
        c = self.ref(path + ("category",), "categories", self.field(path, e, "category"))
        if "representable" in e:
            y = self.element(path + ("representable",), c.index, e["representable"])
            return sv.Presheaf(c, tuple(c.hom[z][y] for z in range(c.size)))
        p = sv.make_presheaf(c, self._values(path + ("values",), c, self.field(path, e, "values")))
        bad = sv.is_presheaf(p)
        if bad:
            raise self.fail(path, f"presheaf {name} violates {bad[0]}")
        return p

    def coverage(self, path, name, e):
        c = self.ref(path + ("category",), "categories", self.field(path, e, "category"))
        expect = str(e.get("expect", "coverage"))
        if expect not in ("coverage", "topology", "none"):
            raise self.fail(path + ("expect",), f"expect must be coverage, topology or none, got {expect!r}")
        self.inst.coverage_expect[name] = expect
        kind = e.get("kind", "families")
        if kind == "discrete":
            return cov.discrete(c)
        if kind == "indiscrete":
            return cov.indiscrete(c)
        if kind != "families":
            raise self.fail(path + ("kind",), f"unknown coverage kind {kind!r}")
        fams = self.field(path, e, "families")
        out = []
        for x in c.objects:
            items = fams.get(x, [])
            fam = []
            for k, item in enumerate(items):
                ipath = path + ("families", x, k)
                if isinstance(item, str) and item == "maximal":
                    fam.append(sv.maximal_sieve(c, x))
                elif isinstance(item, str):
                    s = self.ref(ipath, "sieves", item)
                    if s.category != c or c.objects[s.target] != x:
                        raise self.fail(ipath, f"sieve {item} does not live on {x}")
                    fam.append(s)
                else:
                    s = sv.make_sieve(c, x, self._values(ipath, c, item))
                    if sv.is_sieve(s):
                        raise self.fail(ipath, f"value map is not a sieve: {sv.is_sieve(s)[0]}")
                    fam.append(s)
            out.append(fam)
        return cov.make_coverage(c, out)

    def base_change(self, path, name, e):
        kind = e.get("kind", "map")
        shipped = {
            "two_into_exponential": bc.two_into_exponential,
            "neg_log": bc.neg_log,
            "exp_neg": bc.exp_neg,
            "collapse_to_two": bc.collapse_to_two,
            "two_into_saturating_exponential": bc.two_into_saturating_exponential,
            "saturating_neg_log": bc.saturating_neg_log,
        }
        if kind in shipped:
            g = shipped[kind](int(e.get("N", 3)), int(e.get("d", 1)))
            return replace(g, name=name)
        if kind == "identity":
            q = self.ref(path + ("quantale",), "quantales", self.field(path, e, "quantale"))
            return bc.analyze(q, q, tuple(q.elements), name=name)
        if kind != "map":
            raise self.fail(path + ("kind",), f"unknown base change kind {kind!r}")
        src = self.ref(path + ("source",), "quantales", self.field(path, e, "source"))
        tgt = self.ref(path + ("target",), "quantales", self.field(path, e, "target"))
        mapping = {str(k): str(v) for k, v in self.field(path, e, "map").items()}
        try:
            return bc.analyze_labels(src, tgt, mapping, name=name)
        except bc.NotMonotoneError as err:
            raise self.fail(path + ("map",), f"base change {name} is not monotone: {err}") from None

    def pullback(self, path, name, e):
        s = self.ref(path + ("sieve",), "sieves", self.field(path, e, "sieve"))
        c = s.category
        g = self.element(path + ("element",), c.base.index, self.field(path, e, "element"))
        y = self.element(path + ("at",), c.index, self.field(path, e, "at"))
        return (s, g, y)

    def ring(self, path, name, e):
        kind = e.get("kind", "zmod")
        if kind == "zmod":
            r = rg.zmod(int(self.field(path, e, "n")))
        elif kind == "upper_triangular_f2":
            r = rg.matrix_ring_f2()
        elif kind == "table":
            r = rg.ring_from_tables(
                [str(x) for x in self.field(path, e, "carrier")],
                [[str(v) for v in row] for row in self.field(path, e, "add")],
                [[str(v) for v in row] for row in self.field(path, e, "mul")],
                str(self.field(path, e, "zero")),
                str(self.field(path, e, "one")),
            )
        else:
            raise self.fail(path + ("kind",), f"unknown ring kind {kind!r}")
        return rg.FiniteRing(r.labels, r.add, r.mul, r.zero, r.one, name=name)

    def _ideal(self, path, r, gens):
        if isinstance(gens, (str, int)):
            gens = [gens]
        return rg.generated_ideal(r, [self.element(path, r.index, g) for g in gens])

    def topology(self, path, name, e):
        r = self.ref(path + ("ring",), "rings", self.field(path, e, "ring"))
        out = {"ring": r, "mult_set": None, "seeds": None, "family": None, "close": bool(e.get("close", False))}
        if "mult_set" in e:
            xs = [self.element(path + ("mult_set", k), r.index, x) for k, x in enumerate(e["mult_set"])]
            out["mult_set"] = rg.check_mult_set(r, xs)
        if "ideals" in e:
            fam = [self._ideal(path + ("ideals", k), r, g) for k, g in enumerate(e["ideals"])]
            out["seeds"] = fam
            out["family"] = rg.make_topology(r, fam)
        if out["mult_set"] is None and out["family"] is None:
            raise self.fail(path, "topology needs ideals or mult_set")
        return out

    def graded(self, path, name, e):
        out = {"spec": None, "family": None, "sample": [], "dmax": e.get("dmax")}
        if "powers_of" in e:
            out["spec"] = gr.GradedTopologySpec(str(e["powers_of"]))
        elif "ideals" in e:
            out["family"] = [gr.parse_ideal(str(t)) for t in e["ideals"]]
        else:
            raise self.fail(path, "graded entry needs powers_of or ideals")
        out["sample"] = [gr.parse_ideal(str(t)) for t in e.get("sample", [])]
        return out


def load_text(text: str, source: str = "<string>") -> Instance:
    doc, marks = parse_text(text)
    return _Resolver(doc, marks, source).run()


def builtin_names() -> list[str]:
    root = resources.files("enrichsheaf").joinpath(BUILTIN_DIR)
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".yaml"))


def read_source(ref: str) -> tuple[str, str]:
    """File path, or the name of a shipped instance."""
    p = Path(ref)
    if p.is_file():
        return p.read_text(encoding="utf-8"), str(p)
    if ref in builtin_names():
        text = resources.files("enrichsheaf").joinpath(BUILTIN_DIR, f"{ref}.yaml").read_text(encoding="utf-8")
        return text, ref
    raise InstanceError(f"no instance file or builtin named {ref!r}")


def load(ref: str) -> Instance:
    text, source = read_source(ref)
    return load_text(text, source)
