import pytest

from enrichsheaf.instance import InstanceError, builtin_names, canonical_text, load, load_text, parse_text

T3_HEAD = "quantales:\n  T: {kind: truncated_additive, N: 3, d: 1}\n"


@pytest.mark.parametrize(
    "text,line,column,fragment",
    [
        ("quantales:\n  Q2: {kind: two_element\n", 3, 1, "parse error"),
        ("quantals:\n  Q2: {kind: two_element}\n", 1, 1, "unknown block 'quantals'"),
        ("quantales:\n  Q2: {kind: two_element}\n  Q2: {kind: two_element}\n", 3, 3, "duplicate key 'Q2'"),
        ("categories:\n  one: {base: Q9, kind: one_object}\n", 2, 15, "unresolved reference 'Q9'"),
        ("quantales:\n  T: {kind: weird}\n", 2, 13, "unknown quantale kind"),
        ("- 1\n- 2\n", 1, 1, "mapping of named blocks"),
        (
            T3_HEAD + "categories:\n  P: {base: T, kind: discrete_metric, objects: [x, y], off_diagonal: \"7\"}\n",
            4,
            70,
            "off_diagonal",
        ),
        (
            "rings:\n  z: {kind: zmod, n: 6}\ntopologies:\n  S: {ring: z, mult_set: [1, 9]}\n",
            4,
            30,
            "'9' is not an element",
        ),
        (
            "quantales:\n  Q2: {kind: two_element}\ncategories:\n"
            "  c: {base: Q2, kind: poset, objects: [b, t], below: [[b, t]]}\n"
            "sieves:\n  s: {category: c, target: t, values: {b: \"0\", t: \"1\"}}\n",
            6,
            6,
            "is not a sieve",
        ),
    ],
)
def test_errors_carry_position(text, line, column, fragment):
    with pytest.raises(InstanceError) as info:
        load_text(text)
    e = info.value
    assert (e.line, e.column) == (line, column)
    assert fragment in str(e)
    assert str(e).startswith(f"line {line}, column {column}: ")


def test_scalars_stay_text():
    doc, _ = parse_text("sieves:\n  a: {off: 1, no: 1/2, yes: inf}\n")
    assert doc == {"sieves": {"a": {"off": "1", "no": "1/2", "yes": "inf"}}}
    doc, _ = parse_text("sieves:\n  a: {flag: true, quoted: 'true', empty: null}\n")
    assert doc["sieves"]["a"] == {"flag": True, "quoted": "true", "empty": None}


def test_canonical_text_is_stable():
    doc, _ = parse_text("rings:\n  b: {y: 1, x: 2}\n  a: {n: [3]}\n")
    assert canonical_text(doc) == canonical_text(parse_text(canonical_text(doc))[0])


def test_builtins_load():
    assert builtin_names() == ["builtin-suite", "chain3-into-exp", "line3-metric", "zmod6-S13"]
    suite = load("builtin-suite")
    assert sorted(suite.quantales) == ["E3", "Q2", "T2h", "T3"]
    assert sorted(suite.categories) == ["P2", "P2e", "chain3", "one"]
    assert suite.coverage_expect["chain_min"] == "topology"
    assert sorted(load("zmod6-S13").rings) == ["zmod6"]


def test_load_from_path(tmp_path):
    p = tmp_path / "tiny.yaml"
    p.write_text("quantales:\n  Q2: {kind: two_element}\ncategories:\n  one: {base: Q2, kind: one_object}\n")
    inst = load(str(p))
    assert inst.source == str(p)
    assert inst.categories["one"].objects == ("*",)


def test_missing_file_is_an_instance_error():
    with pytest.raises(InstanceError):
        load("/nonexistent/instance.yaml")


def test_table_quantale_and_matrix_category():
    text = (
        "quantales:\n"
        "  B:\n"
        "    kind: table\n"
        "    carrier: [lo, hi]\n"
        "    leq: [[lo, lo], [lo, hi], [hi, hi]]\n"
        "    tensor: [[lo, lo], [lo, hi]]\n"
        "    unit: hi\n"
        "categories:\n"
        "  c:\n"
        "    base: B\n"
        "    objects: [p, q]\n"
        "    hom: {p: {p: hi, q: lo}, q: {p: hi, q: hi}}\n"
    )
    inst = load_text(text)
    c = inst.categories["c"]
    assert c.base.labels == ("lo", "hi")
    assert c.hom == ((1, 0), (1, 1))
