import pytest

from enrichsheaf.category import EnrichedCategory, discrete_metric, make_category, one_object, poset
from enrichsheaf.quantale import make_exponential, make_truncated_additive, make_two_element

Q2 = make_two_element()
T3 = make_truncated_additive(3, 1)
E3 = make_exponential(3, 1)


def one() -> EnrichedCategory:
    return one_object(Q2)


def chain3() -> EnrichedCategory:
    return poset(Q2, ["b", "m", "t"], [("b", "m"), ("m", "t")], name="chain3")


def p2() -> EnrichedCategory:
    return discrete_metric(T3, ["x", "y"], "1", name="P2")


def p2e() -> EnrichedCategory:
    return discrete_metric(E3, ["x", "y"], "exp(-1)", name="P2e")


def l3() -> EnrichedCategory:
    hom = {
        "a": {"a": "0", "b": "1", "c": "2"},
        "b": {"a": "1", "b": "0", "c": "1"},
        "c": {"a": "2", "b": "1", "c": "0"},
    }
    return make_category(T3, ["a", "b", "c"], hom, name="L3")


SMALL = {"one": one, "chain3": chain3, "P2": p2, "L3": l3}


@pytest.fixture(params=sorted(SMALL))
def small_category(request):
    return SMALL[request.param]()


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
