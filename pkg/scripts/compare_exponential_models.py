"""Truncated vs saturating exponential base: injectivity, image coverages, commutation."""

from __future__ import annotations

import argparse

from enrichsheaf.basechange import two_into_exponential, two_into_saturating_exponential
from enrichsheaf.category import one_object, poset
from enrichsheaf.harness import commute_suite, injectivity_suite
from enrichsheaf.quantale import make_two_element


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, default=3)
    ap.add_argument("--d", type=int, default=1)
    args = ap.parse_args()

    q2 = make_two_element()
    cats = {
        "one": one_object(q2),
        "chain3": poset(q2, ["b", "m", "t"], [("b", "m"), ("m", "t")]),
        "chain4": poset(q2, ["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")]),
    }
    print(f"{'map':<10} {'category':<8} {'strong':<7} {'cov':>5} {'distinct':>9} {'img cov':>8} {'commute':>10}")
    for make in (two_into_exponential, two_into_saturating_exponential):
        g = make(args.N, args.d)
        for name, c in cats.items():
            s = injectivity_suite(g, c)
            m = commute_suite(g, c)
            print(
                f"{g.name:<10} {name:<8} {str(g.left_strong_monoidal):<7} {s.coverages:>5} "
                f"{s.coverage_images:>9} {s.image_coverages:>8} {m.equal:>5}/{m.pairs:<4}"
            )


if __name__ == "__main__":
    main()
