"""Powers-of-x vs powers-of-y families under degree-zero base change, across degree bounds."""

from __future__ import annotations

import argparse

from enrichsheaf.graded import reproduce_counterexample


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-dmax", type=int, default=5)
    args = ap.parse_args()

    print(f"{'dmax':>4} {'ideals':>7} {'|H_S|':>6} {'|H_T|':>6} {'witness':<9} {'images':<12} collision")
    for dmax in range(1, args.max_dmax + 1):
        r = reproduce_counterexample(dmax)
        imgs = "{" + ", ".join(r.image_s) + "}"
        col = " vs ".join(i.label() for i in r.collision) if r.collision else "-"
        print(f"{dmax:>4} {r.sample_size:>7} {r.members_s:>6} {r.members_t:>6} {r.witness.label():<9} {imgs:<12} {col}")


if __name__ == "__main__":
    main()
