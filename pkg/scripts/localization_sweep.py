"""Localization at every multiplicative set of Z/n against the ring of fractions."""

from __future__ import annotations

import argparse

from enrichsheaf import ring as rg


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("moduli", type=int, nargs="*", default=[2, 3, 4, 5, 6, 8, 9, 10, 12])
    args = ap.parse_args()

    print(f"{'ring':<6} {'S':<22} {'H_S':<28} {'t(A)':<6} {'A_R':<8} {'A[S^-1]':<8} iso")
    bad = 0
    for n in args.moduli:
        r = rg.zmod(n)
        for s in rg.enumerate_mult_sets(r):
            t = rg.from_mult_set(r, s)
            loc = rg.localize(r, t)
            frac = rg.ring_of_fractions_oracle(r, s)
            iso = rg.find_isomorphism(loc.ring_structure, frac) is not None
            bad += not iso
            label = "{" + ", ".join(str(x) for x in sorted(s)) + "}"
            print(
                f"Z/{n:<4} {label:<22} {t.label():<28} {rg.torsion(r, t).label():<6} "
                f"{rg.identify(loc.ring_structure):<8} {rg.identify(frac):<8} {'yes' if iso else 'NO'}"
            )
    print(f"non-isomorphic cases: {bad}")


if __name__ == "__main__":
    main()
