"""Grid search for Type II Hermitian frames on the four-dimensional catalog algebras.

    python3 scripts/type2_search.py [--grid 360]
"""
import argparse

from lie2herm import catalog
from lie2herm.hermitian import classify, search_type2_hermitian

ALGEBRAS = {"h3 + R": "ex9-h3R-typeI", "A_{4,12}": "ex8-A412-typeI", "aff(R) + aff(R)": "ex12-rr-typeII"}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=360)
    args = ap.parse_args()
    for label, name in ALGEBRAS.items():
        L = catalog.get(name).algebra
        found = search_type2_hermitian(L, args.grid)
        verdicts = {}
        for f in found:
            v = classify(L, f.J).verdict.value
            verdicts[v] = verdicts.get(v, 0) + 1
        print(f"{label:16s} {len(found):5d} frame(s)  {verdicts}")


if __name__ == "__main__":
    main()
