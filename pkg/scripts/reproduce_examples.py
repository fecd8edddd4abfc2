"""Classify every catalog entry and print computed values next to the stored ones.

    python3 scripts/reproduce_examples.py [--bismut]
"""
import argparse

import numpy as np

from lie2herm import catalog, fileformat
from lie2herm.cli import _rows, classification_record
from lie2herm.geometry import bismut_connection
from lie2herm.hermitian import c_form


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bismut", action="store_true", help="also print Bismut connection tables")
    args = ap.parse_args()

    print(f"{'entry':20s} {'type':8s} {'verdict':8s} {'stored':8s} {'dc_top':>8s} {'stored':>8s} {'dc_adapted':>10s}")
    for e in catalog.entries():
        rec = classification_record(fileformat.from_catalog(e))
        exp = e.expected
        fmt = lambda x: "-" if x is None else f"{x:g}"  # noqa: E731
        print(
            f"{e.name:20s} {rec['type'] or '-':8s} {rec['verdict']:8s} "
            f"{exp.verdict.value if exp.verdict else '-':8s} {fmt(rec['dc_top']):>8s} "
            f"{fmt(exp.dc_top):>8s} {fmt(rec['dc_adapted']):>10s}"
        )
        if args.bismut and rec["integrable"] and rec["compatible"]:
            B = bismut_connection(e.algebra, e.J, c_form(e.algebra, e.J))
            for row in _rows(B.coeffs, 1e-9):
                print("    " + row)
            if exp.bismut is not None:
                err = np.abs(B.coeffs - catalog.table_to_array(exp.bismut, e.dim)).max()
                print(f"    max deviation from stored table: {err:.3g}")


if __name__ == "__main__":
    main()
