"""Count agreement between numerical integrability/Kaehler tests and the closed-form criteria
over seeded random instances.

    python3 scripts/equivalence_sweep.py [--count 500]
"""
import argparse
from collections import Counter

from lie2herm.hermitian import (
    Verdict,
    classify,
    is_abelian,
    nijenhuis_residual,
    theorem1_check,
    theorem4_check,
    theorem5_kahler_check,
    theorem7_kahler_check,
)
from lie2herm.instances import type1_any, type1_hermitian, type2_any, type2_hermitian

TOL = 1e-9


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    args = ap.parse_args()
    stats = Counter()
    for seed in range(args.count):
        n = (4, 6, 8)[seed % 3]
        for gen in (type1_hermitian, type1_any):
            inst = gen(seed, n)
            integrable = nijenhuis_residual(inst.L, inst.J) <= TOL
            stats["typeI"] += 1
            stats["typeI integrable"] += integrable
            stats["typeI mismatch"] += integrable != theorem1_check(inst.dec, inst.J).ok
            if integrable:
                kahler = classify(inst.L, inst.J).verdict is Verdict.KAHLER
                stats["typeI kahler mismatch"] += kahler != theorem5_kahler_check(inst.dec).ok
        for gen in (type2_hermitian, type2_any):
            inst = gen(seed, n)
            integrable = nijenhuis_residual(inst.L, inst.J) <= TOL
            stats["typeII"] += 1
            stats["typeII integrable"] += integrable
            stats["typeII mismatch"] += len({integrable, is_abelian(inst.L, inst.J)[0], theorem4_check(inst.dec, inst.J).ok}) != 1
            if integrable:
                kahler = classify(inst.L, inst.J).verdict is Verdict.KAHLER
                stats["typeII kahler mismatch"] += kahler != theorem7_kahler_check(inst.dec)
    for k in sorted(stats):
        print(f"{k:24s} {stats[k]}")


if __name__ == "__main__":
    main()
