"""Named example algebras and structures with their expected metadata.

Expected values are stored as documented for each example, not as computed
here; regression tests compare the two. Bismut tables list the nonzero
coefficients of nabla_{b_i} b_j (1-based), every other entry being zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import UnknownName
from .hermitian import AlmostComplexStructure, JType, Verdict
from .lie2 import MetricLieAlgebra

S = np.sqrt(2.0) / 2.0


@dataclass(frozen=True)
class Expected:
    type: JType
    verdict: Verdict | None = None
    dc_top: float | None = None
    bismut: dict | None = None


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    algebra: MetricLieAlgebra
    J: AlmostComplexStructure | None
    expected: Expected
    hints: tuple[np.ndarray, np.ndarray] | None = None
    description: str = ""

    @property
    def dim(self) -> int:
        return self.algebra.dim


def _basis(n, i):
    v = np.zeros(n)
    v[i - 1] = 1.0
    return v


def _J(n, images):
    return AlmostComplexStructure.from_images(n, images)


def _pairs(n, pairs):
    """Complex structure with J b_i = b_j (and J b_j = -b_i) for each (i, j)."""
    images = {}
    for i, j in pairs:
        images[i] = {j: 1.0}
        images[j] = {i: -1.0}
    return _J(n, images)


A412 = {(1, 3): {1: 1.0}, (2, 3): {2: 1.0}, (1, 4): {2: -1.0}, (2, 4): {1: 1.0}}

BISMUT_A412 = {
    (1, 1): {3: -1.0}, (1, 2): {4: -1.0}, (1, 3): {1: 1.0}, (1, 4): {2: 1.0},
    (2, 1): {4: 1.0}, (2, 2): {3: -1.0}, (2, 3): {2: 1.0}, (2, 4): {1: -1.0},
}


def _build() -> dict[str, CatalogEntry]:
    entries = [
        CatalogEntry(
            "sec2-mixed",
            MetricLieAlgebra.from_brackets(4, {(3, 1): {1: 1.0}, (3, 4): {2: 1.0}}),
            _J(4, {1: {3: S, 2: -S}, 2: {1: S, 4: S}, 3: {4: S, 1: -S}, 4: {2: -S, 3: -S}}),
            Expected(JType.MIXED),
            (_basis(4, 1), _basis(4, 2)),
            "mixed almost Hermitian structure, lambda and mu both nonzero",
        ),
        CatalogEntry(
            "ex8-A412-typeI",
            MetricLieAlgebra.from_brackets(4, A412),
            _pairs(4, [(1, 2), (3, 4)]),
            Expected(JType.TYPE_I, Verdict.WEAK_KT, -4.0, BISMUT_A412),
            (_basis(4, 1), _basis(4, 2)),
            "A_{4,12}, abelian weak KT of Type I",
        ),
        CatalogEntry(
            "ex9-h3R-typeI",
            MetricLieAlgebra.from_brackets(4, {(3, 4): {1: 1.0}}),
            _pairs(4, [(1, 2), (3, 4)]),
            Expected(JType.TYPE_I, Verdict.SKT, 0.0, {(1, 3): {4: -1.0}, (1, 4): {3: 1.0}}),
            (_basis(4, 1), _basis(4, 2)),
            "h3 + R with padded derived algebra, abelian SKT of Type I",
        ),
        CatalogEntry(
            "ex10-A412-typeII",
            MetricLieAlgebra.from_brackets(4, A412),
            _pairs(4, [(1, 4), (2, 3)]),
            Expected(JType.TYPE_II, Verdict.WEAK_KT, 4.0, BISMUT_A412),
            (_basis(4, 1), _basis(4, 2)),
            "A_{4,12}, abelian weak KT of Type II",
        ),
        CatalogEntry(
            "ex12-rr-typeII",
            MetricLieAlgebra.from_brackets(4, {(3, 1): {1: 1.0}, (4, 2): {2: 1.0}}),
            _pairs(4, [(1, 3), (2, 4)]),
            Expected(JType.TYPE_II, Verdict.KAHLER, 0.0, {
                (1, 1): {3: 1.0}, (1, 3): {1: -1.0}, (2, 2): {4: 1.0}, (2, 4): {2: -1.0},
            }),
            (_basis(4, 1), _basis(4, 2)),
            "aff(R) + aff(R), abelian Kaehler of Type II",
        ),
        CatalogEntry(
            "ex13-A64-typeI",
            MetricLieAlgebra.from_brackets(6, {(5, 6): {1: 1.0}, (5, 3): {2: 1.0}, (6, 4): {2: 1.0}}),
            _pairs(6, [(1, 2), (3, 4), (5, 6)]),
            Expected(JType.TYPE_I, Verdict.SKT, None, {
                (1, 5): {6: -1.0}, (1, 6): {5: 1.0}, (2, 3): {5: 1.0},
                (2, 4): {6: 1.0}, (2, 5): {3: -1.0}, (2, 6): {4: -1.0},
            }),
            (_basis(6, 1), _basis(6, 2)),
            "A_{6,4} nilpotent, abelian SKT of Type I",
        ),
    ]
    return {e.name: e for e in entries}


_ENTRIES = _build()


def list() -> list[str]:  # noqa: A001 - mirrors the public name
    return [*_ENTRIES]


def get(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise UnknownName(f"unknown catalog entry {name!r}; known: {', '.join(_ENTRIES)}") from None


def entries() -> list[CatalogEntry]:
    return [*_ENTRIES.values()]


def table_to_array(table: dict, n: int) -> np.ndarray:
    """Dense coefficient array from a sparse 1-based table."""
    out = np.zeros((n, n, n))
    for (i, j), row in table.items():
        for k, v in row.items():
            out[i - 1, j - 1, k - 1] = v
    return out
