"""Dense linear algebra helpers and alternating forms on a fixed real vector space.

Forms are stored on canonical (strictly increasing) index tuples only, so
antisymmetry holds structurally: evaluating at any permutation of a canonical
tuple returns the stored value times the permutation sign, exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DependentInput, DimensionMismatch

MAX_DEGREE = 4


def inner(x, y, G=None) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if G is None:
        return float(x @ y)
    return float(x @ G @ y)


def norm(x, G=None) -> float:
    return float(np.sqrt(max(inner(x, x, G), 0.0)))


def gram_schmidt(
    vectors: Iterable[Sequence[float]],
    inner_matrix=None,
    tol: float = 1e-12,
    skip_dependent: bool = False,
) -> list[np.ndarray]:
    """Orthonormalize ``vectors`` in input order with respect to ``inner_matrix``.

    Each vector is orthogonalized twice against the already accepted ones
    (classical Gram-Schmidt with re-orthogonalization). A vector whose
    residual norm is at most ``tol`` is either skipped or rejected with
    :class:`DependentInput`, depending on ``skip_dependent``.
    """
    basis: list[np.ndarray] = []
    G = None if inner_matrix is None else np.asarray(inner_matrix, dtype=float)
    for v in vectors:
        w = np.array(v, dtype=float)
        for _ in range(2):
            for q in basis:
                w = w - inner(q, w, G) * q
        nw = norm(w, G)
        if nw <= tol:
            if skip_dependent:
                continue
            raise DependentInput(f"vector {len(basis)} is dependent (residual {nw:.3e})")
        basis.append(w / nw)
    return basis


def permutation_sign(perm: Sequence[int]) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def _sort_with_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    order = sorted(range(len(idx)), key=lambda p: idx[p])
    key = tuple(idx[p] for p in order)
    if len(set(key)) < len(key):
        return 0, key
    return permutation_sign(order), key


@dataclass(frozen=True)
class KForm:
    """Alternating k-form on R^dim, stored on canonical increasing index tuples."""

    dim: int
    degree: int
    components: Mapping[tuple[int, ...], float] = field(default_factory=dict)

    def __post_init__(self):
        if not 1 <= self.degree <= MAX_DEGREE:
            raise ValueError(f"degree {self.degree} outside 1..{MAX_DEGREE}")
        clean = {}
        for key, val in self.components.items():
            key = tuple(int(i) for i in key)
            if len(key) != self.degree or list(key) != sorted(set(key)):
                raise ValueError(f"non-canonical index tuple {key}")
            if key[0] < 0 or key[-1] >= self.dim:
                raise DimensionMismatch(f"index tuple {key} out of range for dim {self.dim}")
            if val != 0.0:
                clean[key] = float(val)
        object.__setattr__(self, "components", clean)

    def __call__(self, *idx: int) -> float:
        if len(idx) != self.degree:
            raise ValueError(f"expected {self.degree} indices, got {len(idx)}")
        sign, key = _sort_with_sign(idx)
        if sign == 0:
            return 0.0
        return sign * self.components.get(key, 0.0)

    @classmethod
    def zero(cls, dim: int, degree: int) -> "KForm":
        return cls(dim, degree, {})

    @classmethod
    def from_dense(cls, arr) -> "KForm":
        """Read the canonical entries of a rank-k array; other entries are ignored."""
        arr = np.asarray(arr, dtype=float)
        k = arr.ndim
        n = arr.shape[0]
        comps = {key: float(arr[key]) for key in itertools.combinations(range(n), k)}
        return cls(n, k, comps)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim,) * self.degree)
        perms = [(p, permutation_sign(p)) for p in itertools.permutations(range(self.degree))]
        for key, val in self.components.items():
            for p, s in perms:
                out[tuple(key[i] for i in p)] = s * val
        return out

    def evaluate(self, *vectors) -> float:
        """Multilinear evaluation on arbitrary coordinate vectors."""
        if len(vectors) != self.degree:
            raise ValueError(f"expected {self.degree} vectors, got {len(vectors)}")
        out = self.to_dense()
        for v in vectors:
            out = np.tensordot(np.asarray(v, dtype=float), out, axes=(0, 0))
        return float(out)

    def pullback(self, M) -> "KForm":
        """The form (x_1, ..., x_k) -> self(M x_1, ..., M x_k)."""
        M = np.asarray(M, dtype=float)
        if M.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"matrix shape {M.shape} vs dim {self.dim}")
        out = self.to_dense()
        # contract every slot with M; each pass rotates the slot order by one
        for _ in range(self.degree):
            out = np.tensordot(out, M, axes=(0, 0))
        return KForm.from_dense(out)

    def max_abs(self) -> float:
        return max((abs(v) for v in self.components.values()), default=0.0)

    def __add__(self, other: "KForm") -> "KForm":
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise DimensionMismatch("form shapes differ")
        comps = dict(self.components)
        for key, val in other.components.items():
            comps[key] = comps.get(key, 0.0) + val
        return KForm(self.dim, self.degree, comps)

    def __mul__(self, s: float) -> "KForm":
        return KForm(self.dim, self.degree, {k: s * v for k, v in self.components.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "KForm":
        return self * -1.0


def exterior_derivative(form: KForm, algebra) -> KForm:
    """Chevalley-Eilenberg differential of a left-invariant form.

    (d a)(X_0, ..., X_k) = sum_{i<j} (-1)^(i+j) a([X_i, X_j], X_0, ..^i..^j.., X_k)

    ``algebra`` only needs ``dim`` and the structure constants ``C`` with
    ``[b_i, b_j] = sum_m C[i, j, m] b_m``.
    """
    n = algebra.dim
    if form.dim != n:
        raise DimensionMismatch(f"form dim {form.dim} vs algebra dim {n}")
    k = form.degree
    if k + 1 > MAX_DEGREE:
        raise ValueError(f"cannot differentiate a {k}-form (max degree {MAX_DEGREE})")
    A = form.to_dense()
    # T[x, y, rest...] = a([b_x, b_y], rest...)
    T = np.tensordot(algebra.C, A, axes=(2, 0))
    out = np.zeros((n,) * (k + 1))
    for i, j in itertools.combinations(range(k + 1), 2):
        rest = [p for p in range(k + 1) if p not in (i, j)]
        axes = [0] * (k + 1)
        axes[i], axes[j] = 0, 1
        for r, p in enumerate(rest):
            axes[p] = 2 + r
        out += (-1) ** (i + j) * np.transpose(T, axes)
    return KForm.from_dense(out)
