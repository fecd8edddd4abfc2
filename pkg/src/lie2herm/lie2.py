"""Metric Lie algebras given by structure constants, and the canonical
decomposition of algebras whose derived algebra is two-dimensional.

For such an algebra with orthonormal basis {e1, e2} of the derived algebra and
Gamma its orthogonal complement, every bracket is encoded by four vectors
a1, a2, b1, b2 in Gamma and two skew-adjoint maps f1, f2 of Gamma:

    [u, e1] = <a1, u> e1 + <a2, u> e2
    [u, e2] = <b1, u> e1 + <b2, u> e2
    [u, v]  = <f1 u, v> e1 + <f2 u, v> e2        (u, v in Gamma)
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from .algebra import gram_schmidt, inner, norm
from .errors import (
    BadHint,
    DimensionMismatch,
    GenerationFailed,
    NotLie2,
    PaddingImpossible,
)
from .tolerance import resolve

MAX_RETRIES = 1000


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class MetricLieAlgebra:
    """Structure constants ``C[i, j, k]`` with ``[b_i, b_j] = sum_k C[i, j, k] b_k``
    and an inner product matrix ``G`` (identity when omitted)."""

    C: np.ndarray
    G: np.ndarray | None = None

    def __post_init__(self):
        C = _frozen(self.C)
        if C.ndim != 3 or len(set(C.shape)) != 1:
            raise DimensionMismatch(f"structure constants must be n x n x n, got {C.shape}")
        n = C.shape[0]
        G = np.eye(n) if self.G is None else np.array(self.G, dtype=float)
        if G.shape != (n, n):
            raise DimensionMismatch(f"metric shape {G.shape} does not match dim {n}")
        if not np.allclose(G, G.T, atol=1e-12) or np.linalg.eigvalsh((G + G.T) / 2).min() <= 0:
            raise ValueError("metric must be symmetric positive definite")
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "G", _frozen(G))

    @property
    def dim(self) -> int:
        return self.C.shape[0]

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping, G=None, one_based: bool = True):
        """Build from ``{(i, j): {k: value}}``; the (j, i) entries follow by antisymmetry."""
        off = 1 if one_based else 0
        C = np.zeros((dim, dim, dim))
        for (i, j), coeffs in brackets.items():
            i, j = i - off, j - off
            for k, val in coeffs.items():
                C[i, j, k - off] += val
                C[j, i, k - off] -= val
        return cls(C, G)

    def bracket(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x, float), np.asarray(y, float), self.C)

    def ip(self, x, y) -> float:
        return inner(x, y, self.G)

    def is_identity_metric(self) -> bool:
        return bool(np.array_equal(self.G, np.eye(self.dim)))

    def change_basis(self, P) -> "MetricLieAlgebra":
        """Re-express in the basis whose vectors are the columns of ``P``."""
        P = np.asarray(P, dtype=float)
        Pinv = np.linalg.inv(P)
        C = np.einsum("ai,bj,abm,qm->ijq", P, P, self.C, Pinv)
        # restore exact antisymmetry lost to rounding
        C = 0.5 * (C - C.transpose(1, 0, 2))
        G = P.T @ self.G @ P
        return MetricLieAlgebra(C, 0.5 * (G + G.T))

    def nonzero_brackets(self, tol: float = 0.0) -> dict:
        """``{(i, j): {k: value}}`` over i < j, 1-based, entries with |value| > tol."""
        out = {}
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                row = {k + 1: float(self.C[i, j, k]) for k in range(n) if abs(self.C[i, j, k]) > tol}
                if row:
                    out[(i + 1, j + 1)] = row
        return out


@dataclass(frozen=True)
class ValidationReport:
    antisymmetry_residual: float
    jacobi_residual: float
    ok: bool


def jacobi_tensor(C) -> np.ndarray:
    """Cyclic sum [[b_i, b_j], b_k] + [[b_j, b_k], b_i] + [[b_k, b_i], b_j] in coordinates."""
    J4 = np.einsum("ijm,mkl->ijkl", C, C)
    return J4 + np.transpose(J4, (1, 2, 0, 3)) + np.transpose(J4, (2, 0, 1, 3))


def validate(L: MetricLieAlgebra, tol: float | None = None) -> ValidationReport:
    tol = resolve(tol)
    anti = float(np.abs(L.C + np.transpose(L.C, (1, 0, 2))).max(initial=0.0))
    jac = float(np.abs(jacobi_tensor(L.C)).max(initial=0.0))
    return ValidationReport(anti, jac, anti <= tol and jac <= tol)


def _canonical_sign(v: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    for x in v:
        if abs(x) > tol:
            return v if x > 0 else -v
    return v


def derived_algebra(L: MetricLieAlgebra, tol: float | None = None) -> list[np.ndarray]:
    """Orthonormal basis of span{[b_i, b_j]}.

    Bracket images are orthonormalized in lexicographic (i, j) order and each
    resulting vector is signed so that its first non-negligible coordinate is
    positive.
    """
    tol = resolve(tol)
    n = L.dim
    images = [L.C[i, j] for i in range(n) for j in range(i + 1, n)]
    basis = gram_schmidt(images, L.G, tol=tol, skip_dependent=True)
    return [_canonical_sign(v, tol) for v in basis]


@dataclass(frozen=True, eq=False)
class Lie2Decomposition:
    """Canonical data of a metric Lie algebra with two-dimensional derived algebra.

    Vectors are ambient coordinates. ``gamma`` holds an orthonormal basis of
    Gamma as columns; ``f1`` and ``f2`` are matrices in that basis with
    ``f[:, s]`` the image of the s-th basis vector.
    """

    e1: np.ndarray
    e2: np.ndarray
    gamma: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    G: np.ndarray
    padded: bool = False

    def __post_init__(self):
        for name in ("e1", "e2", "a1", "a2", "b1", "b2", "f1", "f2", "G"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        gamma = np.array(self.gamma, dtype=float).reshape(len(self.e1), -1)
        object.__setattr__(self, "gamma", _frozen(gamma))
        n = len(self.e1)
        m = gamma.shape[1]
        if m != n - 2 or self.f1.shape != (m, m) or self.f2.shape != (m, m) or self.G.shape != (n, n):
            raise DimensionMismatch("inconsistent decomposition shapes")

    @property
    def dim(self) -> int:
        return len(self.e1)

    @property
    def gamma_basis(self) -> list[np.ndarray]:
        return [self.gamma[:, r] for r in range(self.gamma.shape[1])]

    def ip(self, x, y) -> float:
        return inner(x, y, self.G)

    def frame(self) -> np.ndarray:
        """Adapted orthonormal basis (e1, e2, gamma_1, ...) as columns."""
        return np.column_stack([self.e1, self.e2, self.gamma])

    def gamma_coords(self, x) -> np.ndarray:
        return self.gamma.T @ self.G @ np.asarray(x, dtype=float)

    def lift(self, f) -> np.ndarray:
        """Ambient matrix of an endomorphism of Gamma (zero on the derived algebra)."""
        return self.gamma @ np.asarray(f, dtype=float) @ self.gamma.T @ self.G

    @property
    def F1(self) -> np.ndarray:
        return self.lift(self.f1)

    @property
    def F2(self) -> np.ndarray:
        return self.lift(self.f2)

    def split(self, x) -> tuple[float, float, np.ndarray]:
        """x = x1 e1 + x2 e2 + u with u in Gamma."""
        x = np.asarray(x, dtype=float)
        x1, x2 = self.ip(x, self.e1), self.ip(x, self.e2)
        return x1, x2, x - x1 * self.e1 - x2 * self.e2

    def bracket(self, x, y) -> np.ndarray:
        """Bracket reconstructed from the decomposition data alone."""
        x1, x2, u = self.split(x)
        y1, y2, v = self.split(y)
        ip = self.ip
        e1, e2 = self.e1, self.e2

        def ad_e(w, p, q):  # [w, e_i] for w in Gamma
            return ip(p, w) * e1 + ip(q, w) * e2

        out = y1 * ad_e(u, self.a1, self.a2) + y2 * ad_e(u, self.b1, self.b2)
        out = out - x1 * ad_e(v, self.a1, self.a2) - x2 * ad_e(v, self.b1, self.b2)
        out = out + ip(self.F1 @ u, v) * e1 + ip(self.F2 @ u, v) * e2
        return out

    def flip_e2(self) -> "Lie2Decomposition":
        """Same algebra described with e2 replaced by -e2."""
        return replace(self, e2=-self.e2, a2=-self.a2, b1=-self.b1, f2=-self.f2)

    def invariant_residuals(self) -> dict:
        """Diagnostics for the structural invariants of the decomposition."""
        ip = self.ip
        frame = self.frame()
        ortho = float(np.abs(frame.T @ self.G @ frame - np.eye(self.dim)).max())
        skew = float(max(np.abs(self.f1 + self.f1.T).max(initial=0.0),
                         np.abs(self.f2 + self.f2.T).max(initial=0.0)))
        parallel = abs(ip(self.a2, self.a2) * ip(self.b1, self.b1) - ip(self.a2, self.b1) ** 2)
        commute = float(norm(self.bracket(self.e1, self.e2), self.G))
        return {"orthonormal": ortho, "skew": skew, "b1_parallel_a2": parallel, "e1e2_bracket": commute}


def _recover(L: MetricLieAlgebra, e1, e2, tol: float, padded: bool = False) -> Lie2Decomposition:
    G = L.G
    n = L.dim
    e1 = np.asarray(e1, dtype=float)
    e2 = np.asarray(e2, dtype=float)
    projected = []
    for k in range(n):
        b = np.zeros(n)
        b[k] = 1.0
        projected.append(b - inner(b, e1, G) * e1 - inner(b, e2, G) * e2)
    gamma = gram_schmidt(projected, G, tol=tol, skip_dependent=True)
    if len(gamma) != n - 2:
        raise NotLie2("could not build an orthonormal complement of the derived algebra")
    gamma_m = np.column_stack(gamma) if gamma else np.zeros((n, 0))

    def vec(e_in, e_out):
        return sum((inner(L.bracket(g, e_in), e_out, G) * g for g in gamma), np.zeros(n))

    m = n - 2
    f1 = np.zeros((m, m))
    f2 = np.zeros((m, m))
    for s in range(m):
        for r in range(m):
            br = L.bracket(gamma[s], gamma[r])
            f1[r, s] = inner(br, e1, G)
            f2[r, s] = inner(br, e2, G)
    return Lie2Decomposition(
        e1=e1, e2=e2, gamma=gamma_m,
        a1=vec(e1, e1), a2=vec(e1, e2), b1=vec(e2, e1), b2=vec(e2, e2),
        f1=f1, f2=f2, G=G, padded=padded,
    )


def _check_in_span(v, basis, G, tol) -> bool:
    proj = sum((inner(v, q, G) * q for q in basis), np.zeros(len(v)))
    return norm(np.asarray(v) - proj, G) <= tol


def _check_hints(L, basis, e1, e2, tol):
    G = L.G
    gram = np.array([[inner(x, y, G) for y in (e1, e2)] for x in (e1, e2)])
    if np.abs(gram - np.eye(2)).max() > tol:
        raise BadHint("hints are not orthonormal")
    if not (_check_in_span(e1, basis, G, tol) and _check_in_span(e2, basis, G, tol)):
        raise BadHint("hints do not lie in the derived algebra")


def decompose(L: MetricLieAlgebra, e1_hint=None, e2_hint=None, tol: float | None = None) -> Lie2Decomposition:
    tol = resolve(tol)
    basis = derived_algebra(L, tol)
    if len(basis) != 2:
        raise NotLie2(f"derived algebra has dimension {len(basis)}, expected 2")
    if (e1_hint is None) != (e2_hint is None):
        raise BadHint("give both hints or neither")
    if e1_hint is not None:
        e1 = np.asarray(e1_hint, dtype=float)
        e2 = np.asarray(e2_hint, dtype=float)
        _check_hints(L, basis, e1, e2, tol)
    else:
        e1, e2 = basis
    if norm(L.bracket(e1, e2), L.G) > tol:
        raise NotLie2("derived algebra is not abelian")
    return _recover(L, e1, e2, tol)


def _roundtrip_error(L: MetricLieAlgebra, dec: Lie2Decomposition) -> float:
    return float(np.abs(assemble(dec).C - L.C).max(initial=0.0))


def decompose_extended(L: MetricLieAlgebra, e1_hint=None, e2_hint=None, tol: float | None = None) -> Lie2Decomposition:
    """Like :func:`decompose`, but a one-dimensional derived algebra is padded
    with the first ambient direction that keeps the bracket formulas exact."""
    tol = resolve(tol)
    basis = derived_algebra(L, tol)
    if len(basis) == 2:
        return decompose(L, e1_hint, e2_hint, tol)
    if len(basis) == 0:
        raise PaddingImpossible("derived algebra is zero")
    if len(basis) > 2:
        raise NotLie2(f"derived algebra has dimension {len(basis)}")
    G = L.G
    if e1_hint is not None:
        e1 = np.asarray(e1_hint, dtype=float)
        if abs(norm(e1, G) - 1.0) > tol or not _check_in_span(e1, basis, G, tol):
            raise BadHint("e1 hint must be a unit vector spanning the derived algebra")
    else:
        e1 = basis[0]
    if e2_hint is not None:
        e2 = np.asarray(e2_hint, dtype=float)
        if abs(norm(e2, G) - 1.0) > tol or abs(inner(e1, e2, G)) > tol:
            raise BadHint("e2 hint must be a unit vector orthogonal to e1")
        candidates = [e2]
    else:
        candidates = []
        for k in range(L.dim):
            b = np.zeros(L.dim)
            b[k] = 1.0
            w = b - inner(b, e1, G) * e1
            if norm(w, G) > tol:
                candidates.append(w / norm(w, G))
    for e2 in candidates:
        if norm(L.bracket(e1, e2), G) > tol:
            continue
        dec = _recover(L, e1, e2, tol, padded=True)
        if _roundtrip_error(L, dec) <= tol:
            return dec
    if e2_hint is not None:
        raise BadHint("e2 hint does not reproduce the brackets")
    raise PaddingImpossible("no ambient direction keeps the bracket formulas exact")


def assemble(dec: Lie2Decomposition, dim: int | None = None) -> MetricLieAlgebra:
    n = dec.dim
    if dim is not None and dim != n:
        raise DimensionMismatch(f"decomposition has dim {n}, requested {dim}")
    E = np.eye(n)
    C = np.zeros((n, n, n))
    for i in range(n):
        for j in range(i + 1, n):
            v = dec.bracket(E[i], E[j])
            C[i, j] = v
            C[j, i] = -v
    return MetricLieAlgebra(C, dec.G)


def standard_decomposition(n: int, a1=None, a2=None, b1=None, b2=None, f1=None, f2=None) -> Lie2Decomposition:
    """Decomposition with e1 = b_1, e2 = b_2 and Gamma spanned by the remaining
    basis vectors; vector data is given in Gamma coordinates (length n - 2)."""
    m = n - 2
    gamma = np.eye(n)[:, 2:]

    def lift(v):
        return np.zeros(n) if v is None else gamma @ np.asarray(v, dtype=float)

    def mat(f):
        return np.zeros((m, m)) if f is None else np.asarray(f, dtype=float)

    return Lie2Decomposition(
        e1=np.eye(n)[0], e2=np.eye(n)[1], gamma=gamma,
        a1=lift(a1), a2=lift(a2), b1=lift(b1), b2=lift(b2),
        f1=mat(f1), f2=mat(f2), G=np.eye(n),
    )


def random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(rng.normal(size=(n, n)))
    return Q * np.sign(np.diag(R))


class Family(str, enum.Enum):
    PROPORTIONAL = "proportional"  # f = 0, a2 = alpha a1, b1 = beta a2, b2 = gamma a1
    NILPOTENT = "nilpotent"        # a = b = 0, commuting skew f1, f2
    FREE = "free"                  # sparse free draw, rejected unless Jacobi holds

    @classmethod
    def parse(cls, value) -> "Family":
        aliases = {"i": cls.PROPORTIONAL, "ii": cls.NILPOTENT, "iii": cls.FREE}
        if isinstance(value, cls):
            return value
        return aliases.get(str(value).lower()) or cls(str(value).lower())


def _rotation_blocks(angles) -> np.ndarray:
    m = 2 * len(angles)
    out = np.zeros((m, m))
    for p, t in enumerate(angles):
        out[2 * p + 1, 2 * p] = t
        out[2 * p, 2 * p + 1] = -t
    return out


def _draw(rng: np.random.Generator, n: int, family: Family) -> Lie2Decomposition:
    m = n - 2
    if family is Family.PROPORTIONAL:
        a1 = rng.normal(size=m)
        alpha, beta, gamma = rng.normal(size=3)
        a2 = alpha * a1
        return standard_decomposition(n, a1=a1, a2=a2, b1=beta * a2, b2=gamma * a1)
    if family is Family.NILPOTENT:
        Q = random_orthogonal(rng, m)
        f1 = Q @ _rotation_blocks(rng.normal(size=m // 2)) @ Q.T
        f2 = Q @ _rotation_blocks(rng.normal(size=m // 2)) @ Q.T
        return standard_decomposition(n, f1=f1, f2=f2)

    def maybe_vec():
        return rng.integers(-2, 3, size=m).astype(float) if rng.random() < 0.5 else None

    def maybe_skew():
        if rng.random() < 0.5:
            return None
        A = rng.integers(-2, 3, size=(m, m)).astype(float)
        return np.triu(A, 1) - np.triu(A, 1).T

    return standard_decomposition(n, a1=maybe_vec(), a2=maybe_vec(), b1=maybe_vec(),
                                  b2=maybe_vec(), f1=maybe_skew(), f2=maybe_skew())


def random_valid(seed: int, n: int, family="free", rotate: bool = True, tol: float | None = None) -> MetricLieAlgebra:
    """Deterministic random metric Lie algebra with two-dimensional derived algebra.

    With ``rotate`` the result is expressed in a random orthonormal basis, so
    the derived algebra is not aligned with the coordinate axes.
    """
    tol = resolve(tol)
    family = Family.parse(family)
    if n < 4 or n % 2:
        raise ValueError("n must be even and at least 4")
    if family is Family.NILPOTENT and n < 6:
        raise GenerationFailed("the nilpotent family needs n >= 6 for a two-dimensional derived algebra")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES):
        L = assemble(_draw(rng, n, family))
        if rotate:
            L = L.change_basis(random_orthogonal(rng, n))
        if validate(L, tol).ok and len(derived_algebra(L, tol)) == 2:
            return L
    raise GenerationFailed(f"no valid {family.value} algebra after {MAX_RETRIES} draws")
