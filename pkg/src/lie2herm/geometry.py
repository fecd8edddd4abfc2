"""Left-invariant connections, torsion and curvature on metric Lie algebras.

Conventions: ``coeffs[i, j, k]`` is the b_k component of nabla_{b_i} b_j, and
R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y], so that the
sectional curvature is <R(X, Y) Y, X> / |X ^ Y|^2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import KForm, gram_schmidt, inner, norm
from .errors import DegeneratePlane, DimensionMismatch, NotHermitian, NotOrthonormal
from .lie2 import Lie2Decomposition, MetricLieAlgebra
from .tolerance import resolve


@dataclass(frozen=True, eq=False)
class Connection:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise DimensionMismatch(f"connection coefficients must be n x n x n, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def apply(self, X, Y) -> np.ndarray:
        """nabla_X Y for left-invariant fields with coordinates X, Y."""
        return np.einsum("i,j,ijk->k", np.asarray(X, float), np.asarray(Y, float), self.coeffs)

    def lowered(self, G) -> np.ndarray:
        """``<nabla_{b_i} b_j, b_k>``."""
        return self.coeffs @ np.asarray(G, dtype=float)


@dataclass(frozen=True, eq=False)
class TorsionTensor:
    components: np.ndarray

    def __post_init__(self):
        T = np.array(self.components, dtype=float)
        n = T.shape[0]
        iu = np.triu_indices(n, 1)
        T[iu[1], iu[0]] = -T[iu]
        T[np.arange(n), np.arange(n)] = 0.0
        T.setflags(write=False)
        object.__setattr__(self, "components", T)

    def apply(self, X, Y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(X, float), np.asarray(Y, float), self.components)

    def max_abs(self) -> float:
        return float(np.abs(self.components).max(initial=0.0))


def _check_dims(conn: Connection, L: MetricLieAlgebra) -> None:
    if conn.dim != L.dim:
        raise DimensionMismatch(f"connection dim {conn.dim} vs algebra dim {L.dim}")


def _raise_index(low: np.ndarray, G) -> np.ndarray:
    return low @ np.linalg.inv(G)


def levi_civita_koszul(L: MetricLieAlgebra) -> Connection:
    """2 <nabla_X Y, Z> = <[X, Y], Z> - <[Y, Z], X> + <[Z, X], Y> on basis triples."""
    B = L.C @ L.G  # B[i, j, k] = <[b_i, b_j], b_k>
    low = 0.5 * (B - np.einsum("jki->ijk", B) + np.einsum("kij->ijk", B))
    return Connection(_raise_index(low, L.G))


def _lc_closed(dec: Lie2Decomposition, X, Y) -> np.ndarray:
    ip = dec.ip
    e1, e2, a1, a2, b1, b2 = dec.e1, dec.e2, dec.a1, dec.a2, dec.b1, dec.b2
    F1, F2 = dec.F1, dec.F2
    x1, x2, v = dec.split(X)
    y1, y2, u = dec.split(Y)
    s = a2 + b1
    out = x1 * y1 * a1 + (x1 * y2 + x2 * y1) * 0.5 * s + x2 * y2 * b2
    out = out + x1 * (-ip(a1, u) * e1 - 0.5 * (ip(s, u) * e2 + F1 @ u))
    out = out + x2 * (-ip(b2, u) * e2 - 0.5 * (ip(s, u) * e1 + F2 @ u))
    out = out + y1 * 0.5 * (ip(a2 - b1, v) * e2 - F1 @ v)
    out = out + y2 * 0.5 * (ip(b1 - a2, v) * e1 - F2 @ v)
    out = out + 0.5 * (ip(F1 @ v, u) * e1 + ip(F2 @ v, u) * e2)
    return out


def levi_civita_closed_form(dec: Lie2Decomposition) -> Connection:
    """Levi-Civita connection assembled from the decomposition data alone."""
    n = dec.dim
    E = np.eye(n)
    coeffs = np.array([[_lc_closed(dec, E[i], E[j]) for j in range(n)] for i in range(n)])
    return Connection(coeffs)


def curvature(conn: Connection, L: MetricLieAlgebra) -> np.ndarray:
    """``R[i, j, k, l]``: the b_l component of R(b_i, b_j) b_k."""
    _check_dims(conn, L)
    Gm = conn.coeffs
    return (
        np.einsum("jkm,iml->ijkl", Gm, Gm)
        - np.einsum("ikm,jml->ijkl", Gm, Gm)
        - np.einsum("ijm,mkl->ijkl", L.C, Gm)
    )


def sectional_curvature(L: MetricLieAlgebra, X, Y, R: np.ndarray | None = None) -> float:
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    denom = L.ip(X, X) * L.ip(Y, Y) - L.ip(X, Y) ** 2
    if denom <= 1e-12:
        raise DegeneratePlane(f"plane is degenerate (area^2 = {denom:.3e})")
    if R is None:
        R = curvature(levi_civita_koszul(L), L)
    num = np.einsum("ijkl,i,j,k,l->", R, X, Y, Y, L.G @ X)
    return float(num / denom)


def _require_unit_in_gamma(dec: Lie2Decomposition, x, tol, label) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    x1, x2, _ = dec.split(x)
    if abs(x1) > tol or abs(x2) > tol or abs(norm(x, dec.G) - 1.0) > tol:
        raise NotOrthonormal(f"{label} must be a unit vector in Gamma")
    return x


def sectional_curvature_closed_form(dec: Lie2Decomposition, which: str, u=None, v=None,
                                    tol: float | None = None) -> float:
    """Sectional curvature of the planes (e1, e2), (e1, u), (e2, u), (u, v)
    from the decomposition data; u, v must be orthonormal in Gamma."""
    tol = resolve(tol)
    ip = dec.ip
    a1, a2, b1, b2 = dec.a1, dec.a2, dec.b1, dec.b2
    if which == "e1e2":
        s = a2 + b1
        return 0.25 * ip(s, s) - ip(a1, b2)
    u = _require_unit_in_gamma(dec, u, tol, "u")
    if which == "e1u":
        Fu = dec.F1 @ u
        return (0.25 * (ip(b1, u) ** 2 - 3 * ip(a2, u) ** 2 + ip(Fu, Fu))
                - ip(a1, u) ** 2 - 0.5 * ip(a2, u) * ip(b1, u))
    if which == "e2u":
        Fu = dec.F2 @ u
        return (0.25 * (ip(a2, u) ** 2 - 3 * ip(b1, u) ** 2 + ip(Fu, Fu))
                - ip(b2, u) ** 2 - 0.5 * ip(a2, u) * ip(b1, u))
    if which == "uv":
        v = _require_unit_in_gamma(dec, v, tol, "v")
        if abs(ip(u, v)) > tol:
            raise NotOrthonormal("u and v must be orthogonal")
        return -0.75 * (ip(u, dec.F1 @ v) ** 2 + ip(u, dec.F2 @ v) ** 2)
    raise ValueError(f"unknown plane kind {which!r}")


def bismut_connection(L: MetricLieAlgebra, J, c: KForm,
                      integrable: bool | None = None, compatible: bool | None = None,
                      tol: float | None = None) -> Connection:
    """<nabla^B_X Y, Z> = <nabla_X Y, Z> + c(X, Y, Z) / 2, with nabla the
    Levi-Civita connection. ``c`` is taken as given; pass the flags when they
    are already known, otherwise they are computed here."""
    J = np.asarray(getattr(J, "J", J), dtype=float)
    if integrable is None or compatible is None:
        from .hermitian import is_compatible, nijenhuis_residual

        tol = resolve(tol)
        if compatible is None:
            compatible = is_compatible(L, J, tol)[0]
        if integrable is None:
            integrable = nijenhuis_residual(L, J) <= tol
    if not (integrable and compatible):
        raise NotHermitian("Bismut connection needs an integrable, metric-compatible J")
    if c.degree != 3 or c.dim != L.dim:
        raise DimensionMismatch("c must be a 3-form of the algebra's dimension")
    low = levi_civita_koszul(L).lowered(L.G) + 0.5 * c.to_dense()
    return Connection(_raise_index(low, L.G))


def torsion(conn: Connection, L: MetricLieAlgebra) -> TorsionTensor:
    """T(X, Y) = nabla_X Y - nabla_Y X - [X, Y]."""
    _check_dims(conn, L)
    Gm = conn.coeffs
    return TorsionTensor(Gm - np.transpose(Gm, (1, 0, 2)) - L.C)


def metric_residual(conn: Connection, G) -> float:
    """max |<nabla_i b_j, b_k> + <b_j, nabla_i b_k>|."""
    low = conn.lowered(G)
    return float(np.abs(low + np.transpose(low, (0, 2, 1))).max(initial=0.0))


def parallel_residual(conn: Connection, J) -> float:
    """max |nabla_i (J b_j) - J nabla_i b_j| over all components."""
    J = np.asarray(getattr(J, "J", J), dtype=float)
    Gm = conn.coeffs
    lhs = np.einsum("aj,iak->ijk", J, Gm)
    rhs = np.einsum("ka,ija->ijk", J, Gm)
    return float(np.abs(lhs - rhs).max(initial=0.0))


def torsion_free_residual(conn: Connection, L: MetricLieAlgebra) -> float:
    return torsion(conn, L).max_abs()


def _tensor_from_frame(dec: Lie2Decomposition, Q: np.ndarray, table) -> TorsionTensor:
    """Ambient torsion components from values on an orthonormal frame Q (columns)."""
    n = dec.dim
    coef = Q.T @ dec.G  # coef[p, i] = component of b_i along frame vector p
    T = np.einsum("pi,qj,pqk->ijk", coef, coef, table)
    return TorsionTensor(T)


def type1_torsion_closed_form(dec: Lie2Decomposition, J) -> TorsionTensor:
    """Bismut torsion of a Type I Hermitian structure (J e1 = e2) from the
    decomposition data."""
    J = np.asarray(getattr(J, "J", J), dtype=float)
    if dec.ip(J @ dec.e1, dec.e2) < 0:
        dec = dec.flip_e2()
    ip = dec.ip
    e1, e2 = dec.e1, dec.e2
    F1, F2 = dec.F1, dec.F2
    n = dec.dim
    Q = dec.frame()
    s = J @ (dec.a1 + dec.b2)
    table = np.zeros((n, n, n))

    def put(p, q, vec):
        table[p, q] = vec
        table[q, p] = -vec

    put(0, 1, s)
    for r in range(2, n):
        u = Q[:, r]
        put(0, r, -ip(s, u) * e2 + J @ F1 @ J @ u)
        put(1, r, ip(s, u) * e1 + J @ F2 @ J @ u)
        for t in range(r + 1, n):
            v = Q[:, t]
            put(r, t, ip(J @ F1 @ J @ u, v) * e1 + ip(J @ F2 @ J @ u, v) * e2)
    return _tensor_from_frame(dec, Q, table)


def type2_torsion_closed_form(dec: Lie2Decomposition, J, W: np.ndarray | None = None) -> TorsionTensor:
    """Bismut torsion of a Type II Hermitian structure from the decomposition
    data; ``W`` holds an orthonormal basis of the complement of span{J e1, J e2}
    in Gamma as columns (computed when omitted)."""
    J = np.asarray(getattr(J, "J", J), dtype=float)
    ip = dec.ip
    e1, e2, a1, a2, b1, b2 = dec.e1, dec.e2, dec.a1, dec.a2, dec.b1, dec.b2
    F1, F2 = dec.F1, dec.F2
    u01, u02 = J @ e1, J @ e2
    n = dec.dim
    if W is None:
        rest = [g - ip(g, u01) * u01 - ip(g, u02) * u02 for g in dec.gamma_basis]
        ws = gram_schmidt(rest, dec.G, tol=1e-9, skip_dependent=True)
        W = np.column_stack(ws) if ws else np.zeros((n, 0))
    Q = np.column_stack([e1, e2, u01, u02, W]) if W.size else np.column_stack([e1, e2, u01, u02])
    table = np.zeros((n, n, n))

    def put(p, q, vec):
        table[p, q] = vec
        table[q, p] = -vec

    put(0, 1, b1 - a2)
    put(0, 2, ip(a1, u01) * e1 + ip(a2, u01) * e2 + J @ a1)
    put(0, 3, ip(a1, u02) * e1 + ip(a2, u02) * e2 + J @ b1)
    put(1, 2, ip(b1, u01) * e1 + ip(b2, u01) * e2 + J @ a2)
    put(1, 3, ip(b1, u02) * e1 + ip(b2, u02) * e2 + J @ b2)
    for r in range(4, n):
        w = Q[:, r]
        put(0, r, ip(a2 - b1, w) * e2 - F1 @ w)
        put(1, r, ip(b1 - a2, w) * e1 - F2 @ w)
        put(2, r, -ip(F1 @ u01, w) * e1 - ip(F2 @ u01, w) * e2)
        put(3, r, -ip(F1 @ u02, w) * e1 - ip(F2 @ u02, w) * e2)
        for t in range(r + 1, n):
            v = Q[:, t]
            put(r, t, -ip(F1 @ w, v) * e1 - ip(F2 @ w, v) * e2)
    return _tensor_from_frame(dec, Q, table)
