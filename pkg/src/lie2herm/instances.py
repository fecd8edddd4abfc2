"""Seeded generators of (algebra, J) test instances of Type I and Type II.

Hermitian samplers build decomposition data that satisfies Jacobi and the
integrability equations by construction; the ``*_any`` samplers pair random
valid algebras with random structures, which are almost never integrable.
Every instance is finally conjugated by a random orthogonal change of basis
so that nothing depends on the coordinate frame.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hermitian import (
    complement_basis,
    random_complex_structure,
    type1_construct,
    type2_construct,
)
from .lie2 import (
    Lie2Decomposition,
    MetricLieAlgebra,
    assemble,
    decompose,
    random_orthogonal,
    random_valid,
    standard_decomposition,
)


@dataclass(frozen=True, eq=False)
class Instance:
    L: MetricLieAlgebra
    J: np.ndarray
    label: str

    @property
    def dec(self) -> Lie2Decomposition:
        return decompose(self.L)


def conjugate_instance(L: MetricLieAlgebra, J, P) -> tuple[MetricLieAlgebra, np.ndarray]:
    """Express (L, J) in the basis given by the columns of P."""
    P = np.asarray(P, dtype=float)
    return L.change_basis(P), np.linalg.solve(P, np.asarray(J) @ P)


def _finish(rng, dec: Lie2Decomposition, J, label: str) -> Instance:
    L = assemble(dec)
    L2, J2 = conjugate_instance(L, J, random_orthogonal(rng, L.dim))
    return Instance(L2, J2, label)


def _skew(rng, m, scale=1.0):
    A = rng.normal(scale=scale, size=(m, m))
    return A - A.T


def _split(A, JG):
    """Parts of A commuting and anticommuting with JG."""
    plus = 0.5 * (A - JG @ A @ JG)
    return plus, A - plus


# --- Type I --------------------------------------------------------------------

def type1_nilpotent_hermitian(rng, n: int) -> Instance:
    """a = b = 0 and f2 = (J-commuting skew) + J f1^-: two-step nilpotent, Hermitian."""
    m = n - 2
    JG = random_complex_structure(rng, m)
    f1 = _skew(rng, m)
    _, f1m = _split(f1, JG)
    plus, _ = _split(_skew(rng, m), JG)
    f2 = plus + JG @ f1m
    dec = standard_decomposition(n, f1=f1, f2=f2)
    return _finish(rng, dec, type1_construct(dec, JG).J, "typeI-nilpotent")


def type1_abelian(rng, n: int) -> Instance:
    """f = 0, a1 = x != 0, a2 = -Jx, b1 = Jx, b2 = x: abelian Type I."""
    m = n - 2
    JG = random_complex_structure(rng, m)
    x = rng.normal(size=m)
    x *= rng.uniform(0.5, 2.0) / np.linalg.norm(x)
    dec = standard_decomposition(n, a1=x, a2=-JG @ x, b1=JG @ x, b2=x)
    return _finish(rng, dec, type1_construct(dec, JG).J, "typeI-abelian")


def type1_kahler(rng, n: int) -> Instance:
    """f = 0, a1 = b2 = 0, a2 = -b1 = w: Kaehler Type I."""
    m = n - 2
    JG = random_complex_structure(rng, m)
    w = rng.normal(size=m)
    dec = standard_decomposition(n, a2=w, b1=-w)
    return _finish(rng, dec, type1_construct(dec, JG).J, "typeI-kahler")


def type1_hermitian(seed: int, n: int = 4) -> Instance:
    rng = np.random.default_rng(seed)
    # two-step nilpotent data on a two-dimensional Gamma has a one-dimensional derived algebra
    makers = (type1_nilpotent_hermitian, type1_abelian, type1_kahler) if n >= 6 else (type1_abelian, type1_kahler)
    return makers[seed % len(makers)](rng, n)


def type1_any(seed: int, n: int = 4) -> Instance:
    """Random valid algebra with a random orthogonal J of Type I."""
    rng = np.random.default_rng(seed)
    family = ("proportional", "nilpotent", "free")[seed % 3]
    if family == "nilpotent" and n < 6:
        family = "free"
    L = random_valid(int(rng.integers(2**31)), n, family)
    dec = decompose(L)
    J = type1_construct(dec, random_complex_structure(rng, n - 2)).J
    return Instance(L, J, f"typeI-random-{family}")


# --- Type II -------------------------------------------------------------------

def type2_frame_hermitian(rng, n: int, kahler: bool = False) -> Instance:
    """f = 0 and all a, b in span{u01, u02}, extended by an abelian R^(n-4).

    With X, Y the matrices of ad u01, ad u02 on the derived algebra, Jacobi asks
    [X, Y] = 0 and integrability asks Y e1 = X e2; Y = alpha I + beta X solves both.
    """
    X = rng.normal(size=(2, 2))
    if kahler:
        X[0, 1] = X[1, 0]
    if abs(X[1, 0]) < 0.1:
        X[1, 0] = 0.1 if X[1, 0] >= 0 else -0.1
        if kahler:
            X[0, 1] = X[1, 0]
    beta = X[1, 1] / X[1, 0]
    alpha = X[0, 1] - beta * X[0, 0]
    Y = alpha * np.eye(2) + beta * X
    m = n - 2
    vec = lambda p, q: np.concatenate([[p, q], np.zeros(m - 2)])  # noqa: E731
    dec = standard_decomposition(
        n,
        a1=vec(X[0, 0], Y[0, 0]),
        a2=vec(X[1, 0], Y[1, 0]),
        b1=vec(X[0, 1], Y[0, 1]),
        b2=vec(X[1, 1], Y[1, 1]),
    )
    g = dec.gamma_basis
    JP = random_complex_structure(rng, m - 2)
    J = type2_construct(dec, g[0], g[1], JP).J
    return _finish(rng, dec, J, "typeII-kahler" if kahler else "typeII-frame")


def type2_diagonal(rng, n: int) -> Instance:
    """a1 = s u01, b2 = t u02, everything else zero (Kaehler)."""
    m = n - 2
    s, t = rng.normal(size=2)
    e = np.eye(m)
    dec = standard_decomposition(n, a1=s * e[0], b2=t * e[1])
    g = dec.gamma_basis
    J = type2_construct(dec, g[0], g[1], random_complex_structure(rng, m - 2)).J
    return _finish(rng, dec, J, "typeII-diagonal")


def type2_nilpotent(rng, n: int = 8) -> Instance:
    """a = b = 0 with f1, f2 supported on the complement W and commuting with J there."""
    m = n - 2
    k = m - 2
    JP = random_complex_structure(rng, k)
    f1 = np.zeros((m, m))
    f2 = np.zeros((m, m))
    f1[2:, 2:], _ = _split(_skew(rng, k), JP)
    f2[2:, 2:], _ = _split(_skew(rng, k), JP)
    dec = standard_decomposition(n, f1=f1, f2=f2)
    g = dec.gamma_basis
    # complement_basis returns the remaining Gamma vectors in order, matching JP's frame
    W = complement_basis(dec, g[0], g[1])
    assert np.allclose(W, np.column_stack(g[2:]))
    J = type2_construct(dec, g[0], g[1], JP).J
    return _finish(rng, dec, J, "typeII-nilpotent")


def type2_hermitian(seed: int, n: int = 4) -> Instance:
    rng = np.random.default_rng(seed)
    r = seed % 4
    if r == 0:
        return type2_frame_hermitian(rng, n)
    if r == 1:
        return type2_frame_hermitian(rng, n, kahler=True)
    if r == 2:
        return type2_diagonal(rng, n)
    if n >= 8:
        return type2_nilpotent(rng, n)
    return type2_frame_hermitian(rng, n)


def type2_any(seed: int, n: int = 4) -> Instance:
    """Random valid algebra with a random Type II frame and random complement structure."""
    rng = np.random.default_rng(seed)
    family = ("proportional", "free")[seed % 2]
    L = random_valid(int(rng.integers(2**31)), n, family)
    dec = decompose(L)
    m = n - 2
    Q = random_orthogonal(rng, m)
    u01, u02 = dec.gamma @ Q[:, 0], dec.gamma @ Q[:, 1]
    J = type2_construct(dec, u01, u02, random_complex_structure(rng, m - 2)).J
    return Instance(L, J, f"typeII-random-{family}")
