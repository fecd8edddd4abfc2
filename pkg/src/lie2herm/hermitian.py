"""Almost complex structures on metric Lie algebras: integrability,
compatibility, the Kaehler form and torsion 3-form, classification verdicts,
Type I / Type II constructions and the Hermitian and Kaehler criteria for
algebras with two-dimensional derived algebra.

A complex structure ``J`` is an n x n matrix acting on coordinate columns:
column i holds the coordinates of J b_i.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import KForm, exterior_derivative, gram_schmidt, inner, norm
from .errors import (
    BadFrame,
    BadGammaStructure,
    DimensionMismatch,
    NotCompatible,
    NotHermitian,
    NotTypeI,
    NotTypeII,
    OddComplement,
    OddGamma,
    PaddingImpossible,
    WrongDimension,
)
from .geometry import bismut_connection, torsion
from .lie2 import Lie2Decomposition, MetricLieAlgebra, decompose_extended, derived_algebra
from .tolerance import resolve

ROT = np.array([[0.0, -1.0], [1.0, 0.0]])  # e -> e', e' -> -e


@dataclass(frozen=True, eq=False)
class AlmostComplexStructure:
    J: np.ndarray

    def __post_init__(self):
        J = np.array(self.J, dtype=float)
        n = J.shape[0]
        if J.shape != (n, n):
            raise DimensionMismatch(f"J must be square, got {J.shape}")
        if np.abs(J @ J + np.eye(n)).max(initial=0.0) > resolve(None):
            raise ValueError("J^2 != -I")
        J.setflags(write=False)
        object.__setattr__(self, "J", J)

    @property
    def dim(self) -> int:
        return self.J.shape[0]

    @classmethod
    def from_images(cls, dim: int, images: dict, one_based: bool = True) -> "AlmostComplexStructure":
        """``{i: {k: value}}`` meaning J b_i = sum value b_k."""
        off = 1 if one_based else 0
        J = np.zeros((dim, dim))
        for i, row in images.items():
            for k, val in row.items():
                J[k - off, i - off] = val
        return cls(J)


def _mat(J) -> np.ndarray:
    return np.asarray(getattr(J, "J", J), dtype=float)


def _check_dim(L: MetricLieAlgebra, J: np.ndarray) -> None:
    if J.shape != (L.dim, L.dim):
        raise DimensionMismatch(f"J shape {J.shape} vs algebra dim {L.dim}")


def conjugate(J, P) -> np.ndarray:
    """Matrix of J in the basis given by the columns of P."""
    P = np.asarray(P, dtype=float)
    return np.linalg.solve(P, _mat(J) @ P)


# --- integrability, compatibility, abelian ------------------------------------

def nijenhuis(L: MetricLieAlgebra, J) -> np.ndarray:
    """``N[i, j]`` = N_J(b_i, b_j) = [X,Y] + J([JX,Y] + [X,JY]) - [JX,JY]."""
    J = _mat(J)
    _check_dim(L, J)
    C = L.C
    CJ1 = np.einsum("ai,ajk->ijk", J, C)           # [J b_i, b_j]
    CJ2 = np.einsum("bj,ibk->ijk", J, C)           # [b_i, J b_j]
    CJJ = np.einsum("ai,bj,abk->ijk", J, J, C)     # [J b_i, J b_j]
    return C + np.einsum("ijk,lk->ijl", CJ1 + CJ2, J) - CJJ


def nijenhuis_residual(L: MetricLieAlgebra, J) -> float:
    return float(np.abs(nijenhuis(L, J)).max(initial=0.0))


def is_compatible(L: MetricLieAlgebra, J, tol: float | None = None) -> tuple[bool, float]:
    tol = resolve(tol)
    J = _mat(J)
    _check_dim(L, J)
    res = float(np.abs(J.T @ L.G @ J - L.G).max(initial=0.0))
    return res <= tol, res


def is_abelian(L: MetricLieAlgebra, J, tol: float | None = None) -> tuple[bool, float]:
    tol = resolve(tol)
    J = _mat(J)
    _check_dim(L, J)
    CJJ = np.einsum("ai,bj,abk->ijk", J, J, L.C)
    res = float(np.abs(CJJ - L.C).max(initial=0.0))
    return res <= tol, res


# --- forms --------------------------------------------------------------------

def kahler_form(L: MetricLieAlgebra, J, tol: float | None = None) -> KForm:
    """omega(b_i, b_j) = <J b_i, b_j>."""
    tol = resolve(tol)
    J = _mat(J)
    ok, res = is_compatible(L, J, tol)
    if not ok:
        raise NotCompatible(f"metric is not J-invariant (residual {res:.3e})")
    W = J.T @ L.G
    assert np.abs(W + W.T).max(initial=0.0) <= 10 * tol, "Kaehler form is not antisymmetric"
    return KForm.from_dense(W)


def c_form(L: MetricLieAlgebra, J, tol: float | None = None, check: bool = True) -> KForm:
    """c(X, Y, Z) = d omega(JX, JY, JZ)."""
    tol = resolve(tol)
    J = _mat(J)
    if check and nijenhuis_residual(L, J) > tol:
        raise NotHermitian("J is not integrable")
    try:
        omega = kahler_form(L, J, tol)
    except NotCompatible as exc:
        raise NotHermitian(str(exc)) from exc
    return exterior_derivative(omega, L).pullback(J)


class Verdict(str, enum.Enum):
    NON_COMPATIBLE = "NonCompatible"
    NON_INTEGRABLE = "NonIntegrable"
    KAHLER = "Kahler"
    SKT = "SKT"
    WEAK_KT = "WeakKT"

    @property
    def label(self) -> str:
        return {
            "NonCompatible": "not compatible",
            "NonIntegrable": "not integrable",
            "Kahler": "Kähler",
            "SKT": "SKT",
            "WeakKT": "weak KT",
        }[self.value]


@dataclass(frozen=True)
class ClassificationReport:
    compatible: bool
    compatibility_residual: float
    nijenhuis_residual: float
    integrable: bool
    abelian: bool
    abelian_residual: float
    domega_norm: float | None
    c_norm: float | None
    dc_norm: float | None
    bismut_torsion_norm: float | None
    dc_top: float | None
    verdict: Verdict


def classify(L: MetricLieAlgebra, J, tol: float | None = None) -> ClassificationReport:
    """Compatibility, integrability and the Kaehler / SKT / weak verdict.

    The Kaehler test is d omega = 0; the Bismut torsion norm is reported
    alongside as an independent check. ``dc_top`` is dc(b_1, b_2, b_3, b_4)
    for four-dimensional algebras.
    """
    tol = resolve(tol)
    J = _mat(J)
    compatible, cres = is_compatible(L, J, tol)
    nres = nijenhuis_residual(L, J)
    integrable = nres <= tol
    abelian, ares = is_abelian(L, J, tol)
    domega = c = dc = tb = top = None
    if not compatible:
        verdict = Verdict.NON_COMPATIBLE
    else:
        omega = kahler_form(L, J, tol)
        dom = exterior_derivative(omega, L)
        domega = dom.max_abs()
        if not integrable:
            verdict = Verdict.NON_INTEGRABLE
        else:
            cf = dom.pullback(J)
            dcf = exterior_derivative(cf, L)
            c, dc = cf.max_abs(), dcf.max_abs()
            tb = torsion(bismut_connection(L, J, cf, integrable=True, compatible=True), L).max_abs()
            if L.dim == 4:
                top = dcf(0, 1, 2, 3)
            if domega <= tol:
                verdict = Verdict.KAHLER
            elif dc <= tol:
                verdict = Verdict.SKT
            else:
                verdict = Verdict.WEAK_KT
    return ClassificationReport(compatible, cres, nres, integrable, abelian, ares,
                                domega, c, dc, tb, top, verdict)


def dc_on(L: MetricLieAlgebra, J, X0, X1, X2, X3, tol: float | None = None) -> float:
    """dc evaluated on four arbitrary vectors."""
    return exterior_derivative(c_form(L, J, tol), L).evaluate(X0, X1, X2, X3)


# --- Type I / Type II ----------------------------------------------------------

class JType(str, enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    MIXED = "Mixed"

    @property
    def label(self) -> str:
        return {"TypeI": "Type I", "TypeII": "Type II", "Mixed": "Mixed"}[self.value]


@dataclass(frozen=True, eq=False)
class JTypeReport:
    lam: float
    mu: float
    type: JType
    u01: np.ndarray | None = None
    u02: np.ndarray | None = None


def classify_J_type(L: MetricLieAlgebra, J, dec: Lie2Decomposition, tol: float | None = None) -> JTypeReport:
    """J e1 = lam u + mu e2 with u a unit vector of Gamma (lam >= 0)."""
    tol = resolve(tol)
    J = _mat(J)
    _check_dim(L, J)
    Je1 = J @ dec.e1
    x1, mu, rest = dec.split(Je1)
    lam = norm(rest, dec.G)
    if lam <= tol:
        return JTypeReport(lam, mu, JType.TYPE_I)
    if abs(mu) <= tol:
        return JTypeReport(lam, mu, JType.TYPE_II, Je1, J @ dec.e2)
    return JTypeReport(lam, mu, JType.MIXED)


def _type_of(dec: Lie2Decomposition, J: np.ndarray, tol: float) -> JType:
    x1, mu, rest = dec.split(J @ dec.e1)
    if norm(rest, dec.G) <= tol:
        return JType.TYPE_I
    if abs(mu) <= tol:
        return JType.TYPE_II
    return JType.MIXED


def oriented(dec: Lie2Decomposition, J) -> Lie2Decomposition:
    """For Type I, replace e2 by -e2 when needed so that J e1 = +e2."""
    J = _mat(J)
    if dec.ip(J @ dec.e1, dec.e2) < 0:
        return dec.flip_e2()
    return dec


def _require_type1(dec, J, tol) -> Lie2Decomposition:
    if _type_of(dec, J, tol) is not JType.TYPE_I:
        raise NotTypeI("J e1 is not +-e2")
    return oriented(dec, J)


def _require_type2(dec, J, tol) -> None:
    if _type_of(dec, J, tol) is not JType.TYPE_II:
        raise NotTypeII("J e1 has a component along e2")


def _check_complex(M: np.ndarray, tol: float, what: str) -> None:
    k = M.shape[0]
    if M.shape != (k, k):
        raise BadGammaStructure(f"{what} must be square")
    if np.abs(M @ M + np.eye(k)).max(initial=0.0) > tol or np.abs(M.T @ M - np.eye(k)).max(initial=0.0) > tol:
        raise BadGammaStructure(f"{what} is not an orthogonal complex structure")


def gamma_restriction(dec: Lie2Decomposition, J) -> np.ndarray:
    """Matrix of J restricted to Gamma in the Gamma basis (Type I only)."""
    return dec.gamma.T @ dec.G @ _mat(J) @ dec.gamma


def type1_construct(dec: Lie2Decomposition, JGamma, tol: float | None = None) -> AlmostComplexStructure:
    """J e1 = e2, J e2 = -e1, and J = JGamma on Gamma (given in Gamma coordinates)."""
    tol = resolve(tol)
    m = dec.dim - 2
    if m % 2:
        raise OddGamma(f"Gamma has odd dimension {m}")
    JG = np.asarray(JGamma, dtype=float).reshape(m, m)
    _check_complex(JG, tol, "JGamma")
    Jad = np.zeros((dec.dim, dec.dim))
    Jad[:2, :2] = ROT
    Jad[2:, 2:] = JG
    P = dec.frame()
    return AlmostComplexStructure(P @ Jad @ P.T @ dec.G)


def complement_basis(dec: Lie2Decomposition, u01, u02, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis (columns) of Gamma intersected with span{u01, u02}^perp."""
    tol = resolve(tol)
    G = dec.G
    vs = []
    for g in dec.gamma_basis:
        vs.append(g - inner(g, u01, G) * np.asarray(u01) - inner(g, u02, G) * np.asarray(u02))
    W = gram_schmidt(vs, G, tol=tol, skip_dependent=True)
    return np.column_stack(W) if W else np.zeros((dec.dim, 0))


def type2_construct(dec: Lie2Decomposition, u01, u02, JPerp=None, tol: float | None = None) -> AlmostComplexStructure:
    """J e1 = u01, J e2 = u02 and J = JPerp on the complement of span{u01, u02}
    in Gamma, with JPerp given in the :func:`complement_basis` coordinates."""
    tol = resolve(tol)
    G = dec.G
    u01 = np.asarray(u01, dtype=float)
    u02 = np.asarray(u02, dtype=float)
    gram = np.array([[inner(x, y, G) for y in (u01, u02)] for x in (u01, u02)])
    if np.abs(gram - np.eye(2)).max() > tol:
        raise BadFrame("u01, u02 are not orthonormal")
    for u in (u01, u02):
        x1, x2, _ = dec.split(u)
        if abs(x1) > tol or abs(x2) > tol:
            raise BadFrame("u01, u02 must lie in Gamma")
    W = complement_basis(dec, u01, u02, tol)
    k = W.shape[1]
    if k % 2:
        raise OddComplement(f"complement has odd dimension {k}")
    JP = np.zeros((0, 0)) if JPerp is None else np.asarray(JPerp, dtype=float).reshape(k, k)
    if JP.shape != (k, k):
        raise BadGammaStructure(f"JPerp must be {k} x {k}")
    if k:
        _check_complex(JP, tol, "JPerp")
    n = dec.dim
    Q = np.column_stack([dec.e1, dec.e2, u01, u02, W])
    Jad = np.zeros((n, n))
    Jad[2, 0], Jad[0, 2] = 1.0, -1.0
    Jad[3, 1], Jad[1, 3] = 1.0, -1.0
    Jad[4:, 4:] = JP
    return AlmostComplexStructure(Q @ Jad @ Q.T @ G)


def random_complex_structure(rng: np.random.Generator, m: int) -> np.ndarray:
    """Random orthogonal complex structure on R^m: the standard one conjugated
    by a random orthogonal matrix."""
    if m % 2:
        raise OddGamma(f"no complex structure in odd dimension {m}")
    if m == 0:
        return np.zeros((0, 0))
    Q, R = np.linalg.qr(rng.normal(size=(m, m)))
    Q = Q * np.sign(np.diag(R))
    J0 = np.kron(np.eye(m // 2), np.array([[0.0, -1.0], [1.0, 0.0]]))
    return Q @ J0 @ Q.T


# --- criteria ------------------------------------------------------------------

@dataclass(frozen=True)
class Theorem1Result:
    ok: bool
    vec: float
    map: float


def theorem1_check(dec: Lie2Decomposition, J, tol: float | None = None) -> Theorem1Result:
    """Type I integrability: b2 - a1 = J(a2 + b1) and Jf1 - f1J = Jf2J + f2."""
    tol = resolve(tol)
    J = _mat(J)
    d = _require_type1(dec, J, tol)
    vec = norm((d.b2 - d.a1) - J @ (d.a2 + d.b1), d.G)
    JG = gamma_restriction(d, J)
    M = (JG @ d.f1 - d.f1 @ JG) - (JG @ d.f2 @ JG + d.f2)
    mres = float(np.abs(M).max(initial=0.0))
    return Theorem1Result(vec <= tol and mres <= tol, vec, mres)


def remark2_criterion(dec: Lie2Decomposition, tol: float | None = None) -> bool:
    """Necessary condition for a Type I Hermitian structure with this metric data."""
    tol = resolve(tol)
    ip = dec.ip
    lhs = ip(dec.a1, dec.a2) - ip(dec.b1, dec.b2)
    rhs = ip(dec.a2, dec.b2) - ip(dec.a1, dec.b1)
    return abs(lhs - rhs) <= tol


def abelian_type1_conditions(dec: Lie2Decomposition, J, tol: float | None = None) -> bool:
    """J a1 = b1, J a2 = b2, and J commutes with f1 and f2."""
    tol = resolve(tol)
    J = _mat(J)
    d = _require_type1(dec, J, tol)
    JG = gamma_restriction(d, J)
    res = max(
        norm(J @ d.a1 - d.b1, d.G),
        norm(J @ d.a2 - d.b2, d.G),
        float(np.abs(JG @ d.f1 - d.f1 @ JG).max(initial=0.0)),
        float(np.abs(JG @ d.f2 - d.f2 @ JG).max(initial=0.0)),
    )
    return res <= tol


@dataclass(frozen=True)
class Theorem4Result:
    ok: bool
    residuals: tuple[float, ...]
    statement3_ok: bool
    statement3_residuals: tuple[float, ...]


def theorem4_check(dec: Lie2Decomposition, J, tol: float | None = None) -> Theorem4Result:
    """The ten equations characterizing Hermitian (equivalently abelian) Type II
    structures, plus the projected form of the same conditions."""
    tol = resolve(tol)
    J = _mat(J)
    _require_type2(dec, J, tol)
    ip = dec.ip
    G = dec.G
    a1, a2, b1, b2 = dec.a1, dec.a2, dec.b1, dec.b2
    F1, F2 = dec.F1, dec.F2
    u01, u02 = J @ dec.e1, J @ dec.e2
    W = complement_basis(dec, u01, u02, tol)
    ws = [W[:, r] for r in range(W.shape[1])]

    def over_w(vec):
        return max((abs(ip(vec, w)) for w in ws), default=0.0)

    def commutator(F):
        return max((abs(ip(F @ J @ u - J @ F @ u, v)) for u in ws for v in ws), default=0.0)

    res = (
        abs(ip(F1 @ u01, u02)),
        abs(ip(F2 @ u01, u02)),
        over_w(F1 @ u01 + J @ a1),
        over_w(F2 @ u01 + J @ a2),
        over_w(F1 @ u02 + J @ b1),
        over_w(F2 @ u02 + J @ b2),
        abs(ip(b1, u01) - ip(a1, u02)),
        abs(ip(b2, u01) - ip(a2, u02)),
        commutator(F1),
        commutator(F2),
    )

    def tilde(x):
        return sum((ip(x, w) * w for w in ws), np.zeros(dec.dim))

    res3 = (
        norm(tilde(a1) - J @ F1 @ u01, G),
        norm(tilde(a2) - J @ F2 @ u01, G),
        norm(tilde(b1) - J @ F1 @ u02, G),
        norm(tilde(b2) - J @ F2 @ u02, G),
        res[6],
        res[7],
        res[8],
        res[9],
    )
    return Theorem4Result(max(res) <= tol, res, max(res3) <= tol, res3)


@dataclass(frozen=True)
class Theorem5Result:
    ok: bool
    alpha: float
    beta: float


def _fnorm(dec: Lie2Decomposition) -> float:
    return float(max(np.abs(dec.f1).max(initial=0.0), np.abs(dec.f2).max(initial=0.0)))


def theorem5_kahler_check(dec: Lie2Decomposition, tol: float | None = None) -> Theorem5Result:
    """Type I Kaehler criterion f1 = f2 = 0, b2 = -a1; when it holds and
    a1 != 0, a2 = alpha a1 and b1 = beta a2."""
    tol = resolve(tol)
    ip = dec.ip
    ok = _fnorm(dec) <= tol and norm(dec.b2 + dec.a1, dec.G) <= tol
    alpha = beta = 0.0
    if ok and norm(dec.a1, dec.G) > tol:
        alpha = ip(dec.a2, dec.a1) / ip(dec.a1, dec.a1)
        if norm(dec.a2, dec.G) > tol:
            beta = ip(dec.b1, dec.a2) / ip(dec.a2, dec.a2)
    return Theorem5Result(ok, alpha, beta)


def theorem7_kahler_check(dec: Lie2Decomposition, tol: float | None = None) -> bool:
    """Type II Kaehler criterion f1 = f2 = 0, b1 = a2."""
    tol = resolve(tol)
    return _fnorm(dec) <= tol and norm(dec.b1 - dec.a2, dec.G) <= tol


# --- adapted frames and search -----------------------------------------------

def frame_decomposition(L: MetricLieAlgebra, tol: float | None = None) -> Lie2Decomposition:
    """Decomposition used for frame-level questions: the padded decomposition
    when it exists, otherwise (abelian algebras) the first two orthonormalized
    ambient directions with all bracket data zero."""
    tol = resolve(tol)
    try:
        return decompose_extended(L, tol=tol)
    except PaddingImpossible:
        if derived_algebra(L, tol):
            raise
    n = L.dim
    basis = gram_schmidt(np.eye(n), L.G)
    m = n - 2
    z = np.zeros(n)
    return Lie2Decomposition(basis[0], basis[1], np.column_stack(basis[2:]) if m else np.zeros((n, 0)),
                             z, z, z, z, np.zeros((m, m)), np.zeros((m, m)), L.G, padded=True)


def adapted_frame(dec: Lie2Decomposition, J, tol: float | None = None) -> list[np.ndarray]:
    """Ordered frame (e1, e2, x, y) of a four-dimensional algebra adapted to J:
    (e1, e2, g, J g) for Type I with g the first Gamma basis vector, and
    (e1, e2, J e1, J e2) for Type II."""
    tol = resolve(tol)
    J = _mat(J)
    if dec.dim != 4:
        raise WrongDimension("adapted frames are defined for dimension 4")
    kind = _type_of(dec, J, tol)
    if kind is JType.TYPE_I:
        d = oriented(dec, J)
        g = d.gamma[:, 0]
        return [d.e1, d.e2, g, J @ g]
    if kind is JType.TYPE_II:
        return [dec.e1, dec.e2, J @ dec.e1, J @ dec.e2]
    raise NotTypeI("mixed structures have no adapted frame")


@dataclass(frozen=True, eq=False)
class FoundFrame:
    i: int
    j: int
    lam: float
    mu: float
    lam2: float
    mu2: float
    J: np.ndarray


def search_type2_hermitian(L: MetricLieAlgebra, grid_steps: int, tol: float | None = None) -> list[FoundFrame]:
    """Grid search for Hermitian Type II structures on a four-dimensional algebra.

    Candidates are J e1 = lam g1 + mu g2 and J e2 = lam2 g1 + mu2 g2 with
    (lam, mu) = (cos 2 pi i / N, sin 2 pi i / N) and likewise (lam2, mu2) for j,
    where g1, g2 is the Gamma basis. Orthogonal pairs are completed to a
    compatible J and kept when the ten Type II equations hold. Results are
    ordered by (i, j).
    """
    tol = resolve(tol)
    if L.dim != 4:
        raise WrongDimension("the Type II search is implemented for dimension 4")
    if grid_steps < 1:
        raise ValueError("grid_steps must be positive")
    dec = frame_decomposition(L, tol)
    g1, g2 = dec.gamma_basis
    angles = 2 * np.pi * np.arange(grid_steps) / grid_steps
    cs, sn = np.cos(angles), np.sin(angles)
    found = []
    for i, j in itertools.product(range(grid_steps), repeat=2):
        if abs(cs[i] * cs[j] + sn[i] * sn[j]) > tol:
            continue
        u01 = cs[i] * g1 + sn[i] * g2
        u02 = cs[j] * g1 + sn[j] * g2
        J = type2_construct(dec, u01, u02, tol=tol).J
        if not is_compatible(L, J, tol)[0]:
            continue
        if theorem4_check(dec, J, tol).ok:
            found.append(FoundFrame(i, j, float(cs[i]), float(sn[i]), float(cs[j]), float(sn[j]), J))
    return found
