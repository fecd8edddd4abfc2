import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lie2herm import catalog
from lie2herm.errors import DegeneratePlane, NotHermitian, NotOrthonormal
from lie2herm.geometry import (
    Connection,
    TorsionTensor,
    bismut_connection,
    curvature,
    levi_civita_closed_form,
    levi_civita_koszul,
    metric_residual,
    parallel_residual,
    sectional_curvature,
    sectional_curvature_closed_form,
    torsion,
    torsion_free_residual,
    type1_torsion_closed_form,
    type2_torsion_closed_form,
)
from lie2herm.hermitian import c_form, classify_J_type, complement_basis
from lie2herm.instances import type1_hermitian, type2_hermitian
from lie2herm.lie2 import MetricLieAlgebra, decompose, random_valid, standard_decomposition

from .conftest import basis, entry_dec

HERMITIAN = ["ex8-A412-typeI", "ex9-h3R-typeI", "ex10-A412-typeII", "ex12-rr-typeII", "ex13-A64-typeI"]


def test_abelian_connection_is_zero():
    L = MetricLieAlgebra(np.zeros((4, 4, 4)))
    assert np.abs(levi_civita_koszul(L).coeffs).max() == 0
    assert np.abs(curvature(levi_civita_koszul(L), L)).max() == 0
    assert sectional_curvature(L, basis(4, 1), basis(4, 3)) == 0


def test_koszul_a412(ex8):
    conn = levi_civita_koszul(ex8.algebra)
    assert np.allclose(conn.apply(basis(4, 1), basis(4, 1)), -basis(4, 3))


def test_koszul_h3r_by_hand(ex9):
    # single bracket [e3, e4] = e1
    conn = levi_civita_koszul(ex9.algebra)
    assert np.allclose(conn.apply(basis(4, 3), basis(4, 4)), 0.5 * basis(4, 1))
    assert np.allclose(conn.apply(basis(4, 3), basis(4, 1)), -0.5 * basis(4, 4))


def test_closed_form_a64(ex13):
    conn = levi_civita_closed_form(entry_dec(ex13))
    assert np.allclose(conn.apply(basis(6, 5), basis(6, 6)), 0.5 * basis(6, 1))


def test_closed_form_zero():
    conn = levi_civita_closed_form(standard_decomposition(6))
    assert np.abs(conn.coeffs).max() == 0


def test_levi_civita_axioms_catalog():
    for e in catalog.entries():
        conn = levi_civita_koszul(e.algebra)
        assert metric_residual(conn, e.algebra.G) <= 1e-9
        assert torsion_free_residual(conn, e.algebra) <= 1e-9
        assert torsion(conn, e.algebra).max_abs() <= 1e-9


def test_koszul_vs_closed_form_catalog():
    for e in catalog.entries():
        dec = entry_dec(e)
        diff = levi_civita_koszul(e.algebra).coeffs - levi_civita_closed_form(dec).coeffs
        assert np.abs(diff).max() <= 1e-9, e.name


@given(st.integers(0, 10**6), st.sampled_from(["proportional", "nilpotent", "free"]), st.sampled_from([4, 6]))
def test_koszul_vs_closed_form_random(seed, family, n):
    if family == "nilpotent" and n < 6:
        return
    L = random_valid(seed, n, family)
    diff = levi_civita_koszul(L).coeffs - levi_civita_closed_form(decompose(L)).coeffs
    assert np.abs(diff).max() <= 1e-9


def test_koszul_with_nonidentity_metric():
    rng = np.random.default_rng(1)
    A = rng.normal(size=(4, 4))
    G = A @ A.T + 4 * np.eye(4)
    L = MetricLieAlgebra(catalog.get("ex8-A412-typeI").algebra.C, G)
    conn = levi_civita_koszul(L)
    assert metric_residual(conn, G) <= 1e-9
    assert torsion_free_residual(conn, L) <= 1e-9


def test_curvature_antisymmetric():
    for e in catalog.entries():
        R = curvature(levi_civita_koszul(e.algebra), e.algebra)
        assert np.abs(R + R.transpose(1, 0, 2, 3)).max() <= 1e-12


def test_sectional_examples(ex8, ex9):
    assert abs(sectional_curvature(ex8.algebra, basis(4, 1), basis(4, 2)) + 1.0) <= 1e-12
    assert abs(sectional_curvature(ex9.algebra, basis(4, 3), basis(4, 4)) + 0.75) <= 1e-12
    assert abs(sectional_curvature_closed_form(entry_dec(ex8), "e1e2") + 1.0) <= 1e-12


def test_sectional_closed_form_a64(ex13):
    k = sectional_curvature_closed_form(entry_dec(ex13), "uv", basis(6, 5), basis(6, 6))
    assert abs(k + 0.75) <= 1e-12


def test_sectional_zero_decomposition():
    dec = standard_decomposition(4)
    for which in ("e1e2", "e1u", "e2u"):
        assert sectional_curvature_closed_form(dec, which, basis(4, 3)) == 0
    assert sectional_curvature_closed_form(dec, "uv", basis(4, 3), basis(4, 4)) == 0


def test_sectional_errors(ex8):
    with pytest.raises(DegeneratePlane):
        sectional_curvature(ex8.algebra, basis(4, 1), 2 * basis(4, 1))
    dec = entry_dec(ex8)
    with pytest.raises(NotOrthonormal):
        sectional_curvature_closed_form(dec, "e1u", basis(4, 1))
    with pytest.raises(NotOrthonormal):
        sectional_curvature_closed_form(dec, "uv", basis(4, 3), basis(4, 3))


def _unit_pair(rng, m):
    Q, _ = np.linalg.qr(rng.normal(size=(m, 2)))
    return Q[:, 0], Q[:, 1]


@given(st.integers(0, 10**6), st.sampled_from([4, 6]))
def test_sectional_closed_forms_random(seed, n):
    L = random_valid(seed, n)
    dec = decompose(L)
    R = curvature(levi_civita_koszul(L), L)
    p, q = _unit_pair(np.random.default_rng(seed), n - 2)
    u, v = dec.gamma @ p, dec.gamma @ q
    pairs = {"e1e2": (dec.e1, dec.e2), "e1u": (dec.e1, u), "e2u": (dec.e2, u), "uv": (u, v)}
    for which, (X, Y) in pairs.items():
        k = sectional_curvature(L, X, Y, R)
        assert abs(k - sectional_curvature_closed_form(dec, which, u, v)) <= 1e-8, which


def test_bismut_tables():
    for name in ["ex8-A412-typeI", "ex9-h3R-typeI", "ex12-rr-typeII", "ex13-A64-typeI"]:
        e = catalog.get(name)
        B = bismut_connection(e.algebra, e.J, c_form(e.algebra, e.J))
        expected = catalog.table_to_array(e.expected.bismut, e.dim)
        assert np.abs(B.coeffs - expected).max() <= 1e-9, name


def test_bismut_same_for_both_a412_structures(ex8, ex10):
    B8 = bismut_connection(ex8.algebra, ex8.J, c_form(ex8.algebra, ex8.J))
    B10 = bismut_connection(ex10.algebra, ex10.J, c_form(ex10.algebra, ex10.J))
    assert np.abs(B8.coeffs - B10.coeffs).max() <= 1e-12


def test_bismut_kahler_is_levi_civita(ex12):
    B = bismut_connection(ex12.algebra, ex12.J, c_form(ex12.algebra, ex12.J))
    assert np.abs(B.coeffs - levi_civita_koszul(ex12.algebra).coeffs).max() <= 1e-12
    assert torsion(B, ex12.algebra).max_abs() <= 1e-12


def test_bismut_refuses_non_hermitian(mixed):
    from lie2herm.algebra import KForm

    with pytest.raises(NotHermitian):
        bismut_connection(mixed.algebra, mixed.J, KForm.zero(4, 3))
    with pytest.raises(NotHermitian):
        bismut_connection(mixed.algebra, mixed.J, KForm.zero(4, 3), integrable=False, compatible=True)


def test_bismut_axioms_catalog():
    for name in HERMITIAN:
        e = catalog.get(name)
        B = bismut_connection(e.algebra, e.J, c_form(e.algebra, e.J))
        assert metric_residual(B, e.algebra.G) <= 1e-9
        assert parallel_residual(B, e.J) <= 1e-9


def test_torsion_a412(ex8):
    B = bismut_connection(ex8.algebra, ex8.J, c_form(ex8.algebra, ex8.J))
    T = torsion(B, ex8.algebra)
    assert np.allclose(T.apply(basis(4, 1), basis(4, 2)), -2 * basis(4, 4))


def test_c_equals_torsion_pairing():
    for name in HERMITIAN:
        e = catalog.get(name)
        L = e.algebra
        c = c_form(L, e.J)
        T = torsion(bismut_connection(L, e.J, c), L).components
        # <X, T(Y, Z)> on basis triples
        pairing = np.einsum("xk,yzk->xyz", L.G, T)
        assert np.abs(pairing - c.to_dense()).max() <= 1e-9


def test_torsion_tensor_antisymmetry_exact():
    A = np.random.default_rng(0).normal(size=(4, 4, 4))
    T = TorsionTensor(A)
    assert np.array_equal(T.components, -T.components.transpose(1, 0, 2))


def test_connection_dimension_check():
    with pytest.raises(Exception):
        Connection(np.zeros((3, 3, 2)))


def _torsion_pair(L, J):
    B = bismut_connection(L, J, c_form(L, J))
    return torsion(B, L).components


def test_type1_torsion_closed_form_catalog():
    for name in ["ex8-A412-typeI", "ex9-h3R-typeI", "ex13-A64-typeI"]:
        e = catalog.get(name)
        Tc = type1_torsion_closed_form(entry_dec(e), e.J).components
        assert np.abs(_torsion_pair(e.algebra, e.J) - Tc).max() <= 1e-9, name


def test_type2_torsion_closed_form_catalog():
    for name in ["ex10-A412-typeII", "ex12-rr-typeII"]:
        e = catalog.get(name)
        dec = entry_dec(e)
        t = classify_J_type(e.algebra, e.J, dec)
        Tc = type2_torsion_closed_form(dec, e.J, complement_basis(dec, t.u01, t.u02)).components
        assert np.abs(_torsion_pair(e.algebra, e.J) - Tc).max() <= 1e-9, name


@given(st.integers(0, 10**6), st.sampled_from([4, 6]))
def test_type1_torsion_closed_form_random(seed, n):
    inst = type1_hermitian(seed, n)
    Tc = type1_torsion_closed_form(inst.dec, inst.J).components
    assert np.abs(_torsion_pair(inst.L, inst.J) - Tc).max() <= 1e-9


@given(st.integers(0, 10**6), st.sampled_from([4, 6, 8]))
def test_type2_torsion_closed_form_random(seed, n):
    inst = type2_hermitian(seed, n)
    dec = inst.dec
    t = classify_J_type(inst.L, inst.J, dec)
    Tc = type2_torsion_closed_form(dec, inst.J, complement_basis(dec, t.u01, t.u02)).components
    assert np.abs(_torsion_pair(inst.L, inst.J) - Tc).max() <= 1e-9
