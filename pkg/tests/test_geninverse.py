import numpy as np
import pytest

from dualhs.errors import DimensionMismatch, NotSquare
from dualhs.geninverse import (
    InverseKind,
    complex_group_inverse,
    complex_mp,
    dggi,
    dmpgi,
    group_inverse_essential,
    inverse_report,
    mpdgi,
    ndmpi_hs,
    ndmpi_svd,
    verify_inverse,
)
from dualhs.hs import hs_decompose, hs_essential
from dualhs.matrix import DualMatrix, ToleranceConfig, dm_identity, dm_inverse
from dualhs.svd import nonessential_part

from helpers import corpus, gauss, max_part_diff

DIAG = DualMatrix(np.diag([1.0, 0]), np.diag([0.0, 1]))
NIL = DualMatrix([[0, 1], [0, 0]])
I2 = dm_identity(2)


def test_ndmpi_examples():
    assert max_part_diff(ndmpi_svd(I2), I2) <= 1e-12
    assert max_part_diff(ndmpi_svd(DIAG), DualMatrix(np.diag([1.0, 0]))) <= 1e-12
    assert max_part_diff(ndmpi_svd(NIL), DualMatrix([[0, 0], [1, 0]])) <= 1e-12
    assert max_part_diff(ndmpi_hs(hs_decompose(NIL)), DualMatrix([[0, 0], [1, 0]])) <= 1e-12


def test_ndmpi_representations_agree():
    for a in corpus(40, seed=21, max_size=10, square=True):
        x1, x2 = ndmpi_svd(a), ndmpi_hs(hs_decompose(a))
        assert max_part_diff(x1, x2) <= 1e-9 * max(1, np.abs(x1.dual).max())
        assert verify_inverse(a, x1, "ndmpi").exists


def test_ndmpi_exists_for_rectangular():
    for a in corpus(30, seed=22, max_size=7):
        assert verify_inverse(a, ndmpi_svd(a), InverseKind.NDMPI).exists


def test_group_inverse_essential_examples():
    assert max_part_diff(group_inverse_essential(hs_decompose(I2)).value, I2) <= 1e-12
    assert not group_inverse_essential(hs_decompose(NIL)).exists
    idem = DualMatrix([[1, 1], [0, 0]])
    rep = group_inverse_essential(hs_decompose(idem))
    assert rep.exists and max_part_diff(rep.value, idem) <= 1e-12


def test_group_inverse_essential_commutes():
    tol = ToleranceConfig()
    for a in corpus(40, seed=23, max_size=8, square=True):
        h = hs_decompose(a)
        rep = group_inverse_essential(h)
        if rep.exists:
            ae, x = hs_essential(h), rep.value
            assert tol.residual(ae @ x, x @ ae) <= 1


def test_mpdgi_examples():
    rng = np.random.default_rng(0)
    a = DualMatrix(gauss(rng, 3, 3), gauss(rng, 3, 3))
    assert max_part_diff(mpdgi(a), dm_inverse(a)) <= 1e-10
    assert max_part_diff(mpdgi(DIAG), DualMatrix(np.diag([1.0, 0]))) <= 1e-12
    x = mpdgi(DualMatrix([[1]], [[1]]))
    assert x.std[0, 0] == pytest.approx(1) and x.dual[0, 0] == pytest.approx(-1)


def test_dmpgi_examples():
    rng = np.random.default_rng(1)
    a = DualMatrix(gauss(rng, 3, 3), gauss(rng, 3, 3))
    rep = dmpgi(a)
    assert rep.exists and max_part_diff(rep.value, dm_inverse(a)) <= 1e-10
    rep = dmpgi(DIAG)
    assert not rep.exists and rep.value is None and rep.residuals["AXA=A"] > 1
    s = gauss(rng, 3, 2) @ gauss(rng, 2, 4)
    rep = dmpgi(DualMatrix(s))
    assert rep.exists and max_part_diff(rep.value, DualMatrix(np.linalg.pinv(s))) <= 1e-10


def test_dggi_examples():
    assert max_part_diff(dggi(I2).value, I2) <= 1e-12
    assert not dggi(NIL).exists
    rng = np.random.default_rng(2)
    a = DualMatrix(gauss(rng, 3, 3), gauss(rng, 3, 3))
    rep = dggi(a)
    assert rep.exists and max_part_diff(rep.value, dm_inverse(a)) <= 1e-10
    with pytest.raises(NotSquare):
        dggi(DualMatrix(np.ones((2, 3))))


def test_verify_examples():
    rep = verify_inverse(I2, I2, "dmpgi")
    assert rep.exists and all(v == 0 for v in rep.residuals.values())
    with pytest.raises(DimensionMismatch):
        verify_inverse(DualMatrix(np.ones((2, 3))), I2, "ndmpi")


def test_mpdgi_fails_ndmpi_equations_when_nonessential_part_present():
    # A_n = diag(0,1) eps and an off-diagonal coupling that MPDGI ignores
    a = DualMatrix(np.diag([1.0, 0]), [[0, 1], [1, 1]])
    assert np.abs(nonessential_part(a).dual).max() > 0.5
    assert not verify_inverse(a, mpdgi(a), "ndmpi").exists
    assert verify_inverse(a, ndmpi_svd(a), "ndmpi").exists


def test_ndmpi_is_dmpgi_when_no_nonessential_part():
    rng = np.random.default_rng(5)
    for _ in range(10):
        s = gauss(rng, 4, 2) @ gauss(rng, 2, 4)
        # dual part living in the range/corange of A_s keeps A_n = 0
        d = s @ gauss(rng, 4, 4) + gauss(rng, 4, 4) @ s
        a = DualMatrix(s, d)
        assert np.abs(nonessential_part(a).dual).max() <= 1e-9
        x = ndmpi_svd(a)
        assert verify_inverse(a, x, "dmpgi").exists
        rep = dmpgi(a)
        assert rep.exists and verify_inverse(a, rep.value, "ndmpi").exists


def test_dmpgi_absent_whenever_nonessential_part_present():
    # the DMPGI candidate satisfies AXA = A only if (I - A_s A_s^+) A_d (I - A_s^+ A_s) = 0,
    # which is A_n = 0; so "DMPGI satisfies the NDMPI equations iff A_n = 0" holds vacuously
    rng = np.random.default_rng(8)
    for _ in range(20):
        s = gauss(rng, 4, 2) @ gauss(rng, 2, 4)
        a = DualMatrix(s, gauss(rng, 4, 4))
        assert np.abs(nonessential_part(a).dual).max() > 1e-6
        assert not dmpgi(a).exists
    assert not dmpgi(DualMatrix(np.zeros((2, 2)), [[1, 0], [0, 0]])).exists


def test_mpdgi_equals_ndmpi_for_invertible_std():
    rng = np.random.default_rng(6)
    for _ in range(10):
        a = DualMatrix(gauss(rng, 4, 4), gauss(rng, 4, 4))
        assert max_part_diff(mpdgi(a), ndmpi_svd(a)) <= 1e-9 * max(1, np.abs(mpdgi(a).dual).max())


def test_inverse_report():
    assert not inverse_report(DIAG).exists
    assert inverse_report(I2).exists


def test_complex_helpers():
    rng = np.random.default_rng(7)
    a = gauss(rng, 4, 2) @ gauss(rng, 2, 3)
    assert np.allclose(complex_mp(a), np.linalg.pinv(a))
    assert complex_group_inverse(np.array([[0, 1], [0, 0]])) is None
    g = complex_group_inverse(np.array([[1, 1], [0, 0]]))
    assert np.allclose(g, [[1, 1], [0, 0]])
