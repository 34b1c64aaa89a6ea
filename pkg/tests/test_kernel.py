"""Diagonal reproducing kernels: point evaluation, Gram matrices, membership."""

import warnings

import numpy as np
import pytest

from dirseries import (
    KernelSpec,
    construction_ii_coeffs,
    gram_matrix,
    halfplane_constants,
    kappa,
    membership_ratio,
    ones,
    power_shift,
)

ZETA_2 = 1.64493406684822643647
ZETA_4 = 1.08232323371113819152


def zeta_spec():
    return KernelSpec(ones(), 1.0, 0.0)


def test_kappa_reduces_to_zeta():
    got = kappa(zeta_spec(), 2.0 + 0j, 2.0 + 0j, 10**4)
    assert got.value.real == pytest.approx(ZETA_4, abs=1e-8)
    assert got.value.imag == pytest.approx(0.0, abs=1e-15)


def test_kappa_conjugate_symmetry():
    spec = zeta_spec()
    s, u = 1.2 + 0.7j, 0.9 - 0.3j
    a = kappa(spec, s, u, 2000).value
    b = kappa(spec, u, s, 2000).value
    assert a == pytest.approx(b.conjugate(), abs=1e-14)


def test_kappa_warns_outside_halfplane():
    spec = zeta_spec()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        kappa(spec, 0.3 + 0j, 0.3 + 0j, 100)
    assert any("diverge" in str(w.message).lower() for w in caught)


def test_gram_matrix_hermitian_psd():
    spec = zeta_spec()
    points = [1.0 + 0j, 1.2 + 0.5j, 1.5 - 1.0j, 2.0 + 0.2j]
    res = gram_matrix(spec, points, 5000)
    M = np.asarray(res.matrix)
    assert np.allclose(M, M.conj().T, atol=1e-12)
    assert res.psd
    eig = np.linalg.eigvalsh(M)
    assert eig.min() > -1e-10


def test_gram_matrix_construction_ii():
    seq = construction_ii_coeffs(2.0)
    spec = KernelSpec(seq, 2.0, 0.0)
    points = [1.3 + 0j, 1.6 + 0.4j, 2.2 - 0.9j]
    res = gram_matrix(spec, points, 5000)
    assert res.psd
    assert res.min_pivot > 0.0


def test_gram_single_point_is_diagonal_value():
    spec = zeta_spec()
    res = gram_matrix(spec, [2.0 + 0j], 10**4)
    assert res.matrix[0][0].real == pytest.approx(ZETA_4, abs=1e-8)


def test_membership_ratio_identity():
    # b = a = ones: ratio sum is sum 1/1 restricted by |b_m|^2 / a_m = 1, so it
    # diverges; use b_m = 1/m instead, giving sum m^-2 -> zeta(2)
    got = membership_ratio(zeta_spec(), power_shift(-1.0), 10**6)
    assert got.value == pytest.approx(ZETA_2, abs=1e-5)


def test_membership_ratio_rejects_zero_weight():
    from dirseries import unit
    from dirseries.errors import DirSeriesError

    spec = KernelSpec(unit(), 0.0, 0.0)
    with pytest.raises((DirSeriesError, ZeroDivisionError, ValueError)):
        membership_ratio(spec, ones(), 10)


def test_halfplane_constants():
    spec = KernelSpec(ones(), 1.0, 0.5)
    assert halfplane_constants(spec) == (0.5, 0.25)
