"""Diagonal Dirichlet-series kernels: evaluation, Gram matrices, membership.

kappa(s, u) = sum a_n n^{-s - conj(u)} with positive a_n is a positive
semi-definite kernel; the associated Hilbert space contains sum b_n n^{-s}
exactly when sum |b_n|^2 / a_n converges.
"""

import warnings
from dataclasses import dataclass
from math import fsum
from typing import List

import numpy as np

from .series import CoefficientSequence, EvalResult, _Kahan, evaluate

PIVOT_TOL = -1e-8


@dataclass
class KernelSpec:
    a: CoefficientSequence
    sigma_a_estimate: float
    delta_a_estimate: float


@dataclass
class GramResult:
    points: List[complex]
    matrix: np.ndarray  # Hermitian complex matrix of kernel values
    psd: bool
    min_pivot: float


def kappa(spec, s, u, n):
    """Partial sum of the kernel at (s, u); warns outside the estimated domain."""
    s = complex(s)
    u = complex(u)
    if s.real + u.real <= spec.sigma_a_estimate:
        warnings.warn(
            f"Re(s)+Re(u) = {s.real + u.real:.6g} is not beyond the estimated "
            f"abscissa {spec.sigma_a_estimate:.6g}; the kernel series may diverge",
            stacklevel=2,
        )
    return evaluate(spec.a, s + u.conjugate(), n, tail=True)


def gram_matrix(spec, points, n):
    """Hermitian matrix of kernel values with a pivoted-factorization PSD check."""
    points = [complex(p) for p in points]
    k = len(points)
    if k == 0:
        raise ValueError("need at least one point")
    values = spec.a.materialize(n)
    matrix = np.zeros((k, k), dtype=complex)
    for i in range(k):
        for j in range(i, k):
            z = points[i] + points[j].conjugate()
            acc = _Kahan(0j)
            for m, am in enumerate(values, 1):
                if am != 0:
                    acc.add(am * m ** (-z))
            matrix[i, j] = acc.total
            if j != i:
                matrix[j, i] = acc.total.conjugate()
    psd, min_pivot = _psd_check(matrix)
    return GramResult(points, matrix, psd, min_pivot)


def _psd_check(matrix, tol=PIVOT_TOL):
    """Pivoted Cholesky on a Hermitian matrix; PSD iff no pivot below tol.

    Diagonal pivoting with a Higham-style rank cutoff; no eigen-solver is
    involved, so the outcome is deterministic.
    """
    a = np.array(matrix, dtype=complex)
    k = a.shape[0]
    min_pivot = float("inf")
    first_pivot = None
    for i in range(k):
        diag = np.real(np.diag(a))
        j = i + int(np.argmax(diag[i:]))
        pivot = float(diag[j])
        min_pivot = min(min_pivot, pivot)
        if first_pivot is None:
            first_pivot = max(pivot, 0.0)
        if pivot < tol:
            return False, min_pivot
        if pivot <= 0.5 * k * np.finfo(float).eps * first_pivot:
            # rank exhausted; remaining diagonal is numerically zero
            min_pivot = min(min_pivot, float(np.min(diag[i:])))
            break
        if j != i:
            a[[i, j], :] = a[[j, i], :]
            a[:, [i, j]] = a[:, [j, i]]
        root = np.sqrt(pivot)
        a[i, i] = root
        if i + 1 < k:
            col = a[i + 1 :, i] / root
            a[i + 1 :, i] = col
            a[i + 1 :, i + 1 :] -= np.outer(col, col.conjugate())
    return min_pivot >= tol, min_pivot


def membership_ratio(spec, b, n):
    """Partial sum of |b_m|^2 / a_m; bounded iff b's series lies in the space."""
    av = spec.a.materialize(n)
    bv = b.materialize(n)
    acc = _Kahan()
    for am, bm in zip(av, bv):
        if am <= 0:
            raise ValueError("kernel coefficients must be strictly positive")
        acc.add(abs(bm) ** 2 / am)
    return EvalResult(acc.total, n, None)


def halfplane_constants(spec):
    """Edges of the common-domain and multiplier-bound half-planes."""
    return spec.sigma_a_estimate / 2.0, spec.delta_a_estimate / 2.0
