# Copyright 2025 InstaDeep Ltd
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Dense symmetric-matrix kernels.

Every inverse in the package is realized through a Cholesky factorization: either as a solve
against an explicit right-hand side, or, where one inverse is reused by many trace terms of the
same evaluation, as a solve against the identity (`spd_inverse`).
"""
from __future__ import annotations

import numpy as np
from numpy.typing import NDArray
from scipy import linalg

from splitcif.exceptions import DimensionMismatch, NotPositiveDefinite, NotPsd
from splitcif.symmat.sym_matrix import MatrixLike, SymMatrix, as_array

CholeskyFactor = tuple[NDArray[np.floating], bool]


def is_psd(matrix: MatrixLike, tol: float = 0.0) -> bool:
    """
    Check positive semi-definiteness through the smallest eigenvalue.

    An eigenvalue bound is used rather than Cholesky success, since Cholesky fails on the
    semi-definite matrices (e.g. a zero dependent part) that are legitimate inputs.

    Args:
        matrix: Symmetric matrix to test.
        tol: Non-negative relative tolerance.

    Returns:
        True iff min eig(M) >= -tol * (1 + max|entry|).
    """
    array = as_array(matrix)
    min_eigenvalue = float(linalg.eigvalsh(array, check_finite=False)[0])
    return min_eigenvalue >= -tol * (1.0 + float(np.max(np.abs(array))))


def loewner_leq(lower: MatrixLike, upper: MatrixLike, tol: float = 0.0) -> bool:
    """Return True iff lower <= upper in the Loewner order, i.e. upper - lower is PSD."""
    return is_psd(as_array(upper) - as_array(lower), tol)


def cholesky_factor(matrix: MatrixLike) -> CholeskyFactor:
    """
    Return the lower Cholesky factor in scipy's `cho_factor` format.

    Raises:
        NotPositiveDefinite: If the factorization meets a non-positive pivot.
    """
    try:
        return linalg.cho_factor(as_array(matrix), lower=True, check_finite=False)
    except linalg.LinAlgError as error:
        raise NotPositiveDefinite(f"Matrix is not positive definite: {error}") from error


def logdet_from_factor(factor: CholeskyFactor) -> float:
    """Return ln det M = 2 * sum(ln L_kk) from a Cholesky factor of M."""
    return 2.0 * float(np.sum(np.log(np.diag(factor[0]))))


def chol_logdet(matrix: MatrixLike) -> float:
    """
    Return ln det M through the Cholesky factor of M.

    Raises:
        NotPositiveDefinite: If M is not positive definite within machine precision.
    """
    return logdet_from_factor(cholesky_factor(matrix))


def spd_solve(matrix: MatrixLike, rhs: NDArray[np.floating]) -> NDArray[np.floating]:
    """
    Solve M X = B for symmetric positive definite M (backward-stable Cholesky solve).

    Args:
        matrix: n x n symmetric positive definite matrix.
        rhs: Right-hand side with n rows (vector or n x k matrix).

    Raises:
        DimensionMismatch: If rhs does not have n rows.
        NotPositiveDefinite: If M is not positive definite.
    """
    array = as_array(matrix)
    rhs = np.asarray(rhs, dtype=np.float64)
    if rhs.shape[0] != array.shape[0]:
        raise DimensionMismatch(
            f"Right-hand side has {rhs.shape[0]} rows, expected {array.shape[0]}."
        )
    return linalg.cho_solve(cholesky_factor(array), rhs, check_finite=False)


def spd_inverse(matrix: MatrixLike) -> NDArray[np.floating]:
    """Return the symmetrized inverse of an SPD matrix, computed as a solve against I."""
    array = as_array(matrix)
    inverse = linalg.cho_solve(
        cholesky_factor(array), np.eye(array.shape[0]), check_finite=False
    )
    return 0.5 * (inverse + inverse.T)


def trace_product(first: MatrixLike, second: MatrixLike) -> float:
    """
    Return tr{AB} for symmetric A and B as sum_ij A_ij * B_ij.

    The elementwise form is symmetric in its arguments, so trace_product(A, B) and
    trace_product(B, A) perform the same summation and agree exactly.

    Raises:
        DimensionMismatch: If A and B differ in shape.
    """
    a, b = as_array(first), as_array(second)
    if a.shape != b.shape:
        raise DimensionMismatch(f"Cannot take tr{{AB}} of shapes {a.shape} and {b.shape}.")
    return float(np.sum(a * b))


def psd_sqrt(matrix: MatrixLike) -> SymMatrix:
    """Return the symmetric PSD square root, clipping rounding-level negative eigenvalues."""
    eigenvalues, eigenvectors = linalg.eigh(as_array(matrix), check_finite=False)
    root = np.sqrt(np.clip(eigenvalues, 0.0, None))
    return SymMatrix(entries=(eigenvectors * root) @ eigenvectors.T)


def clip_psd(matrix: MatrixLike, tol: float = 1e-9) -> tuple[SymMatrix, int]:
    """
    Clip rounding-level negative eigenvalues to zero.

    Args:
        matrix: Symmetric matrix that is PSD up to rounding.
        tol: Relative tolerance; eigenvalues in [-tol * (1 + max|entry|), 0) are clipped.

    Returns:
        The clipped matrix (the input itself when nothing was clipped) and the number of
        clipped eigenvalues.

    Raises:
        NotPsd: If an eigenvalue lies below the tolerance band.
    """
    array = as_array(matrix)
    eigenvalues, eigenvectors = linalg.eigh(array, check_finite=False)
    floor = -tol * (1.0 + float(np.max(np.abs(array))))
    if eigenvalues[0] < floor:
        raise NotPsd(f"Smallest eigenvalue {eigenvalues[0]:.3e} is below {floor:.3e}.")
    negative = eigenvalues < 0.0
    clipped_count = int(np.count_nonzero(negative))
    if clipped_count == 0:
        return SymMatrix(entries=array), 0
    eigenvalues = np.where(negative, 0.0, eigenvalues)
    return SymMatrix(entries=(eigenvectors * eigenvalues) @ eigenvectors.T), clipped_count
