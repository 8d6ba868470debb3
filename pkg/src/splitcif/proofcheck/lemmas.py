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
Numerical checks of the matrix lemmas behind the convexity of ln det P(w).

Each function returns the residual (or signed gap) of one lemma or identity on concrete inputs;
deciding whether it is small enough is left to the caller, which knows the scale of its inputs.
"""
from __future__ import annotations

from collections.abc import Sequence
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from splitcif.exceptions import DimensionMismatch, NotPositiveDefinite, NotPsd, PreconditionViolated
from splitcif.objective import SplitFamilyPoint, SplitPair
from splitcif.objective.derivatives import (
    decomposed_terms_at,
    intermediate_bound_at,
    lower_bound_at,
)
from splitcif.symmat import (
    MatrixLike,
    as_array,
    cholesky_factor,
    is_psd,
    loewner_leq,
    spd_inverse,
    trace_product,
)

PRECONDITION_TOLERANCE = 1e-9


class Lemma5Gap(NamedTuple):
    """Signed gap of the trace inequality and the residual of its closed form."""

    gap: float
    identity_residual: float


class P3IdentityResiduals(NamedTuple):
    """Max-entry residuals of the three inverse identities relating P1, P2, P3 and B3."""

    r1: float
    r2: float
    r3: float


class TBoundGaps(NamedTuple):
    """T1 and T2 minus their trace lower bounds."""

    gap1: float
    gap2: float


def _max_abs(array: NDArray[np.floating]) -> float:
    return float(np.max(np.abs(array)))


def lemma4_trace(M1: MatrixLike, M2: MatrixLike) -> float:
    """
    Return tr{M1 M2} for PSD M1 and M2; the trace of a product of two PSD matrices is
    non-negative.

    Raises:
        NotPsd: If either argument fails the PSD check.
    """
    for name, matrix in (("M1", M1), ("M2", M2)):
        if not is_psd(matrix, PRECONDITION_TOLERANCE):
            raise NotPsd(f"{name} is not positive semi-definite.")
    return trace_product(M1, M2)


def lemma5_gap(X: MatrixLike, Y: MatrixLike, Z: MatrixLike) -> Lemma5Gap:
    """
    Check the trace inequality for 0 < X <= Y and 0 <= Z <= X:

        tr{2 X^-1 Z - 2 Y^-1 Z - X^-1 Z X^-1 Z + Y^-1 Z Y^-1 Z}
            >= tr{(X^-1 - Y^-1) Z (X^-1 - Y^-1) Z}.

    The difference of the two sides equals 2 tr{(Z - Z X^-1 Z)(X^-1 - Y^-1)}, a trace of two PSD
    matrices. That form needs no inverse of Z, so it also covers singular Z.

    Returns:
        The gap (left minus right side) and |gap - 2 tr{(Z - Z X^-1 Z)(X^-1 - Y^-1)}|.

    Raises:
        PreconditionViolated: Naming the Loewner ordering that does not hold.
    """
    x, y, z = as_array(X), as_array(Y), as_array(Z)
    if not x.shape == y.shape == z.shape:
        raise DimensionMismatch(f"Shapes differ: X {x.shape}, Y {y.shape}, Z {z.shape}.")
    try:
        cholesky_factor(x)
    except NotPositiveDefinite as error:
        raise PreconditionViolated("0 < X does not hold.") from error
    if not loewner_leq(x, y, PRECONDITION_TOLERANCE):
        raise PreconditionViolated("X <= Y does not hold.")
    if not is_psd(z, PRECONDITION_TOLERANCE):
        raise PreconditionViolated("0 <= Z does not hold.")
    if not loewner_leq(z, x, PRECONDITION_TOLERANCE):
        raise PreconditionViolated("Z <= X does not hold.")

    x_inv = spd_inverse(x)
    y_inv = spd_inverse(y)
    x_inv_z = x_inv @ z
    y_inv_z = y_inv @ z
    lhs = (
        2.0 * np.trace(x_inv_z)
        - 2.0 * np.trace(y_inv_z)
        - np.sum(x_inv_z * x_inv_z.T)
        + np.sum(y_inv_z * y_inv_z.T)
    )
    inverse_gap = x_inv - y_inv
    gap_z = inverse_gap @ z
    rhs = np.sum(gap_z * gap_z.T)
    gap = float(lhs - rhs)

    shrunk = z - z @ x_inv @ z
    closed_form = 2.0 * trace_product(0.5 * (shrunk + shrunk.T), inverse_gap)
    return Lemma5Gap(gap=gap, identity_residual=abs(gap - closed_form))


def p3_identity_residuals(P1: MatrixLike, P2: MatrixLike) -> P3IdentityResiduals:
    """
    Residuals of the inverse identities, with P3 = P1 + P2 and B3 = P1^-1 + P2^-1:

        r1 = |P3^-1 - P2^-1 B3^-1 P1^-1|,
        r2 = |P1^-1 - P3^-1 - P1^-1 B3^-1 P1^-1|,
        r3 = |P2^-1 - P3^-1 - P2^-1 B3^-1 P2^-1|,

    each measured as the largest absolute entry.

    Raises:
        NotPositiveDefinite: If P1 or P2 is not positive definite.
    """
    p1, p2 = as_array(P1), as_array(P2)
    p1_inv = spd_inverse(p1)
    p2_inv = spd_inverse(p2)
    p3_inv = spd_inverse(p1 + p2)
    b3_inv = spd_inverse(p1_inv + p2_inv)
    return P3IdentityResiduals(
        r1=_max_abs(p3_inv - p2_inv @ b3_inv @ p1_inv),
        r2=_max_abs(p1_inv - p3_inv - p1_inv @ b3_inv @ p1_inv),
        r3=_max_abs(p2_inv - p3_inv - p2_inv @ b3_inv @ p2_inv),
    )


def cyclic_trace_residual(chain: Sequence[ArrayLike]) -> float:
    """
    Return max over cyclic rotations of |tr{rotated product} - tr{product}|.

    Raises:
        DimensionMismatch: If the chain has fewer than two factors, neighbors do not conform or
            the product is not square.
    """
    factors = [np.atleast_2d(np.asarray(factor, dtype=np.float64)) for factor in chain]
    if len(factors) < 2:
        raise DimensionMismatch("A trace chain needs at least two factors.")
    for index, (left, right) in enumerate(zip(factors, factors[1:])):
        if left.shape[1] != right.shape[0]:
            raise DimensionMismatch(
                f"Factors {index} {left.shape} and {index + 1} {right.shape} do not conform."
            )
    if factors[0].shape[0] != factors[-1].shape[1]:
        raise DimensionMismatch("The product of the chain is not square.")

    reference = float(np.trace(np.linalg.multi_dot(factors)))
    residual = 0.0
    for shift in range(1, len(factors)):
        rotated = factors[shift:] + factors[:shift]
        residual = max(residual, abs(float(np.trace(np.linalg.multi_dot(rotated))) - reference))
    return residual


def t_bound_gaps(pair: SplitPair, w: float) -> TBoundGaps:
    """
    Return T1 - tr{(P1^-1 - P3^-1) D1 (P1^-1 - P3^-1) D1} and the analogue for T2.

    Both are the trace inequality applied with X = P1 (or P2), Y = P3 and Z = D1 (or D2); its
    preconditions hold since P3 >= P1 = D1 + P1i >= D1 >= 0. Both gaps are therefore
    non-negative up to rounding.
    """
    point = SplitFamilyPoint(pair, w)
    decomposed, _ = decomposed_terms_at(point)
    excess1 = (point.P1_inv - point.P3_inv) @ point.D1
    excess2 = (point.P2_inv - point.P3_inv) @ point.D2
    bound1 = float(np.sum(excess1 * excess1.T))
    bound2 = float(np.sum(excess2 * excess2.T))
    return TBoundGaps(gap1=decomposed.T1 - bound1, gap2=decomposed.T2 - bound2)


def chain_residual(pair: SplitPair, w: float) -> float:
    """Return |intermediate bound - tr{B3^-1 C B3^-1 C}|; the two are algebraically equal."""
    point = SplitFamilyPoint(pair, w)
    return abs(intermediate_bound_at(point) - lower_bound_at(point))
