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
Seeded randomized verification of the whole convexity argument.

Every check runs once per trial. Trial t works in dimension dims[t % len(dims)] with its own seed,
spawned from a SplitMix64 stream seeded by the configured seed, so a report is a deterministic
function of its configuration. A check computes a normalized residual (0 when the property holds
exactly) and passes when the residual stays within the check's tolerance.
"""
from __future__ import annotations

from datetime import datetime, timezone

import numpy as np
from loguru import logger
from pydantic import field_validator

from splitcif.objective import (
    SplitFamilyPoint,
    SplitPair,
    evaluate,
    logdet_objective,
)
from splitcif.objective.derivatives import d1_at
from splitcif.optimizer import OptimizeResult, grid_scan, minimize_w
from splitcif.proofcheck.families import MatrixFamily, SplitCovarianceFamily, jacobi_residual
from splitcif.proofcheck.fixtures import admissible_triple, random_split_pair
from splitcif.proofcheck.lemmas import (
    cyclic_trace_residual,
    lemma4_trace,
    lemma5_gap,
    p3_identity_residuals,
    t_bound_gaps,
)
from splitcif.symmat import SplitMix64, random_pd, random_psd, trace_product
from splitcif.utils import FrozenPydanticBaseModel, PydanticBaseModel

W_SAMPLES = tuple(float(w) for w in np.linspace(0.01, 0.99, 21))
ORACLE_W_TOLERANCE = 2e-5
ORACLE_OBJECTIVE_TOLERANCE = 1e-10


class VerifyConfig(FrozenPydanticBaseModel):
    """
    Configuration of the randomized verification suite.

    Attributes:
        seed: Master seed.
        trials: Number of trials per check.
        dims: Dimensions cycled through by the trials.
        oracle_samples: Grid size of the brute-force oracle the optimizer is compared with.
    """

    seed: int = 42
    trials: int = 200
    dims: list[int] = [1, 2, 3, 5, 8]
    oracle_samples: int = 100001

    @field_validator("trials")
    @classmethod
    def check_trials(cls, value: int) -> int:  # noqa: D102
        if value < 1:
            raise ValueError(f"trials must be at least 1, got {value}.")
        return value

    @field_validator("dims")
    @classmethod
    def check_dims(cls, value: list[int]) -> list[int]:  # noqa: D102
        if not value:
            raise ValueError("dims must not be empty.")
        if any(n < 1 for n in value):
            raise ValueError(f"All dims must be positive, got {value}.")
        return value

    @field_validator("oracle_samples")
    @classmethod
    def check_oracle_samples(cls, value: int) -> int:  # noqa: D102
        if value < 3:
            raise ValueError(f"oracle_samples must be at least 3, got {value}.")
        return value


class CheckSummary(PydanticBaseModel):
    """Outcome of one check over all trials."""

    name: str
    trials: int = 0
    passed: int = 0
    failed: int = 0
    worst_residual: float = 0.0
    tolerance: float

    def record(self, residual: float) -> None:
        """Count one trial with the given normalized residual."""
        self.trials += 1
        if residual <= self.tolerance:
            self.passed += 1
        else:
            self.failed += 1
        self.worst_residual = max(self.worst_residual, residual)


class VerifyReport(PydanticBaseModel):
    """
    Report of a verification run.

    Attributes:
        seed: Master seed of the run.
        trials: Trials per check.
        dims: Dimensions cycled through.
        oracle_samples: Grid size of the optimizer oracle.
        timestamp: UTC time of the run, the only field that differs between repeated runs.
        checks: One summary per check.
        overall_pass: True iff every check passed every trial.
    """

    seed: int
    trials: int
    dims: list[int]
    oracle_samples: int
    timestamp: str
    checks: list[CheckSummary]
    overall_pass: bool


def _negative_part(value: float) -> float:
    return max(0.0, -value)


def _frobenius(matrix: np.ndarray) -> float:
    return float(np.linalg.norm(matrix))


def _cyclic_trace(n: int, rng: SplitMix64) -> float:
    chain = [rng.standard_normal(n * n).reshape(n, n) for _ in range(3)]
    scale = 1.0 + float(np.prod([_frobenius(factor) for factor in chain]))
    return cyclic_trace_residual(chain) / scale


def _lemma4(n: int, rng: SplitMix64) -> float:
    first = random_psd(n, rng.integers(0, n + 1), seed=rng.spawn_seed())
    second = random_psd(n, rng.integers(0, n + 1), seed=rng.spawn_seed())
    scale = 1.0 + _frobenius(first.array) * _frobenius(second.array)
    return _negative_part(lemma4_trace(first, second)) / scale


def _lemma5_scale(x: np.ndarray, z: np.ndarray) -> float:
    product = _frobenius(np.linalg.inv(x)) * _frobenius(z)
    return 1.0 + 2.0 * product + 4.0 * product**2


def _lemma5(n: int, rng: SplitMix64) -> tuple[float, float]:
    triple = admissible_triple(n, rng.spawn_seed())
    result = lemma5_gap(triple.X, triple.Y, triple.Z)
    scale = _lemma5_scale(triple.X.array, triple.Z.array)
    return _negative_part(result.gap) / scale, result.identity_residual / scale


def _p3_identities(n: int, rng: SplitMix64) -> float:
    first = random_pd(n, seed=rng.spawn_seed())
    second = random_pd(n, seed=rng.spawn_seed())
    residuals = p3_identity_residuals(first, second)
    scale = 1.0 + float(
        np.max(np.abs(np.linalg.inv(first.array))) * np.max(np.abs(np.linalg.inv(second.array)))
    )
    return max(residuals) / scale


def _d1_scale(point: SplitFamilyPoint) -> float:
    """Sum of the absolute traces entering d1; rounding in d1 is relative to it."""
    w = point.w
    first = point.D1 / w
    second = point.D2 / (1.0 - w)
    return (
        abs(trace_product(point.P1_inv, first))
        + abs(trace_product(point.P2_inv, second))
        + abs(trace_product(point.P3_inv, second - first))
    )


def _convergence_shortfall(family: MatrixFamily, w: float) -> float:
    """
    Excess of the fine-step Jacobi residual over what a convergence order of 1.5 allows.

    The steps are 1e-2 and 1e-3 times min(w, 1 - w): a central difference reduces its residual
    a hundredfold between them, so the shortfall is 0 unless the order drops or rounding takes
    over.
    """
    margin = min(w, 1.0 - w)
    coarse, fine = 1e-2 * margin, 1e-3 * margin
    allowed = jacobi_residual(family, w, coarse) * (fine / coarse) ** 1.5
    return max(0.0, jacobi_residual(family, w, fine) - allowed)


class _ObjectiveResiduals:
    """Worst residual of each objective-level check over the w samples of one pair."""

    names = (
        "jacobi_formula",
        "jacobi_convergence",
        "d2_nonnegative",
        "chain_inequality",
        "lower_bound_nonnegative",
        "chain_rewriting",
        "t_bounds",
        "formula_equivalence",
        "d1_finite_difference",
        "det_convexity",
    )

    def __init__(self, pair: SplitPair):
        self.values = dict.fromkeys(self.names, 0.0)
        family = SplitCovarianceFamily(pair, side=1)
        for w in W_SAMPLES:
            self._sample(pair, family, w)

    def _update(self, name: str, residual: float) -> None:
        self.values[name] = max(self.values[name], residual)

    def _sample(self, pair: SplitPair, family: SplitCovarianceFamily, w: float) -> None:
        evaluation = evaluate(pair, w)
        scale = 1.0 + evaluation.term_scale
        margin = min(w, 1.0 - w)

        jacobi_step = 1e-5 * margin
        analytic = float(np.trace(np.linalg.solve(family.value(w), family.derivative(w))))
        self._update(
            "jacobi_formula", jacobi_residual(family, w, jacobi_step) / (1.0 + abs(analytic))
        )
        self._update(
            "jacobi_convergence", _convergence_shortfall(family, w) / (1.0 + abs(analytic))
        )

        self._update("d2_nonnegative", _negative_part(evaluation.d2_direct) / scale)
        self._update(
            "chain_inequality",
            _negative_part(evaluation.d2_direct - evaluation.lower_bound) / scale,
        )
        self._update("lower_bound_nonnegative", _negative_part(evaluation.lower_bound) / scale)
        self._update(
            "chain_rewriting",
            abs(evaluation.intermediate_bound - evaluation.lower_bound) / scale,
        )
        gaps = t_bound_gaps(pair, w)
        self._update("t_bounds", _negative_part(min(gaps)) / scale)
        self._update(
            "formula_equivalence",
            abs(evaluation.d2_direct - evaluation.d2_decomposed) / scale,
        )

        point = SplitFamilyPoint(pair, w)
        step = 1e-6 * margin
        finite_difference = (
            logdet_objective(pair, w + step) - logdet_objective(pair, w - step)
        ) / (2.0 * step)
        self._update(
            "d1_finite_difference",
            abs(finite_difference - evaluation.d1) / (1.0 + _d1_scale(point)),
        )

        det_step = 0.1 * margin
        dets = [
            float(np.exp(SplitFamilyPoint(pair, w + offset).logdet()))
            for offset in (-det_step, 0.0, det_step)
        ]
        second_difference = (dets[0] - 2.0 * dets[1] + dets[2]) / det_step**2
        self._update("det_convexity", _negative_part(second_difference) / (1.0 + max(dets)))


def _oracle_agreement(pair: SplitPair, result: OptimizeResult, oracle_samples: int) -> float:
    oracle = grid_scan(pair, oracle_samples)
    w_residual = abs(result.w_star - oracle.w_best) / ORACLE_W_TOLERANCE
    objective_residual = max(0.0, result.objective_logdet - oracle.objective) / (
        ORACLE_OBJECTIVE_TOLERANCE * (1.0 + abs(oracle.objective))
    )
    return min(w_residual, objective_residual)


def _monotone_bracket(pair: SplitPair, result: OptimizeResult) -> float:
    worst = 0.0
    for lower, upper in result.bracket_history:
        lower_point = SplitFamilyPoint(pair, lower)
        upper_point = SplitFamilyPoint(pair, upper)
        worst = max(worst, max(0.0, d1_at(lower_point)), max(0.0, -d1_at(upper_point)))
    return worst


_TOLERANCES = {
    "lemma3_cyclic_trace": 1e-10,
    "lemma4_trace": 1e-10,
    "lemma5_gap": 1e-9,
    "lemma5_identity": 1e-9,
    "p3_identities": 1e-9,
    "jacobi_formula": 1e-6,
    "jacobi_convergence": 1e-7,
    "d2_nonnegative": 1e-8,
    "chain_inequality": 1e-7,
    "lower_bound_nonnegative": 1e-9,
    "chain_rewriting": 1e-8,
    "t_bounds": 1e-8,
    "formula_equivalence": 1e-8,
    "d1_finite_difference": 1e-5,
    "det_convexity": 1e-6,
    "optimizer_oracle": 1.0,
    "bisection_monotone": 1e-8,
}


def run_verification(config: VerifyConfig) -> VerifyReport:
    """
    Run every check `config.trials` times and summarize the residuals.

    Args:
        config: Seed, trial count, dimensions and oracle grid size.

    Returns:
        The report; `overall_pass` is True iff no trial of any check exceeded its tolerance.
    """
    summaries = {name: CheckSummary(name=name, tolerance=tol) for name, tol in _TOLERANCES.items()}
    master = SplitMix64(config.seed)

    for trial in range(config.trials):
        n = config.dims[trial % len(config.dims)]
        rng = SplitMix64(master.spawn_seed())
        summaries["lemma3_cyclic_trace"].record(_cyclic_trace(n, rng))
        summaries["lemma4_trace"].record(_lemma4(n, rng))
        gap_residual, identity_residual = _lemma5(n, rng)
        summaries["lemma5_gap"].record(gap_residual)
        summaries["lemma5_identity"].record(identity_residual)
        summaries["p3_identities"].record(_p3_identities(n, rng))

        pair = random_split_pair(n, rng.spawn_seed())
        for name, residual in _ObjectiveResiduals(pair).values.items():
            summaries[name].record(residual)
        result = minimize_w(pair)
        summaries["optimizer_oracle"].record(_oracle_agreement(pair, result, config.oracle_samples))
        summaries["bisection_monotone"].record(_monotone_bracket(pair, result))
        logger.debug(f"Verification trial {trial + 1}/{config.trials} (n={n}) done.")

    checks = list(summaries.values())
    overall_pass = all(check.failed == 0 for check in checks)
    for check in checks:
        if check.failed:
            logger.warning(
                f"Check {check.name} failed {check.failed}/{check.trials} trials "
                f"(worst residual {check.worst_residual:.3e}, tolerance {check.tolerance:.1e})."
            )
    return VerifyReport(
        seed=config.seed,
        trials=config.trials,
        dims=list(config.dims),
        oracle_samples=config.oracle_samples,
        timestamp=datetime.now(timezone.utc).isoformat(),
        checks=checks,
        overall_pass=overall_pass,
    )
