"""Upper bounds on ``||A^{-1}||_inf`` for SDD and Nekrasov matrices.

Five bounds are provided:

* ``varah_bound``: ``1 / min_i (|a_ii| - r_i)``, SDD matrices only.
* ``bound_baseline_ratio``: ``max_i z_i/|a_ii| / (1 - max_i h_i/|a_ii|)``.
* ``bound_baseline_diff``: ``max_i z_i / min_i (|a_ii| - h_i)``.
* ``bound_param_ratio`` and ``bound_param_diff``: the same two bounds after
  scaling the first coordinate by ``mu > r_1/|a_11|``.

The scaled bounds are minimised over ``mu`` in closed form by
``optimal_mu_ratio`` and ``optimal_mu_diff``.

For ``n = 1`` a maximum over the empty row set ``{i != 1}`` is taken as 0 and
a minimum as ``+inf``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionTooSmall, EmptyGrid, MuOutOfRange, NotNekrasov, NotSDD
from .matrix import SquareMatrix, as_square_matrix, triangular_split
from .nekrasov import NekrasovProfile, Verdict, classify

__all__ = [
    "CaseTag",
    "ParamBound",
    "OptimalMu",
    "BoundReport",
    "MuSweep",
    "varah_bound",
    "bound_baseline_ratio",
    "bound_baseline_diff",
    "bound_param_ratio",
    "bound_param_diff",
    "optimal_mu_ratio",
    "optimal_mu_diff",
    "ratio_improvement_interval",
    "diff_improvement_interval",
    "mu_threshold",
    "scaled_splitting_matrices",
    "full_report",
    "mu_grid",
    "mu_sweep",
]


class CaseTag(enum.Enum):
    STRICT_IMPROVEMENT = "STRICT_IMPROVEMENT"
    EQUALS_BASELINE = "EQUALS_BASELINE"


@dataclass(frozen=True)
class ParamBound:
    mu: float
    value: float


@dataclass(frozen=True)
class OptimalMu:
    mu: float
    value: float
    case: CaseTag


@dataclass(frozen=True)
class BoundReport:
    baseline_ratio: float
    baseline_diff: float
    margin: float
    verdict: Verdict
    varah: Optional[float] = None
    param_ratio: Optional[ParamBound] = None
    param_diff: Optional[ParamBound] = None
    optimal_ratio: Optional[OptimalMu] = None
    optimal_diff: Optional[OptimalMu] = None

    def to_dict(self) -> dict:
        def conv(v):
            if isinstance(v, (ParamBound, OptimalMu)):
                return {k: conv(x) for k, x in v.__dict__.items()}
            if isinstance(v, enum.Enum):
                return v.value
            return v

        return {k: conv(v) for k, v in self.__dict__.items()}


@dataclass(frozen=True)
class MuSweep:
    """Samples ``(mu, ratio bound, diff bound)`` on an increasing grid."""

    rows: tuple
    mu_min: float
    mu_max: float
    step: float

    @property
    def mu(self) -> np.ndarray:
        return np.array([row[0] for row in self.rows])

    @property
    def bound_ratio(self) -> np.ndarray:
        return np.array([row[1] for row in self.rows])

    @property
    def bound_diff(self) -> np.ndarray:
        return np.array([row[2] for row in self.rows])


# ------------------------------------------------------------ helpers


def _nekrasov_profile(A) -> NekrasovProfile:
    prof = classify(A)
    if not prof.is_nekrasov:
        if prof.witness is None:
            raise NotNekrasov("matrix is not a Nekrasov matrix")
        raise NotNekrasov(
            f"matrix is not a Nekrasov matrix: row {prof.witness + 1} has |a_ii| <= h_i",
            witness=prof.witness,
        )
    return prof


def _max_rest(values) -> float:
    return float(np.max(values[1:])) if len(values) > 1 else 0.0


def _min_rest(values) -> float:
    return float(np.min(values[1:])) if len(values) > 1 else math.inf


def mu_threshold(A) -> float:
    """Lower limit ``r_1/|a_11|`` that ``mu`` must strictly exceed."""
    prof = _nekrasov_profile(A)
    return float(prof.r[0] / prof.diag[0])


def _check_mu(prof, mu):
    threshold = float(prof.r[0] / prof.diag[0])
    if not mu > threshold:
        raise MuOutOfRange(mu, threshold)


# Formula kernels take a validated profile so the report and sweep can
# reuse one classification.

def _baseline_ratio(prof):
    return float(np.max(prof.z / prof.diag) / (1.0 - np.max(prof.h_ratio)))


def _baseline_diff(prof):
    return float(np.max(prof.z) / np.min(prof.diag - prof.h))


def _param_ratio(prof, mu):
    first = 1.0 / (mu - prof.h_ratio[0])
    rest = 1.0 / (1.0 - _max_rest(prof.h_ratio))
    return float(max(mu, 1.0) * np.max(prof.z / prof.diag) * max(first, rest))


def _param_diff(prof, mu):
    denom = min(mu * prof.diag[0] - prof.h[0], _min_rest(prof.diag - prof.h))
    return float(max(mu, 1.0) * np.max(prof.z) / denom)


# ------------------------------------------------------------ bounds


def varah_bound(A) -> float:
    prof = classify(A)
    if prof.verdict is not Verdict.SDD:
        raise NotSDD("Varah's bound requires a strictly diagonally dominant matrix")
    return float(1.0 / np.min(prof.diag - prof.r))


def bound_baseline_ratio(A) -> float:
    return _baseline_ratio(_nekrasov_profile(A))


def bound_baseline_diff(A) -> float:
    return _baseline_diff(_nekrasov_profile(A))


def bound_param_ratio(A, mu: float) -> float:
    """Scaled ratio bound, valid for ``mu > r_1/|a_11|``.

    ``max(mu, 1) * max_i z_i/|a_ii| * max(1/(mu - h_1/|a_11|), 1/(1 - max_{i>1} h_i/|a_ii|))``
    """
    prof = _nekrasov_profile(A)
    _check_mu(prof, mu)
    return _param_ratio(prof, mu)


def bound_param_diff(A, mu: float) -> float:
    """Scaled difference bound, valid for ``mu > r_1/|a_11|``.

    ``max(mu, 1) * max_i z_i / min(mu |a_11| - h_1, min_{i>1} (|a_ii| - h_i))``
    """
    prof = _nekrasov_profile(A)
    _check_mu(prof, mu)
    return _param_diff(prof, mu)


def _optimal_ratio(prof):
    if prof.n < 2:
        raise DimensionTooSmall("optimal mu needs n >= 2")
    first = float(prof.h_ratio[0])
    rest = _max_rest(prof.h_ratio)
    mu = 1.0 + first - rest
    case = CaseTag.STRICT_IMPROVEMENT if first > rest else CaseTag.EQUALS_BASELINE
    return OptimalMu(mu, _param_ratio(prof, mu), case)


def _optimal_diff(prof):
    if prof.n < 2:
        raise DimensionTooSmall("optimal mu needs n >= 2")
    gap_rest = _min_rest(prof.diag - prof.h)
    mu = (gap_rest + float(prof.h[0])) / float(prof.diag[0])
    case = CaseTag.STRICT_IMPROVEMENT if _diff_strict(prof) else CaseTag.EQUALS_BASELINE
    return OptimalMu(mu, _param_diff(prof, mu), case)


def _diff_strict(prof):
    # With h_1 = 0 the scaled bound at mu* collapses to max z / |a_11|,
    # which is exactly the baseline, so the gap condition alone is not enough.
    gap_first = float(prof.diag[0] - prof.h[0])
    return prof.h[0] > 0 and gap_first < _min_rest(prof.diag - prof.h)


def optimal_mu_ratio(A) -> OptimalMu:
    """Closed-form minimiser of :func:`bound_param_ratio` over ``mu``.

    ``mu* = 1 + h_1/|a_11| - max_{i>1} h_i/|a_ii|``.  The bound at ``mu*`` is
    strictly below the baseline ratio bound when ``h_1/|a_11|`` exceeds every
    other ``h_i/|a_ii|``, and equal to it otherwise.
    """
    return _optimal_ratio(_nekrasov_profile(A))


def optimal_mu_diff(A) -> OptimalMu:
    """Closed-form minimiser of :func:`bound_param_diff` over ``mu``.

    ``mu* = (min_{i>1} (|a_ii| - h_i) + h_1) / |a_11|``; strict improvement
    over the baseline difference bound iff ``|a_11| - h_1`` is the unique
    smallest row gap and ``h_1 > 0``.
    """
    return _optimal_diff(_nekrasov_profile(A))


def ratio_improvement_interval(A):
    """Open ``mu`` interval on which the ratio bound beats its baseline.

    ``None`` when the matrix is not in the strict-improvement regime.
    """
    prof = _nekrasov_profile(A)
    first = float(prof.h_ratio[0])
    rest = _max_rest(prof.h_ratio)
    if prof.n < 2 or not first > rest:
        return None
    return 1.0, (1.0 - rest) / (1.0 - first)


def diff_improvement_interval(A):
    prof = _nekrasov_profile(A)
    if prof.n < 2 or not _diff_strict(prof):
        return None
    return 1.0, _min_rest(prof.diag - prof.h) / float(prof.diag[0] - prof.h[0])


def scaled_splitting_matrices(A, mu: float):
    """Return ``(C(mu), B(mu))`` built from the Nekrasov splitting.

    ``C = E - (|D| - |L|)^{-1} |U|``, ``B = |D| C`` and both are scaled on the
    right by ``diag(mu, 1, ..., 1)``.  For a Nekrasov matrix and
    ``mu > r_1/|a_11|`` both are strictly diagonally dominant.
    """
    prof = _nekrasov_profile(A)
    _check_mu(prof, mu)
    split = triangular_split(A)
    T = np.diag(split.diag) - split.lower
    C = np.eye(prof.n) - np.linalg.solve(T, split.upper)
    scale = np.ones(prof.n)
    scale[0] = mu
    C_mu = C * scale[np.newaxis, :]
    B_mu = split.diag[:, np.newaxis] * C_mu
    return SquareMatrix(C_mu), SquareMatrix(B_mu)


def full_report(A, mu: Optional[float] = None) -> BoundReport:
    """Every applicable bound for a Nekrasov matrix.

    ``varah`` is set only for SDD input.  The scaled bounds are included only
    when ``mu`` is given and exceeds ``r_1/|a_11|``; the optimal-``mu`` fields
    are omitted for ``n = 1``.
    """
    A = as_square_matrix(A)
    prof = _nekrasov_profile(A)
    kw = {}
    if prof.verdict is Verdict.SDD:
        kw["varah"] = float(1.0 / np.min(prof.diag - prof.r))
    if mu is not None and mu > prof.r[0] / prof.diag[0]:
        kw["param_ratio"] = ParamBound(float(mu), _param_ratio(prof, mu))
        kw["param_diff"] = ParamBound(float(mu), _param_diff(prof, mu))
    if prof.n >= 2:
        kw["optimal_ratio"] = _optimal_ratio(prof)
        kw["optimal_diff"] = _optimal_diff(prof)
    return BoundReport(
        baseline_ratio=_baseline_ratio(prof),
        baseline_diff=_baseline_diff(prof),
        margin=prof.margin,
        verdict=prof.verdict,
        **kw,
    )


def mu_grid(mu_min: float, mu_max: float, step: float) -> np.ndarray:
    """``mu_min + k*step`` for ``k = 0, 1, ...`` up to ``mu_max`` inclusive.

    Points are rounded to 12 decimals so that e.g. ``0.6 + 4*0.3`` lands on 1.8.
    """
    if not step > 0:
        raise ValueError("step must be positive")
    if not mu_min < mu_max:
        raise ValueError("mu_min must be smaller than mu_max")
    count = int(math.floor((mu_max - mu_min) / step + 1e-9)) + 1
    return np.round(mu_min + step * np.arange(count), 12)


def mu_sweep(A, mu_min: float, mu_max: float, step: float) -> MuSweep:
    """Tabulate both scaled bounds on a grid, skipping ``mu <= r_1/|a_11|``."""
    prof = _nekrasov_profile(A)
    threshold = prof.r[0] / prof.diag[0]
    rows = tuple(
        (float(mu), _param_ratio(prof, mu), _param_diff(prof, mu))
        for mu in mu_grid(mu_min, mu_max, step)
        if mu > threshold
    )
    if not rows:
        raise EmptyGrid(
            f"no grid point in [{mu_min}, {mu_max}] exceeds r_1/|a_11| = {threshold!r}"
        )
    return MuSweep(rows, float(mu_min), float(mu_max), float(step))
