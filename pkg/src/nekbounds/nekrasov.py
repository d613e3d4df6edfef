"""Nekrasov row quantities and SDD / Nekrasov classification.

For a matrix with nonzero diagonal the Nekrasov row sums are

    h_1 = r_1,   h_i = sum_{j<i} |a_ij| / |a_jj| * h_j + sum_{j>i} |a_ij|

and the companion weights are

    z_1 = 1,     z_i = sum_{j<i} |a_ij| / |a_jj| * z_j + 1.

``A`` is a Nekrasov matrix when ``|a_ii| > h_i`` for every row.  Every
quantity here is computed in increasing row order with no reordering, so
results are reproducible bit for bit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import solve_triangular

from .errors import ZeroDiagonal
from .matrix import as_square_matrix, deleted_row_sums, triangular_split

__all__ = [
    "Verdict",
    "NekrasovProfile",
    "compute_h_recursive",
    "compute_h_by_solve",
    "compute_z",
    "compute_z_by_solve",
    "nekrasov_iteration_vector",
    "classify",
    "szulc_check",
]


class Verdict(enum.Enum):
    SDD = "SDD"
    NEKRASOV_NOT_SDD = "NEKRASOV_NOT_SDD"
    NOT_NEKRASOV = "NOT_NEKRASOV"

    @property
    def is_nekrasov(self) -> bool:
        return self is not Verdict.NOT_NEKRASOV


@dataclass(frozen=True, eq=False)
class NekrasovProfile:
    """Per-row quantities of a matrix together with its class.

    ``h``, ``z``, ``h_ratio`` and ``margin`` are ``None`` when some diagonal
    entry is zero.  ``witness`` is the 0-based index of the first row with
    ``|a_ii| <= h_i``, set only for ``NOT_NEKRASOV``.
    """

    n: int
    diag: np.ndarray
    r: np.ndarray
    h: Optional[np.ndarray]
    z: Optional[np.ndarray]
    h_ratio: Optional[np.ndarray]
    verdict: Verdict
    witness: Optional[int] = None
    margin: Optional[float] = None

    @property
    def is_nekrasov(self) -> bool:
        return self.verdict.is_nekrasov


def _check_diagonal(diag):
    zero = np.flatnonzero(diag == 0)
    if zero.size:
        raise ZeroDiagonal(int(zero[0]))


def _recurse(absA, diag, offset):
    """Shared lower-triangular recursion: x_i = sum_{j<i} |a_ij|/|a_jj| x_j + offset_i."""
    n = absA.shape[0]
    x = np.empty(n)
    w = absA / diag[np.newaxis, :]
    for i in range(n):
        x[i] = w[i, :i] @ x[:i] + offset[i]
    return x


def compute_h_recursive(A) -> np.ndarray:
    """Nekrasov row sums ``h_i(A)`` by the defining recursion."""
    A = as_square_matrix(A)
    absA = A.abs()
    diag = np.diag(absA).copy()
    _check_diagonal(diag)
    return _recurse(absA, diag, np.triu(absA, 1).sum(axis=1))


def compute_z(A) -> np.ndarray:
    A = as_square_matrix(A)
    absA = A.abs()
    diag = np.diag(absA).copy()
    _check_diagonal(diag)
    return _recurse(absA, diag, np.ones(A.n))


def _lower_solve(split, rhs):
    # (|D| - |L|) y = rhs
    T = np.diag(split.diag) - split.lower
    return solve_triangular(T, rhs, lower=True, check_finite=False)


def nekrasov_iteration_vector(A) -> np.ndarray:
    """``(|D| - |L|)^{-1} |U| e``; its entries are ``h_i / |a_ii|``."""
    split = triangular_split(A)
    _check_diagonal(split.diag)
    return _lower_solve(split, split.upper.sum(axis=1))


def compute_h_by_solve(A) -> np.ndarray:
    """``h_i(A)`` as ``|a_ii| * [(|D| - |L|)^{-1} |U| e]_i`` via a triangular solve."""
    split = triangular_split(A)
    _check_diagonal(split.diag)
    return split.diag * _lower_solve(split, split.upper.sum(axis=1))


def compute_z_by_solve(A) -> np.ndarray:
    split = triangular_split(A)
    _check_diagonal(split.diag)
    return split.diag * _lower_solve(split, np.ones(len(split.diag)))


def classify(A) -> NekrasovProfile:
    """Classify ``A`` as SDD, Nekrasov-but-not-SDD, or neither.

    All inequalities are strict and evaluated without tolerance.  A zero
    diagonal entry is reported as a ``NOT_NEKRASOV`` verdict, never raised.
    """
    A = as_square_matrix(A)
    absA = A.abs()
    diag = np.diag(absA).copy()
    r = deleted_row_sums(A)
    diag.setflags(write=False)
    r.setflags(write=False)

    if np.any(diag == 0):
        # h_i only depends on rows above i, so the first failing row is
        # found before any division by a zero pivot is needed.
        upper = np.triu(absA, 1).sum(axis=1)
        h = np.empty(A.n)
        witness = None
        for i in range(A.n):
            h[i] = (absA[i, :i] / diag[:i]) @ h[:i] + upper[i]
            if not diag[i] > h[i]:
                witness = i
                break
        return NekrasovProfile(A.n, diag, r, None, None, None, Verdict.NOT_NEKRASOV, witness)

    h = _recurse(absA, diag, np.triu(absA, 1).sum(axis=1))
    z = _recurse(absA, diag, np.ones(A.n))
    h_ratio = h / diag
    for arr in (h, z, h_ratio):
        arr.setflags(write=False)
    margin = float(np.min(diag - h))

    violating = np.flatnonzero(~(diag > h))
    if violating.size:
        verdict, witness = Verdict.NOT_NEKRASOV, int(violating[0])
    elif np.all(diag > r):
        verdict, witness = Verdict.SDD, None
    else:
        verdict, witness = Verdict.NEKRASOV_NOT_SDD, None
    return NekrasovProfile(A.n, diag, r, h, z, h_ratio, verdict, witness, margin)


def szulc_check(A) -> bool:
    """Independent Nekrasov test: ``(|D| - |L|)^{-1} |U| e < e`` componentwise."""
    v = nekrasov_iteration_vector(A)
    return bool(np.all(v < 1.0))
