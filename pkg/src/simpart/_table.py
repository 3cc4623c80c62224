"""Row-table evaluation backend shared by cover ops and the solvers.

A membership state is flattened to ``(masks, M)``: ``masks[k]`` is the
bitmask of the k-th subset carrying mass and ``M[k, i]`` the mass point
``i`` places on it.  Quadratic scores are evaluated with dense linear
algebra over their coefficient matrix; generic scores go through the
subset kernels (compiled when available).
"""

import numpy as np

from simpart import _kernels
from simpart.score import QuadraticScore, kernel_form


def indicator(masks: np.ndarray, n: int) -> np.ndarray:
    """Float matrix with entry [k, i] = 1 iff point i is in masks[k]."""
    return ((masks[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(np.float64)


def mle_rows(form, masks, M):
    kind, a, b = form
    if kind == "quad":
        return M @ a + 0.5 * ((M @ b) * M).sum(axis=1)
    return _kernels.mle_rows(a, masks, M)


def reduced(form, masks, M, point):
    kind, a, b = form
    if kind == "quad":
        vals = a[point] + M @ b[:, point]
        member = ((masks >> point) & 1).astype(bool)
        return np.where(member, vals, 0.0)
    return _kernels.reduced_rows(a, masks, M, point)


def candidate_sums(form, masks, M, ind=None):
    kind, a, b = form
    if kind == "quad":
        if ind is None:
            ind = indicator(masks, len(a))
        return ind @ a + ((ind @ b) * M).sum(axis=1)
    return _kernels.candidate_sums(a, masks, M)


def w_rows(score, masks):
    """w(B) for every row mask, vectorized."""
    if isinstance(score, QuadraticScore):
        ind = indicator(masks, score.n)
        pm = score.pair_matrix()
        return ind @ score.singleton_coeffs + 0.5 * ((ind @ pm) * ind).sum(axis=1)
    return score.values[masks]


def score_form(score):
    return kernel_form(score)
