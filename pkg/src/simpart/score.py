"""Cluster-score set functions, their Moebius inversion, and the MLE.

A cluster score assigns a real worth w(A) to every non-empty subset A of
the point set N = {0, ..., n-1}.  Subsets are bitmasks, set functions are
dense float64 arrays of length 2**n indexed by mask, and w(empty) = 0 by
convention.  The two transforms are mutually inverse:

    w(B)     = sum of mu(A) over A <= B          (zeta)
    mu(A)    = sum of (-1)**|A\\B| w(B) over B <= A   (Moebius)

and the multilinear extension of w is the unique multilinear polynomial
on the unit hypercube agreeing with w at the vertices:

    f(q) = sum over A of mu(A) * prod of q_i over i in A.

The quadratic specialization built from a similarity matrix S keeps only
singleton and pair coefficients: each point's singleton score is the
average of its halved diversities (1 - S_il)/2, and pairs are pinned to
w({i,j}) = S_ij.  It needs no dense storage and therefore no size cap.

Dense arrays are capped at n = 20 (about one million coefficients).
Equality comparisons use EQ_TOL, zero-mass tests use ZERO_TOL.
"""

from __future__ import annotations

import numpy as np

from simpart import _kernels
from simpart._bits import bits_of, full_mask, popcount
from simpart.errors import CapacityError, ValidationError

EQ_TOL = 1e-9
ZERO_TOL = 1e-12
DENSE_N_CAP = 20

MAX_NORMALIZE = "max-normalize"
ALREADY_NORMALIZED = "already-normalized"


def _check_dense_n(n: int) -> None:
    if n > DENSE_N_CAP:
        raise CapacityError(f"dense storage is capped at n={DENSE_N_CAP}, got n={n}")


def _as_dense_table(values) -> tuple[int, np.ndarray]:
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2 or arr.size & (arr.size - 1):
        raise ValidationError("set-function table must have length 2**n")
    n = arr.size.bit_length() - 1
    _check_dense_n(n)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("set-function table contains non-finite entries")
    return n, arr


class SimilarityMatrix:
    """Symmetric n x n matrix of pairwise similarities in [0, 1]."""

    def __init__(self, entries):
        arr = np.array(entries, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValidationError("similarity matrix must be square")
        n = arr.shape[0]
        if not np.all(np.isfinite(arr)):
            i, j = np.argwhere(~np.isfinite(arr))[0]
            raise ValidationError(f"non-finite similarity (row {i}, col {j})")
        asym = np.abs(arr - arr.T)
        if asym.max(initial=0.0) > EQ_TOL:
            i, j = np.argwhere(asym > EQ_TOL)[0]
            raise ValidationError(f"asymmetric similarity (row {i}, col {j})")
        diag_err = np.abs(np.diag(arr) - 1.0)
        if diag_err.max(initial=0.0) > EQ_TOL:
            i = int(np.argmax(diag_err))
            raise ValidationError(f"diagonal must be 1 (row {i}, col {i})")
        if arr.min() < 0.0 or arr.max() > 1.0:
            bad = (arr < 0.0) | (arr > 1.0)
            i, j = np.argwhere(bad)[0]
            raise ValidationError(f"similarity outside [0, 1] (row {i}, col {j})")
        arr = (arr + arr.T) / 2.0
        np.fill_diagonal(arr, 1.0)
        self.n = n
        self.entries = arr
        self.entries.setflags(write=False)


def similarity_from_distances(distances, mode: str = MAX_NORMALIZE) -> SimilarityMatrix:
    """Turn a non-negative distance matrix into similarities 1 - d.

    ``max-normalize`` divides by the largest entry first (all-zero input
    maps to all-ones similarity); ``already-normalized`` requires every
    distance to lie in [0, 1] and uses 1 - d directly.
    """
    if mode not in (MAX_NORMALIZE, ALREADY_NORMALIZED):
        raise ValidationError(f"unknown normalization mode {mode!r}")
    arr = np.array(distances, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError("distance matrix must be square")
    if not np.all(np.isfinite(arr)):
        i, j = np.argwhere(~np.isfinite(arr))[0]
        raise ValidationError(f"non-finite distance (row {i}, col {j})")
    if arr.min() < 0.0:
        i, j = np.argwhere(arr < 0.0)[0]
        raise ValidationError(f"negative distance (row {i}, col {j})")
    asym = np.abs(arr - arr.T)
    if asym.max(initial=0.0) > EQ_TOL:
        i, j = np.argwhere(asym > EQ_TOL)[0]
        raise ValidationError(f"asymmetric distance (row {i}, col {j})")
    diag = np.abs(np.diag(arr))
    if diag.max(initial=0.0) > EQ_TOL:
        i = int(np.argmax(diag))
        raise ValidationError(f"distance diagonal must be 0 (row {i}, col {i})")
    if mode == MAX_NORMALIZE:
        dmax = arr.max()
        sim = np.ones_like(arr) if dmax == 0.0 else 1.0 - arr / dmax
    else:
        if arr.max() > 1.0:
            i, j = np.argwhere(arr > 1.0)[0]
            raise ValidationError(f"distance above 1 (row {i}, col {j})")
        sim = 1.0 - arr
    np.fill_diagonal(sim, 1.0)
    return SimilarityMatrix(sim)


class ScoreFunction:
    """Dense set function: values and Moebius coefficients per bitmask."""

    def __init__(self, n: int, values: np.ndarray, mobius: np.ndarray):
        self.n = n
        self.values = values
        self.mobius = mobius
        for arr in (values, mobius):
            arr.setflags(write=False)
        nonzero = np.flatnonzero(np.abs(mobius) > ZERO_TOL)
        self.degree = max((popcount(int(m)) for m in nonzero), default=0)

    @classmethod
    def from_values(cls, values) -> "ScoreFunction":
        n, arr = _as_dense_table(values)
        if abs(arr[0]) > ZERO_TOL:
            raise ValidationError("w(empty set) must be 0")
        arr[0] = 0.0
        mob = arr.copy()
        _kernels.mobius_inplace(mob, n)
        return cls(n, arr, mob)

    @classmethod
    def from_mobius(cls, mobius) -> "ScoreFunction":
        n, mob = _as_dense_table(mobius)
        if abs(mob[0]) > ZERO_TOL:
            raise ValidationError("the empty-set coefficient must be 0")
        mob[0] = 0.0
        values = mob.copy()
        _kernels.zeta_inplace(values, n)
        return cls(n, values, mob)

    def evaluate(self, mask: int) -> float:
        _check_mask(mask, self.n)
        return float(self.values[mask])

    def mle(self, q) -> float:
        q = _check_unit_box(q, self.n)
        prod = np.ones(1 << self.n)
        for i in range(self.n):
            view = prod.reshape(-1, 2, 1 << i)
            view[:, 1, :] = view[:, 0, :] * q[i]
        return float(prod @ self.mobius)


class QuadraticScore:
    """Set function whose Moebius coefficients live on singletons and pairs.

    ``singleton_coeffs[i]`` is the coefficient of {i} (which equals
    w({i})); ``pair_coeffs`` holds the n(n-1)/2 pair coefficients in
    condensed row-major order (i < j).  Evaluation of w(A) is O(|A|^2),
    so there is no size cap.
    """

    def __init__(self, n: int, singleton_coeffs, pair_coeffs):
        if n < 1:
            raise ValidationError("need at least one point")
        single = np.array(singleton_coeffs, dtype=np.float64)
        pairs = np.array(pair_coeffs, dtype=np.float64)
        if single.shape != (n,):
            raise ValidationError(f"expected {n} singleton coefficients")
        if pairs.shape != (n * (n - 1) // 2,):
            raise ValidationError(f"expected {n * (n - 1) // 2} pair coefficients")
        self.n = n
        self.singleton_coeffs = single
        self.pair_coeffs = pairs
        mat = np.zeros((n, n))
        iu = np.triu_indices(n, k=1)
        mat[iu] = pairs
        mat += mat.T
        self._pair_matrix = mat
        for arr in (single, pairs, mat):
            arr.setflags(write=False)

    def pair_coeff(self, i: int, j: int) -> float:
        return float(self._pair_matrix[i, j])

    def pair_matrix(self) -> np.ndarray:
        return self._pair_matrix

    def evaluate(self, mask: int) -> float:
        _check_mask(mask, self.n)
        members = bits_of(mask)
        if not members:
            return 0.0
        sub = self._pair_matrix[np.ix_(members, members)]
        return float(self.singleton_coeffs[members].sum() + sub.sum() / 2.0)

    def mle(self, q) -> float:
        q = _check_unit_box(q, self.n)
        return float(q @ self.singleton_coeffs + (q @ self._pair_matrix @ q) / 2.0)

    def to_dense(self) -> ScoreFunction:
        _check_dense_n(self.n)
        mob = np.zeros(1 << self.n)
        for i in range(self.n):
            mob[1 << i] = self.singleton_coeffs[i]
            for j in range(i + 1, self.n):
                mob[(1 << i) | (1 << j)] = self._pair_matrix[i, j]
        return ScoreFunction.from_mobius(mob)


def quadratic_from_similarity(sim: SimilarityMatrix) -> QuadraticScore:
    """Quadratic cluster score pinned to w({i,j}) = S_ij.

    Singletons get the average halved diversity
    w({i}) = sum over l != i of (1 - S_il) / (2(n-1)), and the pair
    coefficient follows from the Moebius recursion
    mu({i,j}) = S_ij - w({i}) - w({j}).
    """
    n = sim.n
    if n < 2:
        raise ValidationError("quadratic construction needs n >= 2")
    s = sim.entries
    singles = (1.0 - s).sum(axis=1) / (2.0 * (n - 1))
    pair_mat = s - singles[:, None] - singles[None, :]
    iu = np.triu_indices(n, k=1)
    return QuadraticScore(n, singles, pair_mat[iu])


Score = ScoreFunction | QuadraticScore


def evaluate(score: Score, mask: int) -> float:
    """Value w(A) of the subset with the given bitmask; w(empty) = 0."""
    return score.evaluate(mask)


def mle_evaluate(score: Score, q) -> float:
    """Multilinear extension at q in [0,1]^n; equals w(B) at a vertex."""
    return score.mle(q)


def mobius_transform(values) -> np.ndarray:
    """Moebius coefficients of a dense set-function table (fast, n*2**n)."""
    n, arr = _as_dense_table(values)
    _kernels.mobius_inplace(arr, n)
    return arr


def zeta_transform(mobius) -> np.ndarray:
    """Inverse of :func:`mobius_transform`: rebuild the value table."""
    n, arr = _as_dense_table(mobius)
    _kernels.zeta_inplace(arr, n)
    return arr


def dense_values(score: Score) -> np.ndarray:
    """Value table over all 2**n masks (densifies a quadratic score)."""
    if isinstance(score, QuadraticScore):
        return score.to_dense().values
    return score.values


def kernel_form(score: Score):
    """Internal dispatch tuple used by the cover and solver machinery.

    Quadratic scores are evaluated with dense linear algebra over their
    coefficient matrix; anything else goes through the subset kernels.
    """
    if isinstance(score, QuadraticScore):
        return "quad", score.singleton_coeffs, score.pair_matrix()
    return "dense", score.mobius, None


def _check_mask(mask: int, n: int) -> None:
    if not 0 <= mask <= full_mask(n):
        raise ValidationError(f"subset mask {mask} out of range for n={n}")


def _check_unit_box(q, n: int) -> np.ndarray:
    arr = np.asarray(q, dtype=np.float64)
    if arr.shape != (n,):
        raise ValidationError(f"expected a vector of {n} coordinates")
    if arr.min(initial=0.0) < 0.0 or arr.max(initial=0.0) > 1.0:
        raise ValidationError("coordinates must lie in [0, 1]")
    return arr
