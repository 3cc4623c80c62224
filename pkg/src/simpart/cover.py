"""Fuzzy covers, hard partitions, and the global-score calculus.

A fuzzy cover assigns every point a membership distribution over the
subsets containing it, one point per simplex.  Covers are stored as one
sparse mask-to-mass map per point; masses at or below the cover's zero
tolerance are pruned at construction and the remainder renormalized, so
a constructed cover always satisfies the simplex and locality
invariants.  Use :func:`validate_cover` to diagnose raw data that may
not.

The evaluation operations implement, against any score function:

* global score: the sum of MLE values over all subsets' mass vectors;
* reduced score of a point: the set function on subsets containing it
  whose scalar product with the point's distribution gives the point's
  share of the global score (this is also the point's gradient);
* coordinate derivatives, obtained as the difference between parking
  the point's full mass on one subset and removing it entirely.

Covers and partitions are value objects: operations never mutate them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from simpart import _table
from simpart._bits import bits_of, full_mask, popcount
from simpart.errors import CapacityError, ValidationError
from simpart.score import DENSE_N_CAP, EQ_TOL, ZERO_TOL, Score, evaluate

SIMPLEX_TOL = EQ_TOL


class FuzzyCover:
    """Per-point membership distributions over subsets containing it."""

    def __init__(self, n: int, memberships, eps: float = ZERO_TOL):
        if n < 1:
            raise ValidationError("need at least one point")
        if len(memberships) != n:
            raise ValidationError(f"expected {n} membership maps, got {len(memberships)}")
        top = full_mask(n)
        clean = []
        for i, raw in enumerate(memberships):
            kept = {}
            total_raw = 0.0
            for mask, mass in raw.items():
                mask = int(mask)
                mass = float(mass)
                if not 0 < mask <= top:
                    raise ValidationError(f"point {i}: subset mask {mask} out of range")
                if not (mask >> i) & 1:
                    raise ValidationError(f"point {i}: mass on subset {mask} not containing it")
                if mass < 0.0:
                    raise ValidationError(f"point {i}: negative mass on subset {mask}")
                total_raw += mass
                if mass > eps:
                    kept[mask] = mass
            if abs(total_raw - 1.0) > SIMPLEX_TOL:
                raise ValidationError(f"point {i}: masses sum to {total_raw!r}, not 1")
            total = sum(kept.values())
            if total <= 0.0:
                raise ValidationError(f"point {i}: no mass above the zero tolerance")
            clean.append({m: v / total for m, v in kept.items()})
        self.n = n
        self.eps = eps
        self.memberships = tuple(clean)

    def point_masses(self, i: int) -> dict[int, float]:
        return dict(self.memberships[i])

    def support_union(self) -> list[int]:
        union: set[int] = set()
        for d in self.memberships:
            union.update(d)
        return sorted(union)

    def vertex_mask(self, i: int) -> int | None:
        """The subset holding all of point i's mass, or None if fractional."""
        d = self.memberships[i]
        if len(d) == 1:
            return next(iter(d))
        return None

    def is_vertex_cover(self) -> bool:
        return all(self.vertex_mask(i) is not None for i in range(self.n))

    @property
    def support_exact(self) -> bool:
        return support_condition(self)

    def validate(self) -> "CoverDiagnostics":
        return validate_cover(self.n, self.memberships, self.eps)


@dataclass
class CoverDiagnostics:
    """Report from :func:`validate_cover`; never raises."""

    n: int
    point_sums: list[float]
    misplaced: list[tuple[int, int]]
    negative: list[tuple[int, int]]
    valid: bool
    support_exact_pre: bool
    support_exact_post: bool | None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "point_sums": self.point_sums,
            "misplaced": [list(x) for x in self.misplaced],
            "negative": [list(x) for x in self.negative],
            "valid": self.valid,
            "support_exact_pre": self.support_exact_pre,
            "support_exact_post": self.support_exact_post,
        }


def _support_ok(maps, eps) -> bool:
    union: set[int] = set()
    for d in maps:
        for m, v in d.items():
            if v > eps:
                union.add(m)
    for mask in union:
        members = bits_of(mask)
        positive = sum(1 for i in members if i < len(maps) and maps[i].get(mask, 0.0) > eps)
        if positive not in (0, len(members)):
            return False
    return True


def validate_cover(n: int, memberships, eps: float = ZERO_TOL) -> CoverDiagnostics:
    """Diagnose raw membership maps without constructing a cover.

    Reports per-point mass sums, masses parked on subsets that do not
    contain the point, negative masses, and the support-condition
    verdict both before and after pruning/renormalization (pruning can
    in principle flip it, so both are given).
    """
    top = full_mask(n)
    sums = []
    misplaced = []
    negative = []
    for i, raw in enumerate(memberships):
        total = 0.0
        for mask, mass in raw.items():
            mask = int(mask)
            total += float(mass)
            if mass < 0.0:
                negative.append((i, mask))
            if not 0 < mask <= top or not (mask >> i) & 1:
                misplaced.append((i, mask))
        sums.append(total)
    valid = (
        len(memberships) == n
        and not misplaced
        and not negative
        and all(abs(s - 1.0) <= SIMPLEX_TOL for s in sums)
        and all(s > 0 for s in sums)
    )
    pre = _support_ok(memberships, 0.0)
    post = None
    if valid:
        post = FuzzyCover(n, memberships, eps).support_exact
    return CoverDiagnostics(n, sums, misplaced, negative, valid, pre, post)


class Partition:
    """Disjoint non-empty blocks covering all n points."""

    def __init__(self, n: int, blocks):
        blocks = [int(b) for b in blocks]
        if any(b <= 0 for b in blocks):
            raise ValidationError("empty block")
        union = 0
        for b in blocks:
            if union & b:
                raise ValidationError(f"overlapping blocks at mask {b}")
            union |= b
        if union != full_mask(n):
            raise ValidationError("blocks do not cover the point set")
        self.n = n
        self.blocks = tuple(sorted(blocks, key=lambda b: b & -b))

    @classmethod
    def from_point_lists(cls, n: int, blocks) -> "Partition":
        masks = []
        for block in blocks:
            mask = 0
            for p in block:
                if not 0 <= p < n:
                    raise ValidationError(f"point {p} out of range")
                mask |= 1 << p
            masks.append(mask)
        return cls(n, masks)

    @classmethod
    def from_rgs(cls, rgs) -> "Partition":
        masks: dict[int, int] = {}
        for i, b in enumerate(rgs):
            masks[b] = masks.get(b, 0) | (1 << i)
        return cls(len(rgs), masks.values())

    def rgs(self) -> tuple[int, ...]:
        labels = {}
        out = []
        for i in range(self.n):
            b = self.block_of(i)
            if b not in labels:
                labels[b] = len(labels)
            out.append(labels[b])
        return tuple(out)

    def block_of(self, i: int) -> int:
        bit = 1 << i
        for b in self.blocks:
            if b & bit:
                return b
        raise ValidationError(f"point {i} not covered")

    def blocks_as_points(self) -> list[list[int]]:
        return [bits_of(b) for b in self.blocks]

    def __eq__(self, other):
        return isinstance(other, Partition) and (self.n, self.blocks) == (other.n, other.blocks)

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __repr__(self):
        return f"Partition(n={self.n}, blocks={self.blocks_as_points()})"


def embed_partition(partition: Partition) -> FuzzyCover:
    """The vertex cover parking each point fully on its block."""
    maps = [{partition.block_of(i): 1.0} for i in range(partition.n)]
    return FuzzyCover(partition.n, maps)


def partition_from_cover(cover: FuzzyCover) -> Partition:
    """Extract the partition from a vertex cover of full blocks."""
    masks = []
    for i in range(cover.n):
        mask = cover.vertex_mask(i)
        if mask is None:
            raise ValidationError(f"point {i} is not at a simplex vertex")
        masks.append(mask)
    return Partition(cover.n, set(masks))


def partition_score(score: Score, partition: Partition) -> float:
    return sum(evaluate(score, b) for b in partition.blocks)


def cover_table(cover: FuzzyCover):
    """Flatten a cover to (masks, M, index) for the evaluation backend."""
    masks = cover.support_union()
    index = {m: k for k, m in enumerate(masks)}
    arr = np.array(masks, dtype=np.int64)
    M = np.zeros((len(masks), cover.n))
    for i, d in enumerate(cover.memberships):
        for m, v in d.items():
            M[index[m], i] = v
    return arr, M, index


def global_score(score: Score, cover: FuzzyCover) -> float:
    """Sum of MLE values over every subset carrying positive mass."""
    masks, M, _ = cover_table(cover)
    if not len(masks):
        return 0.0
    return float(_table.mle_rows(_table.score_form(score), masks, M).sum())


def reduced_score(score: Score, cover: FuzzyCover, i: int, support=None) -> dict[int, float]:
    """The set function A -> w_reduced(A) on subsets containing point i.

    Subsets on which no other point parks mass all take the value
    w({i}), so without a ``support`` collection the result is the dense
    map over all subsets containing i (capped at n = 20).
    """
    n = cover.n
    base = evaluate(score, 1 << i)
    if support is None:
        if n > DENSE_N_CAP:
            raise CapacityError("dense reduced score needs n <= 20; pass a support collection")
        out = {m: base for m in range(1, 1 << n) if (m >> i) & 1}
    else:
        out = {int(m): base for m in support if (int(m) >> i) & 1}
    masks, M, _ = cover_table(cover)
    vals = _table.reduced(_table.score_form(score), masks, M, i)
    for k, mask in enumerate(masks):
        mask = int(mask)
        if (mask >> i) & 1 and mask in out:
            out[mask] = float(vals[k])
    return out


def point_score(score: Score, cover: FuzzyCover, i: int) -> float:
    """Point i's share of the global score: <q_i, reduced score>."""
    masks, M, _ = cover_table(cover)
    vals = _table.reduced(_table.score_form(score), masks, M, i)
    return float(vals @ M[:, i])


def complement_score(score: Score, cover: FuzzyCover, i: int) -> float:
    """Global score with point i's distribution replaced by the null one."""
    masks, M, _ = cover_table(cover)
    if not len(masks):
        return 0.0
    M = M.copy()
    M[:, i] = 0.0
    return float(_table.mle_rows(_table.score_form(score), masks, M).sum())


def derivative(score: Score, cover: FuzzyCover, i: int, mask: int) -> float:
    """Coordinate slope: W with i parked fully on the subset, minus W
    with i's null distribution.  The null state is internal only; it is
    not a valid cover."""
    if not (mask >> i) & 1:
        raise ValidationError(f"subset {mask} does not contain point {i}")
    if not 0 < mask <= full_mask(cover.n):
        raise ValidationError(f"subset mask {mask} out of range")
    masks, M, index = cover_table(cover)
    if mask not in index:
        index = dict(index)
        index[mask] = len(masks)
        masks = np.append(masks, np.int64(mask))
        M = np.vstack([M, np.zeros(cover.n)])
    form = _table.score_form(score)
    down = M.copy()
    down[:, i] = 0.0
    up = down.copy()
    up[index[mask], i] = 1.0
    return float(_table.mle_rows(form, masks, up).sum() - _table.mle_rows(form, masks, down).sum())


def full_gradient(score: Score, cover: FuzzyCover, support=None) -> dict[int, dict[int, float]]:
    """All (point, subset) derivatives, as one map per point.

    Dense (every subset containing each point) for n <= 20; beyond that
    a support collection must restrict the requested subsets.
    """
    n = cover.n
    if support is None and n > DENSE_N_CAP:
        raise CapacityError("dense gradient needs n <= 20; pass a support collection")
    masks, M, _ = cover_table(cover)
    form = _table.score_form(score)
    out: dict[int, dict[int, float]] = {}
    for i in range(n):
        base = evaluate(score, 1 << i)
        if support is None:
            g = {m: base for m in range(1, 1 << n) if (m >> i) & 1}
        else:
            g = {int(m): base for m in support if (int(m) >> i) & 1}
        vals = _table.reduced(form, masks, M, i)
        for k, mask in enumerate(masks):
            mask = int(mask)
            if (mask >> i) & 1 and mask in g:
                g[mask] = float(vals[k])
        out[i] = g
    return out


def support_condition(cover: FuzzyCover) -> bool:
    """True iff every subset's positive-mass support is empty or full."""
    return _support_ok(cover.memberships, cover.eps)
