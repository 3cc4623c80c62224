"""Pure NumPy implementations of the subset-lattice kernels.

Same signatures as the compiled twin in ``_fastcore``; which one the
package uses is decided once, at import time, in ``__init__``.

Conventions shared by both implementations:

* set functions are dense float64 arrays of length ``2**n`` indexed by
  bitmask, with the empty-set entry kept at 0 by callers;
* a "row table" is a pair ``(masks, M)`` where ``masks[k]`` is the
  bitmask of a subset and ``M[k, i]`` is point ``i``'s membership mass
  on that subset (0 whenever ``i`` is not a member).
"""

import numpy as np


def zeta_inplace(values, n):
    """Subset sums in place: values[B] becomes sum of input over A <= B."""
    for j in range(n):
        view = values.reshape(-1, 2, 1 << j)
        view[:, 1, :] += view[:, 0, :]


def mobius_inplace(values, n):
    """Inverse of :func:`zeta_inplace`, also in place."""
    for j in range(n):
        view = values.reshape(-1, 2, 1 << j)
        view[:, 1, :] -= view[:, 0, :]


def _row_products(mask, q, n):
    # prod[s] = product of q over the bits selected by local submask s,
    # g[s] = the corresponding global bitmask.
    bits = [t for t in range(n) if (mask >> t) & 1]
    size = 1 << len(bits)
    prod = np.ones(size)
    g = np.zeros(size, dtype=np.int64)
    for t, bit in enumerate(bits):
        step = 1 << t
        pv = prod.reshape(-1, 2, step)
        gv = g.reshape(-1, 2, step)
        pv[:, 1, :] = pv[:, 0, :] * q[bit]
        gv[:, 1, :] = gv[:, 0, :] | (1 << bit)
    return prod, g


def mle_rows(mobius, masks, M):
    """Multilinear extension value of each row's membership vector."""
    n = M.shape[1]
    out = np.empty(len(masks))
    for k, mask in enumerate(masks):
        prod, g = _row_products(int(mask), M[k], n)
        out[k] = float(prod @ mobius[g])
    return out


def reduced_rows(mobius, masks, M, point):
    """Reduced score of ``point`` at each row; 0 on rows excluding it."""
    n = M.shape[1]
    pbit = 1 << point
    out = np.zeros(len(masks))
    for k, mask in enumerate(masks):
        mask = int(mask)
        if not mask & pbit:
            continue
        prod, g = _row_products(mask & ~pbit, M[k], n)
        out[k] = float(prod @ mobius[g | pbit])
    return out


def candidate_sums(mobius, masks, M):
    """Per row, the sum over members of their reduced scores there.

    Uses e[s] = sum over members t of s of the product of q over s\\t,
    grown one bit at a time by the product rule, so each row costs one
    pass over its local submasks.
    """
    n = M.shape[1]
    out = np.empty(len(masks))
    for k, mask in enumerate(masks):
        mask = int(mask)
        bits = [t for t in range(n) if (mask >> t) & 1]
        size = 1 << len(bits)
        prod = np.ones(size)
        e = np.zeros(size)
        g = np.zeros(size, dtype=np.int64)
        q = M[k]
        for t, bit in enumerate(bits):
            step = 1 << t
            pv = prod.reshape(-1, 2, step)
            ev = e.reshape(-1, 2, step)
            gv = g.reshape(-1, 2, step)
            ev[:, 1, :] = ev[:, 0, :] * q[bit] + pv[:, 0, :]
            pv[:, 1, :] = pv[:, 0, :] * q[bit]
            gv[:, 1, :] = gv[:, 0, :] | (1 << bit)
        out[k] = float(e @ mobius[g])
    return out
