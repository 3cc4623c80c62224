"""Brute-force reference implementations and seeded instance generators.

Everything here is written the slow, obviously-correct way (explicit
loops over subsets) and stays independent of the library code paths it
is used to check.
"""

import numpy as np


def bf_mle(mobius, q):
    """Multilinear extension by direct summation over all subsets."""
    n = len(q)
    total = 0.0
    for mask in range(1 << n):
        p = 1.0
        for i in range(n):
            if (mask >> i) & 1:
                p *= q[i]
        total += p * mobius[mask]
    return total


def bf_global_score(mobius, memberships, n):
    """Global score: sum of MLE values over every subset's mass vector."""
    total = 0.0
    for mask in range(1, 1 << n):
        q = np.zeros(n)
        for i in range(n):
            if (mask >> i) & 1:
                q[i] = memberships[i].get(mask, 0.0)
        total += bf_mle(mobius, q)
    return total


def bf_reduced(mobius, memberships, n, point, mask):
    """Reduced score of ``point`` at ``mask`` by explicit subset sums."""
    rest = mask & ~(1 << point)
    bits = [t for t in range(n) if (rest >> t) & 1]
    total = 0.0
    for r in range(1 << len(bits)):
        p = 1.0
        m = 1 << point
        for t, b in enumerate(bits):
            if (r >> t) & 1:
                p *= memberships[b].get(mask, 0.0)
                m |= 1 << b
        total += p * mobius[m]
    return total


def bf_partition_score(values, blocks):
    return sum(values[b] for b in blocks)


def random_similarity(rng, n):
    s = rng.random((n, n))
    s = (s + s.T) / 2.0
    np.fill_diagonal(s, 1.0)
    return s


def random_set_function(rng, n, low=-1.0, high=1.0):
    values = rng.uniform(low, high, 1 << n)
    values[0] = 0.0
    return values


def random_memberships(rng, n):
    """One membership dict per point, uniform on each point's simplex."""
    out = []
    for i in range(n):
        menu = [m for m in range(1, 1 << n) if (m >> i) & 1]
        draws = rng.standard_exponential(len(menu))
        draws /= draws.sum()
        out.append(dict(zip(menu, draws)))
    return out


def clique_similarity(n, clique_mask):
    """Similarity 1 inside the clique, 0 everywhere else off-diagonal."""
    s = np.zeros((n, n))
    members = [i for i in range(n) if (clique_mask >> i) & 1]
    for i in members:
        for j in members:
            s[i, j] = 1.0
    np.fill_diagonal(s, 1.0)
    return s
