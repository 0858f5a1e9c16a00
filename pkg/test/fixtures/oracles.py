"""Brute-force oracles.

These loop over tuples directly, without sum tables or vector keys, and
are only meant for small frequency sets.
"""
from collections import Counter
from fractions import Fraction
from itertools import product

import numpy as np
import pytest


def pair_sums(points):
    n = points.shape[0]
    return (points[:, None, :] + points[None, :, :]).reshape(n * n, -1)


def zero_sum_quadruples(points):
    """All index quadruples (i, j, k, l) with mu_i + mu_j + mu_k + mu_l = 0."""
    n = points.shape[0]
    sums = pair_sums(points)
    quadruples = []
    for a in range(n * n):
        i, j = divmod(a, n)
        for b in np.flatnonzero(np.all(sums == -sums[a], axis=1)):
            k, l = divmod(int(b), n)
            quadruples.append((i, j, k, l))
    return quadruples


def brute_force_c4(points):
    n = points.shape[0]
    sums = pair_sums(points)
    return sum(int(np.count_nonzero(np.all(sums == -sums[a], axis=1))) for a in range(n * n))


def classify_quadruple(points, quadruple):
    """'diag' on a single antipodal pair, 'sym' when it cancels in pairs, else 'x4'."""
    vectors = [tuple(points[i]) for i in quadruple]
    base = vectors[0]
    negated = tuple(-c for c in base)
    if all(v in (base, negated) for v in vectors):
        return 'diag'
    a, b, c, d = [np.asarray(v) for v in vectors]
    for (p, q), (r, s) in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
        if not np.any(p + q) and not np.any(r + s):
            return 'sym'
    return 'x4'


def brute_force_c6_product(points):
    """|C(6)| by looping over all n^6 tuples; tiny sets only."""
    rows = [tuple(int(c) for c in p) for p in points]
    d = len(rows[0])
    count = 0
    for tuple6 in product(rows, repeat=6):
        if all(sum(v[axis] for v in tuple6) == 0 for axis in range(d)):
            count += 1
    return count


def brute_force_c6(points):
    """|C(6)| from a dictionary of triple sums."""
    rows = [tuple(int(c) for c in p) for p in points]
    triples = Counter(tuple(map(sum, zip(a, b, c))) for a in rows for b in rows for c in rows)
    return sum(count * triples.get(tuple(-x for x in key), 0) for key, count in triples.items())


def brute_force_b_k(points, m, k):
    """(1/N^2) sum over pairs of (mu . nu / m)^k as a Fraction."""
    rows = [[int(c) for c in p] for p in points]
    total = 0
    for mu in rows:
        for nu in rows:
            total += sum(x * y for x, y in zip(mu, nu)) ** k
    return Fraction(total, len(rows) ** 2 * m ** k)


@pytest.fixture(scope='session')
def quadruple_census():
    """Counts of each class of zero-sum quadruples, by brute force."""
    def count_classes(points):
        classes = Counter(classify_quadruple(points, q) for q in zero_sum_quadruples(points))
        return classes['sym'], classes['diag'], classes['x4']
    return count_classes
