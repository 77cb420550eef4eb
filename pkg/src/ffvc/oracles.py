"""Brute-force reference computations.

Deliberately naive: plain loops over explicit point lists, no numpy, no
Gaussian elimination. Independence is decided by enumerating every
coefficient vector. Only usable at toy scale.
"""

from __future__ import annotations

from itertools import combinations, permutations, product


def _dot(x, y, q):
    return sum(a * b for a, b in zip(x, y)) % q


def independent(vs, q) -> bool:
    """No nonzero coefficient vector c with sum c_i v_i = 0."""
    if not vs:
        return True
    d = len(vs[0])
    for c in product(range(q), repeat=len(vs)):
        if any(c) and all(sum(ci * v[j] for ci, v in zip(c, vs)) % q == 0 for j in range(d)):
            return False
    return True


def brute_rank(vs, q) -> int:
    vs = list(vs)
    for r in range(len(vs), 0, -1):
        if any(independent(list(s), q) for s in combinations(vs, r)):
            return r
    return 0


def edge_count(points, q, t) -> int:
    return sum(1 for x in points for y in points if _dot(x, y, q) == t)


def kstars(points, q, t, k) -> int:
    total = 0
    for y in points:
        for leaves in product(points, repeat=k):
            if len(set(leaves)) == k and all(_dot(y, x, q) == t for x in leaves):
                total += 1
    return total


def indep_dstars(points, q, t, d) -> int:
    total = 0
    for y in points:
        nb = [x for x in points if _dot(x, y, q) == t]
        for leaves in permutations(nb, d):
            if independent(list(leaves), q):
                total += 1
    return total


def labels(C, points, q, t):
    """Set of labelings of C realised by the hypotheses h_y, y in points."""
    return {tuple(_dot(x, y, q) == t for x in C) for y in points}


def is_shattered(C, points, q, t) -> bool:
    return len(labels(C, points, q, t)) == 2 ** len(C)


def vc_dimension(points, q, t) -> int:
    best = 0
    for n in range(1, len(points) + 1):
        if 2**n > len(points):
            break
        if any(is_shattered(C, points, q, t) for C in combinations(points, n)):
            best = n
        else:
            break
    return best


def is_bad(A, L, points, q, t) -> bool:
    rest = [x for x in L if x not in A]
    for z in points:
        if all(_dot(z, a, q) == t for a in A) and not any(_dot(z, x, q) == t for x in rest):
            return False
    return True


def bad_stars(points, q, t, d, sizes):
    """Ordered independent d-stars having a bad subset with size in ``sizes``.

    Enumerates centers and leaf orderings in reverse order.
    """
    total = 0
    for y in reversed(points):
        nb = [x for x in points if _dot(x, y, q) == t]
        for leaves in permutations(list(reversed(nb)), d):
            if not independent(list(leaves), q):
                continue
            if any(is_bad(A, leaves, points, q, t) for k in sizes for A in combinations(leaves, k)):
                total += 1
    return total


def good_star_exists(points, q, t, d) -> bool:
    """Some independent d-star has no bad subset of any size 0..d-1."""
    for y in points:
        nb = [x for x in points if _dot(x, y, q) == t]
        for leaves in combinations(nb, d):
            if independent(list(leaves), q) and not any(
                is_bad(A, leaves, points, q, t) for k in range(d) for A in combinations(leaves, k)
            ):
                return True
    return False
