"""Exact k-star counts in G_t(E).

All counts are of ordered tuples (y, x_1, ..., x_k) with pairwise distinct
leaves; the center may coincide with a leaf when y.y = t.

Independent-leaf d-stars are counted per center. Every neighbor of a center y
lies on the affine hyperplane x.y = t, which misses the origin, so the last
leaf of a tuple is independent of the first d-1 exactly when it avoids their
span. ``backtrack`` enumerates the first d-1 leaves and counts the last one by
a lookup keyed by the normal of that span; ``fast`` (d <= 3) folds the same
identity into one vectorised sum over all normals.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .geometry import Basis, coords_of, dot, projective_normals
from .incidence import degrees, neighbors, nonzero_t
from .pointset import PointSet


@dataclass(frozen=True)
class StarTuple:
    center: tuple
    leaves: tuple
    q: int
    t: int

    def __post_init__(self):
        for x in self.leaves:
            if dot(self.center, x, self.q) != self.t % self.q:
                raise ValueError(f"{self.center} . {x} != {self.t} mod {self.q}")

    @property
    def k(self) -> int:
        return len(self.leaves)

    @property
    def non_degenerate(self) -> bool:
        return len(set(self.leaves)) == len(self.leaves)


def falling_factorial(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out if n >= k else 0


def count_kstars(E: PointSet, t, k: int, strategy: str = "auto") -> int:
    """N_k(E) = sum over centers of psi(psi-1)...(psi-k+1)."""
    t = nonzero_t(t, E.q)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if E.size == 0:
        return 0
    vals, counts = np.unique(degrees(E, t, strategy), return_counts=True)
    # python ints: no wraparound
    return sum(int(c) * falling_factorial(int(v), k) for v, c in zip(vals, counts))


def dependent_star_bound(E: PointSet, t) -> int:
    """d q^(d-2) sum_y psi(y)^(d-1): caps the d-stars whose leaves are dependent.

    Some leaf lies in the span of the other d-1 (d choices of which); those
    fix a linear subspace meeting the center's hyperplane in at most q^(d-2)
    points.
    """
    d, q = E.d, E.q
    if d < 2 or E.size == 0:
        return 0
    vals, counts = np.unique(degrees(E, t), return_counts=True)
    return d * q ** (d - 2) * sum(int(c) * int(v) ** (d - 1) for v, c in zip(vals, counts))


def _center_indep_backtrack(N: np.ndarray, q: int, d: int) -> int:
    n = len(N)
    if n < d:
        return 0
    pts = [tuple(int(v) for v in row) for row in N]
    span_hits: dict[tuple, int] = {}

    def last_level(basis: Basis) -> int:
        w = basis.normal()
        m = span_hits.get(w)
        if m is None:
            m = int(((N @ np.array(w, dtype=np.int64)) % q == 0).sum())
            span_hits[w] = m
        return n - m

    def rec(basis: Basis, depth: int) -> int:
        if depth == d - 1:
            return last_level(basis)
        total = 0
        for x in pts:
            nxt = basis.extended(x)
            if nxt is not None:
                total += rec(nxt, depth + 1)
        return total

    return rec(Basis(q, d), 0)


def _center_indep_fast(N: np.ndarray, q: int, d: int, normals: np.ndarray | None) -> int:
    n = len(N)
    if d == 1:
        return n
    if d == 2:
        return n * (n - 1)
    m = ((N @ normals.T) % q == 0).sum(axis=0).astype(object)
    return int((m * (m - 1) * (n - m)).sum())


def indep_per_center(E: PointSet, t, method: str = "auto", workers: int = 1) -> list[int]:
    """Ordered independent-leaf d-star count for each member center of E."""
    q, d = E.q, E.d
    t = nonzero_t(t, q)
    if method == "auto":
        method = "fast" if d <= 3 else "backtrack"
    if method == "fast" and d > 3:
        raise ValueError("fast method covers d <= 3 only")
    if method not in ("fast", "backtrack"):
        raise ValueError(f"unknown method {method!r}")
    normals = projective_normals(q, d) if method == "fast" and d == 3 else None

    def one(y) -> int:
        N = coords_of(neighbors(E, y, t), q, d)
        if method == "fast":
            return _center_indep_fast(N, q, d, normals)
        return _center_indep_backtrack(N, q, d)

    centers = E.points
    if workers <= 1:
        return [one(y) for y in centers]
    with ThreadPoolExecutor(workers) as ex:
        return list(ex.map(one, centers))


def count_indep_dstars(E: PointSet, t, method: str = "auto", workers: int = 1) -> int:
    return sum(indep_per_center(E, t, method, workers))


@dataclass(frozen=True)
class StarCensus:
    k: int
    size: int
    n_k: int
    n_indep: int | None
    kstar_rhs: Fraction
    indep_rhs: Fraction | None

    @property
    def n_dep(self) -> int | None:
        return None if self.n_indep is None else self.n_k - self.n_indep

    @property
    def kstar_bound_holds(self) -> bool:
        return self.n_k >= self.kstar_rhs

    @property
    def indep_bound_holds(self) -> bool | None:
        return None if self.n_indep is None else self.n_indep >= self.indep_rhs


def star_census(E: PointSet, t, k: int, workers: int = 1) -> StarCensus:
    """Counts plus the star-count lower bounds, reported but never asserted."""
    q, d, n = E.q, E.d, E.size
    n_k = count_kstars(E, t, k)
    n_indep = count_indep_dstars(E, t, workers=workers) if k == d else None
    return StarCensus(
        k=k,
        size=n,
        n_k=n_k,
        n_indep=n_indep,
        kstar_rhs=Fraction(n ** (k + 1), 2 * q**k),
        indep_rhs=Fraction(n ** (d + 1), 3 * q**d) if k == d else None,
    )


def iter_indep_stars(E: PointSet, y: Sequence[int], t, ordered: bool = False):
    """Leaf tuples of independent d-stars at center y, by increasing point index.

    With ``ordered=False`` each leaf set is produced once, sorted.
    """
    q, d = E.q, E.d
    N = [tuple(int(v) for v in row) for row in coords_of(neighbors(E, y, t), q, d)]

    def rec(basis: Basis, start: int, chosen: list):
        if len(chosen) == d:
            yield tuple(chosen)
            return
        for i in range(0 if ordered else start, len(N)):
            x = N[i]
            if ordered and x in chosen:
                continue
            nxt = basis.extended(x)
            if nxt is not None:
                chosen.append(x)
                yield from rec(nxt, i + 1, chosen)
                chosen.pop()

    yield from rec(Basis(q, d), 0, [])
