"""Vectors in F_q^d.

Points are plain tuples of canonical residues. Each point has a mixed-radix
index in [0, q^d) with coordinate 0 as the least significant digit; all
"increasing order" statements in the package refer to this index.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from .ffield import inv_mod

Point = tuple


def as_point(x: Sequence[int], q: int, d: int | None = None) -> Point:
    p = tuple(int(c) for c in x)
    if d is not None and len(p) != d:
        raise ValueError(f"expected {d} coordinates, got {len(p)}: {p}")
    for c in p:
        if not 0 <= c < q:
            raise ValueError(f"coordinate {c} not in [0, {q}) in point {p}")
    return p


def dot(x: Sequence[int], y: Sequence[int], q: int) -> int:
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return sum(a * b for a, b in zip(x, y)) % q


def point_index(x: Sequence[int], q: int) -> int:
    i = 0
    for c in reversed(x):
        if not 0 <= c < q:
            raise ValueError(f"coordinate {c} not in [0, {q})")
        i = i * q + c
    return i


def index_point(i: int, q: int, d: int) -> Point:
    if not 0 <= i < q**d:
        raise ValueError(f"index {i} out of range [0, {q}^{d})")
    out = []
    for _ in range(d):
        i, c = divmod(i, q)
        out.append(c)
    return tuple(out)


def radix(q: int, d: int) -> np.ndarray:
    return q ** np.arange(d, dtype=np.int64)


def coords_of(indices: np.ndarray, q: int, d: int) -> np.ndarray:
    """(n,) indices -> (n, d) int64 coordinate array."""
    idx = np.asarray(indices, dtype=np.int64)
    return (idx[:, None] // radix(q, d)[None, :]) % q


def indices_of(coords: np.ndarray, q: int) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.int64)
    return coords @ radix(q, coords.shape[-1])


class Basis:
    """Incrementally built reduced row-echelon basis of a subspace of F_q^d.

    Pivot of each row is its first nonzero coordinate, normalised to 1.
    """

    def __init__(self, q: int, d: int):
        self.q = q
        self.d = d
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "Basis":
        b = Basis(self.q, self.d)
        b.rows = [r[:] for r in self.rows]
        b.pivots = self.pivots[:]
        return b

    def reduce(self, v: Sequence[int]) -> list[int]:
        q = self.q
        w = [c % q for c in v]
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                w = [(a - c * b) % q for a, b in zip(w, row)]
        return w

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def extend(self, v: Sequence[int]) -> bool:
        """Add v to the basis if it enlarges the span; report whether it did."""
        if len(v) != self.d:
            raise ValueError(f"dimension mismatch: {len(v)} vs {self.d}")
        w = self.reduce(v)
        p = next((i for i, c in enumerate(w) if c), None)
        if p is None:
            return False
        q = self.q
        s = inv_mod(w[p], q)
        w = [(c * s) % q for c in w]
        # back-substitute to keep the echelon form fully reduced
        for k, row in enumerate(self.rows):
            c = row[p]
            if c:
                self.rows[k] = [(a - c * b) % q for a, b in zip(row, w)]
        at = 0
        while at < len(self.pivots) and self.pivots[at] < p:
            at += 1
        self.rows.insert(at, w)
        self.pivots.insert(at, p)
        return True

    def extended(self, v: Sequence[int]) -> "Basis | None":
        b = self.copy()
        return b if b.extend(v) else None

    def normal(self) -> Point:
        """Normalised normal vector of a rank d-1 span (first nonzero entry 1)."""
        if self.rank != self.d - 1:
            raise ValueError(f"normal needs rank {self.d - 1}, have {self.rank}")
        q = self.q
        free = next(j for j in range(self.d) if j not in self.pivots)
        w = [0] * self.d
        w[free] = 1
        for row, p in zip(self.rows, self.pivots):
            w[p] = (-row[free]) % q
        s = inv_mod(next(c for c in w if c), q)
        return tuple((c * s) % q for c in w)


def rank_of(vs: Iterable[Sequence[int]], q: int) -> int:
    vs = list(vs)
    if not vs:
        return 0
    b = Basis(q, len(vs[0]))
    for v in vs:
        b.extend(v)
    return b.rank


def is_independent(vs: Sequence[Sequence[int]], q: int) -> bool:
    return rank_of(vs, q) == len(vs)


def hyperplane_indices(y: Sequence[int], t: int, q: int) -> np.ndarray:
    """Sorted indices of all x in F_q^d with x.y = t."""
    d = len(y)
    y = [c % q for c in y]
    piv = next((j for j, c in enumerate(y) if c), None)
    if piv is None:
        raise ValueError("hyperplane normal must be nonzero")
    free = [j for j in range(d) if j != piv]
    grid = coords_of(np.arange(q ** (d - 1), dtype=np.int64), q, d - 1)
    yf = np.array([y[j] for j in free], dtype=np.int64)
    xp = ((t - grid @ yf) * inv_mod(y[piv], q)) % q
    r = radix(q, d)
    idx = xp * r[piv] + grid @ r[free]
    idx.sort()
    return idx


def hyperplane_solutions(y: Sequence[int], t: int, q: int) -> Iterator[Point]:
    """All solutions of x.y = t, each once, in increasing point index order."""
    d = len(y)
    for i in hyperplane_indices(y, t, q):
        yield index_point(int(i), q, d)


def projective_normals(q: int, d: int) -> np.ndarray:
    """One representative (first nonzero entry 1) of every line through 0."""
    pts = coords_of(np.arange(1, q**d, dtype=np.int64), q, d)
    lead = pts[np.arange(len(pts)), (pts != 0).argmax(axis=1)]
    return pts[lead == 1]
