"""Degrees and edge counts in the dot-product graph G_t(E).

psi(y) = |{x in E : x.y = t}|. Two strategies are kept and cross-tested:

* ``hyperplane``: walk the q^(d-1) solutions of x.y = t and test membership
  in the mask;
* ``members``: scan E and test the equation directly.

``auto`` picks ``hyperplane`` when q^(d-1) < |E|.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .ffield import FieldElement
from .geometry import as_point, coords_of, hyperplane_indices, radix
from .pointset import PointSet

CHUNK_CELLS = 1 << 22


def nonzero_t(t, q: int) -> int:
    v = int(t.value if isinstance(t, FieldElement) else t) % q
    if v == 0:
        raise ValueError("t must be nonzero in F_q")
    return v


def pick_strategy(E: PointSet, strategy: str = "auto") -> str:
    if strategy == "auto":
        return "hyperplane" if E.q ** (E.d - 1) < E.size else "members"
    if strategy not in ("hyperplane", "members"):
        raise ValueError(f"unknown strategy {strategy!r}")
    return strategy


def psi(E: PointSet, y: Sequence[int], t, strategy: str = "auto") -> int:
    q = E.q
    t = nonzero_t(t, q)
    y = as_point(y, q, E.d)
    if not any(y):
        return 0
    if pick_strategy(E, strategy) == "hyperplane":
        return int(E.mask[hyperplane_indices(y, t, q)].sum())
    return int(((E.coords @ np.array(y, dtype=np.int64)) % q == t).sum())


def neighbors(E: PointSet, y: Sequence[int], t, strategy: str = "auto") -> np.ndarray:
    """Sorted point indices of the members x of E with x.y = t."""
    q = E.q
    t = nonzero_t(t, q)
    y = as_point(y, q, E.d)
    if not any(y):
        return np.zeros(0, dtype=np.int64)
    if pick_strategy(E, strategy) == "hyperplane":
        h = hyperplane_indices(y, t, q)
        return h[E.mask[h]]
    return E.members[(E.coords @ np.array(y, dtype=np.int64)) % q == t]


def _degrees_members(E: PointSet, centers: np.ndarray, t: int) -> np.ndarray:
    q = E.q
    out = np.zeros(len(centers), dtype=np.int64)
    if E.size == 0:
        return out
    step = max(1, CHUNK_CELLS // E.size)
    ET = E.coords.T
    for s in range(0, len(centers), step):
        out[s : s + step] = ((centers[s : s + step] @ ET) % q == t).sum(axis=1)
    return out


def _degrees_hyperplane(E: PointSet, centers: np.ndarray, t: int) -> np.ndarray:
    q, d = E.q, E.d
    out = np.zeros(len(centers), dtype=np.int64)
    nz = centers != 0
    has = nz.any(axis=1)
    piv = np.where(has, nz.argmax(axis=1), -1)
    inv_table = np.array([0] + [pow(a, q - 2, q) for a in range(1, q)], dtype=np.int64)
    r = radix(q, d)
    grid = coords_of(np.arange(q ** (d - 1), dtype=np.int64), q, d - 1)
    step = max(1, CHUNK_CELLS // len(grid))
    for p in range(d):
        rows = np.flatnonzero(piv == p)
        if not len(rows):
            continue
        free = [j for j in range(d) if j != p]
        base = grid @ r[free]
        for s in range(0, len(rows), step):
            sel = rows[s : s + step]
            Y = centers[sel]
            xp = ((t - grid @ Y[:, free].T) * inv_table[Y[:, p]][None, :]) % q
            idx = xp * r[p] + base[:, None]
            out[sel] = E.mask[idx].sum(axis=0)
    return out


def degrees(E: PointSet, t, strategy: str = "auto", centers: np.ndarray | None = None) -> np.ndarray:
    """psi for each center (default: each member of E, aligned with E.members)."""
    t = nonzero_t(t, E.q)
    C = E.coords if centers is None else np.asarray(centers, dtype=np.int64).reshape(-1, E.d)
    if pick_strategy(E, strategy) == "hyperplane":
        return _degrees_hyperplane(E, C, t)
    return _degrees_members(E, C, t)


def edge_count(E: PointSet, t, strategy: str = "auto", workers: int = 1) -> int:
    """Ordered pairs (x, y) in E^2 with x.y = t (diagonal included)."""
    t = nonzero_t(t, E.q)
    if workers <= 1 or E.size < 2:
        return int(degrees(E, t, strategy).sum())
    parts = np.array_split(E.coords, workers)
    with ThreadPoolExecutor(workers) as ex:
        partial = ex.map(lambda C: int(degrees(E, t, strategy, centers=C).sum()), parts)
        return sum(partial)


@dataclass(frozen=True)
class IncidenceSummary:
    q: int
    d: int
    t: int
    size: int
    edge_count: int
    main_term: Fraction
    residual: Fraction
    bound_holds: bool

    @property
    def bound_sq(self) -> int:
        """|E|^2 q^(d-1): the squared error bound for indicator functions."""
        return self.size**2 * self.q ** (self.d - 1)


def residual_check(E: PointSet, t, strategy: str = "auto") -> IncidenceSummary:
    q, d = E.q, E.d
    t = nonzero_t(t, q)
    if E.size == 0:
        raise ValueError("residual check needs a nonempty set")
    edges = edge_count(E, t, strategy)
    n = E.size
    # residual = (q*edges - n^2) / q; compare residual^2 q^2 <= n^2 q^(d-1) q^2
    num = q * edges - n * n
    holds = num * num <= n * n * q ** (d - 1) * q * q
    return IncidenceSummary(
        q=q,
        d=d,
        t=t,
        size=n,
        edge_count=edges,
        main_term=Fraction(n * n, q),
        residual=Fraction(num, q),
        bound_holds=holds,
    )
