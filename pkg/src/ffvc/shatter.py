"""Shattering for the class H_t(E) = {h_y : y in E}, h_y(x) = [x.y = t].

Candidate sets C are put in canonical order (increasing point index) and a
subset S of C is encoded as a bitmask over that order. A hypothesis y labels
C with the mask of the points x in C having x.y = t.

A subset A of a leaf set L is *bad* when every z in E satisfying the
A-equations also satisfies the equation of some leaf outside A; equivalently,
no hypothesis in E labels L exactly with A. The empty subset is included
(it is bad when every z in E hits some leaf), which makes the star test
equivalent to direct shattering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, InvariantViolation
from .geometry import Basis, as_point, dot, hyperplane_indices, point_index
from .incidence import nonzero_t, pick_strategy
from .pointset import PointSet, rng_for
from .stars import iter_indep_stars

DEFAULT_STAR_BUDGET = 10**6
DEFAULT_WORK_BUDGET = 10**8


def canonical(points: Sequence[Sequence[int]], q: int, d: int) -> tuple:
    pts = [as_point(p, q, d) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("candidate set has repeated points")
    return tuple(sorted(pts, key=lambda p: point_index(p, q)))


def _require_subset(C, E: PointSet):
    missing = [p for p in C if p not in E]
    if missing:
        raise ValueError(f"candidate points not in E: {missing}")


def label_masks(E: PointSet, C: Sequence[Sequence[int]], t: int) -> np.ndarray:
    """For every y in E (aligned with E.members), the bitmask of C hit by h_y."""
    if not C:
        return np.zeros(E.size, dtype=np.int64)
    M = np.array(C, dtype=np.int64)
    hits = (E.coords @ M.T) % E.q == t
    return hits.astype(np.int64) @ (1 << np.arange(len(C), dtype=np.int64))


@dataclass(frozen=True)
class WitnessSet:
    B: tuple
    members: tuple

    def __len__(self):
        return len(self.members)


def witness_set(E: PointSet, B: Sequence[Sequence[int]], t, strategy: str = "auto") -> WitnessSet:
    """Q(B): the points z of E with z.b = t for every b in B."""
    q, d = E.q, E.d
    t = nonzero_t(t, q)
    B = tuple(as_point(b, q, d) for b in B)
    if not B:
        return WitnessSet(B, tuple(E.points))
    if any(not any(b) for b in B):
        return WitnessSet(B, ())
    Bm = np.array(B, dtype=np.int64)
    if pick_strategy(E, strategy) == "hyperplane":
        cand = hyperplane_indices(B[0], t, q)
        cand = cand[E.mask[cand]]
        zs = (cand[:, None] // E.q ** np.arange(d)) % q
    else:
        zs = E.coords
    keep = ((zs @ Bm.T) % q == t).all(axis=1)
    return WitnessSet(B, tuple(tuple(int(v) for v in z) for z in zs[keep]))


def is_bad(A: Sequence[Sequence[int]], L: Sequence[Sequence[int]], E: PointSet, t) -> bool:
    q, d = E.q, E.d
    t = nonzero_t(t, q)
    L = [as_point(x, q, d) for x in L]
    A = [as_point(a, q, d) for a in A]
    if not set(A) < set(L):
        raise ValueError("A must be a proper subset of the leaf set")
    rest = [x for x in L if x not in A]
    Q = witness_set(E, A, t)
    return all(any(dot(z, x, q) == t for x in rest) for z in Q.members)


@dataclass(frozen=True)
class ShatterCertificate:
    C: tuple
    shattered: bool
    witnesses: dict = field(default_factory=dict)  # subset mask -> witness y
    failing_mask: int | None = None

    def subset(self, mask: int) -> tuple:
        return tuple(x for i, x in enumerate(self.C) if mask >> i & 1)

    @property
    def failing_subset(self) -> tuple | None:
        return None if self.failing_mask is None else self.subset(self.failing_mask)

    def validate(self, q: int, t: int) -> bool:
        """Re-check every witness by direct dot products."""
        if not self.shattered:
            return self.failing_mask is not None
        if set(self.witnesses) != set(range(2 ** len(self.C))):
            return False
        for mask, y in self.witnesses.items():
            for i, x in enumerate(self.C):
                if (dot(x, y, q) == t) != bool(mask >> i & 1):
                    return False
        return True


def is_shattered_direct(C: Sequence[Sequence[int]], E: PointSet, t) -> ShatterCertificate:
    q, d = E.q, E.d
    t = nonzero_t(t, q)
    C = canonical(C, q, d)
    _require_subset(C, E)
    masks = label_masks(E, C, t)
    seen, first = np.unique(masks, return_index=True)
    where = dict(zip(seen.tolist(), first.tolist()))
    witnesses = {}
    pts = E.points
    for m in range(2 ** len(C)):
        if m not in where:
            return ShatterCertificate(C, False, failing_mask=m)
        witnesses[m] = pts[where[m]]
    return ShatterCertificate(C, True, witnesses)


def bad_subsets(L: Sequence[Sequence[int]], E: PointSet, t) -> list[tuple]:
    """All proper subsets of L (empty included) that are bad, by definition."""
    L = canonical(L, E.q, E.d)
    return [A for k in range(len(L)) for A in combinations(L, k) if is_bad(A, L, E, t)]


def is_shattered_stars(C: Sequence[Sequence[int]], E: PointSet, t) -> bool:
    """Some y in E forms a d-star with C, and C has no bad subset."""
    q, d = E.q, E.d
    t = nonzero_t(t, q)
    C = canonical(C, q, d)
    if len(C) != d:
        raise ValueError(f"star test needs exactly d={d} points, got {len(C)}")
    _require_subset(C, E)
    if not witness_set(E, C, t).members:
        return False
    return not any(is_bad(A, C, E, t) for k in range(d) for A in combinations(C, k))


def greedy_independent_subset(Q: WitnessSet, y: Sequence[int], r: int, q: int) -> list:
    """J in Q with y not in J, {y} u J independent and |J| = r.

    Requires a nonempty B (so Q lies on an affine hyperplane missing 0),
    y in Q and |Q| > q^(r-1).
    """
    if not Q.B:
        raise ValueError("greedy construction needs a nonempty B")
    d = len(Q.B[0])
    y = as_point(y, q, d)
    if r < 0 or r > d - 1:
        raise ValueError(f"r must lie in [0, d-1={d - 1}], got {r}")
    if y not in Q.members:
        raise ValueError(f"{y} is not in Q(B)")
    # |Q| > q^(r-1), cross-multiplied for r = 0
    if len(Q.members) * q <= q**r:
        raise ValueError(f"|Q(B)| = {len(Q.members)} is not > q^{r - 1}")
    basis = Basis(q, d)
    basis.extend(y)
    J = []
    for z in sorted(Q.members, key=lambda p: point_index(p, q)):
        if len(J) >= r:
            break
        if z != y and basis.extend(z):
            J.append(z)
    if len(J) < r:
        raise InvariantViolation(
            f"greedy found only {len(J)} < {r} independent points in Q(B) of size {len(Q.members)}"
        )
    return J


@dataclass(frozen=True)
class BadStarCensus:
    d: int
    n_indep: int
    by_size: tuple  # by_size[k]: stars with a bad subset of size exactly k, k = 0..d-1
    M: int  # some bad subset of size 1..d-1
    M_with_empty: int  # some bad subset of size 0..d-1

    @property
    def good(self) -> int:
        return self.n_indep - self.M_with_empty


def bad_star_work(n: int, d: int) -> int:
    return comb(n, d) * 2**d * n


def bad_star_census(E: PointSet, t, budget: int = DEFAULT_WORK_BUDGET) -> BadStarCensus:
    """Census over ordered independent-leaf d-stars, grouped by leaf set.

    Badness depends only on the leaf set L, and the stars on L are the
    |Q(L)| centers times the d! leaf orderings.
    """
    q, d = E.q, E.d
    t = nonzero_t(t, q)
    est = bad_star_work(E.size, d)
    if est > budget:
        raise BudgetExceeded(f"bad-star census needs ~{est} steps, budget is {budget}", est)
    by_size = [0] * d
    n_indep = M = M0 = 0
    full = (1 << d) - 1
    pts = E.points
    for L in combinations(pts, d):
        masks = label_masks(E, L, t)
        centers = int((masks == full).sum())
        if not centers:
            continue
        basis = Basis(q, d)
        if not all(basis.extend(x) for x in L):
            continue
        stars = centers * factorial(d)
        n_indep += stars
        present = set(np.unique(masks).tolist())
        bad_sizes = {bin(m).count("1") for m in range(full) if m not in present}
        for k in bad_sizes:
            by_size[k] += stars
        if bad_sizes - {0}:
            M += stars
        if bad_sizes:
            M0 += stars
    return BadStarCensus(d, n_indep, tuple(by_size), M, M0)


def count_bad_stars(E: PointSet, t, k: int, budget: int = DEFAULT_WORK_BUDGET) -> int:
    if not 1 <= k <= E.d - 1:
        raise ValueError(f"k must lie in [1, d-1={E.d - 1}], got {k}")
    return bad_star_census(E, t, budget).by_size[k]


@dataclass(frozen=True)
class SearchOutcome:
    certificate: ShatterCertificate | None
    explored: int
    exhausted: bool  # every independent d-star was examined


def search_good_star(E: PointSet, t, budget: int = DEFAULT_STAR_BUDGET, seed: int = 0) -> SearchOutcome:
    """Look for a d-star with independent leaves and no bad subset.

    Centers are visited in a seeded random order; leaf sets at each center in
    increasing point-index order. Each leaf set examined costs one unit of
    budget.
    """
    q, d = E.q, E.d
    t = nonzero_t(t, q)
    full = (1 << d) - 1
    explored = 0
    if budget <= 0:
        return SearchOutcome(None, 0, E.size == 0)
    pts = E.points
    for c in rng_for(seed, stream=1).permutation(E.size):
        for L in iter_indep_stars(E, pts[c], t):
            if explored >= budget:
                return SearchOutcome(None, explored, False)
            explored += 1
            masks = label_masks(E, L, t)
            if len(np.unique(masks)) == full + 1:
                cert = is_shattered_direct(L, E, t)
                if not cert.shattered:
                    raise InvariantViolation(f"good star {L} is not shattered")
                return SearchOutcome(cert, explored, False)
    return SearchOutcome(None, explored, True)


def find_shattered_dset(E: PointSet, t, budget: int = DEFAULT_STAR_BUDGET, seed: int = 0):
    return search_good_star(E, t, budget, seed).certificate


@dataclass(frozen=True)
class VCResult:
    value: int  # exact value, or best lower bound when not exact
    exact: bool
    mode: str
    certificate: ShatterCertificate | None = None
    explored: int = 0

    @property
    def label(self) -> str:
        return str(self.value) if self.exact else f"unresolved(>={self.value})"


def exhaustive_work(n: int, d: int) -> int:
    return sum(comb(n, k) * 2**k * n for k in range(1, d + 2))


def shattered_levels(E: PointSet, t, max_n: int | None = None) -> list[list[tuple]]:
    """levels[n]: all shattered n-subsets (as sorted member positions).

    Level n is built only from sets all of whose (n-1)-subsets are shattered,
    which loses nothing since shattering is closed under subsets.
    """
    q = E.q
    t = nonzero_t(t, q)
    if E.size == 0:
        return [[]]
    lab = ((E.coords @ E.coords.T) % q == t).astype(np.int64)  # lab[i, j]: h_{E[j]}(E[i])
    levels = [[()]]
    n = 0
    while max_n is None or n < max_n:
        n += 1
        if 2**n > E.size:
            break
        prev = set(levels[-1])
        cur = []
        for S in levels[-1]:
            for j in range(S[-1] + 1 if S else 0, E.size):
                T = S + (j,)
                if n > 1 and any(T[:i] + T[i + 1 :] not in prev for i in range(n - 1)):
                    continue
                pat = sum(lab[i] << b for b, i in enumerate(T))
                if len(np.unique(pat)) == 2**n:
                    cur.append(T)
        if not cur:
            break
        levels.append(cur)
    return levels


def count_shattered(E: PointSet, t, n: int) -> int:
    """Number of shattered n-subsets of E, by checking every one (no pruning)."""
    q = E.q
    t = nonzero_t(t, q)
    lab = ((E.coords @ E.coords.T) % q == t).astype(np.int64)
    weights = 1 << np.arange(n, dtype=np.int64)
    total = 0
    for T in combinations(range(E.size), n):
        pat = weights @ lab[list(T)]
        if len(np.unique(pat)) == 2**n:
            total += 1
    return total


def _exhaustive(E: PointSet, t, max_n=None) -> tuple[int, ShatterCertificate | None]:
    levels = shattered_levels(E, t, max_n)
    top = len(levels) - 1
    if E.size == 0:
        return 0, None
    pts = E.points
    return top, is_shattered_direct([pts[i] for i in levels[top][0]], E, t)


def vc_dimension(
    E: PointSet,
    t,
    mode: str = "auto",
    budget: int = DEFAULT_STAR_BUDGET,
    work_budget: int = DEFAULT_WORK_BUDGET,
    seed: int = 0,
) -> VCResult:
    q, d = E.q, E.d
    t = nonzero_t(t, q)
    est = exhaustive_work(E.size, d)
    if mode == "auto":
        mode = "exhaustive" if est <= work_budget else "star_guided"
    if mode == "exhaustive":
        if est > work_budget:
            raise BudgetExceeded(
                f"exhaustive VC search needs ~{est} steps, budget is {work_budget}; use star_guided",
                est,
            )
        value, cert = _exhaustive(E, t)
        return VCResult(value, True, mode, cert)
    if mode != "star_guided":
        raise ValueError(f"unknown mode {mode!r}")
    out = search_good_star(E, t, budget, seed)
    if out.certificate is not None:
        # no (d+1)-set of F_q^d is shattered by dot-product hyperplanes
        return VCResult(d, True, mode, out.certificate, out.explored)
    if exhaustive_work(E.size, d - 2) > work_budget:
        return VCResult(0, False, mode, None, out.explored)
    value, cert = _exhaustive(E, t, max_n=d - 1)
    return VCResult(value, out.exhausted, mode, cert, out.explored)
