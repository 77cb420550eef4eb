"""Immutable point subsets of F_q^d, seeded generators and the text format."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .ffield import FieldSpec
from .geometry import as_point, coords_of, hyperplane_indices, point_index

MAX_SPACE = 1 << 31
HEADER = "ffvc-pointset v1"
KINDS = ("full", "random_exact", "random_density", "union_hyperplanes", "explicit")


def rng_for(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based (Philox) generator keyed by (seed, stream)."""
    ss = np.random.SeedSequence([seed & 0xFFFF_FFFF_FFFF_FFFF, stream & 0xFFFF_FFFF_FFFF_FFFF])
    return np.random.Generator(np.random.Philox(ss))


def stream_id(*parts) -> int:
    """Stable 64-bit id for a tuple of labels, for independent per-cell streams."""
    h = hashlib.sha256(repr(parts).encode()).digest()
    return int.from_bytes(h[:8], "little")


class PointSet:
    """E as a membership mask over point indices plus the sorted member list."""

    def __init__(self, q: int, d: int, indices: Iterable[int] = ()):
        FieldSpec(q)
        if d < 1:
            raise ValueError(f"d must be >= 1, got {d}")
        if q**d > MAX_SPACE:
            raise ValueError(f"q^d = {q}^{d} exceeds the 2^31 desk-scale cap")
        n = q**d
        members = np.unique(np.fromiter((int(i) for i in indices), dtype=np.int64))
        if len(members) and (members[0] < 0 or members[-1] >= n):
            raise ValueError(f"point index out of range [0, {n})")
        mask = np.zeros(n, dtype=bool)
        mask[members] = True
        self._freeze(q, d, mask, members)

    def _freeze(self, q, d, mask, members):
        mask.flags.writeable = False
        members.flags.writeable = False
        self.q, self.d, self.mask, self.members = q, d, mask, members

    @classmethod
    def _raw(cls, q: int, d: int, mask: np.ndarray, members: np.ndarray) -> "PointSet":
        # no consistency check; used for fault injection
        obj = cls.__new__(cls)
        obj._freeze(q, d, mask.copy(), members.copy())
        return obj

    @classmethod
    def from_mask(cls, q: int, d: int, mask: np.ndarray) -> "PointSet":
        return cls(q, d, np.flatnonzero(mask))

    @classmethod
    def from_points(cls, q: int, d: int, points: Iterable[Sequence[int]]) -> "PointSet":
        return cls(q, d, (point_index(as_point(p, q, d), q) for p in points))

    @property
    def size(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x) -> bool:
        if isinstance(x, (int, np.integer)):
            return 0 <= x < len(self.mask) and bool(self.mask[x])
        return bool(self.mask[point_index(as_point(x, self.q, self.d), self.q)])

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return (self.q, self.d) == (other.q, other.d) and np.array_equal(self.members, other.members)

    def __hash__(self):
        return hash((self.q, self.d, self.members.tobytes()))

    def __repr__(self):
        return f"PointSet(q={self.q}, d={self.d}, size={self.size})"

    @cached_property
    def coords(self) -> np.ndarray:
        c = coords_of(self.members, self.q, self.d)
        c.flags.writeable = False
        return c

    @cached_property
    def points(self) -> list:
        return [tuple(int(v) for v in row) for row in self.coords]

    def index_of_member(self, i: int) -> int:
        """Position of point index i in ``members`` (binary search)."""
        pos = int(np.searchsorted(self.members, i))
        if pos == len(self.members) or self.members[pos] != i:
            raise KeyError(i)
        return pos

    def subset(self, indices: Iterable[int]) -> "PointSet":
        idx = np.fromiter((int(i) for i in indices), dtype=np.int64)
        if len(idx) and not self.mask[idx].all():
            raise ValueError("subset contains non-members")
        return PointSet(self.q, self.d, idx)


@dataclass(frozen=True)
class GenSpec:
    kind: str
    size: int | None = None
    density: float | None = None
    planes: tuple = ()  # ((y, t), ...)
    points: tuple = ()
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "random_exact" and (self.size is None or self.size < 0):
            raise ValueError("random_exact needs a non-negative size")
        if self.kind == "random_density" and (self.density is None or not 0 <= self.density <= 1):
            raise ValueError("random_density needs a density in [0, 1]")

    def label(self) -> str:
        if self.kind == "random_exact":
            return "random_exact"
        if self.kind == "random_density":
            return f"random_density:{self.density!r}"
        if self.kind == "union_hyperplanes":
            return f"union_hyperplanes:{len(self.planes)}"
        return self.kind


def _partial_fisher_yates(n: int, k: int, rng: np.random.Generator) -> list[int]:
    swapped: dict[int, int] = {}
    out = []
    for i in range(k):
        j = int(rng.integers(i, n))
        vi, vj = swapped.get(i, i), swapped.get(j, j)
        swapped[j] = vi
        out.append(vj)
    return out


def generate(spec: GenSpec, q: int, d: int, stream: int = 0) -> PointSet:
    FieldSpec(q)
    n = q**d
    if n > MAX_SPACE:
        raise ValueError(f"q^d = {q}^{d} exceeds the 2^31 desk-scale cap")
    if spec.kind == "full":
        return PointSet(q, d, range(n))
    if spec.kind == "random_exact":
        if spec.size > n:
            raise ValueError(f"size {spec.size} exceeds q^d = {n}")
        return PointSet(q, d, _partial_fisher_yates(n, spec.size, rng_for(spec.seed, stream)))
    if spec.kind == "random_density":
        rng = rng_for(spec.seed, stream)
        return PointSet.from_mask(q, d, rng.random(n) < spec.density)
    if spec.kind == "union_hyperplanes":
        idx = []
        for y, t in spec.planes:
            y = as_point(y, q, d)
            if not any(y):
                raise ValueError("zero normal vector in hyperplane list")
            idx.append(hyperplane_indices(y, t % q, q))
        return PointSet(q, d, np.concatenate(idx) if idx else ())
    return PointSet.from_points(q, d, spec.points)


def write_pointset(E: PointSet) -> str:
    lines = [HEADER, f"q={E.q} d={E.d} n={E.size}"]
    lines += [",".join(str(c) for c in p) for p in E.points]
    return "\n".join(lines) + "\n"


def _parse_header(line: str) -> tuple[int, int, int]:
    fields = {}
    for tok in line.split():
        k, sep, v = tok.partition("=")
        if not sep or k not in ("q", "d", "n") or k in fields:
            raise ValueError(f"malformed header line: {line!r}")
        try:
            fields[k] = int(v)
        except ValueError:
            raise ValueError(f"malformed header line: {line!r}") from None
    if set(fields) != {"q", "d", "n"}:
        raise ValueError(f"malformed header line: {line!r}")
    return fields["q"], fields["d"], fields["n"]


def read_pointset(text: str) -> PointSet:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 2 or lines[0].split("#", 1)[0].strip() != HEADER:
        raise ValueError(f"missing '{HEADER}' header")
    q, d, n = _parse_header(lines[1])
    body = lines[2:]
    if len(body) != n:
        raise ValueError(f"header says n={n} but found {len(body)} point lines")
    seen = set()
    for lineno, line in enumerate(body, start=3):
        try:
            p = as_point((int(c) for c in line.split(",")), q, d)
        except ValueError as e:
            raise ValueError(f"line {lineno}: {e}") from None
        i = point_index(p, q)
        if i in seen:
            raise ValueError(f"line {lineno}: duplicate point {p}")
        seen.add(i)
    return PointSet(q, d, seen)
