"""Bound evaluation, experiment sweeps and the verification driver.

Every pass/fail flag is decided in exact integer/rational arithmetic.
Fractional powers q^(a/b) are compared by raising both sides to the b-th
power; floats are only produced for display.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Callable

import numpy as np

from . import oracles
from .ffield import FieldSpec, inv_mod
from .geometry import hyperplane_indices, index_point, point_index, rank_of
from .pointset import GenSpec, PointSet, generate, rng_for, stream_id
from .incidence import degrees, edge_count, psi
from .shatter import (
    bad_star_census,
    greedy_independent_subset,
    is_shattered_direct,
    is_shattered_stars,
    search_good_star,
    vc_dimension,
    witness_set,
    count_shattered,
)
from .stars import count_indep_dstars, count_kstars, dependent_star_bound

# --------------------------------------------------------------------- bounds


def at_least_power(size: int, C, num: int, den: int, q: int) -> bool:
    """size >= C * q^(num/den), exactly."""
    C = Fraction(C)
    return size**den * C.denominator**den >= C.numerator**den * q**num


def threshold_size(q: int, num: int, den: int, C=1) -> int:
    """Smallest integer n with n >= C * q^(num/den)."""
    lo, hi = 0, 1
    while not at_least_power(hi, C, num, den, q):
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if at_least_power(mid, C, num, den, q):
            hi = mid
        else:
            lo = mid + 1
    return lo


def kstar_bound_certified(q: int, d: int, k: int, size: int) -> bool:
    """Size alone forces N_k(E) >= |E|^(k+1) / (2 q^k) for every E of that size.

    Runs the Hoelder argument with the explicit incidence error |R| <= |E| q^((d-1)/2):
    with S = |E|^2/q - |E| q^((d-1)/2) - (k-1)|E| > 0, N_k >= S^k / |E|^(k-1), which
    clears the bound iff 2 (qS)^k >= |E|^(2k). An upper rational bound stands in
    for q^((d-1)/2) when d is even.
    """
    n = size
    if n == 0:
        return False
    root = q ** ((d - 1) // 2) if d % 2 else isqrt(q ** (d - 1)) + 1
    S = Fraction(n * n, q) - n * root - (k - 1) * n
    return S > 0 and 2 * (q * S) ** k >= Fraction(n) ** (2 * k)


@dataclass(frozen=True)
class Constants:
    C_d: Fraction = Fraction(1)
    C_k: Fraction = Fraction(1)
    C_prime: Fraction = Fraction(1)

    def __post_init__(self):
        for f in fields(self):
            v = Fraction(getattr(self, f.name))
            if v <= 0:
                raise ValueError(f"{f.name} must be positive")
            object.__setattr__(self, f.name, v)


@dataclass(frozen=True)
class BoundSet:
    q: int
    d: int
    k: int
    size: int
    constants: Constants
    main_exponent: Fraction | None  # d - 1/(d-1)
    main_size_ok: bool | None  # size >= C_d q^(d - 1/(d-1))
    edge_regime_ok: bool  # size >= C_k q^((d+1)/2)
    kstar_bound_certified: bool  # see kstar_bound_certified
    residual_bound_sq: int  # size^2 q^(d-1)
    kstar_rhs: Fraction  # size^(k+1) / (2 q^k)
    indep_rhs: Fraction  # size^(d+1) / (3 q^d)
    dependent_bound: Fraction  # d q^(d(d-2)) size^2 / q
    dependent_ok: bool  # dependent_bound < size^(d+1) / (6 q^d)
    badstar_exponent: int  # d^2 - kd - d + k
    badstar_rhs: Fraction  # C' size^k q^(d^2-kd-d+k)
    aggregate_rhs: Fraction  # (d-1) C' size^(d-1) q^(d-1)
    aggregate_ok: bool  # aggregate_rhs < size^(d+1) / (3 q^d)
    final_size_ok: bool  # size >= C_d q^(d - 1/2)


def evaluate_bounds(q: int, d: int, k: int, size: int, constants: Constants | None = None) -> BoundSet:
    c = constants or Constants()
    if size < 0 or k < 0 or d < 1:
        raise ValueError("size, k must be non-negative and d >= 1")
    n = size
    if d >= 2:
        main_exp = Fraction(d * (d - 1) - 1, d - 1)
        main_ok = at_least_power(n, c.C_d, d * (d - 1) - 1, d - 1, q)
    else:
        main_exp = main_ok = None
    l25 = Fraction(n ** (d + 1), 3 * q**d)
    dep = Fraction(d * q ** (d * (d - 2)) * n * n, q) if d >= 2 else Fraction(0)
    e28 = d * d - k * d - d + k
    agg = (d - 1) * c.C_prime * n ** (d - 1) * Fraction(q) ** (d - 1)
    return BoundSet(
        q=q,
        d=d,
        k=k,
        size=n,
        constants=c,
        main_exponent=main_exp,
        main_size_ok=main_ok,
        edge_regime_ok=at_least_power(n, c.C_k, d + 1, 2, q),
        kstar_bound_certified=kstar_bound_certified(q, d, k, n),
        residual_bound_sq=n * n * q ** (d - 1),
        kstar_rhs=Fraction(n ** (k + 1), 2 * q**k),
        indep_rhs=l25,
        dependent_bound=dep,
        dependent_ok=dep < Fraction(n ** (d + 1), 6 * q**d),
        badstar_exponent=e28,
        badstar_rhs=c.C_prime * n**k * Fraction(q) ** e28,
        aggregate_rhs=agg,
        aggregate_ok=agg < l25,
        final_size_ok=at_least_power(n, c.C_d, 2 * d - 1, 2, q),
    )


# -------------------------------------------------------------------- records

CSV_FIELDS = (
    "q d t gen size seed edges residual_num residual_den n1 n2 n3 n_indep_d "
    "vc vc_mode thm21_holds l24_holds l25_holds l28_rhs elapsed_ms"
).split()


@dataclass
class ExperimentRecord:
    q: int
    d: int
    t: int
    gen: str
    size: int
    seed: int
    edges: int
    residual_num: int
    residual_den: int
    n1: int | None
    n2: int | None
    n3: int | None
    n_indep_d: int
    vc: str
    vc_mode: str
    thm21_holds: bool
    l24_holds: bool
    l25_holds: bool
    l28_rhs: Fraction | None
    elapsed_ms: int
    phases_ms: dict = field(default_factory=dict, compare=False)

    def row(self) -> dict:
        return {k: getattr(self, k) for k in CSV_FIELDS}

    @property
    def key(self):
        return (self.q, self.d, self.size, self.seed, self.t, self.gen)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _json_cell(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    return v


def records_to_csv(records: list[ExperimentRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in records:
        w.writerow([_csv_cell(v) for v in r.row().values()])
    return buf.getvalue()


def records_to_json(records: list[ExperimentRecord]) -> str:
    rows = [{k: _json_cell(v) for k, v in r.row().items()} for r in records]
    return json.dumps({"fields": CSV_FIELDS, "records": rows}, indent=1) + "\n"


# ---------------------------------------------------------------------- sweep


@dataclass
class SweepConfig:
    q: list = field(default_factory=lambda: [3])
    d: list = field(default_factory=lambda: [2])
    t: list = field(default_factory=lambda: [1])
    gen: list = field(default_factory=lambda: ["full"])
    size: list = field(default_factory=list)  # ints, "threshold" or "final"
    density: list = field(default_factory=list)
    seeds: list = field(default_factory=lambda: [0])
    mode: str = "auto"
    budget: int = 10**6
    work_budget: int = 10**7
    threads: int = 1
    timing: bool = False
    constants: Constants = field(default_factory=Constants)


def _int_list(v: str) -> list[int]:
    out = []
    for part in v.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def _bool(v: str) -> bool:
    if v.lower() in ("1", "true", "yes", "on"):
        return True
    if v.lower() in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {v!r}")


def parse_config(text: str) -> SweepConfig:
    """``key = value`` lines; ``#`` starts a comment; lists are comma separated."""
    cfg = SweepConfig()
    consts = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = (s.strip() for s in line.partition("="))
        if not sep:
            raise ValueError(f"config line {lineno}: expected 'key = value'")
        try:
            if key in ("q", "d", "t", "seeds"):
                setattr(cfg, key, _int_list(val))
            elif key == "gen":
                cfg.gen = [g.strip() for g in val.split(",") if g.strip()]
            elif key == "size":
                cfg.size = [s if s in ("threshold", "final") else int(s) for s in (x.strip() for x in val.split(",")) if s]
            elif key == "density":
                cfg.density = [float(x) for x in val.split(",") if x.strip()]
            elif key == "mode":
                cfg.mode = val
            elif key in ("budget", "work_budget", "threads"):
                setattr(cfg, key, int(val))
            elif key == "timing":
                cfg.timing = _bool(val)
            elif key in ("C_d", "C_k", "C_prime"):
                consts[key] = Fraction(val)
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as e:
            raise ValueError(f"config line {lineno}: {e}") from None
    cfg.constants = Constants(**consts)
    validate_config(cfg)
    return cfg


def validate_config(cfg: SweepConfig):
    for q in cfg.q:
        FieldSpec(q)
    for q, t in product(cfg.q, cfg.t):
        if t % q == 0:
            raise ValueError(f"t={t} is zero mod q={q}")
    if cfg.mode not in ("auto", "exhaustive", "star_guided"):
        raise ValueError(f"unknown mode {cfg.mode!r}")
    for g in cfg.gen:
        if g not in ("full", "random_exact", "random_density"):
            raise ValueError(f"sweep generator must be full, random_exact or random_density, got {g!r}")
        if g == "random_exact" and not cfg.size:
            raise ValueError("random_exact needs size = ...")
        if g == "random_density" and not cfg.density:
            raise ValueError("random_density needs density = ...")


@dataclass(frozen=True)
class Cell:
    q: int
    d: int
    t: int
    gen: GenSpec


def cells(cfg: SweepConfig) -> list[Cell]:
    out = []
    for q, d, t, g in product(cfg.q, cfg.d, cfg.t, cfg.gen):
        for seed in cfg.seeds:
            if g == "full":
                out.append(Cell(q, d, t, GenSpec("full", seed=seed)))
            elif g == "random_exact":
                for s in cfg.size:
                    if s == "threshold":
                        s = threshold_size(q, d * (d - 1) - 1, d - 1, cfg.constants.C_d) if d > 1 else 1
                    elif s == "final":
                        s = threshold_size(q, 2 * d - 1, 2, cfg.constants.C_d)
                    out.append(Cell(q, d, t, GenSpec("random_exact", size=min(s, q**d), seed=seed)))
            else:
                for p in cfg.density:
                    out.append(Cell(q, d, t, GenSpec("random_density", density=p, seed=seed)))
    return out


def run_cell(cell: Cell, cfg: SweepConfig) -> ExperimentRecord:
    q, d, t, spec = cell.q, cell.d, cell.t % cell.q, cell.gen
    phases = {}
    clock = time.perf_counter

    t0 = clock()
    E = generate(spec, q, d, stream=stream_id(q, d, spec.label(), spec.size))
    phases["gen"] = clock() - t0

    t0 = clock()
    n = E.size
    deg = degrees(E, t) if n else np.zeros(0, dtype=np.int64)
    edges = int(deg.sum())
    res_num = q * edges - n * n
    thm21 = res_num * res_num <= n * n * q ** (d - 1) * q * q
    phases["incidence"] = clock() - t0

    t0 = clock()
    nk = {k: count_kstars(E, t, k) if k <= d else None for k in (1, 2, 3)}
    n_d = nk[d] if d <= 3 else count_kstars(E, t, d)
    n_indep = count_indep_dstars(E, t) if n else 0
    phases["stars"] = clock() - t0

    t0 = clock()
    vc = vc_dimension(E, t, cfg.mode, cfg.budget, cfg.work_budget, seed=spec.seed)
    phases["vc"] = clock() - t0

    b = evaluate_bounds(q, d, max(d - 1, 0), n, cfg.constants)
    total = sum(phases.values())
    return ExperimentRecord(
        q=q,
        d=d,
        t=t,
        gen=spec.label(),
        size=n,
        seed=spec.seed,
        edges=edges,
        residual_num=res_num,
        residual_den=q,
        n1=nk[1],
        n2=nk[2],
        n3=nk[3],
        n_indep_d=n_indep,
        vc=vc.label,
        vc_mode=vc.mode,
        thm21_holds=thm21,
        l24_holds=n_d >= Fraction(n ** (d + 1), 2 * q**d),
        l25_holds=n_indep >= b.indep_rhs,
        l28_rhs=b.badstar_rhs if d >= 2 else None,
        elapsed_ms=round(total * 1000) if cfg.timing else 0,
        phases_ms={k: round(v * 1000, 3) for k, v in phases.items()} if cfg.timing else {},
    )


def run_sweep(cfg: SweepConfig, threads: int | None = None, progress: Callable | None = None) -> list[ExperimentRecord]:
    validate_config(cfg)
    todo = cells(cfg)
    threads = cfg.threads if threads is None else threads

    def job(c):
        rec = run_cell(c, cfg)
        if progress:
            progress(rec)
        return rec

    if threads <= 1:
        recs = [job(c) for c in todo]
    else:
        with ThreadPoolExecutor(threads) as ex:
            recs = list(ex.map(job, todo))
    return sorted(recs, key=lambda r: r.key)


# --------------------------------------------------------------------- verify


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


@dataclass
class VerifyReport:
    level: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> str:
        return json.dumps(
            {"level": self.level, "passed": self.passed, "checks": [asdict(c) for c in self.checks]},
            indent=1,
        ) + "\n"

    def to_text(self, timing: bool = False) -> str:
        lines = []
        for c in self.checks:
            s = f"{'PASS' if c.passed else 'FAIL'} {c.name}"
            if c.detail:
                s += f" ({c.detail})"
            if timing:
                s += f" [{c.seconds:.2f}s]"
            lines.append(s)
        lines.append(f"{sum(c.passed for c in self.checks)}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"


def _inject_fault(E: PointSet, seed: int) -> PointSet:
    """Flip one mask bit without touching the member list."""
    i = int(rng_for(seed, stream=99).integers(len(E.mask)))
    mask = E.mask.copy()
    mask[i] = not mask[i]
    return PointSet._raw(E.q, E.d, mask, E.members)


def small_sets(qs=(3, 5), ds=(2, 3), seeds=range(6), max_size=15, fault: int | None = None):
    for q, d, s in product(qs, ds, seeds):
        size = 1 + int(rng_for(s, stream_id("size", q, d)).integers(min(max_size, q**d)))
        E = generate(GenSpec("random_exact", size=size, seed=s), q, d)
        yield (_inject_fault(E, s) if fault is not None else E)


def _check_field():
    for q in (2, 3, 5, 7, 11, 13):
        for a, b, c in product(range(q), repeat=3):
            if (a + b) % q != (b + a) % q or (a * (b + c) - a * b - a * c) % q:
                return False, f"axiom failure q={q}"
        for a in range(1, q):
            if a * inv_mod(a, q) % q != 1 or pow(a, q - 1, q) != 1:
                return False, f"inverse failure q={q} a={a}"
    return True, "q <= 13 exhaustive"


def _check_index():
    for q, d in ((3, 3), (5, 2), (7, 3)):
        for i in range(q**d):
            if point_index(index_point(i, q, d), q) != i:
                return False, f"round trip q={q} d={d} i={i}"
    return True, ""


def _check_hyperplanes():
    for q, d in ((3, 2), (3, 3), (5, 3)):
        allp = [index_point(i, q, d) for i in range(q**d)]
        for y in allp[1:]:
            for t in range(1, q):
                got = [index_point(int(i), q, d) for i in hyperplane_indices(y, t, q)]
                want = [x for x in allp if sum(a * b for a, b in zip(x, y)) % q == t]
                if got != want:
                    return False, f"q={q} y={y} t={t}"
    return True, ""


def _check_psi(sets):
    for E in sets:
        for y in [index_point(i, E.q, E.d) for i in range(E.q**E.d)]:
            if psi(E, y, 1, "hyperplane") != psi(E, y, 1, "members"):
                return False, f"{E!r} y={y}"
    return True, ""


def _check_edges(sets):
    for E in sets:
        got = edge_count(E, 1)
        a = int(degrees(E, 1, "hyperplane").sum())
        b = int(degrees(E, 1, "members").sum())
        if not got == a == b == oracles.edge_count(E.points, E.q, 1):
            return False, f"{E!r}: {got}, {a}, {b}"
    return True, ""


def _check_residual(sets):
    for E in sets:
        if E.size:
            n, q, d = E.size, E.q, E.d
            num = q * edge_count(E, 1) - n * n
            if num * num > n * n * q ** (d - 1) * q * q:
                return False, f"{E!r}"
    return True, ""


def _check_kstars(sets):
    for E in sets:
        for k in (1, 2, 3):
            if count_kstars(E, 1, k) != oracles.kstars(E.points, E.q, 1, k):
                return False, f"{E!r} k={k}"
    return True, ""


def _check_indep(sets):
    for E in sets:
        want = oracles.indep_dstars(E.points, E.q, 1, E.d)
        if not count_indep_dstars(E, 1) == count_indep_dstars(E, 1, method="backtrack") == want:
            return False, f"{E!r}"
    return True, ""


def _check_dependent(sets):
    for E in sets:
        if E.d >= 2:
            dep = count_kstars(E, 1, E.d) - count_indep_dstars(E, 1)
            if dep > dependent_star_bound(E, 1):
                return False, f"{E!r}: {dep} dependent stars"
    return True, ""


def _check_certified(cells):
    for q, d, n, s in cells:
        E = generate(GenSpec("random_exact", size=n, seed=s), q, d)
        if count_kstars(E, 1, d) < Fraction(n ** (d + 1), 2 * q**d):
            return False, f"q={q} d={d} n={n} seed={s}"
    return True, f"{len(cells)} certified instances"


def _certified_cells(n_seeds):
    """(q, d, size, seed) where size alone certifies the d-star lower bound."""
    out = []
    for q, d in ((7, 3), (11, 3), (13, 3)):
        n = next(n for n in range(1, q**d + 1) if kstar_bound_certified(q, d, d, n))
        out += [(q, d, n, s) for s in range(n_seeds)]
    return out


def _check_equivalence(n_per):
    for q, d in product((3, 5), (2, 3)):
        for s in range(n_per):
            E, C = random_candidate(q, d, s)
            if is_shattered_stars(C, E, 1) != is_shattered_direct(C, E, 1).shattered:
                return False, f"q={q} d={d} seed={s}"
    return True, f"{n_per} instances per (q,d)"


def random_candidate(q: int, d: int, seed: int):
    """A random E and a d-subset C; half of the time C is a star's leaf set."""
    rng = rng_for(seed, stream_id("cand", q, d))
    n = q**d
    size = int(rng.integers(d + 1, min(n, 4 * q ** (d - 1)) + 1))
    E = generate(GenSpec("random_exact", size=size, seed=seed), q, d, stream=stream_id("candE", q, d))
    pts = E.points
    if seed % 2 == 0:
        y = pts[int(rng.integers(len(pts)))]
        nb = [x for x in pts if sum(a * b for a, b in zip(x, y)) % q == 1]
        if len(nb) >= d:
            pick = rng.choice(len(nb), size=d, replace=False)
            return E, [nb[i] for i in sorted(pick)]
    pick = rng.choice(len(pts), size=d, replace=False)
    return E, [pts[i] for i in sorted(pick)]


def greedy_instances(count: int):
    """Yield (Q, y, r, q) with |Q(B)| > q^(r-1); r is the largest admissible."""
    made = 0
    s = 0
    while made < count:
        q, d = ((3, 2), (3, 3), (5, 3), (3, 4))[s % 4]
        rng = rng_for(s, stream_id("greedy", q, d))
        dens = float(rng.uniform(0.3, 1.0))
        E = generate(GenSpec("random_density", density=dens, seed=s), q, d)
        s += 1
        if E.size < 2:
            continue
        pts = E.points
        k = int(rng.integers(1, d))
        B = [pts[int(i)] for i in rng.choice(len(pts), size=min(k, len(pts)), replace=False)]
        Q = witness_set(E, B, 1)
        if not Q.members:
            continue
        y = Q.members[int(rng.integers(len(Q.members)))]
        r = max(r for r in range(d) if len(Q.members) * q > q**r)
        made += 1
        yield Q, y, r, q


def _check_greedy(count):
    for Q, y, r, q in greedy_instances(count):
        J = greedy_independent_subset(Q, y, r, q)
        if len(J) < r or y in J or rank_of([y, *J], q) != len(J) + 1:
            return False, f"J={J} y={y} r={r}"
    return True, f"{count} instances"


def _check_bad_census(sets):
    for E in sets:
        c = bad_star_census(E, 1)
        d = E.d
        if c.n_indep != count_indep_dstars(E, 1):
            return False, f"{E!r}: n_indep mismatch"
        for k in range(1, d):
            if c.by_size[k] != oracles.bad_stars(E.points, E.q, 1, d, [k]):
                return False, f"{E!r}: k={k}"
        if c.n_indep - c.M_with_empty > 0 and search_good_star(E, 1, 10**9).certificate is None:
            return False, f"{E!r}: good star not found"
    return True, ""


def _check_vc_full():
    F = generate(GenSpec("full"), 3, 3)
    v = vc_dimension(F, 1, "exhaustive")
    if v.value != 3 or not v.exact:
        return False, f"vc={v.label}"
    if count_shattered(F, 1, 4):
        return False, "a 4-set is shattered"
    return True, "F_3^3: vc 3, no shattered 4-set"


def _check_cap():
    for q, d in ((3, 2), (5, 2), (3, 3)):
        F = generate(GenSpec("full"), q, d)
        if count_shattered(F, 1, d + 1):
            return False, f"q={q} d={d}"
        for s in range(50):
            E = generate(GenSpec("random_density", density=0.6, seed=s), q, d)
            if E.size > d and count_shattered(E, 1, d + 1):
                return False, f"q={q} d={d} seed={s}"
    return True, ""


def verify_suite(level: str = "fast", fault: int | None = None) -> VerifyReport:
    """Run named invariant checks; failures are reported, never raised.

    ``fault`` flips one mask bit of every generated test set (seeded), which
    the strategy and edge-identity checks must catch.
    """
    if level not in ("fast", "full"):
        raise ValueError(f"unknown level {level!r}")
    full = level == "full"
    seeds = range(12 if full else 4)

    def sets(**kw):
        return list(small_sets(seeds=seeds, fault=fault, **kw))

    checks: list[tuple[str, Callable]] = [
        ("field_axioms", _check_field),
        ("index_roundtrip", _check_index),
        ("hyperplane_bruteforce", _check_hyperplanes),
        ("psi_strategy_equivalence", lambda: _check_psi(sets())),
        ("edge_count_identity", lambda: _check_edges(sets())),
        ("residual_bound", lambda: _check_residual(sets())),
        ("kstars_oracle", lambda: _check_kstars(sets(ds=(2,)) + sets(ds=(3,), max_size=10))),
        ("indep_dstars_oracle", lambda: _check_indep(sets(max_size=10))),
        ("dependent_star_bound", lambda: _check_dependent(sets())),
        ("star_count_certified", lambda: _check_certified(_certified_cells(len(seeds)))),
        ("star_direct_equivalence", lambda: _check_equivalence(100 if full else 25)),
        ("greedy_independent_subset", lambda: _check_greedy(200 if full else 40)),
        ("bad_star_census", lambda: _check_bad_census(sets(qs=(3,), max_size=10))),
    ]
    if full:
        checks += [("vc_full_space", _check_vc_full), ("shatter_cap", _check_cap)]
    out = []
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as e:  # report content, not a crash
            ok, detail = False, f"{type(e).__name__}: {e}"
        out.append(CheckResult(name, ok, detail, time.perf_counter() - t0))
    return VerifyReport(level, out)
