"""Command-line entry point: ``ffvc <subcommand> [flags]``.

Exit codes: 0 success, 1 usage/validation error, 2 budget exhaustion,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction

from . import __version__
from .errors import BudgetExceeded, InvariantViolation
from .ffield import FieldSpec
from .incidence import residual_check
from .lab import SweepConfig, parse_config, records_to_csv, records_to_json, run_sweep, verify_suite
from .pointset import GenSpec, PointSet, generate, read_pointset, write_pointset
from .shatter import (
    DEFAULT_STAR_BUDGET,
    DEFAULT_WORK_BUDGET,
    bad_star_census,
    exhaustive_work,
    is_shattered_direct,
    is_shattered_stars,
    vc_dimension,
)
from .stars import star_census

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_POINT = re.compile(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)")


def parse_points(text: str, flag: str) -> list[tuple]:
    """``(a,b,c);(d,e,f)`` -> list of integer tuples."""
    out = []
    for part in (p.strip() for p in text.split(";")):
        if not part:
            continue
        m = _POINT.fullmatch(part)
        if not m:
            raise UsageError(f"{flag}: malformed point literal {part!r}")
        out.append(tuple(int(c) for c in m.group(1).split(",")))
    return out


def parse_planes(text: str) -> list:
    """``(1,0):1;(0,1):2`` -> [((1,0), 1), ((0,1), 2)]."""
    out = []
    for part in (p.strip() for p in text.split(";")):
        if not part:
            continue
        pt, sep, t = part.rpartition(":")
        if not sep:
            raise UsageError(f"--planes: expected '(y):t' in {part!r}")
        (y,) = parse_points(pt, "--planes")
        try:
            out.append((y, int(t)))
        except ValueError:
            raise UsageError(f"--planes: bad t in {part!r}") from None
    return out


def fmt_point(p) -> str:
    return "(" + ",".join(str(c) for c in p) + ")"


def fmt_set(ps) -> str:
    return "{" + ",".join(fmt_point(p) for p in ps) + "}"


def _common(p: argparse.ArgumentParser, need_t: bool = True):
    p.add_argument("--q", type=int)
    p.add_argument("--d", type=int)
    if need_t:
        p.add_argument("--t", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--in", dest="infile")
    p.add_argument("--out")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--gen", choices=("full", "random_exact", "random_density", "union_hyperplanes", "explicit"))
    p.add_argument("--size", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--planes", help="hyperplanes '(y):t;(y):t' for union_hyperplanes")
    p.add_argument("--points", help="points '(a,b);(c,d)' for explicit")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ffvc", description="VC-dimension of dot-product classes over F_q^d")
    parser.add_argument("--version", action="version", version=f"ffvc {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    _common(sub.add_parser("gen", help="generate a point set"), need_t=False)
    _common(sub.add_parser("edges", help="edge count and residual"))

    p = sub.add_parser("stars", help="k-star counts and bounds")
    _common(p)
    p.add_argument("--k", type=int)

    p = sub.add_parser("shatter", help="shattering check for a candidate set")
    _common(p)
    p.add_argument("--set", dest="cand", required=True, help="candidate points '(a,b);(c,d)'")

    p = sub.add_parser("vcdim", help="VC-dimension of H_t(E)")
    _common(p)
    p.add_argument("--mode", choices=("auto", "exhaustive", "star_guided"), default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_STAR_BUDGET)
    p.add_argument("--work-budget", type=int, default=DEFAULT_WORK_BUDGET)

    p = sub.add_parser("badstars", help="bad-star census")
    _common(p)
    p.add_argument("--k", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_WORK_BUDGET)

    p = sub.add_parser("sweep", help="run an experiment sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--timing", action="store_true", help="fill elapsed_ms (breaks byte-identical output)")
    p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--fault-seed", type=int, help="inject a seeded one-bit mask fault")
    p.add_argument("--out")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _field(q: int | None) -> int:
    if q is None:
        raise UsageError("--q: required")
    try:
        FieldSpec(q)
    except ValueError as e:
        raise UsageError(f"--q: {e}") from None
    return q


def _t(args, q: int) -> int:
    if args.t is None:
        raise UsageError("--t: required (no default; t must be nonzero)")
    if args.t % q == 0:
        raise UsageError(f"--t: {args.t} is zero mod q={q}")
    return args.t % q


def load_set(args) -> PointSet:
    if args.infile:
        try:
            with open(args.infile, encoding="utf-8") as fh:
                E = read_pointset(fh.read())
        except OSError as e:
            raise UsageError(f"--in: {e}") from None
        except ValueError as e:
            raise UsageError(f"--in: {e}") from None
        if args.q is not None and args.q != E.q:
            raise UsageError(f"--q: {args.q} disagrees with file (q={E.q})")
        if args.d is not None and args.d != E.d:
            raise UsageError(f"--d: {args.d} disagrees with file (d={E.d})")
        return E
    q = _field(args.q)
    if args.d is None or args.d < 1:
        raise UsageError("--d: required, >= 1")
    if args.gen is None:
        raise UsageError("--gen: required unless --in is given")
    if args.gen in ("random_exact", "random_density") and args.seed is None:
        raise UsageError("--seed: required for random generation")
    kw = {"seed": args.seed or 0}
    if args.gen == "random_exact":
        if args.size is None:
            raise UsageError("--size: required for random_exact")
        kw["size"] = args.size
    elif args.gen == "random_density":
        if args.density is None:
            raise UsageError("--density: required for random_density")
        kw["density"] = args.density
    elif args.gen == "union_hyperplanes":
        kw["planes"] = tuple(parse_planes(args.planes or ""))
    elif args.gen == "explicit":
        kw["points"] = tuple(parse_points(args.points or "", "--points"))
    try:
        return generate(GenSpec(args.gen, **kw), q, args.d)
    except ValueError as e:
        raise UsageError(f"--gen: {e}") from None


def _table(fmt: str, row: dict) -> str:
    if fmt == "json":
        return json.dumps({k: str(v) if isinstance(v, Fraction) else v for k, v in row.items()}, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(row)
        w.writerow(["" if v is None else str(v).lower() if isinstance(v, bool) else str(v) for v in row.values()])
        return buf.getvalue()
    return "".join(
        f"{k}: {'' if v is None else str(v).lower() if isinstance(v, bool) else v}\n" for k, v in row.items()
    )


def cmd_gen(args) -> tuple[str, int]:
    E = load_set(args)
    if args.format == "json":
        return json.dumps({"q": E.q, "d": E.d, "n": E.size, "points": [list(p) for p in E.points]}) + "\n", 0
    if args.format == "csv":
        head = ",".join(f"x{i}" for i in range(E.d))
        return head + "\n" + "".join(",".join(map(str, p)) + "\n" for p in E.points), 0
    return write_pointset(E), 0


def cmd_edges(args):
    E = load_set(args)
    t = _t(args, E.q)
    if E.size == 0:
        raise UsageError("--in/--gen: the point set is empty")
    s = residual_check(E, t)
    if args.format == "text":
        out = f"{s.edge_count}\nresidual {s.residual}\nmain_term {s.main_term}\nthm21_holds {str(s.bound_holds).lower()}\n"
        return out, 0
    row = {
        "q": E.q, "d": E.d, "t": t, "size": E.size, "edges": s.edge_count,
        "residual_num": E.q * s.edge_count - E.size**2, "residual_den": E.q,
        "thm21_holds": s.bound_holds,
    }
    return _table(args.format, row), 0


def cmd_stars(args):
    E = load_set(args)
    t = _t(args, E.q)
    k = E.d if args.k is None else args.k
    if k < 1:
        raise UsageError("--k: must be >= 1")
    c = star_census(E, t, k, workers=args.threads)
    row = {
        "q": E.q, "d": E.d, "t": t, "size": E.size, "k": k, "n_k": c.n_k,
        "n_indep_d": c.n_indep, "n_dep_d": c.n_dep,
        "l24_rhs": c.kstar_rhs, "l24_holds": c.kstar_bound_holds,
        "l25_rhs": c.indep_rhs, "l25_holds": c.indep_bound_holds,
    }
    return _table(args.format, row), 0


def cmd_shatter(args):
    E = load_set(args)
    t = _t(args, E.q)
    C = parse_points(args.cand, "--set")
    try:
        cert = is_shattered_direct(C, E, t)
        star = is_shattered_stars(C, E, t) if len(C) == E.d else None
    except ValueError as e:
        raise UsageError(f"--set: {e}") from None
    if star is not None and star != cert.shattered:
        raise InvariantViolation(f"star test ({star}) disagrees with direct test ({cert.shattered})")
    if args.format == "text":
        if cert.shattered:
            lines = [f"shattered {fmt_set(cert.C)}"]
            lines += [f"  {fmt_set(cert.subset(m))} <- {fmt_point(y)}" for m, y in sorted(cert.witnesses.items())]
            return "\n".join(lines) + "\n", 0
        return f"not shattered; failing subset {fmt_set(cert.failing_subset)}\n", 0
    row = {
        "C": fmt_set(cert.C), "shattered": cert.shattered,
        "failing_subset": None if cert.shattered else fmt_set(cert.failing_subset),
        "star_test": star,
    }
    if args.format == "json":
        row["witnesses"] = {fmt_set(cert.subset(m)): fmt_point(y) for m, y in sorted(cert.witnesses.items())}
    return _table(args.format, row), 0


def cmd_vcdim(args):
    E = load_set(args)
    t = _t(args, E.q)
    mode = args.mode
    if mode == "auto":
        mode = "exhaustive" if exhaustive_work(E.size, E.d) <= args.work_budget else "star_guided"
    if mode == "star_guided" and args.seed is None:
        raise UsageError("--seed: required for star_guided search")
    r = vc_dimension(E, t, mode, args.budget, args.work_budget, seed=args.seed or 0)
    code = 0 if r.exact else EXIT_BUDGET
    if args.format == "text":
        return f"{r.label}\n", code
    row = {
        "q": E.q, "d": E.d, "t": t, "size": E.size, "vc": r.label, "exact": r.exact, "mode": r.mode,
        "explored": r.explored, "certificate": fmt_set(r.certificate.C) if r.certificate else None,
    }
    return _table(args.format, row), code


def cmd_badstars(args):
    E = load_set(args)
    t = _t(args, E.q)
    if args.k is not None and not 1 <= args.k <= E.d - 1:
        raise UsageError(f"--k: must lie in [1, {E.d - 1}]")
    c = bad_star_census(E, t, args.budget)
    row = {"q": E.q, "d": E.d, "t": t, "size": E.size, "n_indep_d": c.n_indep}
    for k in range(E.d):
        if args.k is None or k == args.k:
            row[f"bad_k{k}"] = c.by_size[k]
    row.update({"M": c.M, "M_with_empty": c.M_with_empty, "good": c.good})
    return _table(args.format, row), 0


def cmd_sweep(args):
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg: SweepConfig = parse_config(fh.read())
    except OSError as e:
        raise UsageError(f"--config: {e}") from None
    except ValueError as e:
        raise UsageError(f"--config: {e}") from None
    if args.timing:
        cfg.timing = True
    done = []

    def progress(rec):
        done.append(rec)
        if args.verbose:
            print(f"cell {len(done)}: q={rec.q} d={rec.d} size={rec.size} seed={rec.seed}", file=sys.stderr)

    recs = run_sweep(cfg, threads=max(1, args.threads), progress=progress)
    return (records_to_json(recs) if args.format == "json" else records_to_csv(recs)), 0


def cmd_verify(args):
    rep = verify_suite(args.level, fault=args.fault_seed)
    out = rep.to_json() if args.format == "json" else rep.to_text()
    return out, 0 if rep.passed else EXIT_INVARIANT


COMMANDS = {
    "gen": cmd_gen, "edges": cmd_edges, "stars": cmd_stars, "shatter": cmd_shatter,
    "vcdim": cmd_vcdim, "badstars": cmd_badstars, "sweep": cmd_sweep, "verify": cmd_verify,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "threads", 1) < 1:
            raise UsageError("--threads: must be >= 1")
        text, code = COMMANDS[args.cmd](args)
    except UsageError as e:
        print(f"ffvc: error: {e}", file=stderr)
        return EXIT_USAGE
    except BudgetExceeded as e:
        print(f"ffvc: budget exhausted: {e}", file=stderr)
        return EXIT_BUDGET
    except InvariantViolation as e:
        print(f"ffvc: internal invariant violated: {e}", file=stderr)
        return EXIT_INVARIANT
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
