from fractions import Fraction
from math import ceil

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffvc.lab import (
    CSV_FIELDS,
    Cell,
    Constants,
    SweepConfig,
    at_least_power,
    evaluate_bounds,
    kstar_bound_certified,
    parse_config,
    records_to_csv,
    records_to_json,
    run_cell,
    run_sweep,
    threshold_size,
    verify_suite,
)
from ffvc.pointset import GenSpec, generate
from ffvc.stars import count_indep_dstars, count_kstars, dependent_star_bound


def test_bound_examples():
    b = evaluate_bounds(3, 3, 2, 48)
    assert b.main_exponent == Fraction(5, 2)
    assert b.badstar_exponent == 2
    assert evaluate_bounds(3, 2, 2, 48).kstar_rhs == 6144
    assert b.indep_rhs == Fraction(48**4, 81)


def test_threshold_sizes():
    assert threshold_size(13, 5, 2) == 610 == ceil(13**2.5)
    assert threshold_size(11, 5, 2) == 402
    assert threshold_size(5, 4, 1) == 625


@given(st.integers(1, 5000), st.sampled_from([3, 5, 7, 11, 13]), st.integers(1, 7), st.integers(1, 3))
def test_at_least_power_exact(n, q, num, den):
    assert at_least_power(n, 1, num, den, q) == (Fraction(n) ** den >= Fraction(q) ** num)
    t = threshold_size(q, num, den)
    assert at_least_power(t, 1, num, den, q) and not at_least_power(t - 1, 1, num, den, q)


def test_constants_positive():
    with pytest.raises(ValueError):
        Constants(C_d=0)
    c = Constants(C_d=Fraction(1, 2))
    assert threshold_size(13, 5, 2, c.C_d) < threshold_size(13, 5, 2)


@settings(max_examples=40)
@given(st.sampled_from([(7, 3), (11, 3), (5, 4)]), st.integers(0, 5), st.data())
def test_certified_size_forces_star_bound(qd, seed, data):
    q, d = qd
    first = next(n for n in range(1, q**d + 1) if kstar_bound_certified(q, d, d, n))
    n = data.draw(st.integers(first, min(q**d, first + 200)))
    assert kstar_bound_certified(q, d, d, n)
    E = generate(GenSpec("random_exact", size=n, seed=seed), q, d)
    assert count_kstars(E, 1, d) >= Fraction(n ** (d + 1), 2 * q**d)


def test_certified_monotone_tail():
    q, d = 11, 3
    flags = [kstar_bound_certified(q, d, d, n) for n in range(1, q**d + 1)]
    first = flags.index(True)
    assert all(flags[first:])


@pytest.mark.parametrize("q,d", [(3, 2), (5, 2), (3, 3), (5, 3)])
@pytest.mark.parametrize("seed", range(4))
def test_dependent_stars_bounded(q, d, seed):
    E = generate(GenSpec("random_density", density=0.5, seed=seed), q, d)
    dep = count_kstars(E, 1, d) - count_indep_dstars(E, 1)
    assert 0 <= dep <= dependent_star_bound(E, 1)


def test_parse_config():
    cfg = parse_config(
        "# comment\nq = 3, 5  # trailing\nd = 2\ngen = random_exact\nsize = 4, threshold\n"
        "seeds = 0..2, 7\nmode = exhaustive\nC_d = 1/2\n"
    )
    assert cfg.q == [3, 5] and cfg.seeds == [0, 1, 2, 7]
    assert cfg.size == [4, "threshold"] and cfg.constants.C_d == Fraction(1, 2)


@pytest.mark.parametrize(
    "text",
    ["q = 4", "t = 3\nq = 3", "mode = fast", "bogus = 1", "q 3", "gen = random_exact", "gen = explicit", "timing = maybe"],
)
def test_config_errors(text):
    with pytest.raises(ValueError):
        parse_config(text)


def test_full_spaces_vc_two():
    recs = run_sweep(parse_config("q = 3, 5\nd = 2\ngen = full\nseeds = 0"))
    assert [r.vc for r in recs] == ["2", "2"]
    assert all(r.thm21_holds for r in recs)


def test_empty_grid():
    cfg = parse_config("q = 3\nseeds =")
    assert run_sweep(cfg) == []
    assert records_to_csv([]) == ",".join(CSV_FIELDS) + "\n"
    assert records_to_json([]).startswith('{\n "fields"')


SMALL = "q = 3, 5, 7\nd = 2, 3\ngen = random_exact, random_density\nsize = 5, 20\ndensity = 0.3\nseeds = 0..2\n"


def test_threads_identical():
    cfg = parse_config(SMALL)
    serial = run_sweep(cfg, threads=1)
    assert records_to_csv(serial) == records_to_csv(run_sweep(cfg, threads=4))
    assert records_to_json(serial) == records_to_json(run_sweep(cfg, threads=3))


def test_sorted_by_key():
    recs = run_sweep(parse_config(SMALL), threads=2)
    keys = [(r.q, r.d, r.size, r.seed) for r in recs]
    assert keys == sorted(keys)


def test_record_rerun_reproduces():
    cfg = parse_config(SMALL)
    for r in run_sweep(cfg, threads=2)[::5]:
        kind, _, dens = r.gen.partition(":")
        spec = GenSpec(kind, size=r.size if kind == "random_exact" else None,
                       density=float(dens) if dens else None, seed=r.seed)
        assert run_cell(Cell(r.q, r.d, r.t, spec), cfg) == r


def test_flags_under_hypotheses():
    cfg = parse_config(SMALL + "\n")
    recs = run_sweep(cfg, threads=2)
    cfg3 = parse_config("q = 7, 11\nd = 3\ngen = random_exact\nsize = 310, 700\nseeds = 0..1\nmode = star_guided\n")
    recs += run_sweep(cfg3, threads=2)
    certified = 0
    for r in recs:
        assert r.thm21_holds
        if kstar_bound_certified(r.q, r.d, r.d, r.size):
            certified += 1
            assert r.l24_holds
    assert certified >= 4


def test_budget_recorded_not_raised():
    cfg = parse_config("q = 7\nd = 3\ngen = full\nmode = star_guided\nbudget = 0\n")
    (r,) = run_sweep(cfg)
    assert r.vc.startswith("unresolved")


def test_timing_off_by_default():
    cfg = parse_config("q = 3\nd = 2\ngen = full\n")
    assert run_sweep(cfg)[0].elapsed_ms == 0
    cfg.timing = True
    r = run_sweep(cfg)[0]
    assert set(r.phases_ms) == {"gen", "incidence", "stars", "vc"}


def test_sweep_config_defaults():
    cfg = SweepConfig()
    assert cfg.q == [3] and cfg.mode == "auto" and cfg.constants == Constants()


def test_verify_fast_passes():
    rep = verify_suite("fast")
    assert rep.passed, rep.to_text()


def test_verify_fault_detected():
    rep = verify_suite("fast", fault=3)
    failed = {c.name for c in rep.checks if not c.passed}
    assert {"psi_strategy_equivalence", "edge_count_identity"} <= failed


def test_verify_full_includes_vc():
    rep = verify_suite("full")
    assert rep.passed, rep.to_text()
    assert "vc_full_space" in {c.name for c in rep.checks}
