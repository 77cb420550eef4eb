from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from ffvc import oracles
from ffvc.errors import BudgetExceeded, InvariantViolation
from ffvc.geometry import rank_of
from ffvc.lab import random_candidate
from ffvc.pointset import GenSpec, PointSet, generate
from ffvc.shatter import (
    WitnessSet,
    bad_star_census,
    bad_subsets,
    count_bad_stars,
    count_shattered,
    find_shattered_dset,
    greedy_independent_subset,
    is_bad,
    is_shattered_direct,
    is_shattered_stars,
    search_good_star,
    shattered_levels,
    vc_dimension,
    witness_set,
)

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def small(q, d, seed, size):
    return generate(GenSpec("random_exact", size=min(size, q**d), seed=seed), q, d)


def test_witness_set_examples(full33, three_point):
    Q = witness_set(full33, [E1], 1)
    assert len(Q) == 9 and all(z[0] == 1 for z in Q.members)
    assert witness_set(full33, [], 1).members == tuple(full33.points)
    assert witness_set(three_point, [(1, 1)], 1).members == ((2, 2),)
    assert witness_set(full33, [(0, 0, 0)], 1).members == ()


@given(st.sampled_from([(3, 2), (3, 3), (5, 3)]), st.integers(0, 2**32), st.integers(1, 3))
def test_witness_set_strategies_agree(qd, seed, nb):
    E = small(*qd, seed, 2 * qd[0] ** (qd[1] - 1))
    B = E.points[:nb]
    a = witness_set(E, B, 1, "hyperplane")
    b = witness_set(E, B, 1, "members")
    assert a == b
    assert all(all(sum(x * y for x, y in zip(z, b_)) % E.q == 1 for b_ in B) for z in a.members)


def test_is_bad_examples(full33, three_point):
    assert not is_bad([E1], [E1, E2, E3], full33, 1)
    assert is_bad([(1, 1)], [(1, 1), (2, 0)], three_point, 1)
    E = PointSet.from_points(3, 2, [(1, 0), (0, 0)])
    assert is_bad([(0, 0)], [(1, 0), (0, 0)], E, 1)  # Q(A) empty: vacuous
    with pytest.raises(ValueError):
        is_bad([(1, 1), (2, 0)], [(1, 1), (2, 0)], three_point, 1)


def test_direct_examples(full33, three_point):
    cert = is_shattered_direct([E1, E2, E3], full33, 1)
    assert cert.shattered and cert.validate(3, 1)
    for mask, y in cert.witnesses.items():
        assert y == tuple(mask >> i & 1 for i in range(3))  # indicator vector of S
    cert = is_shattered_direct([(1, 1), (2, 0)], three_point, 1)
    assert not cert.shattered and cert.failing_subset == ((1, 1),)
    with pytest.raises(ValueError):
        is_shattered_direct([(0, 1)], three_point, 1)


@given(st.sampled_from([(3, 2), (3, 3), (5, 2)]), st.data())
def test_no_d_plus_one_set_is_shattered(qd, data):
    q, d = qd
    F = generate(GenSpec("full"), q, d)
    C = data.draw(st.lists(st.sampled_from(F.points), min_size=d + 1, max_size=d + 1, unique=True))
    assert not is_shattered_direct(C, F, 1).shattered


def test_star_examples(full33, three_point):
    assert is_shattered_stars([E1, E2, E3], full33, 1)
    assert not is_shattered_stars([(1, 1), (2, 0)], three_point, 1)
    assert bad_subsets([(1, 1), (2, 0)], three_point, 1) == [((1, 1),)]
    with pytest.raises(ValueError):
        is_shattered_stars([E1, E2], full33, 1)


@given(st.sampled_from([(3, 2), (3, 3), (5, 2), (5, 3)]), st.integers(0, 10**6))
def test_star_equals_direct(qd, seed):
    E, C = random_candidate(*qd, seed)
    direct = is_shattered_direct(C, E, 1).shattered
    assert is_shattered_stars(C, E, 1) == direct
    assert direct == oracles.is_shattered(C, E.points, qd[0], 1)


@given(st.sampled_from([(3, 2), (3, 3), (5, 2)]), st.integers(0, 10**6))
def test_downward_closure_and_validation(qd, seed):
    E, C = random_candidate(*qd, seed)
    cert = is_shattered_direct(C, E, 1)
    assert cert.validate(E.q, 1)
    if cert.shattered:
        for k in range(len(C)):
            for S in combinations(C, k):
                sub = is_shattered_direct(S, E, 1)
                assert sub.shattered and sub.validate(E.q, 1)


def test_greedy_examples(full33):
    Q = witness_set(full33, [E1], 1)
    assert greedy_independent_subset(Q, (1, 0, 0), 2, 3) == [(1, 1, 0), (1, 0, 1)]
    assert greedy_independent_subset(Q, (1, 0, 0), 0, 3) == []
    line = PointSet.from_points(3, 3, [(1, 0, 0), (1, 1, 0), (1, 2, 0)])
    Qline = witness_set(line, [E1], 1)
    assert len(Qline) == 3
    with pytest.raises(ValueError, match="not > q"):
        greedy_independent_subset(Qline, (1, 0, 0), 2, 3)
    assert greedy_independent_subset(Qline, (1, 0, 0), 1, 3) == [(1, 1, 0)]
    with pytest.raises(ValueError):
        greedy_independent_subset(Q, (2, 0, 0), 1, 3)
    with pytest.raises(ValueError):
        greedy_independent_subset(witness_set(full33, [], 1), (1, 0, 0), 1, 3)
    with pytest.raises(ValueError):
        greedy_independent_subset(Q, (1, 0, 0), 3, 3)


def test_greedy_internal_error_branch():
    # a hand-made Q that is not a genuine witness set breaks the greedy's premise
    fake = WitnessSet(((1, 0, 0),), ((1, 0, 0), (2, 0, 0)))
    with pytest.raises(InvariantViolation):
        greedy_independent_subset(fake, (1, 0, 0), 1, 3)


@given(st.sampled_from([(3, 3), (5, 3), (3, 4)]), st.integers(0, 2**32), st.floats(0.2, 1))
def test_greedy_postcondition(qd, seed, p):
    q, d = qd
    E = generate(GenSpec("random_density", density=p, seed=seed), q, d)
    if E.size < 2:
        return
    Q = witness_set(E, [E.points[seed % E.size]], 1)
    if not Q.members:
        return
    y = Q.members[0]
    r = max(r for r in range(d) if len(Q.members) * q > q**r)
    J = greedy_independent_subset(Q, y, r, q)
    assert len(J) == r and y not in J and rank_of([y, *J], q) == r + 1
    assert set(J) <= set(Q.members)


def test_bad_star_examples(full32):
    assert count_bad_stars(full32, 1, 1) == 0
    assert count_bad_stars(PointSet(3, 3), 1, 1) == 0
    with pytest.raises(ValueError):
        count_bad_stars(full32, 1, 2)
    with pytest.raises(BudgetExceeded):
        bad_star_census(generate(GenSpec("full"), 5, 3), 1, budget=1000)


@pytest.mark.parametrize("seed", range(8))
def test_bad_stars_match_reversed_enumeration(seed):
    E = small(3, 3, seed, 6 + seed % 7)
    c = bad_star_census(E, 1)
    for k in (1, 2):
        assert c.by_size[k] == oracles.bad_stars(E.points, 3, 1, 3, [k])
    assert c.M == oracles.bad_stars(E.points, 3, 1, 3, [1, 2])
    assert c.M_with_empty == oracles.bad_stars(E.points, 3, 1, 3, [0, 1, 2])
    assert sum(c.by_size[1:]) >= c.M >= max(c.by_size[1:])


def test_find_examples(full33):
    cert = find_shattered_dset(full33, 1, seed=0)
    assert cert is not None and cert.shattered and len(cert.C) == 3 and cert.validate(3, 1)
    assert find_shattered_dset(full33, 1, budget=0) is None


def test_find_on_single_hyperplane():
    E = generate(GenSpec("union_hyperplanes", planes=((E1, 1),)), 3, 3)
    out = search_good_star(E, 1, budget=10**9)
    exhaustive = oracles.vc_dimension(E.points, 3, 1)
    assert exhaustive == 2
    assert out.certificate is None and out.exhausted
    assert not oracles.good_star_exists(E.points, 3, 1, 3)
    r = vc_dimension(E, 1, "star_guided", budget=10**9)
    assert r.exact and r.value == 2


@pytest.mark.parametrize("seed", range(12))
def test_find_succeeds_iff_good_star_exists(seed):
    q, d = [(3, 2), (3, 3), (5, 2)][seed % 3]
    E = small(q, d, seed, 4 + seed)
    found = find_shattered_dset(E, 1, budget=10**9, seed=seed) is not None
    assert found == oracles.good_star_exists(E.points, q, 1, d)
    assert found == (bad_star_census(E, 1).good > 0)


def test_vc_examples(full33, three_point):
    r = vc_dimension(full33, 1, "exhaustive")
    assert r.value == 3 and r.exact and r.certificate.validate(3, 1)
    assert vc_dimension(three_point, 1, "exhaustive").value == 1
    assert vc_dimension(PointSet.from_points(3, 2, [(1, 1)]), 1, "exhaustive").value == 0
    assert vc_dimension(PointSet(3, 2), 1, "exhaustive").value == 0
    g = vc_dimension(full33, 1, "star_guided", seed=5)
    assert g.value == 3 and g.exact and g.label == "3"
    with pytest.raises(BudgetExceeded):
        vc_dimension(full33, 1, "exhaustive", work_budget=10)


def test_vc_unresolved_label():
    E = generate(GenSpec("union_hyperplanes", planes=((E1, 1),)), 3, 3)
    r = vc_dimension(E, 1, "star_guided", budget=1)
    assert not r.exact and r.label == f"unresolved(>={r.value})"


@given(st.sampled_from([(3, 2), (3, 3), (5, 2)]), st.integers(0, 2**32), st.integers(1, 12))
def test_vc_matches_oracle(qd, seed, size):
    q, d = qd
    E = small(q, d, seed, size)
    assert vc_dimension(E, 1, "exhaustive").value == oracles.vc_dimension(E.points, q, 1)


def test_levels_match_unpruned_count(full32):
    E = small(5, 2, 3, 18)
    levels = shattered_levels(E, 1)
    for n in range(1, 4):
        got = len(levels[n]) if n < len(levels) else 0
        assert got == count_shattered(E, 1, n)


@pytest.mark.parametrize("d", [2, 3])
def test_cap_full_and_random(d):
    F = generate(GenSpec("full"), 3, d)
    assert count_shattered(F, 1, d + 1) == 0
    assert count_shattered(F, 1, d) > 0
    for s in range(50):
        E = generate(GenSpec("random_density", density=0.7, seed=s), 3, d)
        assert count_shattered(E, 1, d + 1) == 0
