import math
from pathlib import Path
from fractions import Fraction

import pytest

from meansubtree import search
from meansubtree.closed_forms import double_broom_counts, periodic_f
from meansubtree.counting import brute_force_counts, global_counts, mean_subtree_order
from meansubtree.trees import (
    Caterpillar, Star, Tree, build_family, canonical_form, generate_free_trees,
    is_caterpillar,
)

DATA = Path(__file__).parent / "data"


def brute_optimum(n):
    best, winners = None, []
    for t in generate_free_trees(n):
        mu = brute_force_counts(t).mean
        if best is None or mu > best:
            best, winners = mu, [canonical_form(t)]
        elif mu == best:
            winners.append(canonical_form(t))
    return best, sorted(winners)


@pytest.mark.parametrize("n", range(4, 9))
def test_star_is_optimal_up_to_eight(n):
    res = search.exhaustive_optimal(n)
    assert [canonical_form(t) for t in res.best_trees] == [canonical_form(build_family(Star(n)))]


def test_double_star_is_optimal_at_nine():
    res = search.exhaustive_optimal(9)
    assert res.best_value == Fraction(779, 159)
    assert res.records() == ["n=9 mu=779/159 tree=0 1 2 2 2 1 1 1 1"]
    assert res.trees_examined == 47


@pytest.mark.parametrize("n", range(2, 13))
def test_exhaustive_matches_brute_force(n):
    res = search.exhaustive_optimal(n)
    best, winners = brute_optimum(n)
    assert res.best_value == best
    assert [canonical_form(t) for t in res.best_trees] == winners


def load_optima():
    out = {}
    with open(DATA / "optimal_trees.txt") as fh:
        for line in fh:
            n, mu, tree = line.split(" ", 2)
            out.setdefault(int(n[2:]), []).append((mu[3:], tree.strip()[5:]))
    return out


@pytest.mark.parametrize("n", range(10, 18))
def test_optima_match_frozen_records(n):
    res = search.exhaustive_optimal(n)
    assert [line for line in res.records()] == [f"n={n} mu={mu} tree={t}" for mu, t in load_optima()[n]]
    assert all(is_caterpillar(t) for t in res.best_trees)


def test_level_sequence_counts(rng):
    for n in range(1, 9):
        for seq in search.free_level_sequences(n):
            assert search.level_sequence_counts(seq) == global_counts(Tree.from_level_sequence(seq))


@pytest.mark.parametrize("jobs", [2, 8])
def test_exhaustive_deterministic_across_workers(jobs, monkeypatch):
    monkeypatch.setattr(search, "CHUNK", 50)
    base = search.exhaustive_optimal(13, jobs=1)
    par = search.exhaustive_optimal(13, jobs=jobs)
    assert par.records() == base.records()
    assert par.trees_examined == base.trees_examined == 1301


def test_exhaustive_caps():
    with pytest.raises(ValueError):
        search.exhaustive_optimal(21)
    with pytest.raises(ValueError):
        search.exhaustive_optimal(10, cap=30)
    with pytest.raises(ValueError):
        search.exhaustive_optimal(1)


def test_better_is_exact():
    # 1/3 vs 333333333333333333/999999999999999999 + epsilon
    big = 10 ** 30
    assert search._better((3, 1), (3 * big, big)) == 0
    assert search._better((3 * big - 1, big), (3, 1)) == 1


@pytest.mark.parametrize("n", [10, 25, 60, 200, 1000])
def test_best_double_broom_pruning_is_exact(n):
    s, agg, mu = search.best_double_broom(n)
    assert (s, agg, mu) == search.best_double_broom(n, prune=False)
    assert agg == double_broom_counts(n, s)


def test_best_double_broom_small():
    assert search.best_double_broom(9) == (3, (103, 487), Fraction(487, 103))
    assert search.best_double_broom(4) == (1, (10, 20), 2)


def test_best_double_broom_leaf_count_tracks_log():
    for n in list(range(100, 2000, 37)) + [5000, 2 ** 14, 10 ** 5]:
        s, _, _ = search.best_double_broom(n)
        assert abs(s - 2 * math.log2(n)) <= 3


@pytest.mark.parametrize("e", [10, 12, 14])
def test_best_broom_local_approaches_log_form(e):
    n = 2 ** e
    _, _, val = search.best_broom_local(n)
    target = n - math.log2(n) + periodic_f(2 * math.log2(n)) / 2
    assert float(val) == pytest.approx(target, abs=0.05)


def test_best_broom_local():
    assert search.best_broom_local(5) == (1, 3, Fraction(29, 9))
    for n in (3, 10, 40, 100):
        a, b, val = search.best_broom_local(n)
        full = max((Fraction(n) - Fraction(1, 2) * (bb + Fraction((n - 1 - bb) * n, n - 1 - bb + 2 ** bb)), bb)
                   for bb in range(1, n))
        assert val == full[0]


def test_best_broom_local_leaf_count():
    for n in list(range(100, 3000, 53)) + [10 ** 4, 10 ** 5]:
        _, b, _ = search.best_broom_local(n)
        assert abs(b - math.floor(2 * math.log2(n))) <= 1


def test_caterpillar_counts_match_dp(rng):
    for _ in range(80):
        ell = rng.randrange(0, 12)
        m = rng.randrange(1, 4)
        k = rng.randrange(0, ell + 2)
        sup = sorted(rng.sample(range(ell + 1), min(k, ell + 1)))
        tree = build_family(Caterpillar(ell, m, tuple(sup)))
        assert search._cat_pair(ell, m, sup) == global_counts(tree)


def test_caterpillar_counts_sequence_and_validation():
    assert search.caterpillar_counts(0, []) == (1, 1)
    assert search.caterpillar_counts(2, [1, 1]) == global_counts(Tree(5, ((0, 1), (1, 2), (1, 3), (1, 4))))
    with pytest.raises(ValueError):
        search.caterpillar_counts(3, [4])


def test_support_indices():
    for ell, k in [(10, 1), (20, 3), (50, 8), (8, 8), (3, 4)]:
        idx = search.optimal_support_indices(ell, k)
        assert len(set(idx)) == k and all(0 <= i <= ell for i in idx)
    assert search.optimal_support_indices(10, 1) == [5]
    assert search.optimal_support_indices(100, 2) == [33, 67]
    with pytest.raises(ValueError):
        search.optimal_support_indices(2, 4)


def test_constructed_caterpillar_is_exact():
    t = search.construct_optimal_caterpillar(1000, 4, 17)
    assert t.n == 1000 and is_caterpillar(t)
    ell = 1000 - 1 - 34 - 4
    assert global_counts(t) == search._cat_pair(ell, 17, search.optimal_support_indices(ell, 4))


@pytest.mark.parametrize("n", [25, 100, 1000])
def test_caterpillar_beats_double_broom(n):
    res = search.best_caterpillar(n)
    _, _, db = search.best_double_broom(n)
    assert res.best_value > db
    assert res.best_value == mean_subtree_order(res.best_trees[0])


def test_best_caterpillar_rejects_small_n():
    with pytest.raises(ValueError):
        search.best_caterpillar(24)
