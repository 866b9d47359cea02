from fractions import Fraction

import networkx as nx
import pytest

from meansubtree import counting
from meansubtree.counting import (
    brute_force_counts, central_part, connected_subsets, defect, density, global_counts,
    local_mean, mean_subtree_order, per_vertex_counts, rooted_counts, set_counts, set_mean,
    steiner_vertices, subtree_core,
)
from meansubtree.trees import Broom, Path, Star, Tree, UnbalancedDoubleBroom, TreeError, build_family, generate_free_trees

from conftest import random_tree


def naive_subsets(tree):
    g = nx.Graph()
    g.add_nodes_from(range(tree.n))
    g.add_edges_from(tree.edges)
    out = []
    for mask in range(1, 1 << tree.n):
        verts = [v for v in range(tree.n) if mask >> v & 1]
        if nx.is_connected(g.subgraph(verts)):
            out.append(frozenset(verts))
    return out


STAR9 = build_family(Star(9))
DOUBLE_STAR9 = build_family(UnbalancedDoubleBroom(2, 3, 4))


def test_star_and_double_star_values():
    assert global_counts(STAR9) == (264, 1288)
    assert mean_subtree_order(STAR9) == Fraction(161, 33)
    assert density(STAR9) == Fraction(161, 297)
    assert global_counts(DOUBLE_STAR9) == (159, 779)
    assert mean_subtree_order(DOUBLE_STAR9) == Fraction(779, 159)
    assert density(DOUBLE_STAR9) == Fraction(779, 1431)


def test_path_values():
    p4 = build_family(Path(4))
    assert global_counts(p4) == (10, 20)
    assert [c for c, _ in per_vertex_counts(p4)] == [4, 6, 6, 4]
    assert mean_subtree_order(build_family(Path(7))) == Fraction(7 + 2, 3)


def test_single_vertex():
    t = Tree(1, ())
    assert global_counts(t) == (1, 1)
    assert per_vertex_counts(t) == [(1, 1)]
    assert defect(t) == 0


def test_rooted_examples():
    b = build_family(Broom(2, 2))
    assert rooted_counts(b, 0) == (6, 19)
    assert local_mean(STAR9, 0) == 5
    assert defect(STAR9, 0) == 4


def test_esu_agrees_with_naive_enumeration(rng):
    for _ in range(25):
        t = random_tree(rng, rng.randrange(1, 10))
        subsets = list(connected_subsets(t))
        assert len(subsets) == len(set(subsets))
        assert set(subsets) == set(naive_subsets(t))


@pytest.mark.parametrize("n", range(1, 11))
def test_dp_matches_brute_force_on_all_free_trees(n):
    for t in generate_free_trees(n):
        assert global_counts(t) == brute_force_counts(t)
        pv = per_vertex_counts(t)
        for v in range(n):
            assert rooted_counts(t, v) == pv[v] == brute_force_counts(t, [v])


def test_dp_matches_brute_force_on_random_larger_trees(rng):
    for _ in range(200):
        t = random_tree(rng, rng.randrange(11, 17))
        assert global_counts(t) == brute_force_counts(t)
        v = rng.randrange(t.n)
        assert per_vertex_counts(t)[v] == brute_force_counts(t, [v])


def test_brute_force_cap():
    with pytest.raises(ValueError):
        brute_force_counts(build_family(Path(21)))


def test_per_vertex_sum_identity(rng):
    for _ in range(50):
        t = random_tree(rng, rng.randrange(1, 60))
        sigma, tau = global_counts(t)
        assert sum(c for c, _ in per_vertex_counts(t)) == tau


def test_big_integers_stay_exact():
    t = build_family(Star(400))
    sigma, tau = global_counts(t)
    assert sigma == 2 ** 399 + 399
    assert tau == 2 ** 399 + 399 * 2 ** 398 + 399


def test_set_mean_examples():
    p4 = build_family(Path(4))
    assert set_mean(p4, [0, 3]) == 4
    assert set_mean(p4, [0, 2]) == Fraction(7, 2)
    assert set_mean(p4, [1]) == Fraction(1 + 2 + 2 + 3 + 3 + 4, 6)
    assert set_mean(p4) == mean_subtree_order(p4)
    # two leaves of a star force the centre; the other 6 leaves are free
    assert set_mean(STAR9, [1, 2]) == 3 + Fraction(6, 2)


def test_set_counts_match_brute_force(rng):
    for _ in range(60):
        t = random_tree(rng, rng.randrange(1, 13))
        req = [v for v in range(t.n) if rng.random() < 0.3]
        assert set_counts(t, req) == brute_force_counts(t, req)


def test_steiner_vertices():
    p = build_family(Path(6))
    assert steiner_vertices(p, [1, 4]) == {1, 2, 3, 4}
    assert steiner_vertices(p, []) == set()
    with pytest.raises(TreeError):
        steiner_vertices(p, [9])


def test_central_part_and_core():
    assert central_part(STAR9) == [0]
    assert subtree_core(STAR9) == [0]
    assert subtree_core(build_family(Path(4))) == [1, 2]
    p = build_family(Path(9))
    # exact threshold matches a high-precision float check away from the boundary
    sig = global_counts(p).count
    expect = [v for v, (c, _) in enumerate(per_vertex_counts(p)) if c * (1 + 9 ** -0.25) >= sig]
    assert central_part(p) == expect
    assert central_part(p, 0.3) == central_part(p, Fraction(3, 10))


@pytest.mark.parametrize("bad", [0, Fraction(1, 2), -1, 0.75])
def test_central_part_exponent_range(bad):
    with pytest.raises(ValueError):
        central_part(STAR9, bad)


def test_defect_product_and_sum_rules():
    # gluing two rooted trees at their roots: s multiplies, defects add
    a = build_family(Broom(2, 3))
    b = build_family(Path(4))
    edges = list(a.edges) + [(u + a.n - 1 if u else 0, v + a.n - 1 if v else 0) for u, v in b.edges]
    glued = Tree(a.n + b.n - 1, tuple(edges))
    assert rooted_counts(glued, 0).count == rooted_counts(a, 0).count * rooted_counts(b, 0).count
    assert defect(glued, 0) == defect(a, 0) + defect(b, 0)


def test_module_functions_are_patchable():
    # verify.py calls through the module attribute; keep that contract visible
    assert counting.per_vertex_counts is per_vertex_counts
