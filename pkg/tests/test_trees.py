import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from meansubtree import trees
from meansubtree.trees import (
    Broom, Caterpillar, DoubleBroom, Path, Star, Tree, TreeError, UnbalancedDoubleBroom,
    build_family, canonical_form, canonical_tree, centroid, diameter, distances,
    format_tree, free_level_sequences, generate_free_trees, is_caterpillar, merged_brooms,
    parse_tree,
)

from conftest import prufer_tree, random_tree

FREE_TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320]


def as_nx(tree):
    g = nx.Graph()
    g.add_nodes_from(range(tree.n))
    g.add_edges_from(tree.edges)
    return g


# -- construction and parsing ----------------------------------------------------------

def test_edges_are_normalized():
    t = Tree(3, ((2, 0), (1, 0)))
    assert t.edges == ((0, 1), (0, 2))
    assert t.adjacency == ((1, 2), (0,), (0,))


@pytest.mark.parametrize("n, edges, msg", [
    (0, (), "at least one"),
    (3, ((0, 1),), "edge count"),
    (3, ((0, 1), (0, 1)), "duplicate"),
    (2, ((0, 0),), "self-loop"),
    (4, ((0, 1), (1, 2), (0, 2)), "disconnected"),
    (3, ((0, 5), (0, 1)), "outside"),
])
def test_invalid_trees(n, edges, msg):
    with pytest.raises(TreeError, match=msg):
        Tree(n, edges)


def test_cycle_is_rejected():
    with pytest.raises(TreeError):
        Tree(5, ((0, 1), (1, 2), (2, 0), (3, 4)))


def test_parse_roundtrip():
    t = build_family(Broom(3, 2))
    assert parse_tree(format_tree(t)) == t
    assert parse_tree("\ntree 2\n\n0 1\n") == Tree(2, ((0, 1),))


@pytest.mark.parametrize("text", ["", "graph 3\n0 1\n1 2\n", "tree 3\n0 1\n1 x\n", "tree 3\n0 1 2\n1 2\n",
                                  "tree 3\n0 1\n"])
def test_parse_errors(text):
    with pytest.raises(TreeError):
        parse_tree(text)


def test_level_sequence_and_parents():
    t = Tree.from_level_sequence([0, 1, 2, 2, 1])
    assert t.edges == ((0, 1), (0, 4), (1, 2), (1, 3))
    assert Tree.from_parents([-1, 0, 1, 1, 0]) == t


# -- families --------------------------------------------------------------------------

def test_family_shapes():
    assert build_family(Path(4)).edges == ((0, 1), (1, 2), (2, 3))
    assert sorted(build_family(Star(5)).degree(v) for v in range(5)) == [1, 1, 1, 1, 4]
    b = build_family(Broom(2, 3))
    assert b.n == 6 and b.degree(2) == 4 and b.degree(0) == 1
    db = build_family(DoubleBroom(9, 2))
    assert db.n == 9 and sorted(db.degree(v) for v in range(9))[-2:] == [3, 3]
    u = build_family(UnbalancedDoubleBroom(4, 1, 3))
    assert u.n == 8 and u.degree(0) == 2 and u.degree(3) == 4
    c = build_family(Caterpillar(4, 2, (1, 1, 3)))
    assert c.n == Caterpillar(4, 2, (1, 1, 3)).order == 5 + 4 + 3
    assert is_caterpillar(c)


@pytest.mark.parametrize("spec", [Path(0), Star(0), Broom(-1, 2), Broom(2, 0), DoubleBroom(5, 2),
                                  Caterpillar(3, 1, (4,))])
def test_family_rejects_bad_parameters(spec):
    with pytest.raises(ValueError):
        build_family(spec)


def test_merged_brooms():
    t = merged_brooms([(2, 3), (1, 1)])
    assert t.n == 1 + 5 + 2 and t.degree(0) == 2


# -- generation ------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 17))
def test_free_tree_counts(n):
    assert sum(1 for _ in free_level_sequences(n)) == FREE_TREE_COUNTS[n - 1]


@pytest.mark.parametrize("n", range(2, 8))
def test_generation_covers_every_labeled_tree(n):
    generated = {canonical_form(t) for t in generate_free_trees(n)}
    labeled = {canonical_form(prufer_tree(seq, n)) for seq in itertools.product(range(n), repeat=n - 2)}
    assert generated == labeled


@pytest.mark.parametrize("n", range(2, 10))
def test_generated_trees_pairwise_non_isomorphic(n):
    gs = [as_nx(t) for t in generate_free_trees(n)]
    hashes = [nx.weisfeiler_lehman_graph_hash(g) for g in gs]
    for i, j in itertools.combinations(range(len(gs)), 2):
        if hashes[i] == hashes[j]:
            assert not nx.is_isomorphic(gs[i], gs[j])


def test_generation_cap():
    with pytest.raises(ValueError):
        next(free_level_sequences(30))


# -- metric structure ------------------------------------------------------------------

def test_diameter_examples():
    assert diameter(build_family(Star(5))) == (2, [1, 0, 2])
    assert diameter(build_family(DoubleBroom(9, 2)))[0] == 6
    assert diameter(Tree(1, ())) == (0, [0])


def test_diameter_matches_networkx(rng):
    for _ in range(50):
        t = random_tree(rng, rng.randrange(2, 30))
        d, path = diameter(t)
        assert d == nx.diameter(as_nx(t))
        assert len(path) == d + 1
        assert all(tuple(sorted(e)) in set(t.edges) for e in zip(path, path[1:]))


def test_centroid_minimizes_distance_sum(rng):
    for _ in range(60):
        t = random_tree(rng, rng.randrange(1, 25))
        sums = [sum(distances(t, v)) for v in range(t.n)]
        best = min(sums)
        assert centroid(t) == [v for v in range(t.n) if sums[v] == best]


def test_canonical_form_invariant_under_relabeling(rng):
    for _ in range(40):
        t = random_tree(rng, rng.randrange(1, 20))
        perm = list(range(t.n))
        rng.shuffle(perm)
        assert canonical_form(t.relabel(perm)) == canonical_form(t)
        assert nx.is_isomorphic(as_nx(canonical_tree(t)), as_nx(t))


def test_is_caterpillar():
    assert is_caterpillar(build_family(DoubleBroom(12, 3)))
    spider = merged_brooms([(2, 1), (2, 1), (2, 1)])
    assert not is_caterpillar(spider)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(0, n - 1), min_size=max(n - 2, 0), max_size=max(n - 2, 0)))))
def test_random_trees_roundtrip(data):
    n, seq = data
    t = Tree(1, ()) if n == 1 else prufer_tree(seq, n)
    assert parse_tree(format_tree(t)) == t
    assert t.leaves() == [v for v in range(n) if t.degree(v) == 1]
    assert trees.subtree_sizes(t)[0][0] == n
