import random

import pytest

from meansubtree.trees import Tree


def prufer_tree(seq, n):
    """Decode a Pruefer sequence; the standard bijection onto labeled trees."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [v for v in range(n) if degree[v] == 1]
    edges.append((u, w))
    return Tree(n, tuple(edges))


def random_tree(rng: random.Random, n: int) -> Tree:
    if n == 1:
        return Tree(1, ())
    return prufer_tree([rng.randrange(n) for _ in range(n - 2)], n)


@pytest.fixture
def rng():
    return random.Random(20260415)
