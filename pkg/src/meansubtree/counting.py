"""Exact subtree counting.

Every rooted question is answered with a pair ``(count, total)``: the number
of subtrees containing the root and the sum of their orders.  A child branch
contributes the option pair ``(1 + s, t)`` (leave it out, or take one of its
``s`` root-containing subtrees), and option pairs combine like dual numbers::

    (a1, b1) * (a2, b2) = (a1 * a2, a1 * b2 + a2 * b1)

so a whole post-order pass stays in Python integers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .trees import Tree, TreeError, bfs_order

BRUTE_FORCE_CAP = 20


class SubtreeAggregate(NamedTuple):
    count: int
    total: int

    @property
    def mean(self) -> Fraction:
        return Fraction(self.total, self.count)


def _mul(p, q):
    return (p[0] * q[0], p[0] * q[1] + q[0] * p[1])


def _down_pairs(tree: Tree, root: int):
    order, parent = bfs_order(tree, root)
    s = [1] * tree.n
    t = [1] * tree.n
    for v in reversed(order[1:]):
        p = parent[v]
        a = 1 + s[v]
        s[p], t[p] = s[p] * a, s[p] * t[v] + a * t[p]
    return s, t, order, parent


def rooted_counts(tree: Tree, root: int = 0) -> SubtreeAggregate:
    """Number and total order of the subtrees that contain ``root``."""
    s, t, _, _ = _down_pairs(tree, root)
    return SubtreeAggregate(s[root], t[root])


def global_counts(tree: Tree) -> SubtreeAggregate:
    """(sigma, tau): the number of subtrees and their total order.

    Each subtree is counted once, at its vertex closest to vertex 0.
    """
    s, t, _, _ = _down_pairs(tree, 0)
    return SubtreeAggregate(sum(s), sum(t))


def per_vertex_counts(tree: Tree) -> list[SubtreeAggregate]:
    """For every vertex v, the number and total order of subtrees containing v.

    One downward pass, then one rerooting pass; sibling products come from
    prefix and suffix products so nothing is divided out.
    """
    n = tree.n
    s, t, order, parent = _down_pairs(tree, 0)
    adj = tree.adjacency
    # up[v]: the pair of the component on the parent's side, rooted at the parent
    up: list[tuple[int, int] | None] = [None] * n
    result: list[SubtreeAggregate | None] = [None] * n
    for v in order:
        above = (1, 0) if up[v] is None else (1 + up[v][0], up[v][1])
        result[v] = SubtreeAggregate(*_mul((s[v], t[v]), above))
        kids = [w for w in adj[v] if w != parent[v]]
        opts = [(1 + s[w], t[w]) for w in kids]
        suffix = [(1, 0)] * (len(kids) + 1)
        for i in range(len(kids) - 1, -1, -1):
            suffix[i] = _mul(opts[i], suffix[i + 1])
        prefix = _mul((1, 1), above)
        for i, w in enumerate(kids):
            up[w] = _mul(prefix, suffix[i + 1])
            prefix = _mul(prefix, opts[i])
    return result


def mean_subtree_order(tree: Tree) -> Fraction:
    sigma, tau = global_counts(tree)
    return Fraction(tau, sigma)


def density(tree: Tree) -> Fraction:
    return mean_subtree_order(tree) / tree.n


def local_mean(tree: Tree, v: int) -> Fraction:
    return rooted_counts(tree, v).mean


def defect(tree: Tree, root: int = 0) -> Fraction:
    """Expected number of vertices missed by a random root-containing subtree."""
    return tree.n - rooted_counts(tree, root).mean


# -- vertex sets ------------------------------------------------------------------

def steiner_vertices(tree: Tree, required: Iterable[int]) -> set[int]:
    """Vertex set of the smallest subtree containing ``required``."""
    req = set(required)
    if not req:
        return set()
    for v in req:
        if not 0 <= v < tree.n:
            raise TreeError(f"vertex {v} not in tree")
    alive = set(range(tree.n))
    deg = [len(a) for a in tree.adjacency]
    stack = [v for v in alive if deg[v] <= 1 and v not in req]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in tree.adjacency[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1 and w not in req:
                    stack.append(w)
    return alive


def contract(tree: Tree, group: set[int]) -> tuple[Tree, list[int]]:
    """Merge ``group`` (a connected vertex set) into the new vertex 0.

    Returns the contracted tree and the old-to-new label map.
    """
    mapping = [0] * tree.n
    nxt = 1
    for v in range(tree.n):
        if v not in group:
            mapping[v] = nxt
            nxt += 1
    edges = [(mapping[u], mapping[v]) for u, v in tree.edges if not (u in group and v in group)]
    return Tree(nxt, tuple(edges)), mapping


def set_counts(tree: Tree, required: Iterable[int]) -> SubtreeAggregate:
    """Number and total order of the subtrees containing every vertex of ``required``."""
    req = set(required)
    if not req:
        return global_counts(tree)
    core = steiner_vertices(tree, req)
    small, _ = contract(tree, core)
    s, t = rooted_counts(small, 0)
    return SubtreeAggregate(s, t + (len(core) - 1) * s)


def set_mean(tree: Tree, required: Iterable[int] = ()) -> Fraction:
    """Mean order of the subtrees containing all of ``required`` (empty: all subtrees)."""
    return set_counts(tree, required).mean


# -- central vertices ---------------------------------------------------------------

def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        # 0.25 -> 1/4, 0.3 -> 3/10 rather than the binary expansion
        return Fraction(repr(x))
    return Fraction(x)


def central_part(tree: Tree, exponent=Fraction(1, 4)) -> list[int]:
    """Vertices lying in at least sigma / (1 + n**-exponent) subtrees.

    With exponent = p/q the test sigma_v * (1 + n**(-p/q)) >= sigma becomes
    sigma_v**q >= (sigma - sigma_v)**q * n**p, which is exact in integers.
    """
    e = _as_fraction(exponent)
    if not 0 < e < Fraction(1, 2):
        raise ValueError(f"exponent must lie in (0, 1/2), got {e}")
    p, q = e.numerator, e.denominator
    counts = per_vertex_counts(tree)
    sigma = global_counts(tree).count
    npow = tree.n ** p
    out = []
    for v, (sv, _) in enumerate(counts):
        gap = sigma - sv
        if gap == 0 or sv ** q >= gap ** q * npow:
            out.append(v)
    return out


def subtree_core(tree: Tree) -> list[int]:
    """Vertices contained in the largest number of subtrees."""
    counts = [c for c, _ in per_vertex_counts(tree)]
    best = max(counts)
    core = [v for v, c in enumerate(counts) if c == best]
    assert 1 <= len(core) <= 2, core
    return core


# -- brute force ---------------------------------------------------------------------

def connected_subsets(tree: Tree) -> Iterable[frozenset[int]]:
    """Every connected vertex subset, each exactly once.

    Sets are grown from their smallest vertex (the anchor), only ever adding
    larger vertices, with the exclusive-neighbourhood rule keeping the
    extension order canonical.
    """
    adj = tree.adjacency

    def extend(sub: frozenset, ext: list[int], nbhd: frozenset, anchor: int):
        yield sub
        ext = list(ext)
        while ext:
            w = ext.pop(0)
            fresh = [u for u in adj[w] if u > anchor and u not in sub and u not in nbhd]
            yield from extend(sub | {w}, ext + fresh, nbhd | set(adj[w]) | {w}, anchor)

    for v in range(tree.n):
        start = frozenset([v])
        yield from extend(start, [u for u in adj[v] if u > v], frozenset(adj[v]) | start, v)


def brute_force_counts(tree: Tree, required: Sequence[int] = (), cap: int = BRUTE_FORCE_CAP) -> SubtreeAggregate:
    """Enumerate connected subsets directly; the oracle for everything above."""
    if tree.n > cap:
        raise ValueError(f"brute force limited to n <= {cap}, got n={tree.n}")
    req = frozenset(required)
    count = total = 0
    for sub in connected_subsets(tree):
        if req <= sub:
            count += 1
            total += len(sub)
    return SubtreeAggregate(count, total)
