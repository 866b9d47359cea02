"""Tree representation, parameterized families, free-tree generation and
structural primitives (diameter, centroid, canonical form).

Trees are unlabeled in spirit but stored with vertex labels ``0..n-1``.
Family constructors use a fixed labeling: stem (or path) vertices first,
in order, then attached leaves in the order they are listed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

DEFAULT_GENERATION_CAP = 24


class TreeError(ValueError):
    """Raised for invalid tree input or invalid family parameters."""


@dataclass(frozen=True)
class Tree:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise TreeError(f"tree needs at least one vertex, got n={self.n}")
        norm = []
        for e in self.edges:
            u, v = e
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise TreeError(f"edge {u}-{v} has a label outside 0..{self.n - 1}")
            if u == v:
                raise TreeError(f"self-loop at vertex {u}")
            norm.append((u, v) if u < v else (v, u))
        if len(set(norm)) != len(norm):
            raise TreeError("duplicate edge")
        if len(norm) != self.n - 1:
            raise TreeError(f"wrong edge count: expected {self.n - 1}, got {len(norm)}")
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        # n-1 edges plus connectivity implies acyclic
        seen = _reachable(self.adjacency, 0)
        if len(seen) != self.n:
            raise TreeError("graph is disconnected")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def leaves(self) -> list[int]:
        if self.n == 1:
            return []
        return [v for v in range(self.n) if len(self.adjacency[v]) == 1]

    @classmethod
    def from_edges(cls, edges, n: int | None = None) -> "Tree":
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=0)
        return cls(n, tuple(edges))

    @classmethod
    def from_level_sequence(cls, levels: Sequence[int]) -> "Tree":
        """Build a tree from a pre-order depth sequence (root at depth 0)."""
        if not levels or levels[0] != 0:
            raise TreeError("level sequence must start with the root at depth 0")
        stack: list[int] = []
        edges = []
        for i, d in enumerate(levels):
            if i and not 1 <= d <= len(stack):
                raise TreeError(f"invalid depth {d} at position {i}")
            del stack[d:]
            if stack:
                edges.append((stack[-1], i))
            stack.append(i)
        return cls(len(levels), tuple(edges))

    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> "Tree":
        """``parents[v]`` is the parent of ``v``; the root has parent -1."""
        edges = [(p, v) for v, p in enumerate(parents) if p >= 0]
        return cls(len(parents), tuple(edges))

    def relabel(self, mapping: Sequence[int]) -> "Tree":
        return Tree(self.n, tuple((mapping[u], mapping[v]) for u, v in self.edges))

    def __str__(self) -> str:
        return format_tree(self)


def _reachable(adj, start: int) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        u = todo.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def bfs_order(tree: Tree, root: int) -> tuple[list[int], list[int]]:
    """Return (order, parent) of a breadth-first traversal from ``root``.

    ``parent[root]`` is -1.  Every vertex appears after its parent in ``order``.
    """
    parent = [-1] * tree.n
    order = [root]
    adj = tree.adjacency
    seen = [False] * tree.n
    seen[root] = True
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    return order, parent


def distances(tree: Tree, source: int) -> list[int]:
    dist = [-1] * tree.n
    dist[source] = 0
    q = deque([source])
    adj = tree.adjacency
    while q:
        u = q.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


# -- text format --------------------------------------------------------------

def parse_tree(text: str) -> Tree:
    """Parse the edge-list format: ``tree <n>`` then n-1 lines ``<u> <v>``."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise TreeError("empty input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "tree":
        raise TreeError(f"line 1: expected 'tree <n>', got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise TreeError(f"line 1: bad vertex count {head[1]!r}") from None
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise TreeError(f"line {lineno}: expected '<u> <v>', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise TreeError(f"line {lineno}: malformed edge {ln!r}") from None
        edges.append((u, v))
    return Tree(n, tuple(edges))


def format_tree(tree: Tree) -> str:
    out = [f"tree {tree.n}"]
    out.extend(f"{u} {v}" for u, v in tree.edges)
    return "\n".join(out) + "\n"


# -- families -------------------------------------------------------------------

@dataclass(frozen=True)
class Path:
    n: int


@dataclass(frozen=True)
class Star:
    n: int


@dataclass(frozen=True)
class Broom:
    a: int  # handle length (edges from the root to the leaf-carrying vertex)
    b: int  # number of leaves


@dataclass(frozen=True)
class DoubleBroom:
    n: int
    s: int  # leaves at each end


@dataclass(frozen=True)
class UnbalancedDoubleBroom:
    path_vertices: int
    left_leaves: int
    right_leaves: int


@dataclass(frozen=True)
class Caterpillar:
    stem_edges: int
    m: int  # leaves at each stem end
    positions: tuple[int, ...] = field(default=())

    @property
    def order(self) -> int:
        return self.stem_edges + 1 + 2 * self.m + len(self.positions)


FamilySpec = Path | Star | Broom | DoubleBroom | UnbalancedDoubleBroom | Caterpillar


def _path_edges(k: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(k - 1)]


def _attach(edges: list, hosts: Sequence[int], start: int) -> int:
    for j, h in enumerate(hosts):
        edges.append((h, start + j))
    return start + len(hosts)


def build_family(spec: FamilySpec) -> Tree:
    """Construct the tree described by ``spec``.

    For a broom, vertex 0 is the end of the handle away from the leaves.
    """
    if isinstance(spec, Path):
        if spec.n < 1:
            raise TreeError("path needs n >= 1")
        return Tree(spec.n, tuple(_path_edges(spec.n)))
    if isinstance(spec, Star):
        if spec.n < 1:
            raise TreeError("star needs n >= 1")
        return Tree(spec.n, tuple((0, i) for i in range(1, spec.n)))
    if isinstance(spec, Broom):
        if spec.a < 0 or spec.b < 1:
            raise TreeError("broom needs a >= 0 and b >= 1")
        edges = _path_edges(spec.a + 1)
        n = _attach(edges, [spec.a] * spec.b, spec.a + 1)
        return Tree(n, tuple(edges))
    if isinstance(spec, DoubleBroom):
        if spec.s < 1 or spec.n - 2 * spec.s < 2:
            raise TreeError("double-broom needs s >= 1 and n - 2s >= 2")
        p = spec.n - 2 * spec.s
        return build_family(UnbalancedDoubleBroom(p, spec.s, spec.s))
    if isinstance(spec, UnbalancedDoubleBroom):
        p, x, y = spec.path_vertices, spec.left_leaves, spec.right_leaves
        if p < 1 or x < 0 or y < 0:
            raise TreeError("unbalanced double-broom needs path_vertices >= 1 and leaf counts >= 0")
        edges = _path_edges(p)
        n = _attach(edges, [0] * x + [p - 1] * y, p)
        return Tree(n, tuple(edges))
    if isinstance(spec, Caterpillar):
        ell, m, pos = spec.stem_edges, spec.m, tuple(spec.positions)
        if ell < 0 or m < 0:
            raise TreeError("caterpillar needs stem_edges >= 0 and m >= 0")
        if any(not 0 <= x <= ell for x in pos):
            raise TreeError(f"support positions must lie in 0..{ell}")
        if list(pos) != sorted(pos):
            raise TreeError("support positions must be nondecreasing")
        edges = _path_edges(ell + 1)
        n = _attach(edges, [0] * m + [ell] * m + list(pos), ell + 1)
        return Tree(n, tuple(edges))
    raise TreeError(f"unknown family spec {spec!r}")


def merged_brooms(arms: Sequence[tuple[int, int]]) -> Tree:
    """Join brooms at a common root vertex 0.

    Each arm ``(a, b)`` is a path of ``a >= 1`` edges leaving the root with
    ``b`` leaves on its far end.  Arms are laid out one after another.
    """
    edges = []
    nxt = 1
    for a, b in arms:
        if a < 1 or b < 0:
            raise TreeError("each arm needs a >= 1 and b >= 0")
        prev = 0
        for _ in range(a):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        nxt = _attach(edges, [prev] * b, nxt)
    return Tree(nxt, tuple(edges))


# -- free-tree generation ---------------------------------------------------------

def _next_rooted(levels: list[int], p: int | None = None) -> list[int] | None:
    # successor of a canonical rooted level sequence
    if p is None:
        p = len(levels) - 1
        while levels[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while levels[q] != levels[p] - 1:
        q -= 1
    out = list(levels)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split_first_branch(levels: list[int]) -> tuple[list[int], list[int]]:
    m = len(levels)
    for i in range(2, len(levels)):
        if levels[i] == 1:
            m = i
            break
    first = [d - 1 for d in levels[1:m]]
    rest = [0] + levels[m:]
    return first, rest


def _next_free(levels: list[int]) -> list[int] | None:
    first, rest = _split_first_branch(levels)
    h1, h2 = max(first), max(rest)
    ok = h2 >= h1
    if ok and h1 == h2:
        if len(first) > len(rest) or (len(first) == len(rest) and first > rest):
            ok = False
    if ok:
        return levels
    p = len(first)
    nxt = _next_rooted(levels, p)
    if nxt is not None and levels[p] > 2:
        first, _ = _split_first_branch(nxt)
        tail = list(range(1, max(first) + 2))
        nxt[-len(tail):] = tail
    return nxt


def free_level_sequences(n: int, cap: int = DEFAULT_GENERATION_CAP) -> Iterator[list[int]]:
    """Yield one centrally rooted level sequence per free tree of order ``n``.

    Successor-based enumeration in the style of Wright, Richmond, Odlyzko and
    McKay: walk canonical rooted sequences, skipping those whose root is not
    a center.
    """
    if n < 1:
        raise TreeError("n must be >= 1")
    if n > cap:
        raise TreeError(f"n={n} exceeds generation cap {cap}")
    if n == 1:
        yield [0]
        return
    if n == 2:
        yield [0, 1]
        return
    levels: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while levels is not None:
        levels = _next_free(levels)
        if levels is not None:
            yield levels
            levels = _next_rooted(levels)


def generate_free_trees(n: int, cap: int = DEFAULT_GENERATION_CAP) -> Iterator[Tree]:
    for levels in free_level_sequences(n, cap):
        yield Tree.from_level_sequence(levels)


# -- structure ----------------------------------------------------------------------

def diameter(tree: Tree) -> tuple[int, list[int]]:
    """Length of a longest path and the lexicographically smallest such path."""
    if tree.n == 1:
        return 0, [0]
    d0 = distances(tree, 0)
    a = max(range(tree.n), key=lambda v: (d0[v], -v))
    da = distances(tree, a)
    b = max(range(tree.n), key=lambda v: (da[v], -v))
    db = distances(tree, b)
    length = da[b]
    ecc = [max(x, y) for x, y in zip(da, db)]
    start = min(v for v in range(tree.n) if ecc[v] == length)
    # walk from start, always to the smallest neighbor still on a longest path
    order, parent = bfs_order(tree, start)
    depth = [0] * tree.n
    for v in order[1:]:
        depth[v] = depth[parent[v]] + 1
    reach = list(depth)
    for v in reversed(order[1:]):
        p = parent[v]
        if reach[v] > reach[p]:
            reach[p] = reach[v]
    path = [start]
    u = start
    while len(path) <= length:
        u = min(w for w in tree.adjacency[u] if w != parent[u] and reach[w] == length)
        path.append(u)
    return length, path


def subtree_sizes(tree: Tree, root: int = 0) -> tuple[list[int], list[int], list[int]]:
    order, parent = bfs_order(tree, root)
    size = [1] * tree.n
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    return size, order, parent


def centroid(tree: Tree) -> list[int]:
    """All vertices whose removal leaves no component with more than n/2 vertices."""
    n = tree.n
    size, _, parent = subtree_sizes(tree, 0)
    out = []
    for v in range(n):
        biggest = n - size[v]
        for w in tree.adjacency[v]:
            if w != parent[v]:
                biggest = max(biggest, size[w])
        if 2 * biggest <= n:
            out.append(v)
    return out


def _rooted_code(tree: Tree, root: int) -> tuple[int, ...]:
    order, parent = bfs_order(tree, root)
    codes: list[tuple[int, ...] | None] = [None] * tree.n
    for v in reversed(order):
        kids = [codes[w] for w in tree.adjacency[v] if w != parent[v]]
        kids.sort(reverse=True)
        seq = [0]
        for k in kids:
            seq.extend(d + 1 for d in k)
        codes[v] = tuple(seq)
    return codes[root]


def canonical_form(tree: Tree) -> tuple[int, ...]:
    """Isomorphism-invariant depth sequence, rooted at a centroid vertex.

    Children are ordered by decreasing canonical subsequence; with two
    centroid vertices the lexicographically smaller rooting wins.
    """
    return min(_rooted_code(tree, c) for c in centroid(tree))


def canonical_tree(tree: Tree) -> Tree:
    return Tree.from_level_sequence(canonical_form(tree))


def format_canonical(form: Sequence[int]) -> str:
    return " ".join(map(str, form))


def is_caterpillar(tree: Tree) -> bool:
    """True when deleting every leaf leaves a path (or nothing)."""
    if tree.n <= 3:
        return True
    leaves = set(tree.leaves())
    core = [v for v in range(tree.n) if v not in leaves]
    for v in core:
        if sum(1 for w in tree.adjacency[v] if w not in leaves) > 2:
            return False
    return True
