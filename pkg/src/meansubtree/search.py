"""Searches for trees with large mean subtree order.

All ranking is by exact cross-multiplication of (tau, sigma) pairs.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import get_context
from typing import Iterable, Sequence

from .closed_forms import broom_local_mean, double_broom_counts, optimal_positions
from .counting import SubtreeAggregate
from .trees import (
    Caterpillar,
    Tree,
    build_family,
    canonical_form,
    free_level_sequences,
)

EXHAUSTIVE_DEFAULT_CAP = 20
EXHAUSTIVE_HARD_CAP = 24
CHUNK = 4000


@dataclass
class SearchResult:
    best_trees: list[Tree]
    best_value: Fraction
    best_counts: SubtreeAggregate
    trees_examined: int
    elapsed: float

    def records(self) -> list[str]:
        sigma, tau = self.best_counts
        n = self.best_trees[0].n
        return [f"n={n} mu={tau}/{sigma} tree={' '.join(map(str, canonical_form(t)))}"
                for t in self.best_trees]


def _better(a: tuple[int, int], b: tuple[int, int]) -> int:
    """Compare (sigma, tau) pairs by tau/sigma: 1 if a wins, -1 if b wins, 0 on a tie."""
    lhs = a[1] * b[0]
    rhs = b[1] * a[0]
    return (lhs > rhs) - (lhs < rhs)


def level_sequence_counts(levels: Sequence[int]) -> tuple[int, int]:
    """(sigma, tau) straight from a pre-order depth sequence."""
    n = len(levels)
    parent = [0] * n
    last = [0] * (n + 1)
    for i in range(1, n):
        d = levels[i]
        parent[i] = last[d - 1]
        last[d] = i
    s = [1] * n
    t = [1] * n
    for v in range(n - 1, 0, -1):
        p = parent[v]
        a = 1 + s[v]
        sp = s[p]
        s[p] = sp * a
        t[p] = sp * t[v] + a * t[p]
    return sum(s), sum(t)


def _scan_chunk(chunk: list[list[int]]):
    best = None
    keep: list[tuple[int, ...]] = []
    for levels in chunk:
        pair = level_sequence_counts(levels)
        if best is None:
            best, keep = pair, [tuple(levels)]
            continue
        c = _better(pair, best)
        if c > 0:
            best, keep = pair, [tuple(levels)]
        elif c == 0:
            keep.append(tuple(levels))
    return best, keep, len(chunk)


def _chunks(it: Iterable, size: int):
    it = iter(it)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def exhaustive_optimal(n: int, jobs: int | None = 1, cap: int = EXHAUSTIVE_DEFAULT_CAP) -> SearchResult:
    """Every tree of order n maximizing the mean subtree order.

    Shard maxima are merged by exact value; the tied trees are then put in
    canonical form and sorted, so the output does not depend on ``jobs``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if cap > EXHAUSTIVE_HARD_CAP:
        raise ValueError(f"cap may not exceed {EXHAUSTIVE_HARD_CAP}")
    if n > cap:
        raise ValueError(f"n={n} exceeds search cap {cap}")
    jobs = jobs or os.cpu_count() or 1
    start = time.perf_counter()
    chunks = _chunks(free_level_sequences(n, cap=EXHAUSTIVE_HARD_CAP), CHUNK)
    if jobs == 1:
        parts = map(_scan_chunk, chunks)
        pool = None
    else:
        pool = get_context("fork").Pool(jobs)
        parts = pool.imap(_scan_chunk, chunks)
    best = None
    keep: list[tuple[int, ...]] = []
    examined = 0
    try:
        for pair, seqs, count in parts:
            examined += count
            c = 1 if best is None else _better(pair, best)
            if c > 0:
                best, keep = pair, list(seqs)
            elif c == 0:
                keep.extend(seqs)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    forms = sorted(canonical_form(Tree.from_level_sequence(s)) for s in keep)
    trees = [Tree.from_level_sequence(f) for f in forms]
    sigma, tau = best
    return SearchResult(trees, Fraction(tau, sigma), SubtreeAggregate(sigma, tau),
                        examined, time.perf_counter() - start)


def best_double_broom(n: int, prune: bool = True) -> tuple[int, SubtreeAggregate, Fraction]:
    """Best number of leaves s per end for a balanced double-broom of order n.

    Ties go to the smaller s.  A tree with L leaves has mean order at most
    n - L/2, so once n - s cannot beat the incumbent the sweep stops.
    """
    if n < 4:
        raise ValueError("double-broom needs n >= 4")
    best = None
    for s in range(1, (n - 2) // 2 + 1):
        if prune and best is not None and n - s <= best[2]:
            break
        agg = double_broom_counts(n, s)
        if best is None or _better(agg, best[1]) > 0:
            best = (s, agg, agg.mean)
    return best


def best_broom_local(n: int) -> tuple[int, int, Fraction]:
    """(a, b, value) maximizing the local mean at the handle end over brooms of order n.

    Only b up to the least b0 with 2**b0 >= n**2 needs checking: at b0 the
    penalty b + a*n/(a + 2**b) is below b0 + 1, and it is at least b for any b.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    b_top = min(n - 1, (n * n - 1).bit_length())
    best = None
    for b in range(1, b_top + 1):
        a = n - 1 - b
        val = broom_local_mean(n, a, b)
        if best is None or val > best[2]:
            best = (a, b, val)
    return best


# -- caterpillars --------------------------------------------------------------------

def caterpillar_counts(stem_edges: int, leaf_weights: dict[int, int] | Sequence[int]) -> SubtreeAggregate:
    """(sigma, tau) of a caterpillar from its stem length and pendant-leaf counts.

    ``leaf_weights`` maps stem index to the number of leaves hanging there.
    Runs of bare stem vertices are crossed in closed form, so the cost grows
    with the number of leaf-carrying vertices, not with the stem length.
    """
    if isinstance(leaf_weights, dict):
        w = dict(leaf_weights)
    else:
        w = {}
        for i in leaf_weights:
            w[i] = w.get(i, 0) + 1
    if any(not 0 <= i <= stem_edges for i in w):
        raise ValueError("leaf position off the stem")
    # A, B: count and total order of stem intervals ending at the current
    # vertex, together with any subset of their pendant leaves.
    A = B = 0
    sum_a = sum_b = 0
    pos = -1
    for j in sorted(w) + [None]:
        stop = stem_edges if j is None else j - 1
        r = stop - pos
        if r > 0:
            tri = r * (r + 1) // 2
            sum_a += r * A + tri
            sum_b += r * B + A * tri + r * (r + 1) * (r + 2) // 6
            B += r * A + tri
            A += r
            pos = stop
        if j is None:
            break
        c, t = A + 1, B + A + 1
        k = w[j]
        A = c << k
        B = (t << k) + ((c * k << k) >> 1)
        sum_a += A
        sum_b += B
        pos = j
    leaves = sum(w.values())
    return SubtreeAggregate(sum_a + leaves, sum_b + leaves)


def _round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def optimal_support_indices(ell: int, k: int) -> list[int]:
    """Stem indices for k support leaves at the rounded optimal positions.

    Left-half positions round a_i * ell; right-half ones are mirror images.
    Supports are placed from the middle outward, and an occupied target
    moves to the nearest free index toward its own end (then inward if
    that side is full).
    """
    if k > ell + 1:
        raise ValueError("not enough stem vertices for the supports")
    pos = optimal_positions(k)
    targets = []
    for i, a in enumerate(pos, start=1):
        j = k + 1 - i
        if 2 * i < k + 1:
            targets.append((_round_half_up(a * ell), -1))
        elif 2 * i > k + 1:
            targets.append((ell - _round_half_up(pos[j - 1] * ell), 1))
        else:
            targets.append((_round_half_up(a * ell), 0))
    mid = (k + 1) / 2
    order = sorted(range(k), key=lambda i: (abs(i + 1 - mid), i))
    used: set[int] = set()
    placed = [0] * k
    for i in order:
        t, side = targets[i]
        step = side or -1
        outward = range(t, -1, -1) if step < 0 else range(t, ell + 1)
        inward = range(t + 1, ell + 1) if step < 0 else range(t - 1, -1, -1)
        for c in itertools.chain(outward, inward):
            if c not in used:
                used.add(c)
                placed[i] = c
                break
    return sorted(placed)


def _cat_params(n: int, k: int, m: int) -> int:
    if k < 0 or m < 1:
        raise ValueError("need k >= 0 and m >= 1")
    ell = n - 1 - 2 * m - k
    if ell < k:
        raise ValueError(f"infeasible: stem length {ell} < k={k}")
    return ell


def construct_optimal_caterpillar(n: int, k: int, m: int) -> Tree:
    """Caterpillar with m leaves at each stem end and k supports at optimal positions."""
    ell = _cat_params(n, k, m)
    return build_family(Caterpillar(ell, m, tuple(optimal_support_indices(ell, k))))


def _cat_pair(ell: int, m: int, supports: Sequence[int]) -> SubtreeAggregate:
    w: dict[int, int] = {}
    for i in supports:
        w[i] = w.get(i, 0) + 1
    w[0] = w.get(0, 0) + m
    w[ell] = w.get(ell, 0) + m
    return caterpillar_counts(ell, w)


def _polish(ell: int, m: int, supports: list[int], radius: int):
    """Hill-climb support indices, one at a time, within +-radius."""
    cur = list(supports)
    best = _cat_pair(ell, m, cur)
    evals = 1
    improved = True
    while improved and radius > 0:
        improved = False
        for i in range(len(cur)):
            taken = set(cur)
            for delta in itertools.chain.from_iterable((-d, d) for d in range(1, radius + 1)):
                c = cur[i] + delta
                if not 0 <= c <= ell or c in taken:
                    continue
                trial = sorted(cur[:i] + [c] + cur[i + 1:])
                pair = _cat_pair(ell, m, trial)
                evals += 1
                if _better(pair, best) > 0:
                    cur, best, improved = trial, pair, True
                    break
            if improved:
                break
    return cur, best, evals


def best_caterpillar(n: int, k_range: Iterable[int] = range(0, 9), perturb_radius: int = 2,
                     m_window: int = 3, polish_top: int = 3) -> SearchResult:
    """Best constructed caterpillar over support counts k and end-leaf counts m.

    m ranges over +-m_window around floor(2*log2(0.9n)) - k/2.  The
    ``polish_top`` best unperturbed candidates are then hill-climbed.
    """
    if n < 25:
        raise ValueError("n must be >= 25")
    start = time.perf_counter()
    center = math.floor(2 * math.log2(0.9 * n))
    cands = []
    examined = 0
    for k in k_range:
        mc = math.floor(center - k / 2)
        for m in range(max(1, mc - m_window), mc + m_window + 1):
            ell = n - 1 - 2 * m - k
            if ell < k:
                continue
            sup = optimal_support_indices(ell, k)
            pair = _cat_pair(ell, m, sup)
            examined += 1
            cands.append((pair, k, m, ell, sup))
    if not cands:
        raise ValueError(f"no feasible caterpillar for n={n}")
    key = _ratio_key
    cands.sort(key=lambda c: (key(c[0]), -c[1], -c[2]), reverse=True)
    best = None
    for pair, k, m, ell, sup in cands[:max(1, polish_top)]:
        sup2, pair2, evals = _polish(ell, m, sup, perturb_radius)
        examined += evals
        if best is None or _better(pair2, best[0]) > 0:
            best = (pair2, ell, m, sup2)
    pair, ell, m, sup = best
    tree = build_family(Caterpillar(ell, m, tuple(sup)))
    return SearchResult([tree], pair.mean, pair, examined, time.perf_counter() - start)


class _ratio_key:
    """Sort key ordering (sigma, tau) pairs by tau/sigma exactly."""

    __slots__ = ("pair",)

    def __init__(self, pair):
        self.pair = pair

    def __lt__(self, other):
        return _better(self.pair, other.pair) < 0

    def __eq__(self, other):
        return _better(self.pair, other.pair) == 0
