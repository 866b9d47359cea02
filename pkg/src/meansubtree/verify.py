"""Machine checks and property suites, reported with witnesses."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import counting
from .closed_forms import (
    broom_merge_gaps,
    f1,
    lambda_combination,
    max_mu_bounds,
)
from .search import best_caterpillar, best_double_broom
from .trees import (
    Tree,
    bfs_order,
    canonical_form,
    centroid,
    diameter,
    format_canonical,
    generate_free_trees,
    is_caterpillar,
    merged_brooms,
)


def _fmt_case(case) -> str:
    if isinstance(case, dict):
        return "(" + ",".join(f"{k}={v}" for k, v in case.items()) + ")"
    return str(case).replace(" ", "")


@dataclass
class VerificationReport:
    check_name: str
    cases_tested: int = 0
    failures: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    case_log: list[tuple[str, bool]] | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def case(self, case, ok: bool, detail=None):
        self.cases_tested += 1
        if not ok:
            self.failures.append((case, detail) if detail is not None else case)
        if self.case_log is not None:
            self.case_log.append((_fmt_case(case), ok))

    def records(self) -> list[str]:
        """Machine-readable lines, one per logged case plus a summary."""
        lines = []
        if self.case_log is not None:
            for c, ok in self.case_log:
                lines.append(f"check={self.check_name} case={c} status={'pass' if ok else 'fail'}")
        else:
            for f in self.failures:
                c = f[0] if isinstance(f, tuple) and len(f) == 2 else f
                lines.append(f"check={self.check_name} case={_fmt_case(c)} status=fail")
        lines.append(f"check={self.check_name} case=all status={'pass' if self.passed else 'fail'}")
        return lines

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = [f"{self.check_name}: {status} ({self.cases_tested} cases, {len(self.failures)} failures)"]
        for n in self.notes:
            out.append(f"  note: {n}")
        for w in self.witnesses:
            out.append(f"  witness: {w}")
        for f in self.failures[:20]:
            out.append(f"  failure: {f}")
        if len(self.failures) > 20:
            out.append(f"  ... {len(self.failures) - 20} more failures")
        return "\n".join(out)


# -- single broom maximizers ----------------------------------------------------------

def _f1_maximizers(N: int, k, C) -> tuple[Fraction, list[tuple[int, int]]]:
    vals = [((N - b, b), f1(k, C, N - b, b)) for b in range(1, N + 1)]
    top = max(v for _, v in vals)
    return top, [ab for ab, v in vals if v == top]


def check_single_broom(n_max: int = 46, side_samples: Iterable = (0, 1, 10),
                 keep_cases: bool = False) -> VerificationReport:
    """Maximizers of f1 over a + b = N satisfy 2**b >= 3a, except at k = C = 0, N = 2.

    The exhaustive part is k = C = 0; other (k, C) pairs are spot checks.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    rep = VerificationReport("lemma1", case_log=[] if keep_cases else None)
    top, arg = _f1_maximizers(2, 0, 0)
    rep.case({"N": 2, "k": 0, "C": 0}, sorted(arg) == [(0, 2), (1, 1)] and top == 2,
             detail={"maximizers": arg, "value": str(top)})
    rep.witnesses.append(f"N=2 maximizers {sorted(arg)} value {top}")
    for N in range(3, n_max + 1):
        top, arg = _f1_maximizers(N, 0, 0)
        ok = all(2 ** b >= 3 * a for a, b in arg)
        rep.case({"N": N, "k": 0, "C": 0}, ok, detail={"maximizers": arg})
        if N in (4, n_max):
            rep.witnesses.append(f"N={N} maximizers {arg} value {top}")
    samples = [Fraction(x) for x in side_samples]
    for k, C in itertools.product(samples, samples):
        if k == 0 and C == 0:
            continue
        for N in range(2, n_max + 1):
            _, arg = _f1_maximizers(N, k, C)
            rep.case({"N": N, "k": k, "C": C}, all(2 ** b >= 3 * a for a, b in arg),
                     detail={"maximizers": arg})
    rep.notes.append("k=C=0 exhaustive over N; other (k, C) are spot samples")
    return rep


# -- two brooms versus one ------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    a_max: int = 8
    b_max: int = 10
    c_max: int = 8
    d_max: int = 10
    ks: tuple = (0, 1, 5, 100, Fraction(1, 2), Fraction(7, 3))
    Cs: tuple = (0, 1, Fraction(7, 3))


def check_broom_merge(grid: GridSpec = GridSpec(), keep_cases: bool = False) -> VerificationReport:
    """Exact grid check that merging two brooms into one always helps.

    For each admissible (a, b, c, d) with 2**b >= 3a and 2**d >= 3c and each
    (k, C): lam1 >= 0, lam2 > 0, lam1*D1 + lam2*D2 equals the polynomial,
    the polynomial is positive, and so max(D1, D2) > 0.
    """
    rep = VerificationReport("proposition", case_log=[] if keep_cases else None)
    lowest = None
    for a, b, c, d in itertools.product(range(0, grid.a_max + 1), range(1, grid.b_max + 1),
                                        range(1, grid.c_max + 1), range(1, grid.d_max + 1)):
        if 2 ** b < 3 * a or 2 ** d < 3 * c:
            continue
        for k in grid.ks:
            lam1, lam2, value = lambda_combination(k, a, b, c, d)
            for C in grid.Cs:
                d1, d2 = broom_merge_gaps(k, C, a, b, c, d)
                problems = []
                if lam1 < 0:
                    problems.append("lam1<0")
                if lam2 <= 0:
                    problems.append("lam2<=0")
                if lam1 * d1 + lam2 * d2 != value:
                    problems.append("identity")
                if value <= 0:
                    problems.append("value<=0")
                if max(d1, d2) <= 0:
                    problems.append("no gain")
                case = {"a": a, "b": b, "c": c, "d": d, "k": k, "C": C}
                rep.case(case, not problems, detail=problems)
                if lowest is None or value < lowest[0]:
                    lowest = (value, (a, b, c, d))
    if lowest is not None:
        rep.witnesses.append(f"smallest polynomial value {lowest[0]} at (a,b,c,d)={lowest[1]}")
    rep.notes.append("exact rational evaluation on a finite grid, not a symbolic identity")
    return rep


# -- caterpillars versus double-brooms -----------------------------------------------

def check_no_double_broom(n_min: int = 25, n_max: int = 1000, keep_cases: bool = False,
                          **caterpillar_opts) -> VerificationReport:
    """For every n in range, a constructed caterpillar strictly beats every balanced double-broom."""
    if n_min < 25 or n_max > 5000 or n_min > n_max:
        raise ValueError("range must lie within 25..5000")
    rep = VerificationReport("no-double-broom", case_log=[] if keep_cases else None)
    margins = []
    for n in range(n_min, n_max + 1):
        s, _, db = best_double_broom(n)
        cat = best_caterpillar(n, **caterpillar_opts)
        margin = cat.best_value - db
        margins.append((margin, n))
        rep.case({"n": n, "s": s}, margin > 0, detail=float(margin))
    lo, hi = min(margins), max(margins)
    rep.witnesses.append(f"min margin {float(lo[0]):.6f} at n={lo[1]}")
    rep.witnesses.append(f"max margin {float(hi[0]):.6f} at n={hi[1]}")
    return rep


# -- property suite -------------------------------------------------------------------

def _branches(tree: Tree, v: int) -> list[tuple[Tree, int]]:
    """Each component of T - v with v added back, rooted at (the image of) v."""
    out = []
    for w in tree.adjacency[v]:
        seen = {v, w}
        todo = [w]
        while todo:
            u = todo.pop()
            for x in tree.adjacency[u]:
                if x not in seen:
                    seen.add(x)
                    todo.append(x)
        verts = sorted(seen)
        idx = {x: i for i, x in enumerate(verts)}
        edges = tuple((idx[a], idx[b]) for a, b in tree.edges if a in seen and b in seen)
        out.append((Tree(len(verts), edges), idx[v]))
    return out


def _unimodal(seq) -> bool:
    i, n = 0, len(seq)
    while i + 1 < n and seq[i + 1] >= seq[i]:
        i += 1
    while i + 1 < n and seq[i + 1] <= seq[i]:
        i += 1
    return i == n - 1


def _tree_path(tree: Tree, u: int, v: int) -> list[int]:
    _, parent = bfs_order(tree, u)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return path[::-1]


def _is_connected(tree: Tree, verts) -> bool:
    verts = set(verts)
    if not verts:
        return True
    start = next(iter(verts))
    seen = {start}
    todo = [start]
    while todo:
        u = todo.pop()
        for w in tree.adjacency[u]:
            if w in verts and w not in seen:
                seen.add(w)
                todo.append(w)
    return seen == verts


def prop_oracle(tree: Tree) -> str | None:
    bf = counting.brute_force_counts(tree)
    if counting.global_counts(tree) != bf:
        return f"global {counting.global_counts(tree)} != brute force {bf}"
    pv = counting.per_vertex_counts(tree)
    for v in range(tree.n):
        want = counting.brute_force_counts(tree, [v])
        if pv[v] != want:
            return f"per-vertex at {v}: {pv[v]} != {want}"
        if counting.rooted_counts(tree, v) != want:
            return f"rooted at {v}: {counting.rooted_counts(tree, v)} != {want}"
    return None


def prop_sum_identity(tree: Tree) -> str | None:
    tau = counting.global_counts(tree).total
    total = sum(c for c, _ in counting.per_vertex_counts(tree))
    return None if total == tau else f"sum sigma_v = {total} != tau = {tau}"


def prop_local_vs_global(tree: Tree) -> str | None:
    mu = counting.mean_subtree_order(tree)
    for v, agg in enumerate(counting.per_vertex_counts(tree)):
        loc = agg.mean
        if loc < mu or (tree.n >= 2 and loc == mu):
            return f"local mean {loc} at {v} vs global {mu}"
    return None


def prop_defect(tree: Tree) -> str | None:
    """Product rule, defect additivity, defect >= log2(s)/2 and local additivity, at every root."""
    for r in range(tree.n):
        s, t = counting.rooted_counts(tree, r)
        delta = tree.n - Fraction(t, s)
        # delta >= log2(s)/2  <=>  2**(2p) >= s**q  for delta = p/q
        if 2 ** (2 * delta.numerator) < s ** delta.denominator:
            return f"defect bound fails at root {r}: delta={delta}, s={s}"
        parts = [(br, counting.rooted_counts(br, root)) for br, root in _branches(tree, r)]
        if math.prod(agg.count for _, agg in parts) != s:
            return f"product rule fails at root {r}"
        if sum((br.n - agg.mean for br, agg in parts), Fraction(0)) != delta:
            return f"defect additivity fails at root {r}"
        if Fraction(t, s) - 1 != sum((agg.mean - 1 for _, agg in parts), Fraction(0)):
            return f"local additivity fails at {r}"
    return None


def prop_unimodal(tree: Tree) -> str | None:
    sig = [c for c, _ in counting.per_vertex_counts(tree)]
    leaves = tree.leaves()
    for u, v in itertools.combinations(leaves, 2):
        path = _tree_path(tree, u, v)
        if not _unimodal([sig[x] for x in path]):
            return f"sigma_v not unimodal along {path}"
    if not _is_connected(tree, counting.central_part(tree)):
        return "central part is disconnected"
    return None


def prop_monotone(tree: Tree) -> str | None:
    """mu(A) <= mu(B) for A subset of B, equality iff same Steiner tree."""
    n = tree.n
    size = 1 << n
    pairs: list = [None] * size
    hulls: list = [None] * size
    for mask in range(size):
        req = [i for i in range(n) if mask >> i & 1]
        pairs[mask] = counting.set_counts(tree, req)
        hulls[mask] = frozenset(counting.steiner_vertices(tree, req)) if req else None
    for B in range(size):
        sb, tb = pairs[B]
        A = B
        while True:
            sa, ta = pairs[A]
            lhs, rhs = ta * sb, tb * sa
            if lhs > rhs:
                return f"mu(A) > mu(B) for A={A:b}, B={B:b}"
            same = hulls[A] == hulls[B] or (n == 1 and A == 0)  # one vertex: mu(empty) = mu(v)
            if (lhs == rhs) != same:
                return f"equality case mismatch for A={A:b}, B={B:b}"
            if A == 0:
                break
            A = (A - 1) & B
    return None


PROPERTIES: dict[str, Callable[[Tree], str | None]] = {
    "oracle": prop_oracle,
    "sum-identity": prop_sum_identity,
    "local-vs-global": prop_local_vs_global,
    "defect": prop_defect,
    "unimodal": prop_unimodal,
    "monotone": prop_monotone,
}


def run_property_suite(n_max: int = 10, monotone_n_max: int = 10,
                       keep_cases: bool = False) -> VerificationReport:
    """Every counting invariant over all free trees up to ``n_max``."""
    if n_max > 12:
        raise ValueError("n_max must be <= 12")
    rep = VerificationReport("properties", case_log=[] if keep_cases else None)
    for n in range(1, n_max + 1):
        for tree in generate_free_trees(n):
            form = format_canonical(canonical_form(tree))
            for name, prop in PROPERTIES.items():
                if name == "monotone" and n > monotone_n_max:
                    continue
                msg = prop(tree)
                rep.case({"n": n, "property": name, "tree": form.replace(" ", ".")},
                         msg is None, detail=None if msg is None else f"{msg}; tree edges {tree.edges}")
    rep.notes.append(f"all free trees n <= {n_max}; monotonicity for n <= {monotone_n_max}")
    return rep


# -- diagnostics ---------------------------------------------------------------------

def three_broom(n: int) -> Tree:
    """Three brooms merged at a root: two arms of length ~sqrt(n) with ~log2(n)
    leaves, one long arm with ~2*log2(n) leaves taking the remaining vertices."""
    arm = round(math.sqrt(n))
    few = round(math.log2(n))
    many = round(2 * math.log2(n))
    long_arm = n - 1 - many - 2 * (arm + few)
    if long_arm < 1:
        raise ValueError(f"n={n} too small for the three-broom construction")
    return merged_brooms([(long_arm, many), (arm, few), (arm, few)])


def three_broom_report(n: int, slack: float = 1.0) -> dict:
    tree = three_broom(n)
    mu = counting.mean_subtree_order(tree)
    lo, hi = max_mu_bounds(n)
    d, _ = diameter(tree)
    return {
        "n": n,
        "mu": mu,
        "lower": lo,
        "upper": hi,
        "diameter": d,
        "within": lo - slack <= float(mu) <= hi + slack,
    }


def _off_path_branch(tree: Tree, path: list[int]) -> int:
    on = set(path)
    best = 0
    seen = set(on)
    for v in range(tree.n):
        if v in seen:
            continue
        comp = {v}
        todo = [v]
        seen.add(v)
        while todo:
            u = todo.pop()
            for w in tree.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    todo.append(w)
        best = max(best, len(comp))
    return best


def diagnostics(tree: Tree) -> dict:
    """Structural summary of a tree."""
    sigma, tau = counting.global_counts(tree)
    mu = Fraction(tau, sigma)
    d, path = diameter(tree)
    return {
        "n": tree.n,
        "sigma": sigma,
        "tau": tau,
        "mu": mu,
        "density": mu / tree.n,
        "diameter": d,
        "n_minus_diameter": tree.n - d,
        "centroid": centroid(tree),
        "subtree_core": counting.subtree_core(tree),
        "central_part_size": len(counting.central_part(tree)),
        "leaves": len(tree.leaves()),
        "caterpillar": is_caterpillar(tree),
        "max_off_diameter_branch": _off_path_branch(tree, path),
    }
