"""Command-line front end.

Exit codes: 0 success, 1 failed check or I/O error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import closed_forms, counting, search, trees, verify


def fmt(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator} (~{float(x):.6f})"


def _exact(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class InputError(Exception):
    pass


def _read_tree(path: str) -> trees.Tree:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    try:
        return trees.parse_tree(text)
    except trees.TreeError as e:
        raise InputError(f"{path}: {e}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_compute(args) -> int:
    tree = _read_tree(args.tree)
    if args.root is not None and not 0 <= args.root < tree.n:
        raise UsageError(f"root {args.root} not in tree")
    sigma, tau = counting.global_counts(tree)
    mu = Fraction(tau, sigma)
    print(f"sigma={sigma} tau={tau} mu={fmt(mu)} density={_exact(mu / tree.n)}")
    if args.root is not None:
        s, t = counting.rooted_counts(tree, args.root)
        print(f"root={args.root} s={s} t={t} local_mean={fmt(Fraction(t, s))} "
              f"defect={fmt(tree.n - Fraction(t, s))}")
    if args.set is not None:
        print(f"set={','.join(map(str, args.set))} mean={fmt(counting.set_mean(tree, args.set))}")
    if args.all:
        d = verify.diagnostics(tree)
        print(f"diameter={d['diameter']} n_minus_diameter={d['n_minus_diameter']} leaves={d['leaves']} "
              f"caterpillar={str(d['caterpillar']).lower()} max_off_diameter_branch={d['max_off_diameter_branch']}")
        print(f"centroid={','.join(map(str, d['centroid']))} "
              f"subtree_core={','.join(map(str, d['subtree_core']))} "
              f"central_part_size={d['central_part_size']}")
        for v, (s, t) in enumerate(counting.per_vertex_counts(tree)):
            print(f"vertex={v} sigma_v={s} local_mean={fmt(Fraction(t, s))}")
        print(f"canonical={trees.format_canonical(trees.canonical_form(tree))}")
    return 0


def cmd_family(args) -> int:
    kind = args.kind
    if kind == "path":
        spec = trees.Path(args.n)
    elif kind == "star":
        spec = trees.Star(args.n)
    elif kind == "broom":
        spec = trees.Broom(args.a, args.b)
    elif kind == "double-broom":
        if args.left is not None or args.right is not None:
            spec = trees.UnbalancedDoubleBroom(args.path, args.left or 0, args.right or 0)
        else:
            spec = trees.DoubleBroom(args.n, args.s)
    else:
        spec = trees.Caterpillar(args.stem, args.m, tuple(args.positions or ()))
    text = trees.format_tree(trees.build_family(spec))
    if args.emit:
        with open(args.emit, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _needs(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.kind} needs --{' --'.join(missing)}")


class UsageError(Exception):
    pass


def cmd_search(args) -> int:
    n = args.n
    if args.mode == "exhaustive":
        res = search.exhaustive_optimal(n, jobs=args.jobs, cap=args.cap)
        for line in res.records():
            print(line)
        print(f"# {res.trees_examined} trees examined in {res.elapsed:.2f}s", file=sys.stderr)
    elif args.mode == "double-broom":
        s, (sigma, tau), mu = search.best_double_broom(n)
        print(f"n={n} s={s} sigma={sigma} tau={tau} mu={fmt(mu)}")
    elif args.mode == "broom-local":
        a, b, val = search.best_broom_local(n)
        print(f"n={n} a={a} b={b} local_mean={fmt(val)}")
    else:
        res = search.best_caterpillar(n, k_range=range(0, args.kmax + 1), perturb_radius=args.radius)
        for line in res.records():
            print(line)
        s, _, db = search.best_double_broom(n)
        print(f"n={n} caterpillar_mu={fmt(res.best_value)} double_broom_mu={fmt(db)} "
              f"margin={fmt(res.best_value - db)}")
    return 0


def cmd_verify(args) -> int:
    keep = args.records
    if args.check == "lemma1":
        rep = verify.check_single_broom(args.nmax if args.nmax is not None else 46, keep_cases=keep)
    elif args.check == "proposition":
        grid = verify.GridSpec(a_max=args.amax, b_max=args.bmax, c_max=args.cmax, d_max=args.dmax)
        rep = verify.check_broom_merge(grid, keep_cases=keep)
    elif args.check == "no-double-broom":
        rep = verify.check_no_double_broom(args.nmin if args.nmin is not None else 25,
                                           args.nmax if args.nmax is not None else 1000,
                                           keep_cases=keep)
    else:
        rep = verify.run_property_suite(args.nmax if args.nmax is not None else 10, keep_cases=keep)
    print(rep.render())
    for line in rep.records():
        print(line)
    return 0 if rep.passed else 1


def cmd_asymptotics(args) -> int:
    what = args.what
    if what in ("f", "g"):
        if args.x is None:
            raise UsageError(f"{what} needs --x")
        fn = closed_forms.periodic_f if what == "f" else closed_forms.periodic_g
        print(f"{what}({args.x})={fn(args.x):.15g}")
        if what == "g":
            u, g = closed_forms.periodic_g_min()
            print(f"min_g={g:.15g} at x={u:.15g}")
    elif what == "bounds":
        if args.n is None:
            raise UsageError("bounds needs --n")
        lo, hi = closed_forms.max_mu_bounds(args.n)
        print(f"n={args.n} lower={lo:.15g} upper={hi:.15g}")
    else:
        for parity in ("even", "odd"):
            print(f"bilateral_sum[{parity}]={closed_forms.bilateral_sum(parity):.15g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="meansubtree", description="Exact mean subtree order toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="invariants of one tree")
    c.add_argument("--tree", required=True, help="edge-list file, or - for stdin")
    c.add_argument("--root", type=int)
    c.add_argument("--set", type=_int_list)
    c.add_argument("--all", action="store_true")
    c.set_defaults(func=cmd_compute)

    f = sub.add_parser("family", help="emit a tree from a parameterized family")
    f.add_argument("kind", choices=["broom", "double-broom", "caterpillar", "path", "star"])
    f.add_argument("--n", type=int)
    f.add_argument("--a", type=int, help="broom handle length")
    f.add_argument("--b", type=int, help="broom leaf count")
    f.add_argument("--s", type=int, help="double-broom leaves per end")
    f.add_argument("--path", type=int, help="unbalanced double-broom path vertices")
    f.add_argument("--left", type=int)
    f.add_argument("--right", type=int)
    f.add_argument("--stem", type=int, help="caterpillar stem edges")
    f.add_argument("--m", type=int, help="caterpillar leaves per stem end")
    f.add_argument("--positions", type=_int_list, help="caterpillar support indices")
    f.add_argument("--emit", help="write to FILE instead of stdout")
    f.set_defaults(func=cmd_family)

    s = sub.add_parser("search", help="optimal trees and families")
    s.add_argument("mode", choices=["exhaustive", "double-broom", "broom-local", "caterpillar"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--kmax", type=int, default=8)
    s.add_argument("--radius", type=int, default=2)
    s.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    s.add_argument("--cap", type=int, default=search.EXHAUSTIVE_DEFAULT_CAP)
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="run a machine check")
    v.add_argument("check", choices=["lemma1", "proposition", "no-double-broom", "properties"])
    v.add_argument("--nmin", type=int)
    v.add_argument("--nmax", type=int)
    v.add_argument("--amax", type=int, default=8)
    v.add_argument("--bmax", type=int, default=10)
    v.add_argument("--cmax", type=int, default=8)
    v.add_argument("--dmax", type=int, default=10)
    v.add_argument("--records", action="store_true", help="print a record line for every case")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("asymptotics", help="periodic functions, bounds and constants")
    a.add_argument("what", choices=["f", "g", "bounds", "bilateral-sum"])
    a.add_argument("--x", type=float)
    a.add_argument("--n", type=int)
    a.set_defaults(func=cmd_asymptotics)
    return p


_FAMILY_NEEDS = {
    "path": ("n",),
    "star": ("n",),
    "broom": ("a", "b"),
    "caterpillar": ("stem", "m"),
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "family":
            if args.kind == "double-broom":
                if args.left is not None or args.right is not None:
                    _needs(args, "path")
                else:
                    _needs(args, "n", "s")
            else:
                _needs(args, *_FAMILY_NEEDS[args.kind])
        return args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"meansubtree: error: {e}", file=sys.stderr)
        return 2
    except (InputError, OSError) as e:
        print(f"meansubtree: error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"meansubtree: error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
