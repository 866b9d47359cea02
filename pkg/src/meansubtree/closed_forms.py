"""Closed-form evaluators for brooms, double-brooms and caterpillars.

Rational quantities are exact (``Fraction``); only the transcendental
helpers (``periodic_f``, ``periodic_g``, ``bilateral_sum``,
``max_mu_bounds``) use floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb
from typing import Sequence

from .counting import SubtreeAggregate


def _pow2(e: int) -> Fraction:
    return Fraction(2) ** e


def broom_local_mean(n: int, a: int, b: int) -> Fraction:
    """Mean order of subtrees containing the handle end of a broom."""
    if a < 0 or b < 1:
        raise ValueError("broom needs a >= 0 and b >= 1")
    if n != a + b + 1:
        raise ValueError(f"inconsistent order: n={n} but a+b+1={a + b + 1}")
    return n - Fraction(1, 2) * (b + Fraction(a * n, a + 2 ** b))


def double_broom_counts(n: int, s: int) -> SubtreeAggregate:
    """(sigma, tau) for a path of n-2s vertices with s leaves at each end."""
    if s < 1 or n - 2 * s < 2:
        raise ValueError("double-broom needs s >= 1 and n - 2s >= 2")
    sigma = 2 ** (2 * s) + 2 ** (s + 1) * (n - 2 * s - 1) + comb(n - 2 * s - 1, 2) + 2 * s
    tau = (2 ** (2 * s) * (n - s) + 2 ** s * (n - s) * (n - 2 * s - 1)
           + comb(n - 2 * s, 3) + 2 * s)
    return SubtreeAggregate(sigma, tau)


def _broom_parts(a: int, b: int) -> tuple[int, int]:
    # subtrees of a broom containing its root: count, and order sum scaled by 2
    x = 2 ** b
    return a + x, a * a - a + (2 * a + b) * x


def f1(k, C, a: int, b: int) -> Fraction:
    """Variable part of the local mean at the root when one broom hangs off v."""
    k, C = Fraction(k), Fraction(C)
    if k < 0 or C < 0 or a < 0 or b < 1:
        raise ValueError("f1 needs k, C, a >= 0 and b >= 1")
    cnt, twice = _broom_parts(a, b)
    return (twice - C) / (k + cnt)


def f2(k, C, a: int, b: int, c: int, d: int) -> Fraction:
    """Variable part of the local mean at the root when two brooms hang off v."""
    k, C = Fraction(k), Fraction(C)
    if k < 0 or C < 0 or a < 0 or min(b, c, d) < 1:
        raise ValueError("f2 needs k, C, a >= 0 and b, c, d >= 1")
    n1, w1 = _broom_parts(a, b)
    n2, w2 = _broom_parts(c, d)
    return (n1 * w2 + n2 * w1 - C) / (k + n1 * n2)


def mean_with_broom(ell: int, m: int, s: int, t: int, a: int, b: int) -> Fraction:
    """Local mean at r after hanging a broom (a, b) on v.

    ``ell``/``s``: number and total order of subtrees of the host containing
    both r and v; ``m``/``t``: the same for subtrees containing r but not v.
    """
    x = 2 ** b
    num = Fraction(t + s * (a + x)) + Fraction(ell, 2) * (a * a - a + (2 * a + b) * x)
    return num / (m + ell * (a + x))


def lambda_combination(k, a: int, b: int, c: int, d: int) -> tuple[Fraction, Fraction, int]:
    """Coefficients (lam1, lam2) and the polynomial lam1*D1 + lam2*D2 should equal.

    D1 = f1(k,C,a+c,b+d) - f2(k,C,a,b,c,d) and
    D2 = f1(k,C,a+c-1,b+d+1) - f2(k,C,a,b,c,d).  The polynomial involves
    neither k nor C.
    """
    k = Fraction(k)
    if k < 0 or a < 0 or min(b, c, d) < 1:
        raise ValueError("need k, a >= 0 and b, c, d >= 1")
    x, y = 2 ** b, 2 ** d
    lam1 = (x * y - x * c - a * y - (c - 1) * (a - 1)) * (k + a + c + x * y)
    lam2 = (x * c + a * y + (c - 1) * a - c) * (k + a + c - 1 + 2 * x * y)
    value = (c * (c - 1) * (x * y - 1) * (x + a - 1)
             + a * ((a - 1) * (x * y - 1) + b * x * y) * (c + y - 1)
             + c * y * x * ((x - 1) * d - b)
             + y * a * d * (x * (c - 1) + 1)
             + b * x * c)
    return Fraction(lam1), Fraction(lam2), value


def broom_merge_gaps(k, C, a: int, b: int, c: int, d: int) -> tuple[Fraction, Fraction]:
    """(D1, D2): gain from merging two brooms into one, two ways."""
    base = f2(k, C, a, b, c, d)
    return f1(k, C, a + c, b + d) - base, f1(k, C, a + c - 1, b + d + 1) - base


# -- periodic functions ------------------------------------------------------------

def _frac(x: float) -> float:
    return x - math.floor(x)


def periodic_f(x: float) -> float:
    """1-periodic extension of u - 2**u from [0, 1]."""
    u = _frac(x)
    return u - 2.0 ** u


def periodic_g(x: float) -> float:
    """1-periodic extension of max(0.19 * 2**u, 1 - 0.62 * 2**u) from [0, 1]."""
    u = _frac(x)
    w = 2.0 ** u
    return max(0.19 * w, 1.0 - 0.62 * w)


def periodic_g_min() -> tuple[float, float]:
    """(argmin, min) of periodic_g on [0, 1].

    The increasing and decreasing branches cross where 2**u = 1/0.81.
    """
    u = -math.log2(0.81)
    return u, periodic_g(u)


def max_mu_bounds(n: int) -> tuple[float, float]:
    """Lower and upper asymptotic bounds on the maximum mean subtree order, o(1) dropped."""
    if n < 2:
        raise ValueError("n must be >= 2")
    x = 2 * math.log2(n)
    lower = n - x + periodic_f(x)
    return lower, lower + 2


# -- caterpillar asymptotics ---------------------------------------------------------

def pq_values(k: int, positions: Sequence) -> tuple[Fraction, Fraction]:
    """Normalized leading coefficients (p, q) of sigma and tau for support positions a_1..a_k."""
    pos = [Fraction(a) for a in positions]
    if len(pos) != k:
        raise ValueError(f"expected {k} positions, got {len(pos)}")
    if any(not 0 <= a <= 1 for a in pos) or pos != sorted(pos):
        raise ValueError("positions must be nondecreasing in [0, 1]")
    p = _pow2(-k) + 1
    q = Fraction(1, 2) + _pow2(-k - 1)
    for i, a in enumerate(pos, start=1):
        p += (_pow2(-i) - _pow2(i - k - 1)) * a
        q += _pow2(-i) * a - (_pow2(-i - 1) + _pow2(i - k - 2)) * a * a
    return p, q


def optimal_positions(k: int) -> list[Fraction]:
    """Support positions maximizing q - p: a_i = 1 / (2**(k-2i+1) + 1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return [1 / (_pow2(k - 2 * i + 1) + 1) for i in range(1, k + 1)]


def bilateral_sum(parity: str | int, cutoff: int = 60) -> float:
    """Sum over all integers i of 2**-1.5 / (2**((k+1)/2 - i) + 2**(i - (k+1)/2)).

    Only the parity of k matters; ``parity`` is "even"/"odd" or any integer k.
    """
    if isinstance(parity, str):
        if parity not in ("even", "odd"):
            raise ValueError("parity must be 'even' or 'odd'")
        odd = parity == "odd"
    else:
        odd = parity % 2 == 1
    shift = 0.0 if odd else 0.5
    terms = []
    for j in range(-cutoff, cutoff + 1):
        e = j + shift
        terms.append(2 ** -1.5 / (2.0 ** e + 2.0 ** -e))
    return math.fsum(terms)
