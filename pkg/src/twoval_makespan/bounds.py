"""Exact lift factors, ratio expressions, and per-interval worst cases.

For a normalized instance with sizes {1/alpha, 1} the size-rounding
reductions replace the small size by 1/ceil(alpha) or 1/floor(alpha); the
lift factors f1 = ceil(alpha)/alpha >= 1 and f2 = floor(alpha)/alpha <= 1
measure how far the small size moved. The certified ratio of each branch is
an exact rational expression in alpha; on the interval (n, n+1) one
expression increases and the other decreases, and they balance at the
positive root of a quadratic, which pins the interval's worst case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .model import as_rational

# LP integrality-gap constant echoed in reports for very small job sizes;
# never claimed for a produced schedule.
NONCONSTRUCTIVE_BASE = Fraction(5, 3)
NONCONSTRUCTIVE_THRESHOLD = Fraction(1, 5)

ASSIGNMENT_GUARANTEE = Fraction(1883, 1000)
GB_GUARANTEE = Fraction(413, 250)


@dataclass(frozen=True)
class GuaranteeReport:
    """Per-instance bound data attached to a solve."""

    alpha: Fraction
    f1: Fraction
    f2: Fraction
    expr1: Fraction
    expr2: Fraction
    constructive_bound: Fraction
    nonconstructive_note: Fraction | None
    graph_balancing: bool = False


def lift_factors(alpha: object) -> tuple[Fraction, Fraction]:
    """(f1, f2) for alpha >= 1; both equal 1 exactly when alpha is an integer."""
    a = as_rational(alpha)
    if a < 1:
        raise ValueError("alpha must be >= 1")
    return Fraction(math.ceil(a)) / a, Fraction(math.floor(a)) / a


def ratio_expressions(alpha: object) -> tuple[Fraction, Fraction]:
    """Branch bounds for general assignment constraints: (1 + f1 - 1/alpha, 1/f2 + 1 - 1/floor(alpha))."""
    a = as_rational(alpha)
    f1, f2 = lift_factors(a)
    expr1 = 1 + f1 - 1 / a
    expr2 = 1 / f2 + 1 - Fraction(1, math.floor(a))
    return expr1, expr2


def gb_ratio_expressions(alpha: object) -> tuple[Fraction, Fraction]:
    """Branch bounds when every job fits on at most 2 machines: (1 + f1/2, 1/f2 + 1/2)."""
    a = as_rational(alpha)
    f1, f2 = lift_factors(a)
    return 1 + f1 / 2, 1 / f2 + Fraction(1, 2)


def _bisect_root(g: Callable[[Fraction], Fraction], lo: Fraction, hi: Fraction) -> Fraction:
    """Positive root of g on (lo, hi) by exact bisection, then denominator capping."""
    if not (g(lo) < 0 < g(hi)):
        raise ValueError("root is not bracketed")
    for _ in range(60):  # interval width < 1e-18 after 60 halvings
        mid = (lo + hi) / 2
        value = g(mid)
        if value == 0:
            return mid
        if value < 0:
            lo = mid
        else:
            hi = mid
    return ((lo + hi) / 2).limit_denominator(10**6)


def worst_case_alpha(n: int) -> Fraction:
    """Root of x^2 - x - n^2 in (n, n+1): where both assignment expressions meet."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _bisect_root(lambda x: x * x - x - n * n, Fraction(n), Fraction(n + 1))


def gb_worst_case_alpha(n: int) -> Fraction:
    """Root of 2x^2 - n*x - n(n+1) in (n, n+1): where both 2-machine expressions meet."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return _bisect_root(
        lambda x: 2 * x * x - n * x - n * (n + 1), Fraction(n), Fraction(n + 1)
    )


def scan_assignment_grid(max_denominator: int = 1000) -> tuple[Fraction, Fraction]:
    """Max of min(expr1, expr2) over rationals in (1, 5] with bounded denominator.

    Pure integer arithmetic; returns (maximum, alpha attaining it).
    """
    best_num, best_den = 0, 1
    best_alpha = (0, 1)
    for q in range(1, max_denominator + 1):
        for p in range(q + 1, 5 * q + 1):
            n, r = divmod(p, q)
            if r == 0:
                num, den = 2 * p - q, p  # integer alpha: both expressions equal 2 - 1/alpha
            else:
                e1_num, e1_den = p + n * q, p
                e2_num, e2_den = p + (n - 1) * q, n * q
                if e1_num * e2_den <= e2_num * e1_den:
                    num, den = e1_num, e1_den
                else:
                    num, den = e2_num, e2_den
            if num * best_den > best_num * den:
                best_num, best_den = num, den
                best_alpha = (p, q)
    return Fraction(best_num, best_den), Fraction(*best_alpha)


def scan_gb_grid(max_denominator: int = 1000, hi: int = 6) -> tuple[Fraction, Fraction]:
    """Max of min(1 + f1/2, 1/f2 + 1/2) over rationals in [2, hi] with bounded denominator.

    For alpha beyond any interval start n >= 6 the first expression alone is
    at most 1 + (n+1)/(2n) <= 19/12 < 1.652, so scanning up to 6 covers the max.
    """
    best_num, best_den = 0, 1
    best_alpha = (0, 1)
    for q in range(1, max_denominator + 1):
        for p in range(2 * q, hi * q + 1):
            n, r = divmod(p, q)
            if r == 0:
                num, den = 3, 2  # integer alpha: both expressions equal 3/2
            else:
                e1_num, e1_den = 2 * p + (n + 1) * q, 2 * p
                e2_num, e2_den = 2 * p + n * q, 2 * n * q
                if e1_num * e2_den <= e2_num * e1_den:
                    num, den = e1_num, e1_den
                else:
                    num, den = e2_num, e2_den
            if num * best_den > best_num * den:
                best_num, best_den = num, den
                best_alpha = (p, q)
    return Fraction(best_num, best_den), Fraction(*best_alpha)


def gb_interval_start_bound(n: int) -> Fraction:
    """Supremum of 1 + f1/2 over alpha in (n, n+1); decreasing in n."""
    return 1 + Fraction(n + 1, 2 * n)


def guarantee_report(alpha: object, graph_balancing: bool = False) -> GuaranteeReport:
    """Build the bound report attached to a solve result."""
    a = as_rational(alpha)
    f1, f2 = lift_factors(a)
    if graph_balancing:
        expr1, expr2 = gb_ratio_expressions(a)
        if a == 1:
            bound = Fraction(1)
        elif a >= 2:
            bound = min(expr1, expr2)
        else:
            bound = GB_GUARANTEE  # covers the racing branches for alpha in (1, 2)
        note = None
    else:
        expr1, expr2 = ratio_expressions(a)
        bound = min(expr1, expr2)
        small = 1 / a
        note = NONCONSTRUCTIVE_BASE + small if small < NONCONSTRUCTIVE_THRESHOLD else None
    return GuaranteeReport(
        alpha=a,
        f1=f1,
        f2=f2,
        expr1=expr1,
        expr2=expr2,
        constructive_bound=bound,
        nonconstructive_note=note,
        graph_balancing=graph_balancing,
    )
