"""Canonical heights with explicit error bounds, and the iterate bound N.

The canonical height of a under f(x) = x^2 + c is hhat(a) = lim h(f^n(a))/2^n
with h(x) = log max(|x|, 1).  For integer x the one-step defect is uniformly
bounded:

    |x^2 + c| <= max(|x|,1)^2 * 2(|c|+1)                    (triangle inequality)
    max(|x^2 + c|, 1) >= max(|x|,1)^2 / (2(|c|+1))
        [x^2 >= 2|c|: |x^2+c| >= x^2/2;  x^2 < 2|c|: max(|x|,1)^2 < 2(|c|+1)]

so |h(f(x)) - 2 h(x)| <= log(|c|+1) + log 2 =: C(f), and telescoping gives
|hhat(a) - h(f^n(a))/2^n| <= sum_{k>=n} C/2^(k+1) = C/2^n.

Integral points on the genus-one model Y^2 = f(f(X)) are found exactly by
factoring: Y^2 - (X^2+c)^2 = c forces (Y - X^2 - c)(Y + X^2 + c) = c, so each
divisor pair (d, e) of c with d = e mod 2 yields the only candidates.  This
replaces an ineffective finiteness argument with a complete enumeration.

The minimal positive height is searched over a box of integers only, and
every bound built from it carries the rigor flag "box-searched".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import divisor_pairs, is_perfect_square
from .dynamics import QuadraticMap
from .portraits import preper_set

# Orbit values are kept as exact integers up to this size; beyond it the
# iteration continues on logs, where the one-step defect |log(1 + c/x^2)| is
# below 2^-450 and invisible at double precision.
_EXACT_BITS = 256

RIGOR_BOX = "box-searched"


@dataclass(frozen=True)
class HeightEstimate:
    """h(f^n(a))/2^n together with the telescoping error bound C(f)/2^n."""

    value: float
    error: float
    iterations: int

    @property
    def lower(self) -> float:
        return self.value - self.error

    @property
    def upper(self) -> float:
        return self.value + self.error


@dataclass(frozen=True)
class IterateBound:
    """N = ceil(log2(B / hmin)) + 2, with B dominating heights of integral points.

    Once f^N(a) is a perfect square for an integer a, a must be preperiodic;
    `rigor` records that hmin was minimized over a box of integers rather than
    all rationals.
    """

    N: int
    B: float
    hmin: float
    rigor: str


def height_defect_bound(map: QuadraticMap) -> float:
    """C(f) = log(|c|+1) + log 2, the uniform bound on |h(f(x)) - 2h(x)|."""
    return math.log(abs(map.c) + 1) + math.log(2.0)


def naive_height(x: int) -> float:
    """log max(|x|, 1)."""
    return math.log(max(abs(x), 1))


def canonical_height(map: QuadraticMap, a: int, iterations: int) -> HeightEstimate:
    """Estimate hhat(a) as h(f^n(a))/2^n with guaranteed error C(f)/2^n.

    The orbit is computed exactly in big integers until values pass 2^256,
    after which the remaining doublings happen on logs; past that size the
    neglected per-step terms total less than 2^-450 and the reported error
    bound still holds.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    c = map.c
    v = a
    step = 0
    while step < iterations and v.bit_length() <= _EXACT_BITS:
        v = v * v + c
        step += 1
    if step == iterations:
        value = naive_height(v) / 2.0**iterations
    else:
        value = math.log(abs(v)) / 2.0**step
    return HeightEstimate(value=value, error=height_defect_bound(map) / 2.0**iterations,
                          iterations=iterations)


def integral_points_on_phi2(map: QuadraticMap) -> frozenset[tuple[int, int]]:
    """Every integer point (X, Y) with Y^2 = f(f(X)); complete by divisor factoring.

    Requires c not in {0, -1} (otherwise the curve degenerates).
    """
    c = map.c
    if c in (0, -1):
        raise ValueError("integral point enumeration needs c outside {0, -1}")
    pts = set()
    for d, e in divisor_pairs(c):
        if (e - d) % 2 != 0:
            continue
        x_sq = (e - d) // 2 - c
        y = (e + d) // 2
        r = is_perfect_square(x_sq)
        if r is not None:
            pts.add((r, y))
            pts.add((-r, y))
    return frozenset(pts)


def min_positive_height(
    map: QuadraticMap,
    search_box: int = 0,
    iterations: int = 30,
) -> tuple[float, str]:
    """Smallest positive canonical-height lower bound over a box of integers.

    Scans |a| <= max(search_box, |c|+1), skipping the (exactly known)
    preperiodic points; every remaining integer has strictly positive height,
    so its lower bound value - error must come out positive once `iterations`
    is large enough.  Raises ArithmeticError if some lower bound is still
    nonpositive, in which case the caller should raise `iterations`.
    """
    c = map.c
    if c in (0, -1):
        raise ValueError("minimal height search needs c outside {0, -1}")
    box = max(search_box, abs(c) + 1)
    skip = preper_set(c)
    hmin = math.inf
    for a in range(-box, box + 1):
        if a in skip:
            continue
        est = canonical_height(map, a, iterations)
        if est.lower <= 0.0:
            raise ArithmeticError(
                f"height lower bound for a={a} is nonpositive at "
                f"{iterations} iterations; increase iterations"
            )
        hmin = min(hmin, est.lower)
    if not math.isfinite(hmin):
        raise ArithmeticError("no wandering integer found in the search box")
    return hmin, RIGOR_BOX


def compute_iterate_bound(
    map: QuadraticMap,
    search_box: int = 0,
    iterations: int = 30,
) -> IterateBound:
    """The iterate bound N for the map, from integral points and the height minimum.

    B is the larger of hmin and the height upper bounds of all X-coordinates
    of integral points on Y^2 = f(f(X)); then N = ceil(log2(B/hmin)) + 2 >= 2.
    """
    hmin, rigor = min_positive_height(map, search_box, iterations)
    B = hmin
    for X, _Y in integral_points_on_phi2(map):
        est = canonical_height(map, X, iterations)
        B = max(B, est.upper)
    ratio = B / hmin
    N = 2 if ratio <= 1.0 else math.ceil(math.log2(ratio)) + 2
    return IterateBound(N=N, B=B, hmin=hmin, rigor=rigor)
