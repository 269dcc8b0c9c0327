"""Rational periodic and preperiodic points of x^2 + c for integer c.

Rational periodic points of a monic integer quadratic are integers of period
1 or 2 (no larger period occurs over Q), so the periodic part is read off the
discriminants of x^2 - x + c and x^2 + x + c + 1.  A map whose periodic part
contains a perfect square falls into exactly one of two one-parameter shapes,
and then the whole preperiodic set has a closed form:

    c = s^2 - s^4      ->  {s^2, -s^2, 1-s^2, -(1-s^2)}   (square fixed point)
    c = -1 - s^2 - s^4 ->  {s^2, -s^2, 1+s^2, -(1+s^2)}   (square in a 2-cycle)

For every other c the preperiodic set is the backward closure of the periodic
points, and `brute_force_preper` provides an independent orbit-simulation
oracle for cross-checking both paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import floor_sqrt, is_perfect_square

FIXED_SQUARE = "fixed-square"
TWO_CYCLE_SQUARE = "two-cycle-square"


@dataclass(frozen=True)
class SquareForm:
    """Shape of a map with a square periodic point: s*s is that point."""

    kind: str  # FIXED_SQUARE or TWO_CYCLE_SQUARE
    s: int     # normalized nonnegative; only s^2 enters any formula


@dataclass(frozen=True)
class Portrait:
    """The rational preperiodic structure of one map x^2 + c."""

    c: int
    fixed_points: frozenset[int]
    two_cycles: frozenset[tuple[int, int]]
    preper: frozenset[int]
    square_form: SquareForm | None


def rational_periodic_points(c: int) -> tuple[frozenset[int], frozenset[tuple[int, int]]]:
    """Integer fixed points and 2-cycles of x^2 + c; no higher period exists over Q.

    Fixed points are the integer roots of x^2 - x + c (present iff 1 - 4c is a
    square); 2-cycle members are the integer roots of x^2 + x + c + 1 (present
    iff -3 - 4c is a square).  Cycles are returned as sorted pairs.
    """
    fixed: frozenset[int] = frozenset()
    d = is_perfect_square(1 - 4 * c)
    if d is not None:
        # 1 - 4c is odd, so d is odd and both roots are integers
        fixed = frozenset({(1 + d) // 2, (1 - d) // 2})
    cycles: frozenset[tuple[int, int]] = frozenset()
    d = is_perfect_square(-3 - 4 * c)
    if d is not None:
        a, b = (-1 + d) // 2, (-1 - d) // 2
        cycles = frozenset({(min(a, b), max(a, b))})
    return fixed, cycles


def recognize_square_periodic(c: int) -> SquareForm | None:
    """Match c against the two shapes that admit a square periodic point.

    Searches s = 0 .. floor_sqrt(floor_sqrt(|c|)) + 2 exhaustively; the
    fixed-point shape wins if both were ever to match (they cannot: the two
    shapes differ by a unit mod 4 for every pair of parameters).
    """
    limit = floor_sqrt(floor_sqrt(abs(c))) + 2
    for s in range(limit + 1):
        if c == s * s - s**4:
            return SquareForm(FIXED_SQUARE, s)
    for s in range(limit + 1):
        if c == -1 - s * s - s**4:
            return SquareForm(TWO_CYCLE_SQUARE, s)
    return None


@lru_cache(maxsize=None)
def preper_set(c: int) -> frozenset[int]:
    """All rational (hence integer) preperiodic points of x^2 + c.

    Uses the closed form when a square periodic point exists, otherwise the
    backward closure of the periodic points: repeatedly adjoin the integer
    preimages +-sqrt(p - c) until nothing new appears (always finite).
    """
    form = recognize_square_periodic(c)
    if form is not None:
        s2 = form.s * form.s
        if form.kind == FIXED_SQUARE:
            return frozenset({s2, -s2, 1 - s2, -(1 - s2)})
        return frozenset({s2, -s2, 1 + s2, -(1 + s2)})
    fixed, cycles = rational_periodic_points(c)
    pts = set(fixed)
    for a, b in cycles:
        pts.add(a)
        pts.add(b)
    frontier = set(pts)
    while frontier:
        new = set()
        for p in frontier:
            r = is_perfect_square(p - c)
            if r is None:
                continue
            for y in (r, -r):
                if y not in pts:
                    new.add(y)
        pts |= new
        frontier = new
    return frozenset(pts)


def brute_force_preper(c: int) -> frozenset[int]:
    """Independent oracle for preper_set by direct orbit simulation.

    Tests every |a| <= |c| + 1.  An orbit that revisits a value while staying
    inside |value| <= |c| + 1 is preperiodic; any iterate outside that window
    certifies escape, since |x^2 + c| > |x| whenever |x| >= |c| + 2.
    """
    bound = abs(c) + 1
    out = set()
    for a in range(-bound, bound + 1):
        seen = set()
        v = a
        while -bound <= v <= bound and v not in seen:
            seen.add(v)
            v = v * v + c
        if -bound <= v <= bound:
            out.add(a)
    return frozenset(out)


def portrait(c: int) -> Portrait:
    """Assemble the full portrait of x^2 + c."""
    fixed, cycles = rational_periodic_points(c)
    return Portrait(
        c=c,
        fixed_points=fixed,
        two_cycles=cycles,
        preper=preper_set(c),
        square_form=recognize_square_periodic(c),
    )


def has_square_periodic_point(c: int) -> bool:
    return recognize_square_periodic(c) is not None
