"""Exact arbitrary-precision integer helpers.

Pure functions on Python ints: perfect-square detection, integer square
roots, signed divisor enumeration, and exhaustive residue searches (the
engine behind the modular-obstruction checks).
"""

from __future__ import annotations

import math
from itertools import product
from typing import Callable, Sequence


def floor_sqrt(n: int) -> int:
    """Largest r >= 0 with r*r <= n.  Raises ValueError for negative input."""
    if n < 0:
        raise ValueError(f"floor_sqrt requires n >= 0, got {n}")
    return math.isqrt(n)


def is_perfect_square(n: int) -> int | None:
    """Nonnegative root r with r*r == n, or None if n is not a square."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def positive_divisors(n: int) -> list[int]:
    """Ascending positive divisors of |n|, by trial division.  n must be nonzero."""
    if n == 0:
        raise ValueError("0 has no finite divisor list")
    n = abs(n)
    small: list[int] = []
    large: list[int] = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def divisor_pairs(n: int) -> list[tuple[int, int]]:
    """All ordered integer pairs (d, e) with d * e == n, negative divisors included.

    The list has exactly 2 * tau(|n|) pairs and no duplicates.
    """
    if n == 0:
        raise ValueError("divisor pairs of 0 are not enumerable")
    pairs = []
    for d in positive_divisors(n):
        pairs.append((d, n // d))
        pairs.append((-d, -(n // d)))
    return pairs


def residue_search(
    exprs: Sequence[Callable[..., int]],
    num_vars: int,
    modulus: int,
) -> list[tuple[int, ...]]:
    """All vectors in (Z/modulus)^num_vars on which every expression vanishes mod modulus.

    The scan is exhaustive, so an empty result certifies that the system of
    expressions has no integer solutions at all (a modular obstruction).  Each
    expression is a callable taking num_vars integer arguments.
    """
    if not 1 <= num_vars <= 4:
        raise ValueError(f"residue_search supports 1..4 variables, got {num_vars}")
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    hits = []
    for vec in product(range(modulus), repeat=num_vars):
        if all(e(*vec) % modulus == 0 for e in exprs):
            hits.append(vec)
    return hits
