"""Composition words over generator sets of quadratic maps x^2 + c.

A word lists generator indices outermost first: word (i1, ..., in) denotes
the composition f_{i1} o ... o f_{in}, applied right to left.  The adjusted
critical orbit attached to that word is the integer sequence

    -f_{i1}(0),  f_{i1}(f_{i2}(0)),  ...,  f_{i1}(f_{i2}(... f_{in}(0)))

with one entry per letter.  If no entry is a perfect square, the composed
polynomial is irreducible over the rationals.  The converse does not hold,
so a word with a square in its orbit gets the verdict "unknown", never
"reducible".
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterator, Sequence

from ._util import parallel_map
from .arith import is_perfect_square

DEFAULT_DEGREE_CAP = 256
DEFAULT_SCAN_BUDGET = 1 << 20


@dataclass(frozen=True)
class QuadraticMap:
    """The map x -> x^2 + c with an exact integer constant."""

    c: int

    def __call__(self, x: int) -> int:
        return x * x + self.c

    def iterate(self, n: int, x: int) -> int:
        """n-fold application; n = 0 returns x unchanged."""
        if n < 0:
            raise ValueError("iteration count must be >= 0")
        c = self.c
        for _ in range(n):
            x = x * x + c
        return x

    def __str__(self) -> str:
        return f"x^2{self.c:+d}" if self.c else "x^2"


@dataclass(frozen=True)
class GeneratorSet:
    """An ordered tuple of quadratic maps with pairwise distinct constants."""

    maps: tuple[QuadraticMap, ...]

    def __post_init__(self) -> None:
        if not self.maps:
            raise ValueError("generator set must be nonempty")
        cs = [m.c for m in self.maps]
        if len(set(cs)) != len(cs):
            raise ValueError(f"generator constants must be distinct, got {cs}")

    @classmethod
    def from_cs(cls, cs: Sequence[int]) -> "GeneratorSet":
        return cls(tuple(QuadraticMap(c) for c in cs))

    @property
    def cs(self) -> tuple[int, ...]:
        return tuple(m.c for m in self.maps)

    def __len__(self) -> int:
        return len(self.maps)

    def __getitem__(self, i: int) -> QuadraticMap:
        return self.maps[i]


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of the square-free-orbit certificate for one word.

    certified=True means every orbit entry is a nonsquare, which proves the
    composition irreducible.  certified=False records the first square found
    (1-based orbit position and its root) and proves nothing.
    """

    certified: bool
    first_square_index: int | None = None
    witness_root: int | None = None

    @property
    def status(self) -> str:
        return "certified-irreducible" if self.certified else "unknown"


_CERTIFIED = StabilityVerdict(True)


def _check_word(gens: GeneratorSet, word: Sequence[int]) -> None:
    if len(word) == 0:
        raise ValueError("word must be nonempty")
    k = len(gens.maps)
    for i in word:
        if not 0 <= i < k:
            raise ValueError(f"word index {i} out of range for {k} generators")


def _orbit_entries(gens: GeneratorSet, word: Sequence[int]) -> Iterator[int]:
    """Yield the adjusted critical orbit entries of `word` lazily."""
    maps = gens.maps
    yield -maps[word[0]].c
    for k in range(2, len(word) + 1):
        v = 0
        for j in range(k - 1, -1, -1):
            v = maps[word[j]](v)
        yield v


def adjusted_critical_orbit(gens: GeneratorSet, word: Sequence[int]) -> list[int]:
    """The full orbit [-f1(0), f1(f2(0)), ..., f1(...fn(0))] for the word."""
    _check_word(gens, word)
    return list(_orbit_entries(gens, word))


def stability_certificate(gens: GeneratorSet, word: Sequence[int]) -> StabilityVerdict:
    """Certify irreducibility of the composed word by scanning its orbit for squares.

    Stops at the first perfect square; entries after it are never computed.
    """
    _check_word(gens, word)
    for k, entry in enumerate(_orbit_entries(gens, word), start=1):
        r = is_perfect_square(entry)
        if r is not None:
            return StabilityVerdict(False, first_square_index=k, witness_root=r)
    return _CERTIFIED


def compose_word(
    gens: GeneratorSet,
    word: Sequence[int],
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> list[int]:
    """Exact coefficients (constant term first) of the composed polynomial.

    The result is monic of degree 2^len(word); words whose degree would
    exceed `degree_cap` are rejected.
    """
    _check_word(gens, word)
    if 2 ** len(word) > degree_cap:
        raise ValueError(
            f"composition degree 2^{len(word)} exceeds cap {degree_cap}"
        )
    poly = [gens.maps[word[-1]].c, 0, 1]
    for i in reversed(word[:-1]):
        poly = _poly_square(poly)
        poly[0] += gens.maps[i].c
    return poly


def _poly_square(p: list[int]) -> list[int]:
    out = [0] * (2 * len(p) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(p):
            out[i + j] += a * b
    return out


def scan_words(
    gens: GeneratorSet,
    max_len: int,
    budget: int = DEFAULT_SCAN_BUDGET,
) -> list[tuple[tuple[int, ...], StabilityVerdict]]:
    """(word, verdict) for every word of length 1..max_len, in dictionary order.

    Dictionary order lists each word before its extensions, then moves to the
    next sibling; verdicts are shared down the tree, so a prefix whose orbit
    already contains a square settles its whole subtree for free.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    s = len(gens.maps)
    total = sum(s**n for n in range(1, max_len + 1))
    if total > budget:
        raise ValueError(f"{total} words exceed the scan budget {budget}")
    out: list[tuple[tuple[int, ...], StabilityVerdict]] = []
    maps = gens.maps

    # explicit preorder DFS; inherited=None marks a square-free prefix
    stack: list[tuple[tuple[int, ...], StabilityVerdict | None]] = [((), None)]
    while stack:
        word, inherited = stack.pop()
        if word:
            out.append((word, inherited if inherited is not None else _CERTIFIED))
        if len(word) == max_len:
            continue
        children = []
        for i in range(s):
            w2 = word + (i,)
            verdict = inherited
            if verdict is None:
                if len(w2) == 1:
                    entry = -maps[i].c
                else:
                    v = 0
                    for j in range(len(w2) - 1, -1, -1):
                        v = maps[w2[j]](v)
                    entry = v
                r = is_perfect_square(entry)
                if r is not None:
                    verdict = StabilityVerdict(False, len(w2), r)
            children.append((w2, verdict))
        stack.extend(reversed(children))
    return out


@dataclass(frozen=True)
class SequenceSampler:
    """Seeded sampler of random generator sequences.

    `weights` gives one positive weight per generator (normalized internally);
    `seed` selects the deterministic stream.  Trial i always consumes the same
    letters for the same (seed, i), independent of how trials are batched, so
    serial and partitioned runs agree bit for bit.
    """

    weights: tuple[float, ...]
    seed: int

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValueError("sampler needs at least one weight")
        if any(w <= 0 for w in self.weights):
            raise ValueError(f"all weights must be positive, got {self.weights}")

    @classmethod
    def uniform(cls, k: int, seed: int) -> "SequenceSampler":
        return cls((1.0,) * k, seed)

    def _cumulative(self) -> list[float]:
        total = float(sum(self.weights))
        acc, cum = 0.0, []
        for w in self.weights:
            acc += w / total
            cum.append(acc)
        cum[-1] = 1.0
        return cum


_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_STREAM = 0xD1342543DE82EF95


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _trial_word(
    seed: int, trial: int, depth: int, cum: list[float], k: int
) -> tuple[int, ...]:
    """Letters for one trial from a counter-based stream keyed by (seed, trial)."""
    if k == 1:
        return (0,) * depth
    state = _mix64((seed ^ (trial * _STREAM)) & _MASK64)
    letters = []
    for _ in range(depth):
        state = (state + _GOLDEN) & _MASK64
        u = _mix64(state) / 18446744073709551616.0  # 2**64
        letters.append(bisect_right(cum, u))
    return tuple(letters)


def monte_carlo_stability(
    gens: GeneratorSet,
    sampler: SequenceSampler,
    depth: int,
    trials: int,
    threads: int = 1,
) -> float:
    """Estimated probability that a random length-`depth` word has a square-free orbit.

    Returns (#square-free samples) / trials.  The estimate is reproducible:
    the same seed gives the same value for any trial partitioning or thread
    count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if len(sampler.weights) != len(gens.maps):
        raise ValueError("sampler weight count must match the generator count")
    cum = sampler._cumulative()
    k = len(gens.maps)

    def count_range(lo: int, hi: int) -> int:
        hits = 0
        for t in range(lo, hi):
            word = _trial_word(sampler.seed, t, depth, cum, k)
            if stability_certificate(gens, word).certified:
                hits += 1
        return hits

    if threads <= 1:
        hits = count_range(0, trials)
    else:
        step = max(1, -(-trials // threads))
        ranges = [(lo, min(lo + step, trials)) for lo in range(0, trials, step)]
        hits = sum(parallel_map(lambda r: count_range(*r), ranges, threads))
    return hits / trials
