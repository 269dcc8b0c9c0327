"""Exceptional pairs, square-image certificates, and irreducible prefix recipes.

A pair of distinct maps x^2 + c1, x^2 + c2 is *exceptional* when (1) both
have a periodic point that is a perfect square and (2) each map's integer
image meets the other's preperiodic set.  Exceptional pairs are exactly

    {c1, c2} = {-1, -3}   or   {c1, c2} = {s^2 - s^4, -1 - s^2 - s^4}

for some integer s; both descriptions are computed here independently (the
witness route and the closed-form route) so the equivalence can be tested on
grids.

For a non-exceptional pair, iterating one map N times on top of the other
kills all square values, which certifies every word with that prefix
irreducible; the family pairs with |s| >= 2 need the longer three-letter
prefix.  Any empirical contradiction of these facts raises
TheoremViolationError with the full diagnostic payload instead of being
silently absorbed.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._util import parallel_map
from .arith import floor_sqrt, is_perfect_square, residue_search
from .dynamics import GeneratorSet, QuadraticMap
from .heights import RIGOR_BOX, compute_iterate_bound
from .portraits import SquareForm, preper_set, recognize_square_periodic

CERTIFIED = "certified"
REFUTED = "refuted"
INAPPLICABLE = "inapplicable"

SPORADIC_PAIR = "sporadic-pair"  # {-1, -3}
FAMILY = "family"                # {s^2 - s^4, -1 - s^2 - s^4}

TWO_LETTER = "two-letter"
THREE_LETTER = "three-letter"


class TheoremViolationError(RuntimeError):
    """An empirical contradiction of a proved statement; carries diagnostics."""

    def __init__(self, message: str, details: dict):
        super().__init__(message)
        self.details = details


@dataclass(frozen=True)
class ClosedForm:
    """Which classified shape a pair matches."""

    kind: str  # SPORADIC_PAIR or FAMILY
    s: int | None = None


@dataclass(frozen=True)
class ExceptionalVerdict:
    """Classification of one ordered pair (c1, c2).

    square_periodic[k] is a square periodic point of map k (None if none);
    image_witnesses[k] is a pair (b, p) with map_k(b) = p landing in the other
    map's preperiodic set.  The pair is exceptional iff all four witnesses
    exist.  closed_form is matched syntactically and independently.
    """

    c1: int
    c2: int
    is_exceptional: bool
    square_periodic: tuple[int | None, int | None]
    image_witnesses: tuple[tuple[int, int] | None, tuple[int, int] | None]
    closed_form: ClosedForm | None


def _family_parameter(a: int, b: int) -> int | None:
    """s >= 0 with a = s^2 - s^4 and b = -1 - s^2 - s^4, if any."""
    limit = floor_sqrt(floor_sqrt(abs(b) + 2)) + 2
    for s in range(limit + 1):
        if a == s * s - s**4 and b == -1 - s * s - s**4:
            return s
    return None


def closed_form_of(c1: int, c2: int) -> ClosedForm | None:
    """Match (c1, c2) against the classified shapes, in either order."""
    if {c1, c2} == {-1, -3}:
        return ClosedForm(SPORADIC_PAIR)
    for a, b in ((c1, c2), (c2, c1)):
        s = _family_parameter(a, b)
        if s is not None:
            return ClosedForm(FAMILY, s)
    return None


def _square_periodic_witness(form: SquareForm | None) -> int | None:
    return None if form is None else form.s * form.s


def _image_witness(c_self: int, c_other: int) -> tuple[int, int] | None:
    """Smallest b >= 0 with b^2 + c_self inside the other map's preperiodic set."""
    best: tuple[int, int] | None = None
    for p in preper_set(c_other):
        b = is_perfect_square(p - c_self)
        if b is not None and (best is None or b < best[0]):
            best = (b, p)
    return best


def is_exceptional_pair(c1: int, c2: int) -> ExceptionalVerdict:
    """Decide exceptionality of a pair of distinct constants by finite witness search."""
    if c1 == c2:
        raise ValueError("the pair must consist of distinct constants")
    sq1 = _square_periodic_witness(recognize_square_periodic(c1))
    sq2 = _square_periodic_witness(recognize_square_periodic(c2))
    w1 = _image_witness(c1, c2)
    w2 = _image_witness(c2, c1)
    exceptional = all(x is not None for x in (sq1, sq2, w1, w2))
    return ExceptionalVerdict(
        c1=c1,
        c2=c2,
        is_exceptional=exceptional,
        square_periodic=(sq1, sq2),
        image_witnesses=(w1, w2),
        closed_form=closed_form_of(c1, c2),
    )


def scan_exceptional_pairs(cmin: int, cmax: int, threads: int = 1) -> list[tuple[int, int]]:
    """All ordered exceptional pairs (c1, c2), c1 != c2, in [cmin, cmax]^2."""
    cs = range(cmin, cmax + 1)

    def row(c1: int) -> list[tuple[int, int]]:
        if recognize_square_periodic(c1) is None:
            return []
        return [
            (c1, c2)
            for c2 in cs
            if c2 != c1 and is_exceptional_pair(c1, c2).is_exceptional
        ]

    out: list[tuple[int, int]] = []
    for chunk in parallel_map(row, list(cs), threads):
        out.extend(chunk)
    return out


@dataclass(frozen=True)
class SquareImageCertificate:
    """Whether f_outer^N(f_inner(b)) can be a perfect square for integer b.

    'certified' asserts it cannot (for the recorded N); 'refuted' carries an
    explicit b whose image is a square; 'inapplicable' means the hypotheses
    (distinct constants outside {0, -1}) fail.
    """

    status: str
    outer_c: int
    inner_c: int
    n_iterate: int | None = None
    rigor: str | None = None
    reason: str = ""
    witness_b: int | None = None
    witness_value: int | None = None


def certify_no_square_images(
    c1: int,
    c2: int,
    search_box: int = 0,
    iterations: int = 30,
) -> SquareImageCertificate:
    """Certified / refuted / inapplicable verdict for squares among f1^N(f2(b)).

    A square value of f1^N forces its argument into the preperiodic set of f1,
    so it suffices that f1 has no square periodic point, or that no integer
    image b^2 + c2 lands in PrePer(f1), or that the finitely many landing
    points all have nonsquare N-th iterates.
    """
    if c1 in (0, -1) or c2 in (0, -1) or c1 == c2:
        return SquareImageCertificate(
            INAPPLICABLE, c1, c2,
            reason="needs distinct constants outside {0, -1}",
        )
    phi1 = QuadraticMap(c1)
    bound = compute_iterate_bound(phi1, search_box, iterations)
    if recognize_square_periodic(c1) is None:
        return SquareImageCertificate(
            CERTIFIED, c1, c2, n_iterate=bound.N, rigor=bound.rigor,
            reason="the outer map has no square periodic point",
        )
    hits = sorted(
        p for p in preper_set(c1) if is_perfect_square(p - c2) is not None
    )
    if not hits:
        return SquareImageCertificate(
            CERTIFIED, c1, c2, n_iterate=bound.N, rigor=bound.rigor,
            reason="no integer image of the inner map is preperiodic for the outer map",
        )
    for p in hits:
        v = phi1.iterate(bound.N, p)
        if is_perfect_square(v) is not None:
            b = is_perfect_square(p - c2)
            return SquareImageCertificate(
                REFUTED, c1, c2, n_iterate=bound.N, rigor=bound.rigor,
                reason=f"f^{bound.N}({p}) = {v} is a perfect square",
                witness_b=b, witness_value=v,
            )
    return SquareImageCertificate(
        CERTIFIED, c1, c2, n_iterate=bound.N, rigor=bound.rigor,
        reason="every preperiodic image has a nonsquare N-th iterate",
    )


@dataclass(frozen=True)
class ExceptionalPrefixReport:
    """Finite certificate that f1^N o f2 o f1 avoids square values on the family pair."""

    s: int
    c1: int
    c2: int
    n_iterate: int
    subchecks: tuple[tuple[str, bool], ...]
    sweep_bound: int
    failure: tuple[int, int] | None = None  # (b, square value) if the sweep found one

    @property
    def passed(self) -> bool:
        return self.failure is None and all(ok for _, ok in self.subchecks)


def check_exceptional_prefix(
    s: int,
    b_range: int = 1000,
    search_box: int = 0,
    iterations: int = 30,
) -> ExceptionalPrefixReport:
    """Re-verify, for the family pair with parameter s, that f1^N(f2(f1(b))) is never square.

    Reproduces each finite step of the argument computationally: the only
    candidate preperiodic images are +-s^2 and +-(1-s^2); the 1-s^2 branch dies
    because 1-s^2 < 0, and the +-s^2 branches die by a mod-4 obstruction and
    the nonsquareness of s^4 + 1.  A direct sweep over |b| <= b_range double
    checks the conclusion (only b^2 enters, so b >= 0 suffices).
    """
    if s in (0, 1, -1):
        raise ValueError("the family prefix needs |s| >= 2")
    s = abs(s)
    c1 = s * s - s**4
    c2 = -1 - s * s - s**4
    phi1, phi2 = QuadraticMap(c1), QuadraticMap(c2)
    n = compute_iterate_bound(phi1, search_box, iterations).N

    subchecks = []
    # landing on +-(1 - s^2) would force the square 1 - s^2, which is negative
    subchecks.append(
        ("fixed-point image 1 - s^2 is not a square",
         is_perfect_square(1 - s * s) is None)
    )
    # landing on s^2 via z = -(s^2+1) requires b^2 + 2s^2 - s^4 + 1 = 0
    subchecks.append(
        ("b^2 + 2s^2 - s^4 + 1 = 0 has no solutions mod 4",
         residue_search([lambda b, t: b * b + 2 * t * t - t**4 + 1], 2, 4) == [])
    )
    # landing on s^2 via z = s^2+1, or on -s^2, both require s^4 + 1 square
    subchecks.append(
        (f"{s}^4 + 1 is not a square",
         is_perfect_square(s**4 + 1) is None)
    )
    # the middle orbit entry f1^N(f2(0)) = f1^N(c2) stays nonsquare because
    # c2 is not preperiodic for f1
    subchecks.append(
        ("the partner constant is outside the outer map's preperiodic set",
         c2 not in preper_set(c1))
    )

    failure = None
    for b in range(b_range + 1):
        v = phi1.iterate(n, phi2(phi1(b)))
        if is_perfect_square(v) is not None:
            failure = (b, v)
            break
    return ExceptionalPrefixReport(
        s=s, c1=c1, c2=c2, n_iterate=n,
        subchecks=tuple(subchecks), sweep_bound=b_range, failure=failure,
    )


def critical_orbit_square_check(c: int, n_max: int) -> int | None:
    """First n in 2..n_max where f^n(0) is a perfect square, or None if none is.

    For c outside {0, -1} no such n exists; this is the desk-scale spot check
    of that fact, not a proof.
    """
    if c in (0, -1):
        raise ValueError("the orbit check needs c outside {0, -1}")
    v = c  # f(0)
    for n in range(2, n_max + 1):
        v = v * v + c
        if is_perfect_square(v) is not None:
            return n
    return None


@dataclass(frozen=True)
class PrefixRecipe:
    """A constructive prefix: every word prefix_word() + F has a square-free orbit.

    outer/inner are indices into the generator set; the prefix reads
    outer^N o inner (two-letter) or outer^N o inner o outer (three-letter,
    needed exactly for the exceptional family pairs).
    """

    outer: int
    inner: int
    n_iterate: int
    shape: str  # TWO_LETTER or THREE_LETTER
    certificate: str
    rigor: str = RIGOR_BOX

    def prefix_word(self) -> tuple[int, ...]:
        w = (self.outer,) * self.n_iterate + (self.inner,)
        if self.shape == THREE_LETTER:
            w = w + (self.outer,)
        return w

    def expand(self, suffix: tuple[int, ...] | list[int]) -> tuple[int, ...]:
        return self.prefix_word() + tuple(suffix)


def construct_irreducible_prefix(
    gens: GeneratorSet,
    b_range: int = 1000,
    search_box: int = 0,
    iterations: int = 30,
) -> PrefixRecipe:
    """Build a prefix whose extensions by arbitrary words are all certified irreducible.

    Picks the first two generators x^2 + c with -c nonsquare (the irreducible
    ones).  A non-exceptional pair yields a two-letter recipe from whichever
    ordering certifies; the family pair yields the three-letter recipe with
    the square-fixed-point map outermost.  Failure of both orderings for a
    non-exceptional pair contradicts the classification and raises
    TheoremViolationError rather than guessing.
    """
    irr = [k for k, m in enumerate(gens.maps) if is_perfect_square(-m.c) is None]
    if len(irr) < 2:
        raise ValueError(
            "need at least two irreducible generators "
            "(maps x^2 + c with -c not a perfect square)"
        )
    i0, j0 = irr[0], irr[1]
    c1, c2 = gens.maps[i0].c, gens.maps[j0].c
    verdict = is_exceptional_pair(c1, c2)

    if not verdict.is_exceptional:
        certs = []
        for oi, ii in ((i0, j0), (j0, i0)):
            cert = certify_no_square_images(
                gens.maps[oi].c, gens.maps[ii].c, search_box, iterations
            )
            certs.append(cert)
            if cert.status == CERTIFIED:
                return PrefixRecipe(
                    outer=oi, inner=ii, n_iterate=cert.n_iterate, shape=TWO_LETTER,
                    certificate=cert.reason, rigor=cert.rigor or RIGOR_BOX,
                )
        raise TheoremViolationError(
            "both orderings of a non-exceptional pair were refuted, "
            "contradicting the classification of exceptional pairs",
            details={"pair": (c1, c2), "certificates": certs},
        )

    form = verdict.closed_form
    if form is None or form.kind != FAMILY:
        # the sporadic pair {-1, -3} contains the reducible map x^2 - 1 and
        # cannot appear among irreducible generators
        raise TheoremViolationError(
            "an exceptional pair of irreducible generators did not match the family form",
            details={"pair": (c1, c2), "verdict": verdict},
        )
    s = form.s
    assert s is not None and s >= 2  # s in {0, 1} forces a reducible generator
    fixed_c = s * s - s**4
    outer, inner = (i0, j0) if c1 == fixed_c else (j0, i0)
    report = check_exceptional_prefix(s, b_range, search_box, iterations)
    if not report.passed:
        raise TheoremViolationError(
            "the exceptional-prefix certificate failed",
            details={"pair": (c1, c2), "report": report},
        )
    checks = "; ".join(name for name, _ in report.subchecks)
    return PrefixRecipe(
        outer=outer, inner=inner, n_iterate=report.n_iterate, shape=THREE_LETTER,
        certificate=(
            f"family pair with s={s}: {checks}; "
            f"sweep clean to |b| <= {report.sweep_bound}"
        ),
    )
