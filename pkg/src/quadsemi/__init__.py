"""Irreducible compositions of quadratic maps x^2 + c over the integers.

The library certifies irreducibility of composition words through square-free
adjusted critical orbits, computes rational preperiodic portraits, classifies
exceptional pairs of maps, builds constructive irreducible prefixes, and
verifies the 48 underlying Diophantine case systems by exhaustive bounded
search, modular obstructions, and curve point enumeration.
"""

__version__ = "0.1.0"

from .arith import divisor_pairs, floor_sqrt, is_perfect_square, residue_search
from .diophantine import (
    LemmaEntry,
    LemmaVerification,
    ObstructionResult,
    RegistryError,
    SolutionFamily,
    System,
    modular_obstruction,
    quartic_curve_points,
    registry,
    registry_checksum,
    registry_path,
    sandwich_probe,
    solve_system_bounded,
    square_grid,
    verify_all,
    verify_lemma,
)
from .dynamics import (
    GeneratorSet,
    QuadraticMap,
    SequenceSampler,
    StabilityVerdict,
    adjusted_critical_orbit,
    compose_word,
    monte_carlo_stability,
    scan_words,
    stability_certificate,
)
from .exceptional import (
    ExceptionalPrefixReport,
    ExceptionalVerdict,
    PrefixRecipe,
    SquareImageCertificate,
    TheoremViolationError,
    certify_no_square_images,
    check_exceptional_prefix,
    closed_form_of,
    construct_irreducible_prefix,
    critical_orbit_square_check,
    is_exceptional_pair,
    scan_exceptional_pairs,
)
from .heights import (
    HeightEstimate,
    IterateBound,
    canonical_height,
    compute_iterate_bound,
    integral_points_on_phi2,
    min_positive_height,
    naive_height,
)
from .oracle import (
    CrossValidationReport,
    cross_validate,
    find_factor,
    is_irreducible_exact,
)
from .portraits import (
    Portrait,
    SquareForm,
    brute_force_preper,
    portrait,
    preper_set,
    rational_periodic_points,
    recognize_square_periodic,
)
