"""Absorbing sets in arc-coloured tournaments.

Random bag construction of hard instances, monochromatic absorption, an exact
minimum-absorbing-set solver, log-space probability bounds, and seed-reproducible
certificates that no small absorbing set exists.
"""
from .absorption import (
    AbsorptionRelation,
    absorbed_by,
    absorbed_by_construction,
    coverage_histogram,
    is_absorbing,
    monochromatic_reachability,
)
from .bounds import (
    BoundReport,
    bound_report,
    family_size,
    minimal_m,
    relaxed_bound_log,
    stirling_ratio,
    union_bound_log,
)
from .construction import (
    BagLayout,
    ConstructionParams,
    enumerate_family,
    generate,
    validate_structure,
)
from .solver import (
    SolveResult,
    exists_absorbing_of_size,
    greedy_upper_bound,
    min_absorbing_brute,
    min_absorbing_set_exact,
)
from .tournament import ColouredTournament, build, parse, serialize
from .witness import Certificate, hunt, instance_digest, verify

__version__ = "0.1.0"
