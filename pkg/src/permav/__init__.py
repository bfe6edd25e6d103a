"""
permav: exact enumeration of pattern-avoiding permutations and asymptotic
analysis of their counting sequences.

The package has three layers:

- combinatorics: ``perms`` (patterns, containment, rank words), ``tableaux``
  (standard Young tableaux, RSK), ``injection`` (an explicit injective map
  between two avoidance classes);
- counting: ``counting`` (pruned depth-first enumeration plus closed-form
  and tableau-based counters);
- analysis: ``ratpoly``/``ode``/``guessing``/``asymptotics`` (exact rational
  generating-function guessing, linear-ODE verification, recurrence
  extraction, and growth-rate estimation by differential approximants).

``permav.cli`` exposes the ``permav`` command with ``count``, ``verify`` and
``analyze`` subcommands.
"""

from .counting import (
    GrowthRate,
    IntegerSeries,
    count_avoiders,
    count_bounded_involutions,
    count_family_a,
    count_monotone_avoiders,
    growth_from_series,
    iter_avoiders,
    lower_bound_akk,
)
from .perms import (
    PatternSet,
    Perm,
    RankProfile,
    as_pattern_set,
    avoids_all,
    contains,
    decode_rank_profile,
    family_a,
    family_aki,
    perm_from_string,
    perm_to_string,
    rank_profile,
    ranks,
)
from .tableaux import (
    Shape,
    StandardTableau,
    descent_set,
    inverse_rsk,
    rsk,
    syt_count,
    syt_count_bounded,
)

__all__ = [
    "GrowthRate",
    "IntegerSeries",
    "PatternSet",
    "Perm",
    "RankProfile",
    "Shape",
    "StandardTableau",
    "as_pattern_set",
    "avoids_all",
    "contains",
    "count_avoiders",
    "count_bounded_involutions",
    "count_family_a",
    "count_monotone_avoiders",
    "decode_rank_profile",
    "descent_set",
    "family_a",
    "family_aki",
    "growth_from_series",
    "inverse_rsk",
    "iter_avoiders",
    "lower_bound_akk",
    "perm_from_string",
    "perm_to_string",
    "rank_profile",
    "ranks",
    "rsk",
    "syt_count",
    "syt_count_bounded",
]

__version__ = "0.1.0"
