"""Upper homogeneous posets from homogeneous monoid presentations.

Build truncated left-divisibility posets of monoids, analyze them (series,
Mobius values, lattice certificates, cores), compare them up to isomorphism,
and search for upho lattices with a prescribed core.
"""

from .coloring import check_pre_upho, check_upho_coloring, enumerate_pre_upho_colorings, monoid_of_coloring, realize_core
from .constructions import (
    FiberFunction,
    Partition,
    build_Bn,
    build_chain,
    build_Dn,
    build_Fn,
    build_Mn,
    fiber_function_of_partition,
    lattice_of_function,
    monoid_free_commutative,
    monoid_Mf,
    monoid_shifted,
)
from .iso import automorphisms, canonical_form, find_isomorphism, is_isomorphic
from .poset import TruncatedPoset, char_series, core, lattice_certificate, mobius_from_bottom, rank_series, upho_check
from .presentation import (
    Presentation,
    build_element_table,
    check_left_cancellative,
    divisibility_covers,
    lattice_of_presentation,
    parse_presentation,
)
from .series import PowerSeriesTrunc, series_invert

__version__ = "0.1.0"
