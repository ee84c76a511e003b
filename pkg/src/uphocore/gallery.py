"""Small named examples that the tests, demos and reproduction suite share."""

from __future__ import annotations

from .poset import TruncatedPoset
from .presentation import Presentation, parse_presentation

# every relation homogeneous, but c a a = c c a while a a != c a
NON_CANCELLATIVE = """\
gens: a b c
rel: aa = ba
rel: bb = cb
rel: ab = cc
"""

# compiled from the coloring of inflated_core_lattice(); its own core is larger
INFLATED_CORE = """\
gens: a b c
rel: aa = ba
rel: aaa = caa
"""

# an upho meet semilattice: aa and b never get a common upper bound
MEET_ONLY = """\
gens: a b
rel: abb = baa
"""

ATOM_SWAP = """\
gens: a b c
rel: aa = bb
rel: ba = ca
"""

PRESENTATIONS = {
    "non-cancellative": NON_CANCELLATIVE,
    "inflated-core": INFLATED_CORE,
    "meet-only": MEET_ONLY,
    "atom-swap": ATOM_SWAP,
}


def presentation(name: str) -> Presentation:
    return parse_presentation(PRESENTATIONS[name])


def inflated_core_lattice() -> tuple[TruncatedPoset, dict[tuple[int, int], int]]:
    """Rank-3 lattice on 7 elements with the pre-upho coloring that compiles to ``INFLATED_CORE``.

    ``ab`` covers ``a`` and ``b``; ``c2`` covers only ``c``; the top covers both.
    """
    L = TruncatedPoset(
        3,
        [[0], [1, 2, 3], [4, 5], [6]],
        [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 5), (4, 6), (5, 6)],
        labels=["0", "a", "b", "c", "ab", "c2", "top"],
    )
    a = 1
    c = {(0, 1): 1, (0, 2): 2, (0, 3): 3, (1, 4): a, (2, 4): a, (4, 6): a, (3, 5): a, (5, 6): a}
    return L, c


def atom_swap_lattice() -> TruncatedPoset:
    """Rank-3 lattice on 7 elements: ``d`` covers ``a, b``, ``e`` covers ``b, c``, top covers ``d, e``.

    Swapping ``a`` with ``c`` (and ``d`` with ``e``) is an automorphism.
    """
    return TruncatedPoset(
        3,
        [[0], [1, 2, 3], [4, 5], [6]],
        [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (2, 5), (3, 5), (4, 6), (5, 6)],
        labels=["0", "a", "b", "c", "d", "e", "top"],
    )
