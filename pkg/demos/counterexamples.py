"""Presentations that look fine but break something.

Each ``.mono`` file next to this script is read and put through the checks.
"""

from pathlib import Path

from uphocore import build_element_table, check_left_cancellative, core, lattice_certificate, lattice_of_presentation
from uphocore.io import read_presentation
from uphocore.presentation import Violation

HERE = Path(__file__).parent

# left cancellation fails: c aa = c ca although aa != ca
p = read_presentation(HERE / "non_cancellative.mono")
v = check_left_cancellative(p, build_element_table(p, 3))
print("non_cancellative:", v.describe(p) if isinstance(v, Violation) else v)

# compiled from a 7-element lattice, but the core it produces has more elements
p = read_presentation(HERE / "inflated_core.mono")
C = core(lattice_of_presentation(p, 5))
print("inflated_core: core ranks", C.rank_sizes(), "total", C.n)

# meets always exist, yet a and bb have no common upper bound
p = read_presentation(HERE / "meet_only.mono")
P = lattice_of_presentation(p, 6)
v = lattice_certificate(P)
print("meet_only:", type(v).__name__, P.label(v.x), P.label(v.y), "conclusive" if v.conclusive else "inconclusive")

# cancellative and a lattice so far; its core has 8 elements
p = read_presentation(HERE / "atom_swap.mono")
P = lattice_of_presentation(p, 4)
C = core(P)
print("atom_swap:", check_left_cancellative(p, build_element_table(p, 4)), lattice_certificate(P))
print("  core:", [C.label(v) for v in sorted(range(C.n), key=lambda v: C.rank[v])])
