"""From a presentation to series, cores and certificates.

Run with ``python demos/tour.py``.
"""

from uphocore import (
    build_Dn,
    canonical_form,
    char_series,
    core,
    find_isomorphism,
    lattice_certificate,
    lattice_of_function,
    lattice_of_presentation,
    parse_presentation,
    rank_series,
    upho_check,
)

# The monoid <a, b | ab = ba> is N^2; its divisibility order is the grid.
p = parse_presentation("gens: a b\nrel: ab = ba\n")
grid = lattice_of_presentation(p, 5)
print("grid ranks:", grid.rank_sizes())
print("rank series:", rank_series(grid))
print("char series:", char_series(grid))
print("product:", rank_series(grid) * char_series(grid))
print("core ranks:", core(grid).rank_sizes())
print("upho to probe 2:", upho_check(grid, 2).ok)
print()

# f = (1, 1) gives s1 s1 = s2 s1, whose lattice is D_2.  Same ranks as the grid,
# since both have core B_2, but a different poset.
L = lattice_of_function([1, 1], 5)
D = build_Dn(2, 5)
print("L(1,1) ranks:", L.rank_sizes())
print("same certificate as D_2:", canonical_form(L) == canonical_form(D))
print("an isomorphism exists:", find_isomorphism(L, D) is not None)
print("same as the grid:", canonical_form(L) == canonical_form(grid.uncolored()))
print("lattice verdict:", lattice_certificate(L))
