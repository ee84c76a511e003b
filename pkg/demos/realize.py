"""Searching for upho lattices with a given core.

For B_2 the search finds exactly the two lattices D_2 and F_2.  For M_3 the
27 colorings collapse to four classes at depth 4.
"""

import sys

from uphocore import build_Bn, build_Dn, build_Fn, build_Mn, canonical_form, realize_core

workers = int(sys.argv[1]) if len(sys.argv) > 1 else 1

B2 = build_Bn(2)
report = realize_core(B2, 5, 2, workers=workers, name="B_2")
print(f"B_2: {report.colorings_enumerated} colorings, {report.distinct_at_depth} distinct at depth 5")
known = {canonical_form(build_Dn(2, 5)).hex(): "D_2", canonical_form(build_Fn(2, 5)).hex(): "F_2"}
for s in report.survivors:
    rels = s.presentation.to_text().splitlines()[1:]
    print(f"  {known.get(s.certificate, '?')}: {'; '.join(rels)} from colorings {s.colorings}")
print()

M3 = build_Mn(3)
report = realize_core(M3, 4, 2, workers=workers, name="M_3")
print(f"M_3: {report.colorings_enumerated} colorings, {report.distinct_at_depth} distinct at depth 4")
for i, s in enumerate(report.survivors):
    print(f"  class {i}: {len(s.colorings)} colorings, stable core from depth {s.stable_depth}")
print()
print(report.caveat)
