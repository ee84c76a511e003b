import itertools

import pytest

from uphocore.coloring import (
    COLORABLE_CAVEAT,
    ChainCapExceeded,
    NotACoreCandidate,
    PreUphoFail,
    check_pre_upho,
    check_upho_coloring,
    enumerate_pre_upho_colorings,
    evaluate_coloring,
    monoid_of_coloring,
    realize_core,
    with_coloring,
)
from uphocore.constructions import (
    all_functions,
    build_Bn,
    build_chain,
    build_Dn,
    build_Fn,
    build_Mn,
    fiber_function_of_partition,
    lattice_of_function,
    monoid_free_commutative,
    monoid_shifted,
    partitions,
)
from uphocore.gallery import atom_swap_lattice, inflated_core_lattice
from uphocore.io import dumps_report
from uphocore.iso import canonical_form
from uphocore.poset import Fail, Pass, TruncatedPoset
from uphocore.presentation import lattice_of_presentation, parse_presentation


def f_coloring(n, f):
    """Coloring of M_n with c(s_i < top) = s_f(i)."""
    M = build_Mn(n)
    top = M.ranks[2][0]
    c = {(0, a): a for a in M.atoms}
    c.update({(a, top): M.atoms[f[i] - 1] for i, a in enumerate(M.atoms)})
    return M, c


def all_colorings(L):
    free = [e for e in L.covers() if e[0] != L.bottom]
    for choice in itertools.product(L.atoms, repeat=len(free)):
        c = {(L.bottom, a): a for a in L.atoms}
        c.update(zip(free, choice))
        yield c


# --- oracle agreement first -------------------------------------------------------


def test_enumeration_matches_exhaustive_filter():
    L = atom_swap_lattice()
    brute = [c for c in all_colorings(L) if check_pre_upho(L, c).ok]
    fast = enumerate_pre_upho_colorings(L)
    key = lambda c: sorted(c.items())
    assert sorted(map(key, fast)) == sorted(map(key, brute))
    assert 0 < len(fast) < 3**6


def test_compilation_matches_Mf_for_every_coloring():
    for n in (2, 3, 4):
        M = build_Mn(n)
        top = M.ranks[2][0]
        colorings = enumerate_pre_upho_colorings(M)
        assert len(colorings) == n**n
        for c in colorings:
            f = [M.atoms.index(c[(a, top)]) + 1 for a in M.atoms]
            P = lattice_of_presentation(monoid_of_coloring(M, c), 4)
            assert canonical_form(P, "exact") == canonical_form(lattice_of_function(f, 4), "exact")


# --- upho colorings ---------------------------------------------------------------


def test_upho_coloring_examples():
    assert check_upho_coloring(lattice_of_presentation(monoid_free_commutative(2), 4), k=2) == Pass()
    assert check_upho_coloring(lattice_of_presentation(monoid_shifted(2), 4), k=2) == Pass()


def test_miscolored_dominating_lattice_fails():
    P = lattice_of_presentation(parse_presentation("gens: a b\nrel: aa = ba"), 3)
    c = dict(P.edge_colors)
    (dom,) = [v for v in P.ranks[2] if len(P.down[v]) == 2]
    color = c[(P.atoms[0], dom)]
    for a in P.atoms:
        for v in P.up[a]:
            c[(a, v)] = color
    assert isinstance(check_upho_coloring(P, c, k=1), Fail)


def test_forced_edges_checked():
    P = lattice_of_presentation(monoid_free_commutative(2), 3)
    c = dict(P.edge_colors)
    a, b = P.atoms
    c[(P.bottom, a)] = b
    assert check_upho_coloring(P, c, 1) == Fail(a)


def test_upho_coloring_needs_colors_and_valid_probe():
    with pytest.raises(ValueError):
        check_upho_coloring(build_Dn(2, 3), k=1)
    with pytest.raises(ValueError):
        check_upho_coloring(lattice_of_function([1, 1], 2), k=3)


# --- pre-upho colorings -----------------------------------------------------------


def test_all_boolean_two_colorings_pass():
    B = build_Bn(2)
    for c in all_colorings(B):
        assert check_pre_upho(B, c) == Pass()


def test_function_colorings_pass():
    for n in (2, 3):
        for f in all_functions(n):
            M, c = f_coloring(n, f.values)
            assert check_pre_upho(M, c) == Pass()


def test_semilattice_rejected():
    B3 = build_Bn(3)
    keep = [v for v in range(B3.n) if B3.rank[v] < 3]
    S = B3.truncate(2)
    assert S.n == len(keep)
    c = {e: (e[1] if e[0] == S.bottom else S.atoms[0]) for e in S.covers()}
    with pytest.raises(NotACoreCandidate):
        check_pre_upho(S, c)


def test_top_must_be_join_of_atoms():
    with pytest.raises(NotACoreCandidate):
        check_pre_upho(build_chain(2), {(0, 1): 1, (1, 2): 1})


def test_failing_coloring_names_a_node():
    L = atom_swap_lattice()
    ok = {tuple(sorted(c.items())) for c in enumerate_pre_upho_colorings(L)}
    bad = next(c for c in all_colorings(L) if tuple(sorted(c.items())) not in ok)
    v = check_pre_upho(L, bad)
    assert isinstance(v, PreUphoFail) and not v.ok
    assert L.rank[v.node] in (1, 2)


def test_enumeration_counts():
    assert len(enumerate_pre_upho_colorings(build_Bn(2))) == 4
    assert len(enumerate_pre_upho_colorings(build_Mn(3))) == 27
    assert len(enumerate_pre_upho_colorings(build_chain(2))) == 1


def test_enumeration_is_deterministic_and_forced():
    L = build_Bn(3)
    a, b = enumerate_pre_upho_colorings(L), enumerate_pre_upho_colorings(L)
    assert a == b
    for c in a:
        assert all(c[(L.bottom, s)] == s for s in L.atoms)
        assert check_pre_upho(L, c) == Pass()


# --- compiling colorings to monoids -------------------------------------------------


def test_boolean_swap_coloring_gives_commutative_monoid():
    B = build_Bn(2)
    s1, s2 = B.atoms
    top = B.ranks[2][0]
    c = {(0, s1): s1, (0, s2): s2, (s1, top): s2, (s2, top): s1}
    p = monoid_of_coloring(B, c)
    assert p.relations == (((0, 1), (1, 0)),)


def test_inflated_example_compiles_to_its_monoid():
    L, c = inflated_core_lattice()
    p = monoid_of_coloring(L, c)
    assert p == parse_presentation("gens: a b c\nrel: aa = ba\nrel: aaa = caa")


def test_chain_cap():
    L, c = inflated_core_lattice()
    with pytest.raises(ChainCapExceeded):
        monoid_of_coloring(L, c, chain_cap=2)


# --- realization pipeline ---------------------------------------------------------


def test_boolean_two_realizes_dominating_and_flip():
    report = realize_core(build_Bn(2), 5, 2)
    assert report.colorings_enumerated == 4
    assert sorted(s.certificate for s in report.survivors) == sorted(
        canonical_form(X).hex() for X in (build_Dn(2, 5), build_Fn(2, 5))
    )
    assert report.caveat == COLORABLE_CAVEAT and not report.undecided


def test_m3_has_four_survivors():
    report = realize_core(build_Mn(3), 4, 2)
    assert report.distinct_at_depth == 4
    assert sum(len(s.colorings) for s in report.survivors) == 27


@pytest.mark.parametrize("n", [2, 3, 4])
def test_partition_lower_bound(n):
    report = realize_core(build_Mn(n), 4, 2)
    survivors = {s.certificate for s in report.survivors}
    lams = list(partitions(n))
    assert len(survivors) >= len(lams)
    for lam in lams:
        P = lattice_of_function(fiber_function_of_partition(lam), 4).uncolored()
        assert canonical_form(P).hex() in survivors


@pytest.mark.slow
@pytest.mark.parametrize("n", [5, 6])
def test_partition_lower_bound_large(n):
    test_partition_lower_bound(n)


def test_inflated_coloring_rejected_at_core():
    L, c = inflated_core_lattice()
    cand = evaluate_coloring(L, 0, c, 5, 2)
    assert cand.status == "rejected" and cand.core == "larger"
    report = realize_core(L, 5, 2)
    idx = next(i for i, x in enumerate(enumerate_pre_upho_colorings(L)) if x == c)
    assert report.candidates[idx].core == "larger"


def test_reports_are_reproducible():
    a = dumps_report(realize_core(build_Mn(3), 4, 2), build_Mn(3))
    b = dumps_report(realize_core(build_Mn(3), 4, 2), build_Mn(3))
    assert a == b


def test_worker_count_does_not_matter():
    one = realize_core(build_Bn(2), 4, 2, workers=1)
    two = realize_core(build_Bn(2), 4, 2, workers=2)
    assert dumps_report(one) == dumps_report(two)


def test_realize_preconditions():
    with pytest.raises(ValueError):
        realize_core(build_Bn(2), 2, 1)
    bowtie = TruncatedPoset(2, [[0], [1, 2], [3, 4]], [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)])
    with pytest.raises(NotACoreCandidate):
        realize_core(bowtie, 4, 2)


def test_with_coloring_round_trip():
    P = lattice_of_function([2, 1], 3)
    assert with_coloring(P.uncolored(), P.edge_colors).edge_colors == P.edge_colors
