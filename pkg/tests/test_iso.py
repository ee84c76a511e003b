import pytest

from uphocore._oracles import (
    brute_force_automorphism_count,
    brute_force_isomorphism,
    random_graded_poset,
    relabel,
)
from uphocore.constructions import (
    all_functions,
    build_Bn,
    build_chain,
    build_Dn,
    build_Fn,
    build_Mn,
    lattice_of_function,
)
from uphocore.gallery import atom_swap_lattice, presentation
from uphocore.iso import (
    atom_action_is_trivial,
    automorphisms,
    canonical_form,
    find_isomorphism,
    is_isomorphic,
)
from uphocore.poset import TruncatedPoset
from uphocore.presentation import lattice_of_presentation


def _apply(P, phi, Q):
    return {(phi[a], phi[b]) for a, b in P.covers()} == set(Q.covers())


# --- oracle agreement first -------------------------------------------------------


def test_certificate_agrees_with_brute_force(rng):
    for _ in range(150):
        P = random_graded_poset(rng, 10, 4)
        Q = relabel(P, rng) if rng.random() < 0.5 else random_graded_poset(rng, 10, 4)
        brute = brute_force_isomorphism(P, Q)
        assert (canonical_form(P) == canonical_form(Q)) == (brute is not None)
        phi = find_isomorphism(P, Q)
        assert (phi is None) == (brute is None)
        if phi is not None:
            assert _apply(P, phi, Q)


def test_automorphism_order_agrees_with_brute_force(rng):
    for _ in range(60):
        P = random_graded_poset(rng, 9, 3)
        assert automorphisms(P).order == brute_force_automorphism_count(P)


def _random_coloring(P, rng, k):
    colors = {}
    for lo, hi in P.covers():
        colors[(lo, hi)] = hi if lo == P.bottom else rng.choice(P.atoms[:k])
    return TruncatedPoset(P.depth, P.ranks, P.covers(), colors)


@pytest.mark.parametrize("mode", ["colored", "exact"])
def test_colored_modes_agree_with_brute_force(rng, mode):
    for _ in range(80):
        P = random_graded_poset(rng, 9, 3)
        A = _random_coloring(P, rng, 2)
        B = relabel(A, rng) if rng.random() < 0.4 else _random_coloring(P, rng, 2)
        brute = brute_force_isomorphism(A, B, mode)
        assert (canonical_form(A, mode) == canonical_form(B, mode)) == (brute is not None)
        assert (find_isomorphism(A, B, mode) is None) == (brute is None)


# --- canonical forms --------------------------------------------------------------


def test_relabel_invariance(rng):
    for P in (build_Dn(3, 4), build_Fn(2, 5), lattice_of_function([2, 1, 1], 4).uncolored()):
        assert canonical_form(P) == canonical_form(relabel(P, rng))


def test_dominating_and_flip_differ():
    assert canonical_form(build_Dn(2, 4)) != canonical_form(build_Fn(2, 4))


def test_four_classes_for_n_three():
    forms = {canonical_form(lattice_of_function(f, 4).uncolored()) for f in all_functions(3)}
    assert len(forms) == 4


def test_hex_is_lowercase():
    h = canonical_form(build_Bn(2)).hex()
    assert h == h.lower() and bytes.fromhex(h)


def test_modes_need_colors():
    with pytest.raises(ValueError):
        canonical_form(build_Bn(2), "colored")
    with pytest.raises(ValueError):
        canonical_form(build_Bn(2), "sideways")


def test_colored_vs_exact():
    # same monoid up to swapping generator names
    P = lattice_of_presentation(presentation("inflated-core").relabeled([1, 0, 2]), 3)
    Q = lattice_of_presentation(presentation("inflated-core"), 3)
    assert is_isomorphic(P, Q, "colored")
    assert not is_isomorphic(P, Q, "exact")
    assert is_isomorphic(P.uncolored(), Q.uncolored())


# --- maps -------------------------------------------------------------------------


def test_self_map_is_identity_on_rigid_poset():
    P = lattice_of_presentation(presentation("atom-swap"), 3)
    assert find_isomorphism(P, P, "exact") == list(range(P.n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_extremes(n):
    D, F = build_Dn(n, 5), build_Fn(n, 5)
    phi = find_isomorphism(lattice_of_function([1] * n, 5).uncolored(), D)
    assert phi is not None
    ident = list(range(1, n + 1))
    assert find_isomorphism(lattice_of_function(ident, 5).uncolored(), F) is not None


def test_no_map_between_different_sizes():
    assert find_isomorphism(build_Bn(2), build_Mn(3)) is None


# --- automorphisms ----------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_boolean_automorphisms(n):
    import math

    assert automorphisms(build_Bn(n)).order == math.factorial(n)


def test_automorphism_examples():
    assert automorphisms(atom_swap_lattice()).order == 2
    assert automorphisms(build_chain(4)).order == 1


def test_generators_are_automorphisms():
    P = build_Dn(2, 3)
    group = automorphisms(P)
    assert group.generators
    for g in group.generators:
        assert _apply(P, g, P)


def test_atom_action():
    P = lattice_of_presentation(presentation("atom-swap"), 3).uncolored()
    assert atom_action_is_trivial(P)
    assert not atom_action_is_trivial(build_Mn(3))
    assert not atom_action_is_trivial(build_Bn(2))
