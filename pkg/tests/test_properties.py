"""Randomized checks against the slow reference implementations."""

import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from uphocore._oracles import (
    brute_force_classes,
    brute_force_isomorphism,
    brute_force_mobius,
    random_graded_poset,
    relabel,
)
from uphocore.io import dumps_poset, loads_poset
from uphocore.iso import canonical_form
from uphocore.poset import (
    JoinAmbiguity,
    MeetAmbiguity,
    is_finite_lattice,
    lattice_certificate,
    mobius_from_bottom,
)
from uphocore.presentation import Presentation, build_element_table
from uphocore.series import PowerSeriesTrunc, series_invert

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _poset(seed, max_nodes=10):
    return random_graded_poset(random.Random(seed), max_nodes=max_nodes, max_depth=4)


def _bounds(P):
    """(minimal upper bounds, maximal lower bounds) per unordered pair, by brute force."""
    leq = {(x, y) for x in range(P.n) for y in range(P.n) if x == y}
    changed = True
    for a, b in P.covers():
        leq.add((a, b))
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(leq), repeat=2):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    out = {}
    for x, y in itertools.combinations(range(P.n), 2):
        ups = [z for z in range(P.n) if (x, z) in leq and (y, z) in leq]
        downs = [z for z in range(P.n) if (z, x) in leq and (z, y) in leq]
        mins = [z for z in ups if not any(w != z and (w, z) in leq for w in ups)]
        maxs = [z for z in downs if not any(w != z and (z, w) in leq for w in downs)]
        out[(x, y)] = (mins, maxs)
    return out


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_finite_lattice_test_agrees_with_brute_force(seed):
    P = _poset(seed)
    expected = all(len(a) == 1 and len(m) == 1 for a, m in _bounds(P).values())
    assert is_finite_lattice(P) == expected


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_conclusive_lattice_verdicts_have_real_witnesses(seed):
    P = _poset(seed)
    bounds = _bounds(P)
    ambiguous = any(len(a) > 1 or len(m) != 1 for a, m in bounds.values())
    v = lattice_certificate(P)
    assert isinstance(v, (JoinAmbiguity, MeetAmbiguity)) == ambiguous
    if isinstance(v, JoinAmbiguity):
        assert sorted(v.bounds) == sorted(bounds[tuple(sorted((v.x, v.y)))][0])
    if isinstance(v, MeetAmbiguity):
        assert sorted(v.bounds) == sorted(bounds[tuple(sorted((v.x, v.y)))][1])


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_mobius_matches_reference(seed):
    P = _poset(seed)
    mu = mobius_from_bottom(P)
    assert mu == brute_force_mobius(P)
    # summing mu(0, v) over the whole down-set of any non-bottom node gives 0
    for v in range(P.n):
        if v != P.bottom:
            assert sum(mu[z] for z in range(P.n) if P.down_closure[v] >> z & 1) == 0


@settings(max_examples=100, deadline=None)
@given(seeds, seeds)
def test_certificate_is_a_complete_invariant(seed, shuffle):
    P = _poset(seed, max_nodes=8)
    Q = relabel(P, random.Random(shuffle))
    assert canonical_form(P) == canonical_form(Q)
    R = _poset(shuffle, max_nodes=8)
    same = canonical_form(P) == canonical_form(R)
    assert same == (brute_force_isomorphism(P, R) is not None)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_poset_documents_round_trip(seed):
    P = _poset(seed)
    text = dumps_poset(P)
    assert dumps_poset(loads_poset(text)) == text


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=8, max_size=8), st.sampled_from([1, -1]))
def test_series_inverse(tail, unit):
    s = PowerSeriesTrunc([unit] + tail, 8)
    assert (series_invert(s) * s).is_one
    assert (s * series_invert(s)).is_one


def _relation(r, length):
    word = st.lists(st.integers(0, r - 1), min_size=length, max_size=length).map(tuple)
    return st.tuples(word, word).filter(lambda p: p[0] != p[1])


@st.composite
def presentations(draw):
    r = draw(st.integers(2, 3))
    k = draw(st.integers(1, 3))
    rels = [draw(_relation(r, draw(st.integers(2, 3)))) for _ in range(k)]
    return Presentation([chr(ord("a") + i) for i in range(r)], rels)


@settings(max_examples=60, deadline=None)
@given(presentations(), st.permutations(range(3)))
def test_class_counts_match_union_find_and_ignore_generator_order(p, perm):
    depth = 4
    counts = build_element_table(p, depth).counts()
    assert counts == brute_force_classes(p.relations, p.r, depth)
    perm = [i for i in perm if i < p.r]
    assert build_element_table(p.relabeled(perm), depth).counts() == counts
