"""Rank-preserving isomorphism, canonical forms and automorphisms.

Canonical labeling is delegated to nauty (through ``pynauty``).  A poset is
encoded as an undirected graph whose vertex partition is the rank partition,
so every isomorphism nauty reports is rank preserving (and the rank classes
already fix the direction of each cover).  Nauty's digraph mode stalls on the
large automorphism groups of the dominating vertex posets, hence no
orientation.  For colored posets each cover edge is subdivided by an extra
vertex that is also joined to a hub vertex for its color.  Before any of this,
same-rank nodes with identical upper and lower covers ("twins") are merged into
one vertex whose cell records the class size; twins can be permuted freely, so
this loses nothing and spares nauty most of the automorphism search.

Color modes:

``colored``
    all hubs share one vertex class, so colors may be renamed consistently
    (generator renaming of the underlying monoid);
``exact``
    each hub sits in its own class ordered by color value, so colors must be
    preserved literally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import pynauty

from .poset import TruncatedPoset

Mode = Literal["plain", "colored", "exact"]
MODES = ("plain", "colored", "exact")


@dataclass(frozen=True)
class CanonicalForm:
    certificate: bytes

    def hex(self) -> str:
        return self.certificate.hex()

    def __str__(self):
        return self.hex()


class _Encoded:
    """Quotient graph handed to nauty plus the bookkeeping to lift maps back.

    ``classes[i]`` lists the poset nodes collapsed into graph vertex ``i``
    (only the first ``len(classes)`` vertices stand for poset nodes).
    """

    __slots__ = ("graph", "header", "classes", "total")

    def __init__(self, graph, header: bytes, classes: list[list[int]], total: int):
        self.graph = graph
        self.header = header
        self.classes = classes
        self.total = total


def _twin_classes(P: TruncatedPoset, colored: bool) -> list[list[int]]:
    """Group same-rank nodes with identical (colored) upper and lower covers."""
    groups: dict[tuple, list[int]] = {}
    for v in P.nodes_by_rank():
        if colored:
            ec = P.edge_colors
            key = (
                P.rank[v],
                tuple((w, ec[(v, w)]) for w in P.up[v]),
                tuple((u, ec[(u, v)]) for u in P.down[v]),
            )
        else:
            key = (P.rank[v], P.up[v], P.down[v])
        groups.setdefault(key, []).append(v)
    return sorted(groups.values(), key=lambda g: (P.rank[g[0]], g[0]))


def _encode(P: TruncatedPoset, mode: Mode) -> _Encoded:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode != "plain" and not P.colored:
        raise ValueError(f"mode {mode!r} needs an edge-colored poset")
    colored = mode != "plain"
    classes = _twin_classes(P, colored)
    vertex_of = {}
    for i, cls in enumerate(classes):
        for v in cls:
            vertex_of[v] = i
    # cells ordered by (rank, multiplicity); both are isomorphism invariants
    cells: dict[tuple[int, int], set[int]] = {}
    for i, cls in enumerate(classes):
        cells.setdefault((P.rank[cls[0]], len(cls)), set()).add(i)
    cell_keys = sorted(cells)
    partition = [cells[k] for k in cell_keys]
    header: list = [mode, P.depth, *(f"{r}:{m}:{len(cells[(r, m)])}" for r, m in cell_keys)]
    adj: dict[int, list[int]] = {}
    if not colored:
        for i, cls in enumerate(classes):
            nbrs = sorted({vertex_of[w] for w in P.up[cls[0]]})
            if nbrs:
                adj[i] = nbrs
        total = len(classes)
    else:
        colors = sorted(set(P.edge_colors.values()))
        hub = {c: len(classes) + i for i, c in enumerate(colors)}
        nxt = len(classes) + len(colors)
        edge_vertices: list[set[int]] = [set() for _ in range(P.depth)]
        for i, cls in enumerate(classes):
            v = cls[0]
            for w in P.up[v]:
                e = nxt
                nxt += 1
                adj.setdefault(i, []).append(e)
                adj[e] = [vertex_of[w], hub[P.edge_colors[(v, w)]]]
                edge_vertices[P.rank[v]].add(e)
        total = nxt
        partition.extend(s for s in edge_vertices if s)
        if mode == "colored":
            partition.append(set(hub.values()))
            header.append(f"hubs{len(colors)}")
        else:
            partition.extend({hub[c]} for c in colors)
            header.extend(["hubs", *colors])
    partition = [s for s in partition if s]
    graph = pynauty.Graph(total, directed=False, adjacency_dict=adj, vertex_coloring=partition)
    return _Encoded(graph, ",".join(map(str, header)).encode(), classes, total)


def canonical_form(P: TruncatedPoset, mode: Mode = "plain") -> CanonicalForm:
    """Certificate equal for two posets iff they are isomorphic in ``mode``."""
    enc = _encode(P, mode)
    return CanonicalForm(enc.header + b"|" + pynauty.certificate(enc.graph))


def _check_map(P: TruncatedPoset, Q: TruncatedPoset, phi: list[int], mode: Mode):
    assert sorted(phi) == list(range(Q.n))
    for v in range(P.n):
        assert P.rank[v] == Q.rank[phi[v]]
    image = {(phi[a], phi[b]) for a, b in P.covers()}
    assert image == set(Q.covers()), "map does not carry covers onto covers"
    if mode == "exact":
        for (a, b), c in P.edge_colors.items():
            assert Q.edge_colors[(phi[a], phi[b])] == c
    elif mode == "colored":
        rename: dict[int, int] = {}
        for (a, b), c in P.edge_colors.items():
            d = Q.edge_colors[(phi[a], phi[b])]
            assert rename.setdefault(c, d) == d, "colors are not renamed consistently"


def find_isomorphism(P: TruncatedPoset, Q: TruncatedPoset, mode: Mode = "plain") -> list[int] | None:
    """Node map ``phi`` with ``phi[v]`` in ``Q``, or ``None`` if no isomorphism exists."""
    if P.rank_sizes() != Q.rank_sizes() or len(P.covers()) != len(Q.covers()):
        return None
    ep, eq = _encode(P, mode), _encode(Q, mode)
    if ep.header != eq.header or ep.total != eq.total:
        return None
    if pynauty.certificate(ep.graph) != pynauty.certificate(eq.graph):
        return None
    lp, lq = pynauty.canon_label(ep.graph), pynauty.canon_label(eq.graph)
    phi = [0] * P.n
    k = len(ep.classes)
    for a, b in zip(lp, lq):
        if a < k:
            for v, w in zip(ep.classes[a], eq.classes[b]):
                phi[v] = w
    _check_map(P, Q, phi, mode)
    return phi


def is_isomorphic(P: TruncatedPoset, Q: TruncatedPoset, mode: Mode = "plain") -> bool:
    if P.rank_sizes() != Q.rank_sizes():
        return False
    return canonical_form(P, mode) == canonical_form(Q, mode)


@dataclass(frozen=True)
class AutomorphismGroup:
    order: int
    generators: tuple[tuple[int, ...], ...]


def automorphisms(P: TruncatedPoset, mode: Mode = "plain") -> AutomorphismGroup:
    """Exact order and a generating set, each generator given as a node map."""
    from sympy.combinatorics import Permutation, PermutationGroup

    enc = _encode(P, mode)
    gens, *_ = pynauty.autgrp(enc.graph)
    k = len(enc.classes)
    node_gens = []
    for g in gens:
        phi = [0] * P.n
        for a in range(k):
            for v, w in zip(enc.classes[a], enc.classes[g[a]]):
                phi[v] = w
        if phi != list(range(P.n)):
            node_gens.append(tuple(phi))
    # lifting class-by-class in sorted order is a homomorphism, so the
    # quotient group order can be computed on the quotient vertices
    quotient = [list(g[:k]) for g in gens if list(g[:k]) != list(range(k))]
    order = int(PermutationGroup([Permutation(g) for g in quotient]).order()) if quotient else 1
    # twins are freely interchangeable: a full symmetric group on each class
    for cls in enc.classes:
        order *= math.factorial(len(cls))
        for a, b in zip(cls, cls[1:]):
            phi = list(range(P.n))
            phi[a], phi[b] = b, a
            node_gens.append(tuple(phi))
    return AutomorphismGroup(order, tuple(node_gens))


def atom_action_is_trivial(P: TruncatedPoset, mode: Mode = "plain") -> bool:
    """True iff no automorphism moves an atom."""
    group = automorphisms(P, mode)
    return all(g[a] == a for g in group.generators for a in P.atoms)
