"""Colorings of graded posets and the search for upho lattices with a given core.

A coloring maps each cover ``(lower, upper)`` to an atom node id.  The
realization pipeline takes a finite graded lattice ``L``, enumerates its
pre-upho colorings, compiles each into a homogeneous monoid, builds the
monoid's truncated divisibility poset and keeps the candidates whose core is
``L``.
"""

from __future__ import annotations

import itertools
import re
import string
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .iso import canonical_form, is_isomorphic
from .poset import (
    CoreUndetermined,
    Fail,
    LatticeToDepth,
    Pass,
    TruncatedPoset,
    core,
    core_stable_depth,
    is_finite_lattice,
    iter_bits,
    lattice_certificate,
    minimal_upper_bounds,
)
from .presentation import (
    Presentation,
    Violation,
    Word,
    build_element_table,
    check_left_cancellative,
    divisibility_covers,
    neighbors,
)

Coloring = dict[tuple[int, int], int]

DEFAULT_CHAIN_CAP = 100_000

COLORABLE_CAVEAT = (
    "Only colorable upho lattices (those coming from monoids) are searched. "
    "Survivors are distinct at the stated depth; their number is evidence for a "
    "lower bound on the count of upho lattices with this core, not its value."
)


class NotACoreCandidate(ValueError):
    """The input is not a finite graded lattice whose top is the join of its atoms."""


class ChainCapExceeded(RuntimeError):
    pass


def with_coloring(P: TruncatedPoset, c: Coloring) -> TruncatedPoset:
    return TruncatedPoset(P.depth, P.ranks, P.covers(), c, P.labels)


def forced_edges_ok(P: TruncatedPoset, c: Coloring) -> int | None:
    """Return an atom whose bottom edge is miscolored, else ``None``."""
    for s in P.atoms:
        if c.get((P.bottom, s)) != s:
            return s
    return None


# --- upho colorings of truncations ---------------------------------------------


def check_upho_coloring(P: TruncatedPoset, c: Coloring | None = None, k: int = 1):
    """Compare every filter ``V_p`` (``rank(p) <= k``) with ``P`` via color-exact isomorphism."""
    if c is not None:
        P = with_coloring(P, c)
    if not P.colored:
        raise ValueError("an edge coloring is required")
    if k > P.depth:
        raise ValueError("probe rank exceeds the depth")
    bad = forced_edges_ok(P, P.edge_colors)
    if bad is not None:
        return Fail(bad)
    cuts = {}
    for p in P.nodes_by_rank():
        r = P.rank[p]
        if r > k:
            break
        if r not in cuts:
            cuts[r] = P.truncate(P.depth - r)
        if not is_isomorphic(P.order_filter(p), cuts[r], "exact"):
            return Fail(p)
    return Pass()


# --- pre-upho colorings of finite lattices ----------------------------------------


def require_core_candidate(L: TruncatedPoset, atoms_join_to_top: bool = True):
    if len(L.ranks[-1]) != 1 or not is_finite_lattice(L):
        raise NotACoreCandidate("input must be a finite graded lattice")
    top = L.ranks[-1][0]
    if atoms_join_to_top and L.depth >= 1 and minimal_upper_bounds(L, L.atoms) != (top,):
        raise NotACoreCandidate("the maximum is not the join of the atoms")


def _cover_join(L: TruncatedPoset, x: int) -> int:
    (j,) = minimal_upper_bounds(L, L.up[x])
    return j


def _embeds(L: TruncatedPoset, c: Coloring, x: int, j: int) -> bool:
    """Is there a rank- and color-preserving embedding of ``[x, j]`` into ``L``?"""
    inside = L.up_closure[x] & L.down_closure[j]
    order = sorted((v for v in iter_bits(inside) if v != x), key=lambda v: (L.rank[v], v))
    base = L.rank[x]
    phi = {x: L.bottom}
    used = {L.bottom}
    dc = L.down_closure

    def step(i: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        lows = [d for d in L.down[p] if inside >> d & 1]
        first = lows[0]
        for q in L.up[phi[first]]:
            if q in used or L.rank[q] != L.rank[p] - base:
                continue
            if any(c.get((phi[d], q)) != c[(d, p)] for d in lows):
                continue
            # reflect order: phi(p') <= q must force p' <= p
            if any(dc[q] >> phi[pp] & 1 and not dc[p] >> pp & 1 for pp in phi if L.rank[pp] < L.rank[p]):
                continue
            phi[p] = q
            used.add(q)
            if step(i + 1):
                return True
            del phi[p]
            used.discard(q)
        return False

    return step(0)


@dataclass(frozen=True)
class PreUphoFail:
    node: int
    reason: str
    ok = False


def _interior(L: TruncatedPoset) -> list[int]:
    top = L.ranks[-1][0]
    return [v for v in L.nodes_by_rank() if v not in (L.bottom, top)]


def check_pre_upho(L: TruncatedPoset, c: Coloring):
    require_core_candidate(L)
    if set(c) != set(L.covers()):
        raise ValueError("coloring must assign every cover")
    bad = forced_edges_ok(L, c)
    if bad is not None:
        return PreUphoFail(bad, "bottom edge not colored by its atom")
    atoms = set(L.atoms)
    if any(a not in atoms for a in c.values()):
        raise ValueError("colors must be atoms")
    for x in _interior(L):
        if not _embeds(L, c, x, _cover_join(L, x)):
            return PreUphoFail(x, "no rank- and color-preserving embedding of its cover interval")
    return Pass()


def enumerate_pre_upho_colorings(L: TruncatedPoset) -> list[Coloring]:
    """All pre-upho colorings, in lexicographic order of free-edge assignments.

    Edges out of the minimum are forced.  The remaining edges are assigned in
    order of their lower endpoint's rank; each interior element is checked as
    soon as every edge its embedding test reads has a color.  Lattices whose
    maximum is not the join of the atoms (chains, say) are accepted here.
    """
    require_core_candidate(L, atoms_join_to_top=False)
    atoms = L.atoms
    free = sorted(((lo, hi) for lo, hi in L.covers() if lo != L.bottom), key=lambda e: (L.rank[e[0]], e))
    pos = {e: i for i, e in enumerate(free)}
    ready: dict[int, list[int]] = {}
    for x in _interior(L):
        j = _cover_join(L, x)
        height = L.rank[j] - L.rank[x]
        inside = L.up_closure[x] & L.down_closure[j]
        needed = [pos[(a, b)] for a, b in free if L.rank[a] < height]
        needed += [pos[(a, b)] for a, b in free if inside >> a & 1 and inside >> b & 1]
        ready.setdefault(max(needed, default=-1), []).append((x, j))
    c: Coloring = {(L.bottom, s): s for s in atoms}
    for x, j in ready.get(-1, []):
        if not _embeds(L, c, x, j):
            return []
    out: list[Coloring] = []

    def assign(i: int):
        if i == len(free):
            out.append(dict(sorted(c.items())))
            return
        for a in atoms:
            c[free[i]] = a
            if all(_embeds(L, c, x, j) for x, j in ready.get(i, [])):
                assign(i + 1)
        del c[free[i]]

    assign(0)
    return out


# --- compiling a coloring to a monoid ---------------------------------------------


_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _generator_names(L: TruncatedPoset) -> tuple[str, ...]:
    atoms = L.atoms
    if L.labels is not None:
        names = tuple(L.labels[a] for a in atoms)
        if len(set(names)) == len(names) and all(_NAME.fullmatch(n) for n in names):
            return names
    if len(atoms) <= 26:
        return tuple(string.ascii_lowercase[: len(atoms)])
    return tuple(f"s{i}" for i in range(1, len(atoms) + 1))


def saturated_chain_words(L: TruncatedPoset, c: Coloring, target: int, gen: dict[int, int], cap: int) -> list[Word]:
    """Color words of all saturated chains from the minimum to ``target``."""
    allowed = L.down_closure[target]
    words: set[Word] = set()
    count = 0
    stack = [(L.bottom, ())]
    while stack:
        v, w = stack.pop()
        if v == target:
            count += 1
            if count > cap:
                raise ChainCapExceeded(f"more than {cap} saturated chains below node {target}; raise --chain-cap")
            words.add(w)
            continue
        for u in L.up[v]:
            if allowed >> u & 1:
                stack.append((u, w + (gen[c[(v, u)]],)))
    return sorted(words)


def _congruent(a: Word, b: Word, relations: Sequence[tuple[Word, Word]]) -> bool:
    rules = [(l, r) for l, r in relations] + [(r, l) for l, r in relations]
    seen = {a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            return True
        for y in neighbors(x, rules):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return False


def monoid_of_coloring(L: TruncatedPoset, c: Coloring, chain_cap: int = DEFAULT_CHAIN_CAP) -> Presentation:
    """Monoid whose relations identify the chain words up to each pairwise atom join.

    Within each atom pair the chain words are sorted and each one is tied to
    the least word unless earlier relations already identify them, so no
    emitted relation is a consequence of the previous ones.
    """
    atoms = L.atoms
    gen = {a: i for i, a in enumerate(atoms)}
    relations: list[tuple[Word, Word]] = []
    for s, t in itertools.combinations(atoms, 2):
        (j,) = minimal_upper_bounds(L, (s, t))
        words = saturated_chain_words(L, c, j, gen, chain_cap)
        base = words[0]
        for w in words[1:]:
            if not _congruent(base, w, relations):
                relations.append((base, w))
    return Presentation(_generator_names(L), tuple(relations))


# --- the realization pipeline ------------------------------------------------------


@dataclass
class Candidate:
    index: int
    coloring: Coloring
    presentation: Presentation
    depth: int
    status: str  # survivor | rejected | undecided
    reason: str = ""
    cancellative: str = ""
    lattice: str = ""
    core: str = ""
    upho: str = ""
    certificate: str = ""
    stable_depth: int | None = None


def _verdict_name(v) -> str:
    return type(v).__name__


def evaluate_coloring(
    L: TruncatedPoset,
    index: int,
    coloring: Coloring,
    depth: int,
    probe: int,
    chain_cap: int = DEFAULT_CHAIN_CAP,
    word_cap: int | None = None,
) -> Candidate:
    """Compile one coloring and run every filter on its depth-``depth`` truncation."""
    pres = monoid_of_coloring(L, coloring, chain_cap)
    cand = Candidate(index, coloring, pres, depth, "undecided")
    table = build_element_table(pres, depth, word_cap)
    cancel = check_left_cancellative(pres, table)
    cand.cancellative = _verdict_name(cancel)
    if isinstance(cancel, Violation):
        cand.status, cand.reason = "rejected", "not left-cancellative: " + cancel.describe(pres)
        return cand
    P = divisibility_covers(pres, table)
    cand.certificate = canonical_form(P.uncolored()).hex()
    lat = lattice_certificate(P)
    cand.lattice = _verdict_name(lat)
    try:
        C = core(P)
    except CoreUndetermined as exc:
        cand.core = "undetermined"
        cand.status, cand.reason = "undecided", str(exc)
        return cand
    if not is_isomorphic(C, L.uncolored() if L.colored else L):
        cand.core = "larger" if C.n > L.n else "different"
        cand.status, cand.reason = "rejected", f"core has {C.n} elements, input has {L.n}"
        return cand
    cand.core = "equal"
    cand.stable_depth = core_stable_depth(P)
    if lat.conclusive and not lat.ok:
        cand.status, cand.reason = "rejected", f"not a lattice: {lat}"
        return cand
    up = check_upho_coloring(P, k=min(probe, depth))
    cand.upho = _verdict_name(up)
    if not up.ok:
        cand.status, cand.reason = "rejected", f"coloring not upho at node {up.node}"
        return cand
    if not isinstance(lat, LatticeToDepth):
        cand.status, cand.reason = "undecided", f"join not visible by depth {depth}: {lat}"
        return cand
    cand.status = "survivor"
    return cand


def _evaluate_star(args):
    return evaluate_coloring(*args)


@dataclass
class SurvivorClass:
    certificate: str
    presentation: Presentation
    colorings: list[int]
    stable_depth: int | None


@dataclass
class RealizationReport:
    lattice_name: str
    depth: int
    probe: int
    colorings_enumerated: int
    survivors: list[SurvivorClass]
    undecided: list[Candidate]
    rejected: list[Candidate]
    candidates: list[Candidate] = field(repr=False, default_factory=list)
    wall_time: float = 0.0
    caveat: str = COLORABLE_CAVEAT

    @property
    def distinct_at_depth(self) -> int:
        return len(self.survivors)


def realize_core(
    L: TruncatedPoset,
    depth: int,
    probe: int = 2,
    workers: int = 1,
    chain_cap: int = DEFAULT_CHAIN_CAP,
    word_cap: int | None = None,
    name: str = "L",
) -> RealizationReport:
    """Run the full pipeline on every pre-upho coloring of ``L``.

    Undecided candidates are retried once at ``depth + 1``.  Survivors are
    grouped by the plain canonical form of their truncation.
    """
    start = time.perf_counter()
    require_core_candidate(L)
    if depth < L.depth + 1:
        raise ValueError(f"depth must be at least rank(L) + 1 = {L.depth + 1}")
    if L.colored:
        L = L.uncolored()
    colorings = enumerate_pre_upho_colorings(L)
    jobs = [(L, i, c, depth, probe, chain_cap, word_cap) for i, c in enumerate(colorings)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate_star, jobs))
    else:
        results = [_evaluate_star(j) for j in jobs]
    for i, cand in enumerate(results):
        if cand.status == "undecided":
            results[i] = evaluate_coloring(L, cand.index, cand.coloring, depth + 1, probe, chain_cap, word_cap)
    groups: dict[str, SurvivorClass] = {}
    for cand in results:
        if cand.status != "survivor":
            continue
        # retried candidates live at depth+1; key them with the depth tag
        key = f"{cand.depth}:{cand.certificate}"
        if key not in groups:
            groups[key] = SurvivorClass(cand.certificate, cand.presentation, [], cand.stable_depth)
        groups[key].colorings.append(cand.index)
    return RealizationReport(
        lattice_name=name,
        depth=depth,
        probe=probe,
        colorings_enumerated=len(colorings),
        survivors=list(groups.values()),
        undecided=[c for c in results if c.status == "undecided"],
        rejected=[c for c in results if c.status == "rejected"],
        candidates=results,
        wall_time=time.perf_counter() - start,
    )
