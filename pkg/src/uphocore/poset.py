"""Finite truncations of finite-type N-graded posets and their analysis.

A :class:`TruncatedPoset` keeps every element of rank at most ``depth`` and
all cover relations among them.  Down-sets and up-sets are cached as Python
integers used as bitsets, which keeps the pairwise tables cheap for the sizes
met here (a few thousand nodes).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .series import PowerSeriesTrunc


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class CoreUndetermined(Exception):
    """The join of the atoms is not visible (or not unique) within the truncation."""


class TruncatedPoset:
    """Ranked node lists plus cover adjacency, immutable after construction.

    ``edge_colors`` maps a cover ``(lower, upper)`` to an atom node id, or is
    ``None`` for an uncolored poset.  ``labels`` optionally names each node.
    """

    def __init__(
        self,
        depth: int,
        ranks: Sequence[Sequence[int]],
        covers: Iterable[tuple[int, int]],
        edge_colors: dict[tuple[int, int], int] | None = None,
        labels: Sequence[str] | None = None,
    ):
        self.depth = int(depth)
        self.ranks = [list(r) for r in ranks]
        n = sum(len(r) for r in self.ranks)
        rank = [-1] * n
        for i, nodes in enumerate(self.ranks):
            for v in nodes:
                if not 0 <= v < n or rank[v] != -1:
                    raise ValueError(f"node ids must be a permutation of 0..{n - 1}")
                rank[v] = i
        self.rank = rank
        up: list[set[int]] = [set() for _ in range(n)]
        down: list[set[int]] = [set() for _ in range(n)]
        for lo, hi in covers:
            up[lo].add(hi)
            down[hi].add(lo)
        self.up = [tuple(sorted(s)) for s in up]
        self.down = [tuple(sorted(s)) for s in down]
        self.edge_colors = dict(edge_colors) if edge_colors is not None else None
        self.labels = list(labels) if labels is not None else None
        self._validate()

    def _validate(self):
        if len(self.ranks) != self.depth + 1:
            raise ValueError(f"expected {self.depth + 1} ranks, got {len(self.ranks)}")
        if len(self.ranks[0]) != 1:
            raise ValueError("rank 0 must hold exactly one node (the minimum)")
        for v in range(self.n):
            if self.rank[v] > 0 and not self.down[v]:
                raise ValueError(f"node {v} of rank {self.rank[v]} has no lower cover")
            for w in self.up[v]:
                if self.rank[w] != self.rank[v] + 1:
                    raise ValueError(f"cover {v} < {w} does not join consecutive ranks")
        if self.edge_colors is not None:
            if set(self.edge_colors) != set(self.covers()):
                raise ValueError("edge colors must cover exactly the cover relations")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("one label per node required")

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.rank)

    @property
    def bottom(self) -> int:
        return self.ranks[0][0]

    @property
    def atoms(self) -> list[int]:
        return sorted(self.ranks[1]) if self.depth >= 1 else []

    @property
    def colored(self) -> bool:
        return self.edge_colors is not None

    def covers(self) -> list[tuple[int, int]]:
        return [(v, w) for v in range(self.n) for w in self.up[v]]

    def rank_sizes(self) -> list[int]:
        return [len(r) for r in self.ranks]

    def nodes_by_rank(self) -> list[int]:
        return [v for r in self.ranks for v in sorted(r)]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def __repr__(self):
        return f"TruncatedPoset(depth={self.depth}, rank_sizes={self.rank_sizes()})"

    @cached_property
    def down_closure(self) -> list[int]:
        """Bitset of ``{z : z <= v}`` for every node ``v``."""
        dc = [0] * self.n
        for v in self.nodes_by_rank():
            acc = 1 << v
            for z in self.down[v]:
                acc |= dc[z]
            dc[v] = acc
        return dc

    @cached_property
    def up_closure(self) -> list[int]:
        uc = [0] * self.n
        for v in reversed(self.nodes_by_rank()):
            acc = 1 << v
            for z in self.up[v]:
                acc |= uc[z]
            uc[v] = acc
        return uc

    @cached_property
    def rank_masks(self) -> list[int]:
        masks = [0] * (self.depth + 1)
        for v, r in enumerate(self.rank):
            masks[r] |= 1 << v
        return masks

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down_closure[y] >> x & 1)

    # -- sub-posets ----------------------------------------------------------

    def induced(self, keep: Iterable[int], rank_offset: int = 0, depth: int | None = None) -> "TruncatedPoset":
        """Induced sub-poset on a convex set ``keep``, renumbered densely by (rank, id)."""
        keep = sorted(set(keep), key=lambda v: (self.rank[v], v))
        new = {v: i for i, v in enumerate(keep)}
        top = max(self.rank[v] for v in keep) - rank_offset
        if depth is None:
            depth = top
        ranks: list[list[int]] = [[] for _ in range(depth + 1)]
        for v in keep:
            ranks[self.rank[v] - rank_offset].append(new[v])
        covers = [(new[v], new[w]) for v in keep for w in self.up[v] if w in new]
        colors = None
        if self.edge_colors is not None:
            colors = {(new[v], new[w]): self.edge_colors[(v, w)] for v in keep for w in self.up[v] if w in new}
        labels = [self.labels[v] for v in keep] if self.labels is not None else None
        return TruncatedPoset(depth, ranks, covers, colors, labels)

    def truncate(self, depth: int) -> "TruncatedPoset":
        if depth > self.depth:
            raise ValueError("cannot truncate above the current depth")
        keep = [v for v in range(self.n) if self.rank[v] <= depth]
        return self.induced(keep, 0, depth)

    def interval(self, lo: int, hi: int) -> "TruncatedPoset":
        nodes = self.up_closure[lo] & self.down_closure[hi]
        if not nodes:
            raise ValueError(f"{lo} is not below {hi}")
        return self.induced(iter_bits(nodes), self.rank[lo])

    def order_filter(self, p: int) -> "TruncatedPoset":
        """Principal filter above ``p``, re-ranked from 0, of depth ``depth - rank(p)``."""
        return self.induced(iter_bits(self.up_closure[p]), self.rank[p], self.depth - self.rank[p])

    def uncolored(self) -> "TruncatedPoset":
        return TruncatedPoset(self.depth, self.ranks, self.covers(), None, self.labels)


# --- Möbius function and generating series ----------------------------------


def mobius_from_bottom(P: TruncatedPoset) -> list[int]:
    """``mu(0, v)`` for every node, by the recursion over the down-set."""
    mu = [0] * P.n
    dc = P.down_closure
    for v in P.nodes_by_rank():
        if v == P.bottom:
            mu[v] = 1
            continue
        mu[v] = -sum(mu[z] for z in iter_bits(dc[v] ^ (1 << v)))
    return mu


def rank_series(P: TruncatedPoset) -> PowerSeriesTrunc:
    return PowerSeriesTrunc(P.rank_sizes())


def char_series(P: TruncatedPoset) -> PowerSeriesTrunc:
    mu = mobius_from_bottom(P)
    coeffs = [0] * (P.depth + 1)
    for v in range(P.n):
        coeffs[P.rank[v]] += mu[v]
    return PowerSeriesTrunc(coeffs)


# --- joins and meets ---------------------------------------------------------


def _minimal(P: TruncatedPoset, s: int) -> tuple[int, ...]:
    dc = P.down_closure
    return tuple(sorted(z for z in iter_bits(s) if dc[z] & s == 1 << z))


def _maximal(P: TruncatedPoset, s: int) -> tuple[int, ...]:
    uc = P.up_closure
    return tuple(sorted(z for z in iter_bits(s) if uc[z] & s == 1 << z))


def _principal_top(P: TruncatedPoset, s: int) -> int | None:
    """For a nonempty down-set ``s``: its maximum, or ``None`` if it has several maximal elements."""
    for m in reversed(P.rank_masks):
        m &= s
        if m:
            break
    if m & (m - 1):
        return None
    z = m.bit_length() - 1
    return z if P.down_closure[z] == s else None


def _principal_bottom(P: TruncatedPoset, s: int) -> int | None:
    """For a nonempty up-set ``s`` of the truncation: its minimum, or ``None``."""
    for m in P.rank_masks:
        m &= s
        if m:
            break
    if m & (m - 1):
        return None
    z = m.bit_length() - 1
    return z if P.up_closure[z] == s else None


def minimal_upper_bounds(P: TruncatedPoset, nodes: Iterable[int]) -> tuple[int, ...]:
    common = -1
    for v in nodes:
        common &= P.up_closure[v]
    if common == -1:
        return (P.bottom,)
    return _minimal(P, common)


def maximal_lower_bounds(P: TruncatedPoset, nodes: Iterable[int]) -> tuple[int, ...]:
    common = -1
    for v in nodes:
        common &= P.down_closure[v]
    return _maximal(P, common)


def joins_table(P: TruncatedPoset) -> dict[tuple[int, int], tuple[int, ...]]:
    """Minimal common upper bounds within the truncation, for every pair ``x <= y``."""
    uc = P.up_closure
    out = {}
    for x in range(P.n):
        for y in range(x, P.n):
            out[(x, y)] = _minimal(P, uc[x] & uc[y])
    return out


def meets_table(P: TruncatedPoset) -> dict[tuple[int, int], tuple[int, ...]]:
    dc = P.down_closure
    out = {}
    for x in range(P.n):
        for y in range(x, P.n):
            out[(x, y)] = _maximal(P, dc[x] & dc[y])
    return out


@dataclass(frozen=True)
class LatticeToDepth:
    depth: int
    ok = True
    conclusive = True


@dataclass(frozen=True)
class JoinAmbiguity:
    x: int
    y: int
    bounds: tuple[int, ...]
    ok = False
    conclusive = True


@dataclass(frozen=True)
class MeetAmbiguity:
    x: int
    y: int
    bounds: tuple[int, ...]
    ok = False
    conclusive = True


@dataclass(frozen=True)
class JoinMissing:
    """No common upper bound up to the cut; says nothing about higher ranks."""

    x: int
    y: int
    ok = False
    conclusive = False


def atom_join_rank(P: TruncatedPoset) -> int | None:
    """Largest rank of a minimal upper bound of two atoms, ``None`` if some pair has none."""
    uc = P.up_closure
    worst = 0
    for i, s in enumerate(P.atoms):
        for t in P.atoms[i + 1 :]:
            common = uc[s] & uc[t]
            if not common:
                return None
            worst = max(worst, max(P.rank[m] for m in _minimal(P, common)))
    return worst


def join_window(P: TruncatedPoset, x: int, y: int, reach: int | None = None) -> bool:
    """Should ``x`` and ``y`` already have a common upper bound inside ``P``?

    ``reach`` is the largest atom-pair join rank.  Atom pairs are always
    judged.  A pair covering a common ``z`` is judged once ``rank(z) + reach``
    fits, since in an upho poset the filter at ``z`` copies the whole; by the
    BEZ lemma these pairs plus existence of upper bounds decide lattice-hood.
    Any other pair is judged once ``rank(x) + rank(y) + reach`` fits.  This is a
    heuristic budget, so the resulting verdict stays inconclusive.
    """
    rx, ry = P.rank[x], P.rank[y]
    if rx == 1 and ry == 1:
        return True
    if reach is None:
        reach = atom_join_rank(P)
        if reach is None:
            return False
    if rx + ry + reach <= P.depth:
        return True
    if rx != ry or rx - 1 + reach > P.depth:
        return False
    return not set(P.down[x]).isdisjoint(P.down[y])


def lattice_certificate(P: TruncatedPoset):
    """Classify the truncation as lattice-like, definitely not a lattice, or undecided.

    Two or more minimal upper bounds inside the truncation are genuine minimal
    upper bounds of the full poset (everything below them is kept), so that
    verdict is conclusive.  A pair with no upper bound yet is only reported
    when :func:`join_window` says a bound would be expected by now.
    """
    uc, dc = P.up_closure, P.down_closure
    missing = None
    reach = atom_join_rank(P)
    for x in range(P.n):
        for y in range(x + 1, P.n):
            if dc[y] >> x & 1 or dc[x] >> y & 1:
                continue
            common = uc[x] & uc[y]
            if common:
                if _principal_bottom(P, common) is None:
                    return JoinAmbiguity(x, y, _minimal(P, common))
            elif missing is None and join_window(P, x, y, reach):
                missing = JoinMissing(x, y)
            lower = dc[x] & dc[y]
            if _principal_top(P, lower) is None:
                return MeetAmbiguity(x, y, _maximal(P, lower))
    if missing is not None:
        return missing
    return LatticeToDepth(P.depth)


def is_finite_lattice(P: TruncatedPoset) -> bool:
    """Every pair has a unique join and meet inside ``P`` (``P`` taken as finite)."""
    uc, dc = P.up_closure, P.down_closure
    for x in range(P.n):
        for y in range(x + 1, P.n):
            if dc[y] >> x & 1 or dc[x] >> y & 1:
                continue
            common = uc[x] & uc[y]
            if not common or _principal_bottom(P, common) is None or _principal_top(P, dc[x] & dc[y]) is None:
                return False
    return True


# --- core and self-similarity -----------------------------------------------


def core_top(P: TruncatedPoset) -> int:
    atoms = P.atoms
    if not atoms:
        return P.bottom
    mubs = minimal_upper_bounds(P, atoms)
    if not mubs:
        raise CoreUndetermined(f"the atoms have no common upper bound up to rank {P.depth}; deepen the truncation")
    if len(mubs) > 1:
        raise CoreUndetermined(f"the atoms have {len(mubs)} minimal upper bounds up to rank {P.depth}")
    return mubs[0]


def core(P: TruncatedPoset) -> TruncatedPoset:
    """The interval from the minimum to the join of the atoms."""
    return P.interval(P.bottom, core_top(P))


def core_stable_depth(P: TruncatedPoset) -> int | None:
    """Smallest depth from which the core of every deeper truncation matches the full one.

    This is a heuristic confidence signal, not a certificate.
    """
    from .iso import is_isomorphic

    try:
        final = core(P)
    except CoreUndetermined:
        return None
    stable = P.depth
    for d in range(P.depth - 1, final.depth - 1, -1):
        try:
            c = core(P.truncate(d))
        except CoreUndetermined:
            break
        if not is_isomorphic(c, final):
            break
        stable = d
    return stable


def order_filter(P: TruncatedPoset, p: int) -> TruncatedPoset:
    return P.order_filter(p)


@dataclass(frozen=True)
class Pass:
    ok = True


@dataclass(frozen=True)
class Fail:
    node: int
    ok = False


def upho_check(P: TruncatedPoset, k: int):
    """Compare each filter ``V_p`` with ``rank(p) <= k`` against ``P`` cut to the same depth."""
    from .iso import is_isomorphic

    if k > P.depth:
        raise ValueError("probe rank exceeds the depth")
    plain = P.uncolored() if P.colored else P
    cuts = {}
    for p in plain.nodes_by_rank():
        r = plain.rank[p]
        if r > k:
            break
        if r not in cuts:
            cuts[r] = plain.truncate(plain.depth - r)
        if not is_isomorphic(plain.order_filter(p), cuts[r]):
            return Fail(p)
    return Pass()


# --- products -----------------------------------------------------------------


def direct_product(P: TruncatedPoset, Q: TruncatedPoset) -> TruncatedPoset:
    """Product order with rank = rank sum, cut at ``min(depth_P, depth_Q)``.

    When both factors are colored, an edge moving the P coordinate by color
    ``a`` gets the product atom ``(a, 0)``, and symmetrically for Q.
    """
    depth = min(P.depth, Q.depth)
    pairs = sorted(
        ((p, q) for p in range(P.n) for q in range(Q.n) if P.rank[p] + Q.rank[q] <= depth),
        key=lambda pq: (P.rank[pq[0]] + Q.rank[pq[1]], pq),
    )
    idx = {pq: i for i, pq in enumerate(pairs)}
    ranks: list[list[int]] = [[] for _ in range(depth + 1)]
    for (p, q), i in idx.items():
        ranks[P.rank[p] + Q.rank[q]].append(i)
    covers = []
    colors = {} if (P.colored and Q.colored) else None
    for (p, q), i in idx.items():
        for p2 in P.up[p]:
            j = idx.get((p2, q))
            if j is not None:
                covers.append((i, j))
                if colors is not None:
                    colors[(i, j)] = idx[(P.edge_colors[(p, p2)], Q.bottom)]
        for q2 in Q.up[q]:
            j = idx.get((p, q2))
            if j is not None:
                covers.append((i, j))
                if colors is not None:
                    colors[(i, j)] = idx[(P.bottom, Q.edge_colors[(q, q2)])]
    labels = None
    if P.labels is not None and Q.labels is not None:
        labels = [f"({P.labels[p]},{Q.labels[q]})" for p, q in pairs]
    return TruncatedPoset(depth, ranks, covers, colors, labels)
