"""Builders for the named posets and monoids.

``build_Dn`` and ``build_Fn`` follow the rank-by-rank recursive rules; the
monoid builders return :class:`Presentation` objects whose truncations come
from :func:`uphocore.presentation.lattice_of_presentation`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .poset import TruncatedPoset, direct_product
from .presentation import Presentation, lattice_of_presentation


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError("partition parts must be positive")
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise ValueError("partition parts must be weakly decreasing")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class FiberFunction:
    """A function ``[n] -> [n]`` stored 1-based: ``values[i-1] = f(i)``."""

    values: tuple[int, ...]

    def __post_init__(self):
        n = len(self.values)
        if n == 0 or any(not 1 <= v <= n for v in self.values):
            raise ValueError("values must lie in [1, n]")

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def image_size(self) -> int:
        return len(set(self.values))

    def is_bijective(self) -> bool:
        return self.image_size() == self.n

    def fiber_sizes(self) -> Partition:
        counts: dict[int, int] = {}
        for v in self.values:
            counts[v] = counts.get(v, 0) + 1
        return Partition(tuple(sorted(counts.values(), reverse=True)))


def partitions(n: int, largest: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(n, n if largest is None else largest):
        yield Partition(parts)


def all_functions(n: int) -> Iterator[FiberFunction]:
    for values in itertools.product(range(1, n + 1), repeat=n):
        yield FiberFunction(values)


# --- finite lattices ------------------------------------------------------------


def build_chain(N: int) -> TruncatedPoset:
    return TruncatedPoset(N, [[i] for i in range(N + 1)], [(i, i + 1) for i in range(N)])


def build_Mn(n: int) -> TruncatedPoset:
    """The rank-two lattice with ``n`` atoms."""
    if n < 1:
        raise ValueError("n >= 1 required")
    atoms = list(range(1, n + 1))
    top = n + 1
    covers = [(0, a) for a in atoms] + [(a, top) for a in atoms]
    return TruncatedPoset(2, [[0], atoms, [top]], covers)


def build_Bn(n: int) -> TruncatedPoset:
    """Boolean lattice of subsets of ``[n]``; node ids follow (size, colex) order."""
    if n < 1:
        raise ValueError("n >= 1 required")
    subsets = sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m))
    idx = {m: i for i, m in enumerate(subsets)}
    ranks: list[list[int]] = [[] for _ in range(n + 1)]
    for m in subsets:
        ranks[bin(m).count("1")].append(idx[m])
    covers = [(idx[m], idx[m | 1 << j]) for m in subsets for j in range(n) if not m >> j & 1]
    labels = ["{" + ",".join(str(j + 1) for j in range(n) if m >> j & 1) + "}" for m in subsets]
    return TruncatedPoset(n, ranks, covers, labels=labels)


# --- recursive upho constructions ------------------------------------------------


class _Builder:
    def __init__(self):
        self.ranks: list[list[int]] = [[0]]
        self.covers: list[tuple[int, int]] = []
        self.n = 1
        self.up_count: dict[int, int] = {0: 0}

    def new(self, rank: int, below: Sequence[int]) -> int:
        v = self.n
        self.n += 1
        while len(self.ranks) <= rank:
            self.ranks.append([])
        self.ranks[rank].append(v)
        self.up_count[v] = 0
        for u in below:
            self.covers.append((u, v))
            self.up_count[u] += 1
        return v

    def done(self, depth: int) -> TruncatedPoset:
        return TruncatedPoset(depth, self.ranks, self.covers)


def build_Dn(n: int, N: int) -> TruncatedPoset:
    """Dominating vertex construction cut at rank ``N``.

    At each rank a new node covers the whole previous rank, then every node of
    the previous rank receives ``n - 1`` private upper covers.
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    b = _Builder()
    for i in range(1, N + 1):
        prev = list(b.ranks[i - 1])
        b.new(i, prev)
        for p in prev:
            for _ in range(n - 1):
                b.new(i, [p])
    return b.done(N)


def build_Fn(n: int, N: int) -> TruncatedPoset:
    """Flip construction cut at rank ``N``.

    Rank 1 is a claw of ``n`` atoms.  From rank 2 on, each node two ranks down
    gets a new node covering exactly its ``n`` upper covers, then each node of
    the previous rank is topped up with private covers to up-degree ``n``.
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    b = _Builder()
    ups: dict[int, list[int]] = {0: []}
    if N >= 1:
        for _ in range(n):
            ups[0].append(b.new(1, [0]))
    for i in range(2, N + 1):
        for p in list(b.ranks[i - 2]):
            qs = ups[p]
            v = b.new(i, qs)
            for q in qs:
                ups.setdefault(q, []).append(v)
        for p in list(b.ranks[i - 1]):
            ups.setdefault(p, [])
            while len(ups[p]) < n:
                ups[p].append(b.new(i, [p]))
    return b.done(N)


# --- monoids --------------------------------------------------------------------


def _gen_names(n: int) -> tuple[str, ...]:
    return tuple(f"s{i}" for i in range(1, n + 1))


def monoid_Mf(f: FiberFunction | Sequence[int]) -> Presentation:
    """``<s_1..s_n | s_1 s_f(1) = s_2 s_f(2) = ... = s_n s_f(n)>`` as ``n - 1`` adjacent pairs."""
    if not isinstance(f, FiberFunction):
        f = FiberFunction(tuple(f))
    words = [(i - 1, f(i) - 1) for i in range(1, f.n + 1)]
    rels = []
    for a, b in zip(words, words[1:]):
        if a != b:
            rels.append((a, b))
    return Presentation(_gen_names(f.n), tuple(rels))


def fiber_function_of_partition(lam: Partition | Sequence[int]) -> FiberFunction:
    """The block-constant idempotent whose fibers have sizes ``lam``."""
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    values = []
    end = 0
    for part in lam.parts:
        end += part
        values.extend([end] * part)
    return FiberFunction(tuple(values))


def monoid_free_commutative(n: int) -> Presentation:
    rels = tuple(((i, j), (j, i)) for i in range(n) for j in range(i + 1, n))
    return Presentation(_gen_names(n), rels)


def monoid_shifted(n: int) -> Presentation:
    """``s_i s_(j-1) = s_j s_i`` for ``1 <= i < j <= n``."""
    rels = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lhs, rhs = (i - 1, j - 2), (j - 1, i - 1)
            if lhs != rhs:
                rels.append((lhs, rhs))
    return Presentation(_gen_names(n), tuple(rels))


def lattice_of_function(f: FiberFunction | Sequence[int], N: int) -> TruncatedPoset:
    """Colored truncation of ``(M(f), <=_L)`` at depth ``N``."""
    return lattice_of_presentation(monoid_Mf(f), N)


def product(P: TruncatedPoset, Q: TruncatedPoset) -> TruncatedPoset:
    return direct_product(P, Q)


def function_orbits(n: int) -> list[tuple[FiberFunction, int]]:
    """Conjugacy orbits ``f ~ s f s^-1`` of maps ``[n] -> [n]``, as (least member, size).

    Conjugate functions give the same monoid up to renaming generators, so a
    census over all ``n^n`` functions only needs one member per orbit.
    """
    perms = list(itertools.permutations(range(n)))
    seen: set[tuple[int, ...]] = set()
    out = []
    for values in itertools.product(range(n), repeat=n):
        if values in seen:
            continue
        orbit = set()
        for s in perms:
            g = [0] * n
            for i in range(n):
                g[s[i]] = s[values[i]]
            orbit.add(tuple(g))
        seen |= orbit
        out.append((FiberFunction(tuple(v + 1 for v in values)), len(orbit)))
    return out


def census(n: int, N: int = 4, orbits: bool = True) -> dict[str, list[FiberFunction]]:
    """Group the truncations ``L(f)`` at depth ``N`` by plain canonical form."""
    from .iso import canonical_form

    reps = [f for f, _ in function_orbits(n)] if orbits else list(all_functions(n))
    groups: dict[str, list[FiberFunction]] = {}
    for f in reps:
        key = canonical_form(lattice_of_function(f, N).uncolored()).hex()
        groups.setdefault(key, []).append(f)
    return groups
