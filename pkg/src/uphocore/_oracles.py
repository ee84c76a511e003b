"""Slow, independent reference computations used to cross-check the fast paths.

Nothing in here is called by the library proper.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .poset import TruncatedPoset


def brute_force_isomorphism(P: TruncatedPoset, Q: TruncatedPoset, colors: str = "plain"):
    """Search all rank-preserving bijections.  Only sensible for ~10 nodes."""
    if P.rank_sizes() != Q.rank_sizes():
        return None
    qcovers = set(Q.covers())
    pcovers = P.covers()
    per_rank = [list(itertools.permutations(sorted(Q.ranks[i]))) for i in range(P.depth + 1)]
    psorted = [sorted(P.ranks[i]) for i in range(P.depth + 1)]
    for choice in itertools.product(*per_rank):
        phi = {}
        for src, dst in zip(psorted, choice):
            phi.update(zip(src, dst))
        if {(phi[a], phi[b]) for a, b in pcovers} != qcovers:
            continue
        if colors == "exact":
            if any(Q.edge_colors[(phi[a], phi[b])] != c for (a, b), c in P.edge_colors.items()):
                continue
        elif colors == "colored":
            rename = {}
            if any(
                rename.setdefault(c, Q.edge_colors[(phi[a], phi[b])]) != Q.edge_colors[(phi[a], phi[b])]
                for (a, b), c in P.edge_colors.items()
            ):
                continue
            if len(set(rename.values())) != len(rename):
                continue
        return [phi[v] for v in range(P.n)]
    return None


def brute_force_automorphism_count(P: TruncatedPoset) -> int:
    covers = set(P.covers())
    count = 0
    psorted = [sorted(r) for r in P.ranks]
    for choice in itertools.product(*(itertools.permutations(r) for r in psorted)):
        phi = {}
        for src, dst in zip(psorted, choice):
            phi.update(zip(src, dst))
        if {(phi[a], phi[b]) for a, b in covers} == covers:
            count += 1
    return count


def brute_force_mobius(P: TruncatedPoset) -> list[int]:
    """mu(0, y) from the definition, with <= decided by path search over covers."""

    def below(x, y):
        if x == y:
            return True
        return any(below(x, z) for z in P.down[y])

    order = sorted(range(P.n), key=lambda v: P.rank[v])
    mu = {}
    for y in order:
        if y == P.bottom:
            mu[y] = 1
        else:
            mu[y] = -sum(mu[z] for z in order if P.rank[z] < P.rank[y] and below(z, y))
    return [mu[v] for v in range(P.n)]


def brute_force_classes(relations: Sequence[tuple[tuple[int, ...], tuple[int, ...]]], r: int, depth: int):
    """Union-find over every word of length <= depth.  Returns class counts per length."""
    counts = []
    for length in range(depth + 1):
        words = list(itertools.product(range(r), repeat=length))
        index = {w: i for i, w in enumerate(words)}
        parent = list(range(len(words)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for w in words:
            for lhs, rhs in relations:
                k = len(lhs)
                for i in range(length - k + 1):
                    if w[i : i + k] == tuple(lhs):
                        v = w[:i] + tuple(rhs) + w[i + k :]
                        a, b = find(index[w]), find(index[v])
                        if a != b:
                            parent[a] = b
        counts.append(len({find(i) for i in range(len(words))}))
    return counts


def brute_force_same_class(relations, w1, w2) -> bool:
    """Decide w1 = w2 by exhaustive union-find on all words of their length."""
    if len(w1) != len(w2):
        return False
    r = max(max(w1, default=0), max(w2, default=0), *(max(a + b) for a, b in relations)) + 1
    length = len(w1)
    words = list(itertools.product(range(r), repeat=length))
    index = {w: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for w in words:
        for lhs, rhs in relations:
            k = len(lhs)
            for i in range(length - k + 1):
                if w[i : i + k] == tuple(lhs):
                    v = w[:i] + tuple(rhs) + w[i + k :]
                    parent[find(index[w])] = find(index[v])
    return find(index[tuple(w1)]) == find(index[tuple(w2)])


def random_graded_poset(rng: random.Random, max_nodes: int = 10, max_depth: int = 4) -> TruncatedPoset:
    """A random graded poset with a unique minimum, at most ``max_nodes`` nodes."""
    depth = rng.randint(1, max_depth)
    sizes = [1]
    budget = max_nodes - 1
    for _ in range(depth):
        if budget <= 0:
            break
        k = rng.randint(1, min(3, budget))
        sizes.append(k)
        budget -= k
    depth = len(sizes) - 1
    ranks = []
    nxt = 0
    for k in sizes:
        ranks.append(list(range(nxt, nxt + k)))
        nxt += k
    covers = []
    for i in range(1, depth + 1):
        for v in ranks[i]:
            below = ranks[i - 1]
            chosen = rng.sample(below, rng.randint(1, len(below)))
            covers.extend((u, v) for u in chosen)
    return TruncatedPoset(depth, ranks, covers)


def relabel(P: TruncatedPoset, rng: random.Random) -> TruncatedPoset:
    perm = list(range(P.n))
    rng.shuffle(perm)
    ranks = [[perm[v] for v in r] for r in P.ranks]
    covers = [(perm[a], perm[b]) for a, b in P.covers()]
    colors = None
    if P.edge_colors is not None:
        colors = {(perm[a], perm[b]): perm[c] for (a, b), c in P.edge_colors.items()}
    labels = None
    if P.labels is not None:
        labels = [""] * P.n
        for v in range(P.n):
            labels[perm[v]] = P.labels[v]
    return TruncatedPoset(P.depth, ranks, covers, colors, labels)


def brute_force_core_size(relations, r: int, depth: int) -> int | None:
    """Size of ``[0, join of the generators]`` from union-find classes of whole words.

    An upper bound of all atoms is a class holding words that start with every
    generator.  Returns ``None`` unless the least length carrying such classes
    carries exactly one.
    """
    by_length = []
    for length in range(depth + 1):
        words = list(itertools.product(range(r), repeat=length))
        index = {w: i for i, w in enumerate(words)}
        parent = list(range(len(words)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for w in words:
            for lhs, rhs in relations:
                k = len(lhs)
                for i in range(length - k + 1):
                    if w[i : i + k] == tuple(lhs):
                        a, b = find(index[w]), find(index[w[:i] + tuple(rhs) + w[i + k :]])
                        if a != b:
                            parent[a] = b
        classes: dict[int, list] = {}
        for w in words:
            classes.setdefault(find(index[w]), []).append(w)
        by_length.append(list(classes.values()))
    for length, classes in enumerate(by_length):
        tops = [c for c in classes if {w[0] for w in c} == set(range(r))] if length else []
        if not tops:
            continue
        if len(tops) != 1:
            return None
        top = tops[0]
        size = 0
        for k in range(length + 1):
            prefixes = {w[:k] for w in top}
            size += sum(1 for c in by_length[k] if prefixes & set(c))
        return size
    return None
