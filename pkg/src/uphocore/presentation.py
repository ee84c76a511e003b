"""Homogeneous monoid presentations and their elements up to a length bound.

Elements of the monoid are congruence classes of words.  Because every
relation is length preserving, the class of a word only contains words of the
same length, so a class can be found by exhaustive breadth-first search over
single relation applications.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

Word = tuple[int, ...]

DEFAULT_WORD_CAP = 5_000_000
WORD_CAP_ENV = "UPHOCORE_WORD_CAP"


class PresentationError(ValueError):
    """Malformed presentation text or an invalid relation."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class WordCapExceeded(RuntimeError):
    pass


class Generator(NamedTuple):
    index: int
    name: str


@dataclass(frozen=True)
class Presentation:
    names: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...] = ()

    def __post_init__(self):
        if not self.names:
            raise PresentationError("a presentation needs at least one generator")
        if len(set(self.names)) != len(self.names):
            raise PresentationError("generator names must be unique")
        for name in self.names:
            if not name or any(ch.isspace() for ch in name) or "=" in name or "#" in name:
                raise PresentationError(f"bad generator name {name!r}")
        r = len(self.names)
        for lhs, rhs in self.relations:
            if not lhs or not rhs:
                raise PresentationError("relation words must be nonempty")
            if len(lhs) != len(rhs):
                raise PresentationError(
                    f"inhomogeneous relation {self.format_word(lhs)} = {self.format_word(rhs)}"
                )
            if lhs == rhs:
                raise PresentationError(f"trivial relation {self.format_word(lhs)} = itself")
            if any(not 0 <= x < r for x in lhs + rhs):
                raise PresentationError("relation uses an unknown generator index")

    @property
    def r(self) -> int:
        return len(self.names)

    @property
    def generators(self) -> list[Generator]:
        return [Generator(i, name) for i, name in enumerate(self.names)]

    @property
    def single_char(self) -> bool:
        return all(len(name) == 1 for name in self.names)

    def word(self, text: str) -> Word:
        """Parse a word written with this presentation's generator tokens."""
        index = {name: i for i, name in enumerate(self.names)}
        tokens = list(text.replace(" ", "")) if self.single_char else text.split()
        try:
            return tuple(index[t] for t in tokens)
        except KeyError as exc:
            raise PresentationError(f"unknown generator token {exc.args[0]!r}") from None

    def format_word(self, w: Sequence[int]) -> str:
        if not w:
            return "ε"
        sep = "" if self.single_char else " "
        return sep.join(self.names[i] for i in w)

    def to_text(self) -> str:
        """Serialize in the ``.mono`` format read by :func:`parse_presentation`."""
        lines = ["gens: " + " ".join(self.names)]
        for lhs, rhs in self.relations:
            lines.append(f"rel: {self.format_word(lhs)} = {self.format_word(rhs)}")
        return "\n".join(lines) + "\n"

    def relabeled(self, perm: Sequence[int]) -> "Presentation":
        """Rename generator ``i`` to position ``perm[i]``."""
        names = [""] * self.r
        for i, j in enumerate(perm):
            names[j] = self.names[i]
        rels = tuple(
            (tuple(perm[x] for x in lhs), tuple(perm[x] for x in rhs)) for lhs, rhs in self.relations
        )
        return Presentation(tuple(names), rels)


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def parse_presentation(text: str) -> Presentation:
    """Read a presentation in ``.mono`` format.

    >>> parse_presentation("gens: a b\\nrel: ab = ba").relations
    (((0, 1), (1, 0)),)
    """
    names: list[str] | None = None
    relations: list[tuple[Word, Word]] = []
    index: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        col = len(line) - len(line.lstrip()) + 1
        if not sep:
            raise PresentationError("expected 'gens:' or 'rel:'", lineno, col)
        if names is None:
            if key != "gens":
                raise PresentationError("first line must be 'gens: ...'", lineno, col)
            names = rest.split()
            if not names:
                raise PresentationError("no generators listed", lineno, col)
            for name in names:
                if "=" in name:
                    raise PresentationError(f"bad generator token {name!r}", lineno, line.find(name) + 1)
            if len(set(names)) != len(names):
                raise PresentationError("duplicate generator token", lineno, col)
            index = {name: i for i, name in enumerate(names)}
            continue
        if key == "gens":
            raise PresentationError("'gens:' may appear only once", lineno, col)
        if key != "rel":
            raise PresentationError(f"unknown directive {key!r}", lineno, col)
        if rest.count("=") != 1:
            raise PresentationError("relation must have exactly one '='", lineno, len(key) + 2)
        left, right = rest.split("=")
        words = []
        for part, offset in ((left, line.find(":") + 1), (right, line.find("=") + 1)):
            if all(len(n) == 1 for n in names):
                tokens = [ch for ch in part if not ch.isspace()]
            else:
                tokens = part.split()
            if not tokens:
                raise PresentationError("empty relation word", lineno, offset + 1)
            for t in tokens:
                if t not in index:
                    raise PresentationError(f"unknown generator {t!r}", lineno, line.find(t, offset) + 1)
            words.append(tuple(index[t] for t in tokens))
        lhs, rhs = words
        if len(lhs) != len(rhs):
            raise PresentationError(
                f"inhomogeneous relation (lengths {len(lhs)} and {len(rhs)}): {raw.strip()}", lineno, col
            )
        if lhs == rhs:
            raise PresentationError(f"relation equates a word with itself: {raw.strip()}", lineno, col)
        relations.append((lhs, rhs))
    if names is None:
        raise PresentationError("missing 'gens:' line")
    return Presentation(tuple(names), tuple(relations))


def _rewrite_rules(p: Presentation) -> list[tuple[Word, Word]]:
    rules = []
    for lhs, rhs in p.relations:
        rules.append((lhs, rhs))
        rules.append((rhs, lhs))
    return rules


def neighbors(w: Word, rules: Sequence[tuple[Word, Word]]) -> Iterable[Word]:
    """Words obtained from ``w`` by one relation application at any position."""
    n = len(w)
    for lhs, rhs in rules:
        k = len(lhs)
        first = lhs[0]
        for i in range(n - k + 1):
            if w[i] == first and w[i : i + k] == lhs:
                yield w[:i] + rhs + w[i + k :]


def word_cap_default() -> int:
    env = os.environ.get(WORD_CAP_ENV)
    return int(env) if env else DEFAULT_WORD_CAP


@dataclass
class ElementTable:
    """Congruence classes of all words of length at most ``depth``.

    Class ids are dense and ordered by length, then by canonical
    representative (the lexicographically least word of the class).
    """

    presentation: Presentation
    depth: int
    reps: list[Word] = field(default_factory=list)
    by_length: list[list[int]] = field(default_factory=list)
    memo: dict[Word, int] = field(default_factory=dict)
    visited: int = 0

    def counts(self) -> list[int]:
        return [len(ids) for ids in self.by_length]

    def rep(self, cid: int) -> Word:
        return self.reps[cid]

    def length(self, cid: int) -> int:
        return len(self.reps[cid])

    def class_of(self, w: Sequence[int]) -> int:
        return class_of(self.presentation, tuple(w), self)

    def __len__(self) -> int:
        return len(self.reps)


def _component(w: Word, rules, memo: dict[Word, int] | None = None):
    """BFS over the congruence class of ``w``.

    Returns ``(words, hit)`` where ``hit`` is a class id found in ``memo`` (the
    search stops early then) or ``None``.
    """
    n = len(w)
    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        for y in neighbors(x, rules):
            if y in seen:
                continue
            assert len(y) == n, "relation changed word length"
            if memo is not None and y in memo:
                return seen, memo[y]
            seen.add(y)
            queue.append(y)
    return seen, None


def class_of(p: Presentation, w: Word, table: ElementTable) -> int:
    """Class id of the word ``w`` in ``table``."""
    w = tuple(w)
    if len(w) > table.depth:
        raise ValueError(f"word of length {len(w)} exceeds table depth {table.depth}")
    cid = table.memo.get(w)
    if cid is not None:
        return cid
    seen, hit = _component(w, _rewrite_rules(p), table.memo)
    if hit is None:
        # every class of length <= depth is in the table, so this means the
        # table was built for another presentation
        raise ValueError("word not reachable in this element table")
    for x in seen:
        table.memo[x] = hit
    return hit


def build_element_table(p: Presentation, depth: int, word_cap: int | None = None) -> ElementTable:
    """Enumerate all elements of length ``<= depth``, length by length."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    cap = word_cap_default() if word_cap is None else word_cap
    estimate = sum(p.r**k for k in range(depth + 1))
    if estimate > cap:
        raise WordCapExceeded(
            f"up to {estimate} words at depth {depth} exceeds the cap of {cap}; "
            "reduce the depth or raise --word-cap"
        )
    rules = _rewrite_rules(p)
    table = ElementTable(p, depth, reps=[()], by_length=[[0]], memo={(): 0}, visited=1)
    for length in range(1, depth + 1):
        pending: dict[Word, int] = {}
        comps: list[set[Word]] = []
        for cid in table.by_length[length - 1]:
            base = table.reps[cid]
            for s in range(p.r):
                w = base + (s,)
                if w in pending:
                    continue
                comp, _ = _component(w, rules)
                table.visited += len(comp)
                if table.visited > cap:
                    raise WordCapExceeded(
                        f"visited more than {cap} words at length {length}; reduce the depth or raise --word-cap"
                    )
                for x in comp:
                    pending[x] = len(comps)
                comps.append(comp)
        keyed = sorted((min(comp), comp) for comp in comps)
        ids = []
        for rep, comp in keyed:
            cid = len(table.reps)
            table.reps.append(rep)
            ids.append(cid)
            for x in comp:
                table.memo[x] = cid
        table.by_length.append(ids)
    return table


# --- left cancellativity -------------------------------------------------


@dataclass(frozen=True)
class SyntacticPass:
    """Each generator starts at most one relation word, so the monoid is left-cancellative."""

    ok = True


@dataclass(frozen=True)
class EmpiricalPass:
    depth: int
    ok = True


@dataclass(frozen=True)
class Violation:
    generator: int
    left: Word
    right: Word
    ok = False

    def describe(self, p: Presentation) -> str:
        s = p.names[self.generator]
        b, c = p.format_word(self.left), p.format_word(self.right)
        return f"{s}·{b} = {s}·{c} but {b} != {c}"


def satisfies_prefix_condition(p: Presentation) -> bool:
    """True if for each generator at most one relation word begins with it."""
    starts: dict[int, set[Word]] = {}
    for lhs, rhs in p.relations:
        for w in (lhs, rhs):
            starts.setdefault(w[0], set()).add(w)
    return all(len(ws) <= 1 for ws in starts.values())


def check_left_cancellative(p: Presentation, table: ElementTable):
    if satisfies_prefix_condition(p):
        return SyntacticPass()
    for length in range(table.depth):
        for s in range(p.r):
            seen: dict[int, int] = {}
            for b in table.by_length[length]:
                target = table.class_of((s,) + table.reps[b])
                if target in seen:
                    return Violation(s, table.reps[seen[target]], table.reps[b])
                seen[target] = b
    return EmpiricalPass(table.depth)


def divisibility_covers(p: Presentation, table: ElementTable):
    """Left-divisibility order on the table's classes, edges colored by atom.

    There is a cover ``u -> v`` labeled ``s`` whenever ``rep(u)·s`` lies in
    class ``v``.  The color of an edge is the node id of the atom ``s``.
    """
    from .poset import TruncatedPoset

    atom_of = [table.class_of((s,)) for s in range(p.r)] if table.depth >= 1 else []
    colors: dict[tuple[int, int], int] = {}
    for length in range(table.depth):
        for u in table.by_length[length]:
            base = table.reps[u]
            for s in range(p.r):
                v = table.class_of(base + (s,))
                colors.setdefault((u, v), atom_of[s])
    labels = [p.format_word(w) for w in table.reps]
    return TruncatedPoset(table.depth, table.by_length, list(colors), colors, labels)


def lattice_of_presentation(p: Presentation, depth: int, word_cap: int | None = None):
    """Shortcut: the colored depth-``depth`` truncation of ``(M, <=_L)``."""
    return divisibility_covers(p, build_element_table(p, depth, word_cap))
