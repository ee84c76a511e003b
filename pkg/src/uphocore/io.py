"""Flat-file formats: ``.mono`` presentations, JSON posets and reports, DOT."""

from __future__ import annotations

import json
from pathlib import Path

from .poset import TruncatedPoset
from .presentation import Presentation, parse_presentation

# colors cycled over atoms in DOT output
PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan", "gray40", "gold3")


class FormatError(ValueError):
    pass


def read_presentation(path) -> Presentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


def write_presentation(p: Presentation, path):
    Path(path).write_text(p.to_text(), encoding="utf-8")


# --- posets ---------------------------------------------------------------------


def _edge_key(e) -> str:
    return f"{e[0]},{e[1]}"


def poset_to_dict(P: TruncatedPoset) -> dict:
    doc: dict = {"depth": P.depth, "ranks": [list(r) for r in P.ranks], "covers": [list(e) for e in P.covers()]}
    if P.edge_colors is not None:
        doc["edge_colors"] = {_edge_key(e): P.edge_colors[e] for e in P.covers()}
    if P.labels is not None:
        doc["labels"] = list(P.labels)
    return doc


def poset_from_dict(doc: dict) -> TruncatedPoset:
    try:
        depth = doc["depth"]
        ranks = doc["ranks"]
        covers = [tuple(e) for e in doc["covers"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"poset document is missing a field: {exc}") from None
    colors = None
    if doc.get("edge_colors") is not None:
        colors = {}
        for key, atom in doc["edge_colors"].items():
            lo, _, hi = key.partition(",")
            try:
                colors[(int(lo), int(hi))] = int(atom)
            except ValueError:
                raise FormatError(f"bad edge key {key!r}; expected 'lower,upper'") from None
    try:
        return TruncatedPoset(depth, ranks, covers, colors, doc.get("labels"))
    except ValueError as exc:
        raise FormatError(f"invalid poset: {exc}") from None


def dumps_document(doc: dict) -> str:
    """One top-level field per line, values compact, so diffs stay readable."""
    lines = [f"  {json.dumps(k)}: {json.dumps(v, separators=(',', ':'), ensure_ascii=False)}" for k, v in doc.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def dumps_poset(P: TruncatedPoset) -> str:
    return dumps_document(poset_to_dict(P))


def loads_poset(text: str) -> TruncatedPoset:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not a JSON poset document: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("poset document must be a JSON object")
    return poset_from_dict(doc)


def read_poset(path) -> TruncatedPoset:
    return loads_poset(Path(path).read_text(encoding="utf-8"))


def write_poset(P: TruncatedPoset, path):
    Path(path).write_text(dumps_poset(P), encoding="utf-8")


# --- DOT --------------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(P: TruncatedPoset, colored: bool = False, name: str = "P") -> str:
    """Hasse diagram, bottom up, one same-rank subgraph per rank."""
    if colored and not P.colored:
        raise ValueError("colored output needs an edge-colored poset")
    atom_pos = {a: i for i, a in enumerate(P.atoms)}
    out = [f"digraph {name} {{", "  rankdir=BT;", '  node [shape=circle, fontsize=10];', "  edge [arrowhead=none];"]
    for r, nodes in enumerate(P.ranks):
        body = " ".join(f"n{v} [label={_quote(P.label(v))}];" for v in sorted(nodes))
        out.append(f"  subgraph rank{r} {{ rank=same; {body} }}")
    for lo, hi in P.covers():
        if colored:
            c = P.edge_colors[(lo, hi)]
            color = PALETTE[atom_pos.get(c, 0) % len(PALETTE)]
            out.append(f"  n{lo} -> n{hi} [label={_quote(P.label(c))}, color={color}, fontcolor={color}];")
        else:
            out.append(f"  n{lo} -> n{hi};")
    out.append("}")
    return "\n".join(out) + "\n"


# --- realization reports ---------------------------------------------------------


def coloring_to_dict(c) -> dict:
    return {_edge_key(e): a for e, a in sorted(c.items())}


def report_to_dict(report, L: TruncatedPoset | None = None) -> dict:
    """Timestamp-free structured form of a :class:`RealizationReport`."""
    doc: dict = {"lattice": report.lattice_name}
    if L is not None:
        doc["lattice_poset"] = poset_to_dict(L)
    doc.update(
        {
            "depth": report.depth,
            "probe": report.probe,
            "colorings_enumerated": report.colorings_enumerated,
            "distinct_at_depth": report.distinct_at_depth,
            "survivors": [
                {
                    "certificate": s.certificate,
                    "presentation": s.presentation.to_text(),
                    "colorings": s.colorings,
                    "stable_depth": s.stable_depth,
                }
                for s in report.survivors
            ],
            "undecided": [
                {"coloring": c.index, "depth": c.depth, "reason": c.reason, "presentation": c.presentation.to_text()}
                for c in report.undecided
            ],
            "rejected": [{"coloring": c.index, "reason": c.reason} for c in report.rejected],
            "caveat": report.caveat,
        }
    )
    return doc


def dumps_report(report, L: TruncatedPoset | None = None) -> str:
    return dumps_document(report_to_dict(report, L))
