"""Slices of a constellation and their DOT rendering."""

from __future__ import annotations

from collections import deque
from typing import Optional

from .model import (
    Constellation, NodeKind, NotAUsageError, Slice, UnknownUsageError,
)
from .naming import assign_id_shorts

__all__ = ["extract_slice", "enumerate_slices", "to_dot"]


def _predecessors(c: Constellation) -> dict[str, list[str]]:
    preds: dict[str, list[str]] = {n.name: [] for n in c.nodes}
    for e in c.edges:
        preds.setdefault(e.target, []).append(e.source)
    return preds


def _closure(preds: dict[str, list[str]], start: str) -> set[str]:
    seen = {start}
    queue = deque([start])
    while queue:
        for p in preds.get(queue.popleft(), ()):
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def _make_slice(c: Constellation, usage: str, members: set[str]) -> Slice:
    nodes = tuple(n.name for n in c.nodes if n.name in members)
    edges = tuple(e.pair for e in c.edges
                  if e.source in members and e.target in members)
    return Slice(usage, nodes, edges)


def extract_slice(c: Constellation, usage: str) -> Slice:
    """Everything in *c* that feeds *usage*, directly or transitively.

    Nodes and edges are listed in the constellation's declaration order.
    """
    kinds = {n.name: n.kind for n in c.nodes}
    if usage not in kinds:
        raise UnknownUsageError(usage)
    if kinds[usage] is not NodeKind.USAGE:
        raise NotAUsageError(usage, kinds[usage])
    return _make_slice(c, usage, _closure(_predecessors(c), usage))


def enumerate_slices(c: Optional[Constellation]) -> list[Slice]:
    if c is None:
        return []
    preds = _predecessors(c)
    return [_make_slice(c, u.name, _closure(preds, u.name)) for u in c.usages]


# -----------------------------------------------------------------------------
# DOT
# -----------------------------------------------------------------------------

_LAYERS = (
    (NodeKind.USAGE, "usages", "ellipse"),
    (NodeKind.ENABLER, "enablers", "box"),
    (NodeKind.MODEL_DATA, "models_and_data", "cylinder"),
)


def _dot_string(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def to_dot(c: Optional[Constellation], highlight: Optional[Slice] = None,
           name: str = "constellation") -> str:
    """Render *c* as a Graphviz digraph with one ``rank=same`` group per layer.

    Flows point upwards (``rankdir=BT``) so usages sit on top and models and
    data at the bottom. Members of *highlight* are drawn bold and filled.
    """
    c = c or Constellation()
    ids = dict(zip([n.name for n in c.nodes], assign_id_shorts([n.name for n in c.nodes])))
    marked = set(highlight.nodes) if highlight else set()
    marked_edges = set(highlight.edges) if highlight else set()

    out = [f"digraph {_dot_string(name)} {{",
           "  rankdir=BT;",
           '  node [fontname="Helvetica"];']
    for kind, cluster, shape in _LAYERS:
        members = [n for n in c.nodes if n.kind is kind]
        if not members:
            continue
        out.append(f"  subgraph {cluster} {{")
        out.append("    rank=same;")
        for n in members:
            attrs = [f"label={_dot_string(n.name)}", f"shape={shape}"]
            if n.name in marked:
                attrs.append('style="bold,filled"')
                attrs.append('fillcolor="lightblue"')
            out.append(f"    {_dot_string(ids[n.name])} [{', '.join(attrs)}];")
        out.append("  }")
    for e in c.edges:
        line = f"  {_dot_string(ids[e.source])} -> {_dot_string(ids[e.target])}"
        if e.pair in marked_edges:
            line += " [style=bold]"
        out.append(line + ";")
    out.append("}")
    return "\n".join(out) + "\n"
