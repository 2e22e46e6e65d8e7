import itertools

import pytest
from hypothesis import given, settings

from strategies import constellations
from twindesc.analysis import validate
from twindesc.constellation import enumerate_slices, extract_slice, to_dot
from twindesc.model import (
    Constellation, DtDescription, Edge, Node, NodeKind, NotAUsageError, UnknownUsageError,
)


def warshall(c):
    """Reachability oracle: reach[a][b] is True when a path leads from a to b."""
    names = [n.name for n in c.nodes]
    reach = {a: {b: a == b for b in names} for a in names}
    for e in c.edges:
        reach[e.source][e.target] = True
    for k in names:
        for i in names:
            for j in names:
                if reach[i][k] and reach[k][j]:
                    reach[i][j] = True
    return reach


def check_slice(c, s):
    reach = warshall(c)
    expected = {n for n in reach if reach[n][s.usage]}
    assert set(s.nodes) == expected
    assert len(s.nodes) == len(set(s.nodes))
    assert set(s.edges) == {e.pair for e in c.edges
                            if e.source in expected and e.target in expected}
    # subset and declaration order
    order = [n.name for n in c.nodes]
    assert list(s.nodes) == [n for n in order if n in expected]
    assert s.usage in s.nodes


U, E, M = NodeKind.USAGE, NodeKind.ENABLER, NodeKind.MODEL_DATA


def all_small_graphs(max_nodes=3):
    for n in range(1, max_nodes + 1):
        for kinds in itertools.product((U, E, M), repeat=n):
            nodes = tuple(Node(f"n{i}", k) for i, k in enumerate(kinds))
            pairs = [(a.name, b.name) for a in nodes for b in nodes]
            for mask in range(2 ** len(pairs)):
                edges = tuple(Edge(*p) for i, p in enumerate(pairs) if mask >> i & 1)
                yield Constellation(nodes, edges)


def test_exhaustive_small_graphs():
    count = 0
    for c in all_small_graphs():
        slices = enumerate_slices(c)
        assert [s.usage for s in slices] == [n.name for n in c.usages]
        for s in slices:
            check_slice(c, s)
        count += 1
    assert count == 3 * 2 + 9 * 16 + 27 * 512


@settings(max_examples=400)
@given(constellations(max_nodes=8))
def test_slices_match_reachability(c):
    for s in enumerate_slices(c):
        check_slice(c, s)
        assert s == extract_slice(c, s.usage)


def test_tool_wear_slice(clamp):
    s = extract_slice(clamp.constellation, "Estimate Tool Wear")
    assert set(s.nodes) == {"Estimate Tool Wear", "Tool Wear Estimator",
                            "1D Tool Dimensions", "Tool Reference Model"}
    assert len(s.edges) == 3


def test_six_slices(clamp):
    slices = enumerate_slices(clamp.constellation)
    assert len(slices) == 6
    assert [s.usage for s in slices] == [n.name for n in clamp.constellation.usages]


def test_isolated_usage():
    c = Constellation((Node("u", U),))
    assert extract_slice(c, "u").nodes == ("u",)


def test_cycle_terminates():
    c = Constellation((Node("m", M), Node("e", E), Node("u", U)),
                      (Edge("m", "e"), Edge("e", "m"), Edge("e", "u")))
    s = extract_slice(c, "u")
    assert s.nodes == ("m", "e", "u")
    assert set(s.edges) == {("m", "e"), ("e", "m"), ("e", "u")}


def test_shared_enabler():
    c = Constellation((Node("e", E), Node("u1", U), Node("u2", U)),
                      (Edge("e", "u1"), Edge("e", "u2")))
    slices = enumerate_slices(c)
    assert len(slices) == 2
    assert all("e" in s.nodes for s in slices)
    assert enumerate_slices(Constellation((Node("e", E),))) == []
    assert enumerate_slices(None) == []


def test_slice_errors(clamp):
    with pytest.raises(UnknownUsageError):
        extract_slice(clamp.constellation, "nope")
    with pytest.raises(NotAUsageError):
        extract_slice(clamp.constellation, "Dashboard")


def test_nodes_outside_every_slice_are_flagged():
    c = Constellation((Node("m", M), Node("e", E), Node("u", U)), (Edge("e", "u"),))
    d = DtDescription("X", constellation=c)
    flagged = {x.message.split("'")[1] for x in validate(d) if x.code == "W204"}
    covered = set().union(*(s.nodes for s in enumerate_slices(c)))
    assert flagged == {n.name for n in c.nodes if n.kind is not U} - covered == {"m"}


def test_dot_empty():
    text = to_dot(Constellation())
    assert text.startswith('digraph "constellation" {')
    assert "->" not in text and "label=" not in text


def test_dot_smart_clamp(clamp):
    text = to_dot(clamp.constellation, name=clamp.name)
    assert text.count("label=") == 16
    assert text.count(" -> ") == 14
    assert text.count("rank=same;") == 3
    usages, enablers, data = (text.index(f"subgraph {s}") for s in
                              ("usages", "enablers", "models_and_data"))
    assert usages < enablers < data
    assert text == to_dot(clamp.constellation, name=clamp.name)


def test_dot_highlight(clamp):
    s = extract_slice(clamp.constellation, "Estimate Tool Wear")
    text = to_dot(clamp.constellation, s)
    assert text.count('fillcolor="lightblue"') == 4
    assert text.count("[style=bold]") == 3
    assert '"estimateToolWear" [label="Estimate Tool Wear", shape=ellipse, ' \
           'style="bold,filled"' in text


def test_dot_escapes_quotes():
    c = Constellation((Node('say "hi"', U),))
    assert 'label="say \\"hi\\""' in to_dot(c)


@given(constellations(max_nodes=8, legal_only=True))
def test_legal_slice_has_one_usage(c):
    for s in enumerate_slices(c):
        assert [n for n in s.nodes if c.node(n).kind is U] == [s.usage]
