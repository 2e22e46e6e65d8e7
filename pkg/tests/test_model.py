import pytest

from twindesc import load_corpus, parse_text
from twindesc.model import (
    ChannelBlock, ChannelItem, CharacteristicId, Constellation, Direction, DtDescription,
    Node, NodeKind, Presence, TimeScale, Transfer, UnknownNodeError, completeness,
    presence_of_automatic_actions, presence_of_automatic_data, reported_characteristics,
)


def test_characteristic_codes():
    assert [c.code for c in CharacteristicId][:3] == ["C1", "C2", "C3"]
    assert CharacteristicId.from_code("c12") is CharacteristicId(12)
    assert CharacteristicId.from_code("C5").title
    with pytest.raises(ValueError):
        CharacteristicId.from_code("C15")


def test_completeness_examples(clamp):
    assert completeness(DtDescription("X")) == (frozenset(), 0)
    assert completeness(clamp)[1] == 14
    partial = load_corpus("smart_clamp_partial.dtd")
    reported, score = completeness(partial)
    assert score == 12
    assert set(CharacteristicId) - reported == {CharacteristicId(11), CharacteristicId(12)}


def test_empty_block_still_counts_as_reported():
    d = parse_text('digital_twin "X" { evolution {} }').description
    assert reported_characteristics(d) == {CharacteristicId(14)}


def test_time_scale_on_a_usage_reports_c11():
    d = parse_text('digital_twin "X" { usage "U" { time_scale: real_time } }').description
    assert CharacteristicId(11) in reported_characteristics(d)


def test_presence_of_automatic_data(clamp):
    assert presence_of_automatic_data(clamp) is Presence.PRESENT
    d = parse_text('digital_twin "X" { data { automatic none } }').description
    assert presence_of_automatic_data(d) is Presence.ABSENT
    assert presence_of_automatic_data(DtDescription("X")) is Presence.UNREPORTED
    only_manual = parse_text('digital_twin "X" { data { manual "m" } }').description
    assert presence_of_automatic_data(only_manual) is Presence.UNREPORTED


def test_presence_of_automatic_actions(clamp):
    assert presence_of_automatic_actions(clamp) is Presence.ABSENT
    d = parse_text('digital_twin "X" { actions { automatic "adjust drill parameters" } }')
    assert presence_of_automatic_actions(d.description) is Presence.PRESENT
    d = parse_text('digital_twin "X" { actions { agent "change bit" } }')
    assert presence_of_automatic_actions(d.description) is Presence.UNREPORTED


def test_insights_never_change_presence(clamp):
    extra = ChannelItem("New insight", Direction.INSIGHT, time_scale=TimeScale.REAL_TIME)
    more = ChannelBlock(clamp.insights.items + (extra,))
    d = DtDescription(**{**clamp.__dict__, "insights": more})
    assert presence_of_automatic_data(d) is presence_of_automatic_data(clamp)
    assert presence_of_automatic_actions(d) is presence_of_automatic_actions(clamp)


def test_locations_do_not_affect_equality():
    a = ChannelItem("x", Direction.DATA, Transfer.AUTOMATIC, location=(1, 1))
    b = ChannelItem("x", Direction.DATA, Transfer.AUTOMATIC, location=(9, 4))
    assert a == b


def test_constellation_lookup(clamp):
    c = clamp.constellation
    assert c.node("Dashboard").kind is NodeKind.ENABLER
    assert len(c.usages) == 6 and len(c.enablers) == 4 and len(c.models_and_data) == 6
    with pytest.raises(UnknownNodeError):
        c.node("nope")
    assert Constellation().names() == []


def test_node_keyword_defaults():
    assert Node("m", NodeKind.MODEL_DATA).keyword == "model"
    assert Node("u", NodeKind.USAGE).keyword == "usage"


def test_frozen():
    d = DtDescription("X")
    with pytest.raises(AttributeError):
        d.name = "Y"
