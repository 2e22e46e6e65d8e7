import json

import pytest
from hypothesis import given, settings

from aas_reader import read_aas
from strategies import descriptions
from twindesc import load_corpus, parse_text
from twindesc.aas import (
    SUPPORT_LEVELS, SupportLevel, ValueType, map_to_aas, serialize_aas, support_level,
)
from twindesc.analysis import has_errors, validate
from twindesc.model import CharacteristicId, DtDescription, InvalidDescriptionError, NodeKind
from twindesc.naming import assign_id_shorts, sanitize_id_short

C = CharacteristicId
TABLE = {
    SupportLevel.EXPLICIT: {C(1), C(4), C(9), C(10)},
    SupportLevel.PARTIAL: {C(5), C(6), C(13), C(14)},
    SupportLevel.IMPLICIT: {C(2), C(3), C(7), C(8)},
    SupportLevel.NOT_SUPPORTED: {C(11), C(12)},
}


def test_support_levels():
    assert support_level(C(1)) is SupportLevel.EXPLICIT
    assert support_level(C(11)) is SupportLevel.NOT_SUPPORTED
    assert support_level(C(5)) is SupportLevel.PARTIAL
    assert {k: set(v) for k, v in SUPPORT_LEVELS.items()} == TABLE


@pytest.mark.parametrize("name,expected", [
    ("Estimate Tool Wear", "estimateToolWear"),
    ("3D reference model", "_3dReferenceModel"),
    ("Streaming/Database of Drill Hole Metrics", "streamingDatabaseOfDrillHoleMetrics"),
    ("snake_case name", "snake_caseName"),
    ("???", "_"),
])
def test_sanitize(name, expected):
    assert sanitize_id_short(name) == expected


def test_sanitize_collisions():
    assert assign_id_shorts(["a b", "a-b"]) == ["aB", "aB2"]
    assert assign_id_shorts(["x", "x", "x"]) == ["x", "x2", "x3"]
    with pytest.raises(ValueError):
        sanitize_id_short("")


def test_buckets_smart_clamp(clamp):
    doc = map_to_aas(clamp)
    for level, members in TABLE.items():
        assert set(doc.bucket(level)) == members
    assert [e.characteristic for e in doc.mapping_report] == list(C)


def test_smart_clamp_shape(clamp):
    doc = map_to_aas(clamp)
    assert len(doc.views) == 6
    assert doc.header.asset_name == "Smart Clamp Drilling Machine"
    tool = doc.submodel("_1dToolDimensions")
    assert [p.id_short for p in tool.properties] == ["curr1dToolDimensions"]
    assert tool.properties[0].value_type is ValueType.NUMBER
    assert tool.references == ("toolWearEstimator",)
    assert doc.submodel("toolReferenceModel").properties[0].id_short == "storedToolReferenceModel"
    caps = doc.submodel("Capabilities")
    assert len(caps.properties) == 6
    assert all(p.value is True for p in caps.properties)
    view = next(v for v in doc.views if v.id_short == "sliceEstimateToolWear")
    assert set(view.contained) == {"toolWearEstimator", "_1dToolDimensions",
                                   "toolReferenceModel", "Capabilities"}
    assert doc.derived_from is None


def test_empty_description():
    doc = map_to_aas(DtDescription("X"))
    assert doc.submodels == () and doc.views == ()
    assert doc.header.shell_id == "urn:twindesc:aas:x"
    assert len(doc.mapping_report) == 14
    assert all(e.annotation.startswith("Not reported") for e in doc.mapping_report)


def test_refuses_invalid():
    d = parse_text('digital_twin "X" { usage "U" {}\nenabler "E" {}\nflow "U" -> "E" }')
    with pytest.raises(InvalidDescriptionError) as info:
        map_to_aas(d.description)
    assert [x.code for x in info.value.diagnostics if x.is_error] == ["E101"]


def reference_pairs(doc):
    return {(sm.id_short, r) for sm in doc.submodels for r in sm.references}


def check_references(d, doc):
    """Each flow between submodel-backed nodes is one reference, and nothing else is."""
    nodes = d.constellation.nodes if d.constellation else ()
    backed = [n for n in nodes if n.kind is not NodeKind.USAGE]
    node_sms = [sm for sm in doc.submodels if sm.source_characteristic in (C(8), C(9))]
    assert [sm.source_characteristic for sm in node_sms] == [
        C(8) if n.kind is NodeKind.ENABLER else C(9) for n in backed]
    ids = {n.name: sm.id_short for n, sm in zip(backed, node_sms)}
    assert len(set(ids.values())) == len(ids)
    expected = [(ids[e.source], ids[e.target]) for e in d.constellation.edges
                if e.source in ids and e.target in ids] if d.constellation else []
    found = [(sm.id_short, r) for sm in doc.submodels for r in sm.references]
    assert sorted(found) == sorted(expected)


def test_references_smart_clamp(clamp):
    doc = map_to_aas(clamp)
    check_references(clamp, doc)
    assert len(reference_pairs(doc)) == 8


def body_text(doc):
    raw = json.loads(serialize_aas(doc))
    return json.dumps([raw["header"], raw["submodels"], raw["views"], raw["derivedFrom"]])


def test_no_time_scale_or_fidelity_in_body(clamp):
    body = body_text(map_to_aas(clamp))
    for word in ("real_time", "real-time", "Real-time", "slower", "faster", "fidelity",
                 "Fidelity", "noisy", "tolerant"):
        assert word not in body
    for _, note in clamp.fidelity_notes:
        assert note not in body
    assert clamp.fidelity.general not in body


def test_serializer_format(clamp):
    text = serialize_aas(map_to_aas(clamp))
    assert text.endswith("}\n") and "\r" not in text
    assert text == serialize_aas(map_to_aas(clamp))
    raw = json.loads(text)
    assert json.dumps(raw, sort_keys=True, indent=2, ensure_ascii=False) + "\n" == text
    assert raw["twindescAasVersion"] == "1"


def test_reader_round_trip_corpus():
    for name in ("smart_clamp.dtd", "smart_clamp_partial.dtd", "human_robot.dtd",
                 "minimal.dtd"):
        doc = map_to_aas(load_corpus(name))
        assert read_aas(serialize_aas(doc)) == doc


@settings(max_examples=150, deadline=None)
@given(descriptions())
def test_mapping_properties(d):
    if has_errors(validate(d)):
        with pytest.raises(InvalidDescriptionError):
            map_to_aas(d)
        return
    doc = map_to_aas(d)
    text = serialize_aas(doc)
    assert read_aas(text) == doc
    assert serialize_aas(map_to_aas(d)) == text
    for level, members in TABLE.items():
        assert set(doc.bucket(level)) == members
    check_references(d, doc)
    sm_ids = [sm.id_short for sm in doc.submodels]
    assert len(sm_ids) == len(set(sm_ids))
    assert len({v.id_short for v in doc.views}) == len(doc.views)
    for t in ("real_time", "slower", "faster"):
        assert f'"{t}"' not in body_text(doc)
