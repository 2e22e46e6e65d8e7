"""Test-only reader: canonical AAS JSON back into an AasDocument."""

import json

from twindesc.aas import (
    AasDocument, AasEvent, AasHeader, AasOperation, AasProperty, AasSubmodel, AasView,
    MappingEntry, SupportLevel, ValueType,
)
from twindesc.model import CharacteristicId


def read_aas(text: str) -> AasDocument:
    raw = json.loads(text)
    assert raw["twindescAasVersion"] == "1"
    h = raw["header"]
    header = AasHeader(h["shellId"], h["assetId"], h["assetName"], h.get("multiplicityNote"))
    submodels = tuple(
        AasSubmodel(
            sm["idShort"],
            CharacteristicId.from_code(sm["sourceCharacteristic"]),
            tuple(AasProperty(p["idShort"], ValueType(p["valueType"]), p["value"],
                              p["description"]) for p in sm["properties"]),
            tuple(AasOperation(o["idShort"], o["description"]) for o in sm["operations"]),
            tuple(AasEvent(e["idShort"], e["description"]) for e in sm["events"]),
            tuple(sm["references"]),
        ) for sm in raw["submodels"])
    views = tuple(AasView(v["idShort"], tuple(v["contained"])) for v in raw["views"])
    report = tuple(
        MappingEntry(CharacteristicId.from_code(e["characteristic"]),
                     SupportLevel(e["supportLevel"]), tuple(e["elements"]), e["annotation"])
        for e in raw["mappingReport"])
    return AasDocument(header, submodels, views, raw["derivedFrom"], report)
