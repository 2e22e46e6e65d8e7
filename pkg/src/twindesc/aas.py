"""Asset Administration Shell skeletons generated from a description.

Only the slice of the AAS metamodel needed for the mapping is modelled:
header, submodels (properties, operations, events, references), views and
``derivedFrom``. Each characteristic also gets a mapping-report entry stating
its support level and what the mapping could not carry over.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .analysis import validate
from .constellation import enumerate_slices
from .model import (
    CharacteristicId, Direction, DtDescription, InstanceMode, InvalidDescriptionError,
    NodeKind, TimeScale,
)
from .naming import assign_id_shorts, dedupe, sanitize_id_short

__all__ = [
    "SupportLevel", "ValueType", "AasProperty", "AasOperation", "AasEvent",
    "AasSubmodel", "AasView", "AasHeader", "MappingEntry", "AasDocument",
    "SUPPORT_LEVELS", "support_level", "map_to_aas", "serialize_aas", "to_json_dict",
    "sanitize_id_short", "assign_id_shorts", "AAS_FORMAT_VERSION",
]

AAS_FORMAT_VERSION = "1"


class SupportLevel(Enum):
    EXPLICIT = "explicit"
    PARTIAL = "partial"
    IMPLICIT = "implicit"
    NOT_SUPPORTED = "not supported"


_C = CharacteristicId
SUPPORT_LEVELS = {
    SupportLevel.EXPLICIT: frozenset({_C(1), _C(4), _C(9), _C(10)}),
    SupportLevel.PARTIAL: frozenset({_C(5), _C(6), _C(13), _C(14)}),
    SupportLevel.IMPLICIT: frozenset({_C(2), _C(3), _C(7), _C(8)}),
    SupportLevel.NOT_SUPPORTED: frozenset({_C(11), _C(12)}),
}


def support_level(c: CharacteristicId) -> SupportLevel:
    for level, members in SUPPORT_LEVELS.items():
        if c in members:
            return level
    raise ValueError(c)


class ValueType(Enum):
    TEXT = "Text"
    NUMBER = "Number"
    BOOLEAN = "Boolean"


Value = Union[str, float, int, bool, None]


@dataclass(frozen=True)
class AasProperty:
    id_short: str
    value_type: ValueType
    value: Value = None
    description: str = ""


@dataclass(frozen=True)
class AasOperation:
    id_short: str
    description: str = ""


@dataclass(frozen=True)
class AasEvent:
    id_short: str
    description: str = ""


@dataclass(frozen=True)
class AasSubmodel:
    id_short: str
    source_characteristic: CharacteristicId
    properties: tuple[AasProperty, ...] = ()
    operations: tuple[AasOperation, ...] = ()
    events: tuple[AasEvent, ...] = ()
    references: tuple[str, ...] = ()


@dataclass(frozen=True)
class AasView:
    id_short: str
    contained: tuple[str, ...] = ()


@dataclass(frozen=True)
class AasHeader:
    shell_id: str
    asset_id: str
    asset_name: str
    multiplicity_note: Optional[str] = None


@dataclass(frozen=True)
class MappingEntry:
    characteristic: CharacteristicId
    level: SupportLevel
    elements: tuple[str, ...] = ()
    annotation: str = ""


@dataclass(frozen=True)
class AasDocument:
    header: AasHeader
    submodels: tuple[AasSubmodel, ...] = ()
    views: tuple[AasView, ...] = ()
    derived_from: Optional[str] = None
    mapping_report: tuple[MappingEntry, ...] = ()

    def submodel(self, id_short: str) -> AasSubmodel:
        for sm in self.submodels:
            if sm.id_short == id_short:
                return sm
        raise KeyError(id_short)

    def bucket(self, level: SupportLevel) -> list[CharacteristicId]:
        return [e.characteristic for e in self.mapping_report if e.level is level]


# -----------------------------------------------------------------------------
# mapping
# -----------------------------------------------------------------------------

_TYPE_STAGES = {
    "design", "development", "engineering", "ideation", "concept", "planning",
    "prototype", "prototyping", "pre_production", "preproduction",
}
_PRODUCTION_STAGES = {"production", "manufacturing", "realisation", "realization",
                      "assembly"}
_USE_STAGES = {
    "operation", "operations", "usage", "use", "utilisation", "utilization",
    "maintenance", "service", "reclamation", "disposal", "recycling",
}


def _rami_stage(stage: str) -> str:
    key = stage.lower()
    if key in _TYPE_STAGES:
        return "asset type development"
    if key in _PRODUCTION_STAGES:
        return "asset instance production"
    if key in _USE_STAGES:
        return "asset instance usage/maintenance"
    return "no RAMI 4.0 counterpart"


def _upper_first(text: str) -> str:
    text = text.lstrip("_")
    return text[:1].upper() + text[1:]


def _plural(n: int, word: str) -> str:
    return f"{n} {word}" + ("" if n == 1 else "s")


class _Mapper:
    def __init__(self, d: DtDescription):
        self.d = d
        self.submodels: list[AasSubmodel] = []
        self.report: dict[CharacteristicId, tuple[list[str], str]] = {}

    def note(self, cid, elements, annotation):
        self.report[cid] = (list(elements), annotation)

    def run(self) -> AasDocument:
        d = self.d
        base = sanitize_id_short(d.name)
        header = AasHeader(f"urn:twindesc:aas:{base}", f"urn:twindesc:asset:{base}", d.name,
                           self.multiplicity())
        self.documentation()
        self.components(_C(2), d.acting, "acting_", "Acting component")
        self.components(_C(3), d.sensing, "sensing_", "Sensing component")
        self.data_channels()
        self.insights_actions()
        self.capabilities()
        views = self.constellation()
        self.lifecycle()
        self.evolution()
        self.not_supported()

        entries = []
        for cid in CharacteristicId:
            elements, annotation = self.report[cid]
            entries.append(MappingEntry(cid, support_level(cid), tuple(elements), annotation))
        return AasDocument(header, tuple(self.submodels), tuple(views), None, tuple(entries))

    # C4 ---------------------------------------------------------------------

    def multiplicity(self) -> Optional[str]:
        m = self.d.multiplicity
        if m is None:
            self.note(_C(4), [], "Not reported. An AAS describes exactly one asset.")
            return None
        parts = []
        if m.sus_entities is not None:
            parts.append(f"{m.sus_entities} SUS " +
                         ("entity" if m.sus_entities == 1 else "entities"))
        if isinstance(m.dt_instances, InstanceMode):
            parts.append("DT instances: " + m.dt_instances.value.replace("_", " "))
        elif m.dt_instances is not None:
            parts.append(f"DT instances: {m.dt_instances}")
        if m.note:
            parts.append(m.note)
        text = "; ".join(parts)
        if m.sus_entities is not None and m.sus_entities > 1:
            shape = (f"The SUS is mapped as a composite asset of {m.sus_entities} entities "
                     "under one shell.")
        else:
            shape = "The SUS is mapped as a single asset under one shell."
        self.note(_C(4), ["header/multiplicityNote"] if text else [],
                  shape + " An AAS describes exactly one asset, so DT-instance multiplicity "
                          "is recorded as a header note only.")
        return text or None

    # C1 ---------------------------------------------------------------------

    def documentation(self):
        sus = self.d.sus
        if sus is None:
            self.note(_C(1), [], "Not reported.")
            return
        entries = []
        if sus.system is not None:
            entries.append(("system", sus.system, "System under study"))
        if sus.environment is not None:
            entries.append(("environment", sus.environment, "Environment of the system"))
        entries += [("agent", a, "Agent acting on the system") for a in sus.agents]
        ids = assign_id_shorts([e[0] for e in entries])
        props = tuple(AasProperty(i, ValueType.TEXT, value, desc)
                      for i, (_, value, desc) in zip(ids, entries))
        if props:
            self.submodels.append(AasSubmodel("Documentation", _C(1), properties=props))
        self.note(_C(1), [f"Documentation/{p.id_short}" for p in props],
                  "SUS scope documented as text properties of the Documentation submodel.")

    # C2 / C3 ----------------------------------------------------------------

    def components(self, cid, comps, prefix, label):
        if comps is None:
            self.note(cid, [], "Not reported.")
            return
        ids = [prefix + i for i in assign_id_shorts(comps)]
        for sm_id, text in zip(ids, comps):
            self.submodels.append(AasSubmodel(
                sm_id, cid, properties=(AasProperty("description", ValueType.TEXT, text, label),)))
        self.note(cid, ids, f"Modelled as ordinary submodels; only the '{prefix}' name prefix "
                            "marks them, since AAS cannot say whether a component was added "
                            "or modified for the digital twin.")

    # C5 ---------------------------------------------------------------------

    def data_channels(self):
        block = self.d.data
        if block is None:
            self.note(_C(5), [], "Not reported.")
            return
        items = block.items
        ids = assign_id_shorts([i.name for i in items])
        props = []
        for pid, item in zip(ids, items):
            desc = f"{item.transfer.value.capitalize()} data from the SUS: {item.name}"
            if item.description:
                desc += f" ({item.description})"
            props.append(AasProperty(pid, ValueType.TEXT, None, desc))
        if props:
            self.submodels.append(AasSubmodel("DataTransmitted", _C(5), properties=tuple(props)))
        nones = [f"{k} data declared none" for k in ("automatic", "manual")
                 if k in block.none_declared]
        annotation = ("Each data item becomes a typed property with a description; what the "
                      "data means for the twin is not captured beyond that text.")
        if nones:
            annotation += " Explicitly absent: " + ", ".join(nones) + "."
        self.note(_C(5), [f"DataTransmitted/{p.id_short}" for p in props], annotation)

    # C6 ---------------------------------------------------------------------

    def insights_actions(self):
        d = self.d
        if d.insights is None and d.actions is None:
            self.note(_C(6), [], "Not reported.")
            return
        insights = d.insights.items if d.insights else ()
        actions = d.actions.items if d.actions else ()
        ev_ids = assign_id_shorts([i.name for i in insights])
        op_ids = assign_id_shorts([a.name for a in actions], taken=ev_ids)
        events = tuple(AasEvent(i, f"Insight for agents: {it.name}")
                       for i, it in zip(ev_ids, insights))
        ops = []
        for i, act in zip(op_ids, actions):
            who = ("Automatic action by the twin" if act.direction is Direction.AUTOMATIC_ACTION
                   else "Agent action")
            ops.append(AasOperation(i, f"{who}: {act.name}"))
        if events or ops:
            self.submodels.append(AasSubmodel("InsightsAndActions", _C(6),
                                              operations=tuple(ops), events=events))
        elements = [f"InsightsAndActions/{e.id_short}" for e in events]
        elements += [f"InsightsAndActions/{o.id_short}" for o in ops]
        annotation = ("Insights become low-level events and actions become operations; AAS has "
                      "no notion of the insight a twin offers or of who performs an action.")
        if d.actions is not None and "automatic" in d.actions.none_declared:
            annotation += " Automatic actions declared none."
        self.note(_C(6), elements, annotation)

    # C7 ---------------------------------------------------------------------

    def capabilities(self):
        usages = self.d.constellation.usages if self.d.constellation else []
        if not usages:
            self.note(_C(7), [], "Not reported.")
            self.usage_ids = {}
            return
        ids = assign_id_shorts([u.name for u in usages])
        self.usage_ids = dict(zip([u.name for u in usages], ids))
        props = []
        for pid, u in zip(ids, usages):
            desc = f"Usage: {u.name}"
            if u.mode.value != "unreported":
                desc += f" ({u.mode.value})"
            props.append(AasProperty(pid, ValueType.BOOLEAN, True, desc))
        self.submodels.append(AasSubmodel("Capabilities", _C(7), properties=tuple(props)))
        self.note(_C(7), [f"Capabilities/{p.id_short}" for p in props],
                  "Usages are emitted as capability tags. This reads AAS capabilities as a "
                  "tagging system, which is an interpretation rather than something AAS "
                  "defines for usages.")

    # C8 / C9 / C10 ----------------------------------------------------------

    def constellation(self) -> list[AasView]:
        c = self.d.constellation
        nodes = [n for n in (c.nodes if c else ()) if n.kind is not NodeKind.USAGE]
        taken = {sm.id_short for sm in self.submodels}
        ids = dict(zip([n.name for n in nodes],
                       assign_id_shorts([n.name for n in nodes], taken=taken)))
        outgoing: dict[str, list[str]] = {n.name: [] for n in nodes}
        for e in (c.edges if c else ()):
            if e.source in outgoing:
                outgoing[e.source].append(e.target)

        def target_id(name):
            return ids.get(name) or self.usage_ids.get(name) or sanitize_id_short(name)

        enabler_elems, model_elems, references = [], [], []
        for n in nodes:
            refs = tuple(ids[t] for t in outgoing[n.name] if t in ids)
            references += [f"{ids[n.name]} -> {r}" for r in refs]
            if n.kind is NodeKind.ENABLER:
                op_names = ["supply" + _upper_first(target_id(t)) for t in outgoing[n.name]]
                op_ids = dedupe(op_names) if op_names else ["invoke"]
                targets = outgoing[n.name] or [None]
                ops = tuple(AasOperation(i, f"Provides values to {t}" if t else
                                         "Enabler operation")
                            for i, t in zip(op_ids, targets))
                self.submodels.append(AasSubmodel(ids[n.name], _C(8), operations=ops,
                                                  references=refs))
                enabler_elems.append(ids[n.name])
            else:
                measured = n.keyword != "model"
                prefix = "curr" if measured else "stored"
                prop = AasProperty(
                    prefix + _upper_first(ids[n.name]),
                    ValueType.NUMBER if measured else ValueType.TEXT, None,
                    f"Current value of {n.name}" if measured else f"Stored model: {n.name}")
                self.submodels.append(AasSubmodel(ids[n.name], _C(9), properties=(prop,),
                                                  references=refs))
                model_elems.append(ids[n.name])

        if enabler_elems:
            self.note(_C(8), enabler_elems,
                      "Enablers are submodels whose operations supply values to the "
                      "components they feed; AAS does not mark them as enablers.")
        else:
            self.note(_C(8), [], "Not reported.")
        if model_elems:
            self.note(_C(9), model_elems,
                      "Each model or data item is a submodel holding its value in a property.")
        else:
            self.note(_C(9), [], "Not reported.")

        views = []
        if c is not None:
            slices = enumerate_slices(c)
            has_capabilities = any(sm.id_short == "Capabilities" for sm in self.submodels)
            for s in slices:
                contained = tuple(ids[n] for n in s.nodes if n in ids)
                if has_capabilities:
                    contained += ("Capabilities",)
                views.append(AasView("slice" + _upper_first(self.usage_ids[s.usage]),
                                     contained))
        if c is not None and c.edges:
            to_usage = sum(1 for e in c.edges if e.target in self.usage_ids)
            annotation = (f"{_plural(len(references), 'flow')} mirrored as submodel references "
                          f"and {_plural(len(views), 'slice')} exposed as views.")
            if to_usage:
                annotation += (f" {_plural(to_usage, 'flow')} into usages appear only through "
                               "the views, as usages have no submodel of their own.")
            self.note(_C(10), references + [f"view/{v.id_short}" for v in views], annotation)
        else:
            self.note(_C(10), [f"view/{v.id_short}" for v in views], "Not reported.")
        return views

    # C13 / C14 --------------------------------------------------------------

    def lifecycle(self):
        d = self.d
        stages = [s.stage for s in d.lifecycle_stages or ()]
        for n in (d.constellation.usages if d.constellation else []):
            stages += [s for s in n.lifecycles if s not in stages]
        stages = list(dict.fromkeys(stages))
        if d.lifecycle_stages is None and not stages:
            self.note(_C(13), [], "Not reported.")
            return
        mapped = "; ".join(f"{s} -> {_rami_stage(s)}" for s in stages) or "no stages"
        self.note(_C(13), [], f"Stages mapped onto RAMI 4.0 type/instance stages: {mapped}. "
                              "Which usages serve each stage is not expressible in AAS.")

    def evolution(self):
        steps = self.d.evolution
        if steps is None:
            self.note(_C(14), [], "Not reported. derivedFrom left empty.")
            return
        self.note(_C(14), [], "derivedFrom left empty: it versions shells, while the "
                              f"development narrative ({_plural(len(steps), 'step')}) has "
                              "no AAS counterpart.")

    # C11 / C12 --------------------------------------------------------------

    def not_supported(self):
        d = self.d
        nodes = d.constellation.nodes if d.constellation else ()
        scaled = sum(1 for x in (*nodes, *d.channels) if x.time_scale is not TimeScale.UNREPORTED)
        if scaled:
            self.note(_C(11), [], f"{_plural(scaled, 'time-scale annotation')} dropped: AAS has "
                                  "no notion of slower-, faster- or real-time components.")
        else:
            self.note(_C(11), [], "Not reported. AAS has no notion of time-scale.")
        notes = len(d.fidelity_notes) + (1 if d.fidelity and d.fidelity.general else 0)
        if d.fidelity is not None or notes:
            self.note(_C(12), [], f"{_plural(notes, 'fidelity note')} dropped: AAS records no "
                                  "precision or fidelity for values or submodels.")
        else:
            self.note(_C(12), [], "Not reported. AAS records no fidelity information.")


def map_to_aas(d: DtDescription) -> AasDocument:
    """Build an AAS skeleton for *d*; refuses descriptions with Error diagnostics."""
    diagnostics = validate(d)
    if any(x.is_error for x in diagnostics):
        raise InvalidDescriptionError(diagnostics)
    return _Mapper(d).run()


# -----------------------------------------------------------------------------
# JSON
# -----------------------------------------------------------------------------


def to_json_dict(doc: AasDocument) -> dict:
    h = doc.header
    header = {"assetId": h.asset_id, "assetName": h.asset_name, "shellId": h.shell_id}
    if h.multiplicity_note is not None:
        header["multiplicityNote"] = h.multiplicity_note
    return {
        "twindescAasVersion": AAS_FORMAT_VERSION,
        "header": header,
        "derivedFrom": doc.derived_from,
        "submodels": [{
            "idShort": sm.id_short,
            "sourceCharacteristic": sm.source_characteristic.code,
            "properties": [{"idShort": p.id_short, "valueType": p.value_type.value,
                            "value": p.value, "description": p.description}
                           for p in sm.properties],
            "operations": [{"idShort": o.id_short, "description": o.description}
                           for o in sm.operations],
            "events": [{"idShort": e.id_short, "description": e.description}
                       for e in sm.events],
            "references": list(sm.references),
        } for sm in doc.submodels],
        "views": [{"idShort": v.id_short, "contained": list(v.contained)} for v in doc.views],
        "mappingReport": [{
            "characteristic": e.characteristic.code,
            "title": e.characteristic.title,
            "supportLevel": e.level.value,
            "elements": list(e.elements),
            "annotation": e.annotation,
        } for e in doc.mapping_report],
    }


def serialize_aas(doc: AasDocument) -> str:
    """Canonical JSON: sorted keys, two-space indent, LF, trailing newline."""
    return json.dumps(to_json_dict(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
