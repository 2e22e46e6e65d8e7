"""Structural validation and digital model/shadow/twin classification.

Diagnostic codes produced here (stable; see ``docs/diagnostics.md``):

    E101  illegal flow shape between layers
    E102  faster-than-real-time on a data/insight/action channel
    E103  life-cycle stage names an unknown usage
    E104  automatic actions without automatic data
    E105  fidelity note names an unknown usage
    E106  ``none`` declared next to items of the same kind
    W201  usage with no incoming flow
    W202  enabler that consumes no models or data
    W203  characteristic not reported
    W204  node that supports no usage
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .constellation import enumerate_slices
from .model import (
    LEGAL_EDGE_SHAPES, CharacteristicId, Diagnostic, Direction, DtDescription,
    NodeKind, NotAUsageError, Presence, Severity, TimeScale, Transfer,
    UnknownUsageError, UsageMode, presence_of_automatic_actions,
    presence_of_automatic_data, reported_characteristics, sort_key,
)

__all__ = [
    "Verdict", "Classification", "classify", "classify_presences",
    "classify_usage_mode", "validate",
]


class Verdict(Enum):
    DIGITAL_MODEL = "Digital Model"
    DIGITAL_SHADOW = "Digital Shadow"
    DIGITAL_TWIN = "Digital Twin"
    AMBIGUOUS = "Ambiguous"
    INCONSISTENT = "Inconsistent"


LADDER = (Verdict.DIGITAL_MODEL, Verdict.DIGITAL_SHADOW, Verdict.DIGITAL_TWIN)


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    candidates: tuple[Verdict, ...] = ()  # AMBIGUOUS only, ladder order

    def __post_init__(self):
        if self.verdict is Verdict.AMBIGUOUS and len(self.candidates) < 2:
            raise ValueError("an ambiguous classification needs two or more candidates")

    @property
    def possible(self) -> frozenset[Verdict]:
        """Ladder rungs this verdict leaves open (empty when inconsistent)."""
        if self.verdict is Verdict.AMBIGUOUS:
            return frozenset(self.candidates)
        if self.verdict is Verdict.INCONSISTENT:
            return frozenset()
        return frozenset({self.verdict})

    @property
    def label(self) -> str:
        if self.verdict is Verdict.AMBIGUOUS:
            return " OR ".join(v.value for v in self.candidates)
        return self.verdict.value


_DETERMINED = {
    (Presence.ABSENT, Presence.ABSENT): Verdict.DIGITAL_MODEL,
    (Presence.PRESENT, Presence.ABSENT): Verdict.DIGITAL_SHADOW,
    (Presence.PRESENT, Presence.PRESENT): Verdict.DIGITAL_TWIN,
    (Presence.ABSENT, Presence.PRESENT): Verdict.INCONSISTENT,
}


def classify_presences(data: Presence, actions: Presence) -> Classification:
    """Place a (automatic data, automatic actions) pair on the ladder.

    Unreported slots are filled with every known value; the rungs that
    survive (inconsistent fillings dropped) form the candidate set. A single
    surviving rung is returned as a plain verdict.
    """
    if (data, actions) in _DETERMINED:
        return Classification(_DETERMINED[(data, actions)])
    known = (Presence.PRESENT, Presence.ABSENT)
    options_a = known if data is Presence.UNREPORTED else (data,)
    options_b = known if actions is Presence.UNREPORTED else (actions,)
    reachable = {_DETERMINED[pair] for pair in itertools.product(options_a, options_b)}
    reachable.discard(Verdict.INCONSISTENT)
    candidates = tuple(v for v in LADDER if v in reachable)
    if len(candidates) == 1:
        return Classification(candidates[0])
    return Classification(Verdict.AMBIGUOUS, candidates)


def classify(d: DtDescription) -> Classification:
    return classify_presences(presence_of_automatic_data(d),
                              presence_of_automatic_actions(d))


def classify_usage_mode(d: DtDescription, usage: str) -> UsageMode:
    nodes = d.constellation.nodes if d.constellation else ()
    for n in nodes:
        if n.name == usage:
            if n.kind is not NodeKind.USAGE:
                raise NotAUsageError(usage, n.kind)
            return n.mode
    raise UnknownUsageError(usage)


# -----------------------------------------------------------------------------
# validation
# -----------------------------------------------------------------------------


def _diag(severity, code, message, location=None):
    return Diagnostic(severity, code, message, location)


def validate(d: DtDescription) -> list[Diagnostic]:
    """Check *d* against the framework's structural rules.

    Returns diagnostics sorted by line then code; unlocated ones (W203) last.
    """
    E, W = Severity.ERROR, Severity.WARNING
    out: list[Diagnostic] = []
    c = d.constellation
    nodes = c.nodes if c else ()
    kinds = {n.name: n.kind for n in nodes}

    if c is not None:
        for e in c.edges:
            shape = (kinds.get(e.source), kinds.get(e.target))
            if shape not in LEGAL_EDGE_SHAPES:
                src = shape[0].value if shape[0] else "undeclared"
                dst = shape[1].value if shape[1] else "undeclared"
                out.append(_diag(E, "E101", f"illegal flow {e.source!r} -> {e.target!r}: "
                                            f"{src} -> {dst} is not a permitted layer "
                                            "connection", e.location))

    for item in d.channels:
        if item.time_scale is TimeScale.FASTER_THAN_REAL_TIME:
            out.append(_diag(E, "E102", f"channel item {item.name!r} is faster-than-real-time;"
                                        " only enablers and usages may be", item.location))

    for stage in d.lifecycle_stages or ():
        for u in stage.usages:
            if kinds.get(u) is not NodeKind.USAGE:
                out.append(_diag(E, "E103", f"life-cycle stage {stage.stage!r} names "
                                            f"unknown usage {u!r}", stage.location))

    if presence_of_automatic_data(d) is Presence.ABSENT and \
            presence_of_automatic_actions(d) is Presence.PRESENT:
        first = next(i for i in d.actions.items if i.direction is Direction.AUTOMATIC_ACTION)
        out.append(_diag(E, "E104", "automatic actions are declared but automatic data is "
                                    "declared none; no digital model/shadow/twin fits",
                         first.location))

    if d.fidelity is not None:
        locs = d.fidelity.locations or (None,) * len(d.fidelity.notes)
        for (u, _), loc in zip(d.fidelity.notes, locs):
            if kinds.get(u) is not NodeKind.USAGE:
                out.append(_diag(E, "E105", f"fidelity note names unknown usage {u!r}", loc))

    checks = (
        (d.data, "automatic", lambda i: i.transfer is Transfer.AUTOMATIC),
        (d.data, "manual", lambda i: i.transfer is Transfer.MANUAL),
        (d.actions, "automatic", lambda i: i.direction is Direction.AUTOMATIC_ACTION),
        (d.actions, "agent", lambda i: i.direction is Direction.AGENT_ACTION),
    )
    for block, keyword, match in checks:
        if block is not None and keyword in block.none_declared:
            clash = [i for i in block.items if match(i)]
            if clash:
                out.append(_diag(E, "E106", f"'{keyword} none' contradicts declared item "
                                            f"{clash[0].name!r}", clash[0].location))

    if c is not None:
        incoming: dict[str, set[NodeKind]] = {n.name: set() for n in nodes}
        for e in c.edges:
            if e.source in kinds and e.target in incoming:
                incoming[e.target].add(kinds[e.source])
        for n in c.usages:
            if not incoming[n.name]:
                out.append(_diag(W, "W201", f"usage {n.name!r} is not supported by any "
                                            "enabler, model or data", n.location))
        for n in c.enablers:
            if NodeKind.MODEL_DATA not in incoming[n.name]:
                out.append(_diag(W, "W202", f"enabler {n.name!r} consumes no models or data",
                                 n.location))
        in_slices = set()
        for s in enumerate_slices(c):
            in_slices.update(s.nodes)
        for n in nodes:
            if n.kind is not NodeKind.USAGE and n.name not in in_slices:
                out.append(_diag(W, "W204", f"{n.kind.value.replace('_', '/')} {n.name!r} "
                                            "does not support any usage", n.location))

    reported = reported_characteristics(d)
    for cid in CharacteristicId:
        if cid not in reported:
            out.append(_diag(W, "W203", f"{cid.code} {cid.title} is not reported"))

    return sorted(out, key=sort_key)


def has_errors(diagnostics) -> bool:
    return any(d.is_error for d in diagnostics)
