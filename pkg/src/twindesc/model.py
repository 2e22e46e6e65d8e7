"""Value types shared by every part of the toolkit.

All records are frozen dataclasses holding tuples, so a parsed description
can be hashed, compared and shared freely. Source locations ride along on a
few records for diagnostics but are excluded from equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Optional, Union

Location = Optional[tuple[int, int]]


class CharacteristicId(IntEnum):
    SYSTEM_UNDER_STUDY = 1
    ACTING_COMPONENTS = 2
    SENSING_COMPONENTS = 3
    MULTIPLICITIES = 4
    DATA_TRANSMITTED = 5
    INSIGHTS_ACTIONS = 6
    USAGES = 7
    ENABLERS = 8
    MODELS_AND_DATA = 9
    CONSTELLATION = 10
    TIME_SCALE = 11
    FIDELITY_CONSIDERATIONS = 12
    LIFECYCLE_STAGES = 13
    EVOLUTION = 14

    @property
    def code(self) -> str:
        return f"C{self.value}"

    @property
    def title(self) -> str:
        return _TITLES[self]

    @classmethod
    def from_code(cls, code: str) -> "CharacteristicId":
        text = code.strip().upper()
        if not text.startswith("C") or not text[1:].isdigit():
            raise ValueError(f"not a characteristic code: {code!r}")
        return cls(int(text[1:]))


_TITLES = {
    CharacteristicId.SYSTEM_UNDER_STUDY: "System-under-study",
    CharacteristicId.ACTING_COMPONENTS: "Acting Components",
    CharacteristicId.SENSING_COMPONENTS: "Sensing Components",
    CharacteristicId.MULTIPLICITIES: "Multiplicities",
    CharacteristicId.DATA_TRANSMITTED: "Data Transmitted",
    CharacteristicId.INSIGHTS_ACTIONS: "Insights/Actions",
    CharacteristicId.USAGES: "Usages",
    CharacteristicId.ENABLERS: "Enablers",
    CharacteristicId.MODELS_AND_DATA: "Models and Data",
    CharacteristicId.CONSTELLATION: "Constellation",
    CharacteristicId.TIME_SCALE: "Time-Scale",
    CharacteristicId.FIDELITY_CONSIDERATIONS: "Fidelity Considerations",
    CharacteristicId.LIFECYCLE_STAGES: "Life-cycle Stages",
    CharacteristicId.EVOLUTION: "Evolution",
}


class Presence(Enum):
    PRESENT = "present"
    ABSENT = "absent"
    UNREPORTED = "unreported"


class TimeScale(Enum):
    SLOWER_THAN_REAL_TIME = "slower"
    REAL_TIME = "real_time"
    FASTER_THAN_REAL_TIME = "faster"
    UNREPORTED = "unreported"

    @property
    def label(self) -> str:
        return {
            TimeScale.SLOWER_THAN_REAL_TIME: "Slower-than-real-time",
            TimeScale.REAL_TIME: "Real-time",
            TimeScale.FASTER_THAN_REAL_TIME: "Faster-than-real-time",
            TimeScale.UNREPORTED: "Unreported",
        }[self]


class UsageMode(Enum):
    HISTORICAL = "historical"
    STREAMING = "streaming"
    BOTH = "both"
    UNREPORTED = "unreported"


class Direction(Enum):
    DATA = "data"
    INSIGHT = "insight"
    AUTOMATIC_ACTION = "automatic_action"
    AGENT_ACTION = "agent_action"


class Transfer(Enum):
    AUTOMATIC = "automatic"
    MANUAL = "manual"


class NodeKind(Enum):
    MODEL_DATA = "model_data"
    ENABLER = "enabler"
    USAGE = "usage"


class InstanceMode(Enum):
    PER_USAGE = "per_usage"
    SINGLE = "single"


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


# -----------------------------------------------------------------------------
# C1 .. C4
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class SusScope:
    system: Optional[str] = None
    environment: Optional[str] = None
    agents: tuple[str, ...] = ()


@dataclass(frozen=True)
class Multiplicity:
    sus_entities: Optional[int] = None
    # InstanceMode, or an explicit instance count
    dt_instances: Union[InstanceMode, int, None] = None
    note: Optional[str] = None


# -----------------------------------------------------------------------------
# C5 / C6
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class ChannelItem:
    name: str
    direction: Direction
    transfer: Optional[Transfer] = None  # Data items only
    time_scale: TimeScale = TimeScale.UNREPORTED
    description: Optional[str] = None
    location: Location = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ChannelBlock:
    """One `data`, `insights` or `actions` block.

    ``none_declared`` holds the transfer/actor keywords the author explicitly
    marked as ``none`` (``"automatic"``, ``"manual"``, ``"agent"``).
    """

    items: tuple[ChannelItem, ...] = ()
    none_declared: frozenset[str] = frozenset()
    location: Location = field(default=None, compare=False, repr=False)


# -----------------------------------------------------------------------------
# C7 .. C10
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    name: str
    kind: NodeKind
    time_scale: TimeScale = TimeScale.UNREPORTED
    mode: UsageMode = UsageMode.UNREPORTED  # usages only
    lifecycles: tuple[str, ...] = ()  # usages only
    fidelity_note: Optional[str] = None  # usages only
    keyword: str = ""  # source keyword: usage / enabler / model / datum
    location: Location = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.keyword:
            default = {NodeKind.USAGE: "usage", NodeKind.ENABLER: "enabler",
                       NodeKind.MODEL_DATA: "model"}[self.kind]
            object.__setattr__(self, "keyword", default)


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    location: Location = field(default=None, compare=False, repr=False)

    @property
    def pair(self) -> tuple[str, str]:
        return (self.source, self.target)


LEGAL_EDGE_SHAPES = frozenset({
    (NodeKind.MODEL_DATA, NodeKind.ENABLER),
    (NodeKind.ENABLER, NodeKind.USAGE),
    (NodeKind.MODEL_DATA, NodeKind.USAGE),
    (NodeKind.ENABLER, NodeKind.MODEL_DATA),
    (NodeKind.ENABLER, NodeKind.ENABLER),
})


@dataclass(frozen=True)
class Constellation:
    nodes: tuple[Node, ...] = ()
    edges: tuple[Edge, ...] = ()

    def node(self, name: str) -> Node:
        for n in self.nodes:
            if n.name == name:
                return n
        raise UnknownNodeError(name)

    def names(self, kind: Optional[NodeKind] = None) -> list[str]:
        return [n.name for n in self.nodes if kind is None or n.kind is kind]

    @property
    def usages(self) -> list[Node]:
        return [n for n in self.nodes if n.kind is NodeKind.USAGE]

    @property
    def enablers(self) -> list[Node]:
        return [n for n in self.nodes if n.kind is NodeKind.ENABLER]

    @property
    def models_and_data(self) -> list[Node]:
        return [n for n in self.nodes if n.kind is NodeKind.MODEL_DATA]


@dataclass(frozen=True)
class Slice:
    usage: str
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]


# -----------------------------------------------------------------------------
# C12 .. C14
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class FidelityBlock:
    general: Optional[str] = None
    # (usage name, note) in declaration order
    notes: tuple[tuple[str, str], ...] = ()
    locations: tuple[Location, ...] = field(default=(), compare=False, repr=False)


@dataclass(frozen=True)
class LifecycleStage:
    stage: str
    usages: tuple[str, ...] = ()
    location: Location = field(default=None, compare=False, repr=False)


# -----------------------------------------------------------------------------
# root record
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class DtDescription:
    """A parsed digital-twin description.

    ``None`` on a block field means the block never appeared in the source;
    an empty tuple/record means the author wrote the block with no content.
    """

    name: str
    sus: Optional[SusScope] = None
    acting: Optional[tuple[str, ...]] = None
    sensing: Optional[tuple[str, ...]] = None
    multiplicity: Optional[Multiplicity] = None
    data: Optional[ChannelBlock] = None
    insights: Optional[ChannelBlock] = None
    actions: Optional[ChannelBlock] = None
    constellation: Optional[Constellation] = None
    fidelity: Optional[FidelityBlock] = None
    lifecycle_stages: Optional[tuple[LifecycleStage, ...]] = None
    evolution: Optional[tuple[str, ...]] = None

    @property
    def channels(self) -> tuple[ChannelItem, ...]:
        out: tuple[ChannelItem, ...] = ()
        for block in (self.data, self.insights, self.actions):
            if block is not None:
                out += block.items
        return out

    @property
    def fidelity_notes(self) -> tuple[tuple[str, str], ...]:
        notes = self.fidelity.notes if self.fidelity else ()
        inline = tuple((n.name, n.fidelity_note) for n in self._nodes()
                       if n.fidelity_note is not None)
        return inline + notes

    def _nodes(self) -> tuple[Node, ...]:
        return self.constellation.nodes if self.constellation else ()


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    location: Location = None

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def format(self, path: str = "<input>") -> str:
        if self.location:
            line, col = self.location
            where = f"{path}:{line}:{col}"
        else:
            where = path
        return f"{where}: {self.severity.value} {self.code}: {self.message}"


def sort_key(diag: Diagnostic):
    # ties keep insertion order (sorted() is stable), so unlocated W203s stay in C1..C14 order
    loc = diag.location
    return (loc is None, loc[0] if loc else 0, diag.code, loc[1] if loc else 0)


# -----------------------------------------------------------------------------
# errors
# -----------------------------------------------------------------------------


class TwinDescError(Exception):
    pass


class UnknownNodeError(TwinDescError, LookupError):
    def __init__(self, name):
        super().__init__(f"no node named {name!r}")
        self.name = name


class UnknownUsageError(UnknownNodeError):
    def __init__(self, name):
        TwinDescError.__init__(self, f"no usage named {name!r}")
        self.name = name


class NotAUsageError(TwinDescError, ValueError):
    def __init__(self, name, kind):
        super().__init__(f"{name!r} is a {kind.value} node, not a usage")
        self.name = name
        self.kind = kind


class InvalidDescriptionError(TwinDescError):
    """Raised by generators handed a description with Error diagnostics."""

    def __init__(self, diagnostics):
        errors = [d for d in diagnostics if d.is_error]
        super().__init__(
            f"description has {len(errors)} error(s); first: "
            f"{errors[0].code} {errors[0].message}" if errors else "invalid description")
        self.diagnostics = list(diagnostics)


# -----------------------------------------------------------------------------
# checklist queries
# -----------------------------------------------------------------------------


def reported_characteristics(d: DtDescription) -> frozenset[CharacteristicId]:
    C = CharacteristicId
    out = set()
    if d.sus is not None:
        out.add(C.SYSTEM_UNDER_STUDY)
    if d.acting is not None:
        out.add(C.ACTING_COMPONENTS)
    if d.sensing is not None:
        out.add(C.SENSING_COMPONENTS)
    if d.multiplicity is not None:
        out.add(C.MULTIPLICITIES)
    if d.data is not None:
        out.add(C.DATA_TRANSMITTED)
    if d.insights is not None or d.actions is not None:
        out.add(C.INSIGHTS_ACTIONS)
    nodes = d._nodes()
    kinds = {n.kind for n in nodes}
    if NodeKind.USAGE in kinds:
        out.add(C.USAGES)
    if NodeKind.ENABLER in kinds:
        out.add(C.ENABLERS)
    if NodeKind.MODEL_DATA in kinds:
        out.add(C.MODELS_AND_DATA)
    if d.constellation is not None and d.constellation.edges:
        out.add(C.CONSTELLATION)
    if any(n.time_scale is not TimeScale.UNREPORTED for n in nodes) or any(
            c.time_scale is not TimeScale.UNREPORTED for c in d.channels):
        out.add(C.TIME_SCALE)
    if d.fidelity is not None or any(n.fidelity_note is not None for n in nodes):
        out.add(C.FIDELITY_CONSIDERATIONS)
    if d.lifecycle_stages is not None or any(n.lifecycles for n in nodes):
        out.add(C.LIFECYCLE_STAGES)
    if d.evolution is not None:
        out.add(C.EVOLUTION)
    return frozenset(out)


def completeness(d: DtDescription) -> tuple[frozenset[CharacteristicId], int]:
    """Characteristics the source reported, and how many of the fourteen."""
    reported = reported_characteristics(d)
    return reported, len(reported)


def _presence(block: Optional[ChannelBlock], direction: Direction,
              keyword: str) -> Presence:
    if block is not None:
        for item in block.items:
            if item.direction is direction and (
                    direction is not Direction.DATA
                    or item.transfer is Transfer.AUTOMATIC):
                return Presence.PRESENT
        if keyword in block.none_declared:
            return Presence.ABSENT
    return Presence.UNREPORTED


def presence_of_automatic_data(d: DtDescription) -> Presence:
    return _presence(d.data, Direction.DATA, "automatic")


def presence_of_automatic_actions(d: DtDescription) -> Presence:
    return _presence(d.actions, Direction.AUTOMATIC_ACTION, "automatic")
