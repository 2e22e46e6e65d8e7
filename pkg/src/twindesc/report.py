"""Markdown checklist report, one section per characteristic."""

from __future__ import annotations

from dataclasses import dataclass

from .aas import support_level
from .analysis import Verdict, classify
from .constellation import enumerate_slices
from .model import (
    CharacteristicId, Direction, DtDescription, InstanceMode, Node, NodeKind,
    TimeScale, UsageMode, completeness, presence_of_automatic_actions,
    presence_of_automatic_data,
)
from .naming import sanitize_id_short

UNREPORTED = "⚠ unreported"
EMPTY = "_Reported with no entries._"


@dataclass(frozen=True)
class ReportOptions:
    include_graph_link: bool = False
    include_mapping_summary: bool = False


def _bullets(items):
    return [f"- {x}" for x in items]


def _names(items) -> str:
    return ", ".join(items) if items else "none"


class _Sections:
    def __init__(self, d: DtDescription):
        self.d = d
        self.nodes: tuple[Node, ...] = d.constellation.nodes if d.constellation else ()

    def c1(self):
        sus = self.d.sus
        if sus is None:
            return None
        lines = []
        if sus.system is not None:
            lines.append(f"- **System:** {sus.system}")
        if sus.environment is not None:
            lines.append(f"- **Environment:** {sus.environment}")
        lines += [f"- **Agent:** {a}" for a in sus.agents]
        return lines or [EMPTY]

    def c2(self):
        return None if self.d.acting is None else (_bullets(self.d.acting) or [EMPTY])

    def c3(self):
        return None if self.d.sensing is None else (_bullets(self.d.sensing) or [EMPTY])

    def c4(self):
        m = self.d.multiplicity
        if m is None:
            return None
        lines = []
        if m.sus_entities is not None:
            lines.append(f"- **SUS entities:** {m.sus_entities}")
        if isinstance(m.dt_instances, InstanceMode):
            label = {"per_usage": "one per usage", "single": "single"}[m.dt_instances.value]
            lines.append(f"- **DT instances:** {label}")
        elif m.dt_instances is not None:
            lines.append(f"- **DT instances:** {m.dt_instances}")
        if m.note is not None:
            lines.append(f"- **Note:** {m.note}")
        return lines or [EMPTY]

    def c5(self):
        block = self.d.data
        if block is None:
            return None
        lines = []
        for kw, label in (("automatic", "Automatic"), ("manual", "Manual")):
            items = [i.name for i in block.items if i.transfer and i.transfer.value == kw]
            if items:
                lines.append(f"- **{label}:** {', '.join(items)}")
            elif kw in block.none_declared:
                lines.append(f"- **{label}:** none")
            else:
                lines.append(f"- **{label}:** {UNREPORTED}")
        return lines

    def c6(self):
        d = self.d
        if d.insights is None and d.actions is None:
            return None
        lines = []
        if d.insights is None:
            lines.append(f"- **Insights:** {UNREPORTED}")
        else:
            lines.append(f"- **Insights:** {_names([i.name for i in d.insights.items])}")
        for direction, kw, label in ((Direction.AGENT_ACTION, "agent", "Agent actions"),
                                     (Direction.AUTOMATIC_ACTION, "automatic",
                                      "Automatic actions")):
            if d.actions is None:
                lines.append(f"- **{label}:** {UNREPORTED}")
                continue
            items = [a.name for a in d.actions.items if a.direction is direction]
            if items:
                lines.append(f"- **{label}:** {', '.join(items)}")
            elif kw in d.actions.none_declared:
                lines.append(f"- **{label}:** none")
            else:
                lines.append(f"- **{label}:** {UNREPORTED}")
        return lines

    def _layer(self, kind):
        return [n for n in self.nodes if n.kind is kind]

    def c7(self):
        usages = self._layer(NodeKind.USAGE)
        if not usages:
            return None
        lines = []
        for u in usages:
            mode = "mode unreported" if u.mode is UsageMode.UNREPORTED else u.mode.value
            lines.append(f"- {u.name} ({mode})")
        return lines

    def c8(self):
        enablers = self._layer(NodeKind.ENABLER)
        return _bullets(n.name for n in enablers) if enablers else None

    def c9(self):
        items = self._layer(NodeKind.MODEL_DATA)
        return [f"- {n.name} ({n.keyword})" for n in items] if items else None

    def c10(self):
        c = self.d.constellation
        if c is None or not c.edges:
            return None
        lines = [f"- {e.source} → {e.target}" for e in c.edges]
        slices = enumerate_slices(c)
        lines.append("")
        lines.append(f"{len(slices)} slice(s):")
        lines.append("")
        lines += [f"- **{s.usage}:** {', '.join(n for n in s.nodes if n != s.usage) or 'no support'}"
                  for s in slices]
        return lines

    def c11(self):
        groups: dict[TimeScale, list[str]] = {t: [] for t in TimeScale}
        timed = [n for n in self.nodes if n.kind is not NodeKind.MODEL_DATA]
        for item in (*self.d.channels, *timed):
            groups[item.time_scale].append(item.name)
        if not any(groups[t] for t in TimeScale if t is not TimeScale.UNREPORTED):
            return None
        lines = [f"- **{t.label}:** {_names(groups[t])}"
                 for t in (TimeScale.SLOWER_THAN_REAL_TIME, TimeScale.REAL_TIME,
                           TimeScale.FASTER_THAN_REAL_TIME)]
        if groups[TimeScale.UNREPORTED]:
            lines.append(f"- **No time-scale given:** {_names(groups[TimeScale.UNREPORTED])}")
        return lines

    def c12(self):
        d = self.d
        if d.fidelity is None and not any(n.fidelity_note for n in self.nodes):
            return None
        lines = []
        if d.fidelity is not None and d.fidelity.general is not None:
            lines.append(f"- **General:** {d.fidelity.general}")
        lines += [f"- **{u}:** {text}" for u, text in d.fidelity_notes]
        return lines or [EMPTY]

    def c13(self):
        d = self.d
        tagged = [n for n in self.nodes if n.lifecycles]
        if d.lifecycle_stages is None and not tagged:
            return None
        lines = [f"- **{s.stage}:** {', '.join(s.usages)}" for s in d.lifecycle_stages or ()]
        lines += [f"- {n.name}: {', '.join(n.lifecycles)}" for n in tagged]
        return lines or [EMPTY]

    def c14(self):
        steps = self.d.evolution
        if steps is None:
            return None
        return [f"{i}. {s}" for i, s in enumerate(steps, start=1)] or [EMPTY]


def banner(d: DtDescription) -> str:
    c = classify(d)
    if c.verdict is Verdict.AMBIGUOUS:
        return f"Ambiguous: {c.label}"
    return c.verdict.value


def render_report(d: DtDescription, opts: ReportOptions = ReportOptions()) -> str:
    """Render *d* as a Markdown checklist with fourteen sections in order."""
    _, score = completeness(d)
    lines = [
        f"# {d.name}",
        "",
        f"> **Classification:** {banner(d)}",
        ">",
        f"> Automatic data: {presence_of_automatic_data(d).value}; "
        f"automatic actions: {presence_of_automatic_actions(d).value}",
        "",
        f"**Completeness:** {score}/14",
        "",
    ]
    if opts.include_graph_link:
        lines += [f"Constellation graph: [{sanitize_id_short(d.name)}.dot]"
                  f"({sanitize_id_short(d.name)}.dot)", ""]

    sections = _Sections(d)
    for cid in CharacteristicId:
        lines.append(f"## {cid.code}: {cid.title}")
        lines.append("")
        body = getattr(sections, f"c{cid.value}")()
        if body is None:
            lines.append(UNREPORTED)
        else:
            lines += body
        lines.append("")

    if opts.include_mapping_summary:
        lines += ["---", "", "**AAS support per characteristic**", "",
                  "| Characteristic | Support |", "| --- | --- |"]
        lines += [f"| {cid.code} {cid.title} | {support_level(cid).value} |"
                  for cid in CharacteristicId]
        lines.append("")
    return "\n".join(lines).rstrip("\n") + "\n"
