"""Lexer, recursive-descent parser and canonical renderer for `.dtd` files.

The grammar is documented in ``docs/grammar.md``. Parsing never raises on bad
input: every problem becomes a :class:`~twindesc.model.Diagnostic` with a
1-based line/column, and the parser resynchronises at the next top-level
statement so one broken line does not hide later findings.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional, Union

from .model import (
    ChannelBlock, ChannelItem, Constellation, Diagnostic, Direction, DtDescription,
    Edge, FidelityBlock, InstanceMode, LifecycleStage, Multiplicity, Node, NodeKind,
    Severity, SusScope, TimeScale, Transfer, UsageMode, sort_key,
)

__all__ = ["SourceFile", "ParseResult", "parse", "parse_text", "parse_file", "render"]


@dataclass(frozen=True)
class SourceFile:
    path: str
    content: str

    @classmethod
    def read(cls, path: Union[str, os.PathLike]) -> "SourceFile":
        with open(path, "rb") as fh:
            raw = fh.read()
        return cls(str(path), raw.decode("utf-8"))


@dataclass(frozen=True)
class ParseResult:
    description: Optional[DtDescription]
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return self.description is not None

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]


# -----------------------------------------------------------------------------
# lexer
# -----------------------------------------------------------------------------

IDENT, STRING, INT, PUNCT, EOF = "identifier", "string", "integer", "punct", "end of file"

_PUNCT = {"{", "}", ":", ",", "@"}
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t", "r": "\r"}


@dataclass(frozen=True)
class Token:
    kind: str
    value: object
    line: int
    col: int
    first_on_line: bool = False

    @property
    def loc(self) -> tuple[int, int]:
        return (self.line, self.col)

    def describe(self) -> str:
        if self.kind == EOF:
            return "end of file"
        if self.kind == STRING:
            return "string"
        return repr(self.value)


def _err(code, message, loc) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, loc)


def tokenize(text: str) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    lines = text.replace("\r\n", "\n").split("\n")
    for lineno, raw in enumerate(lines, start=1):
        line = raw.replace("\r", " ")
        i, n = 0, len(line)
        first = True

        def push(kind, value, col):
            nonlocal first
            tokens.append(Token(kind, value, lineno, col + 1, first))
            first = False

        while i < n:
            ch = line[i]
            if ch in " \t\f\v":
                i += 1
            elif ch == "#":
                break
            elif ch == '"':
                start = i
                i += 1
                buf = []
                closed = False
                while i < n:
                    c = line[i]
                    if c == '"':
                        closed = True
                        i += 1
                        break
                    if c == "\\" and i + 1 < n:
                        esc = line[i + 1]
                        if esc in _ESCAPES:
                            buf.append(_ESCAPES[esc])
                        else:
                            diags.append(_err("E001", f"unknown escape sequence '\\{esc}'",
                                              (lineno, i + 1)))
                            buf.append(esc)
                        i += 2
                        continue
                    buf.append(c)
                    i += 1
                if not closed:
                    diags.append(_err("E005", "unterminated string literal",
                                      (lineno, start + 1)))
                push(STRING, "".join(buf), start)
            elif ch == "-" and line.startswith("->", i):
                push(PUNCT, "->", i)
                i += 2
            elif ch in _PUNCT:
                push(PUNCT, ch, i)
                i += 1
            elif ch.isdigit() and ch.isascii():
                start = i
                while i < n and line[i].isascii() and line[i].isdigit():
                    i += 1
                push(INT, int(line[start:i]), start)
            elif (ch.isalpha() and ch.isascii()) or ch == "_":
                start = i
                while i < n and (line[i] == "_" or (line[i].isascii() and line[i].isalnum())):
                    i += 1
                push(IDENT, line[start:i], start)
            else:
                diags.append(_err("E001", f"unexpected character {ch!r}", (lineno, i + 1)))
                i += 1
    last = lines[-1]
    tokens.append(Token(EOF, None, len(lines), len(last.replace("\r", "")) + 1, True))
    return tokens, diags


# -----------------------------------------------------------------------------
# parser
# -----------------------------------------------------------------------------

ITEM_KEYWORDS = (
    "sus", "acting", "sensing", "multiplicity", "data", "insights", "actions",
    "usage", "enabler", "model", "datum", "flow", "lifecycle", "fidelity", "evolution",
)
SINGLETON_BLOCKS = (
    "sus", "acting", "sensing", "multiplicity", "data", "insights", "actions",
    "lifecycle", "fidelity", "evolution",
)
_TIME_SCALES = {
    "slower": TimeScale.SLOWER_THAN_REAL_TIME,
    "real_time": TimeScale.REAL_TIME,
    "faster": TimeScale.FASTER_THAN_REAL_TIME,
}
_MODES = {"historical": UsageMode.HISTORICAL, "streaming": UsageMode.STREAMING,
          "both": UsageMode.BOTH}


class _Abort(Exception):
    def __init__(self, diag):
        self.diag = diag


def _fmt_expected(expected) -> str:
    items = sorted(expected)
    if len(items) == 1:
        return items[0]
    return "one of " + ", ".join(items)


@dataclass
class _Builder:
    name: str = ""
    blocks: dict = field(default_factory=dict)
    nodes: list = field(default_factory=list)
    flows: list = field(default_factory=list)  # (Edge, src_loc, dst_loc)


class _Parser:
    def __init__(self, tokens: list[Token], diags: list[Diagnostic]):
        self.toks = tokens
        self.pos = 0
        self.diags = diags
        self.b = _Builder()
        self.node_names: dict[str, NodeKind] = {}
        self.channel_names: set[str] = set()

    # -- token helpers --------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, offset=1) -> Token:
        return self.toks[min(self.pos + offset, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != EOF:
            self.pos += 1
        return t

    def is_punct(self, value, tok=None) -> bool:
        t = tok or self.tok
        return t.kind == PUNCT and t.value == value

    def is_ident(self, value=None, tok=None) -> bool:
        t = tok or self.tok
        return t.kind == IDENT and (value is None or t.value == value)

    def fail(self, expected, tok=None):
        t = tok or self.tok
        raise _Abort(_err("E001", f"unexpected {t.describe()}; expected "
                                  f"{_fmt_expected(expected)}", t.loc))

    def expect_punct(self, value) -> Token:
        if not self.is_punct(value):
            self.fail([repr(value)])
        return self.advance()

    def expect_ident(self, value) -> Token:
        if not self.is_ident(value):
            self.fail([repr(value)])
        return self.advance()

    def expect_string(self, nonempty=True) -> Token:
        if self.tok.kind != STRING:
            self.fail(["string"])
        if nonempty and self.tok.value == "":
            raise _Abort(_err("E001", "expected a non-empty string", self.tok.loc))
        return self.advance()

    def expect_attr(self, allowed) -> Token:
        """Consume ``name :`` where name is one of *allowed*."""
        t = self.tok
        if t.kind == IDENT and t.value in allowed and self.is_punct(":", self.peek()):
            self.advance()
            self.advance()
            return t
        if t.kind == IDENT and t.value not in allowed:
            raise _Abort(_err("E003", f"unknown keyword {t.value!r}; expected "
                                      f"{_fmt_expected([a + ':' for a in allowed])}", t.loc))
        if t.kind == IDENT:
            self.advance()
            self.fail(["':'"])
        self.fail([a + ":" for a in allowed] + ["'}'"])

    def time_scale(self) -> TimeScale:
        t = self.tok
        if t.kind == IDENT and t.value in _TIME_SCALES:
            self.advance()
            return _TIME_SCALES[t.value]
        if t.kind == IDENT:
            raise _Abort(_err("E003", f"unknown time scale {t.value!r}; expected "
                                      f"{_fmt_expected(_TIME_SCALES)}", t.loc))
        self.fail(list(_TIME_SCALES))

    def warn(self, code, message, loc):
        self.diags.append(Diagnostic(Severity.WARNING, code, message, loc))

    def error(self, code, message, loc):
        self.diags.append(_err(code, message, loc))

    # -- structure ------------------------------------------------------------

    def parse(self):
        t = self.tok
        if not self.is_ident("digital_twin"):
            if t.kind == IDENT:
                self.diags.append(_err("E003", f"unknown keyword {t.value!r}; expected "
                                               "'digital_twin'", t.loc))
            else:
                self.diags.append(_err("E001", f"unexpected {t.describe()}; expected "
                                               "'digital_twin'", t.loc))
            return None
        try:
            self.advance()
            self.b.name = self.expect_string().value
            self.expect_punct("{")
        except _Abort as exc:
            self.diags.append(exc.diag)
            return None

        while not self.is_punct("}") and self.tok.kind != EOF:
            start = self.pos
            try:
                self.item()
            except _Abort as exc:
                self.diags.append(exc.diag)
                self.sync(start)
        try:
            self.expect_punct("}")
            if self.tok.kind != EOF:
                self.fail(["end of file"])
        except _Abort as exc:
            self.diags.append(exc.diag)
        self.resolve_flows()
        return self.b

    def sync(self, start: int):
        depth = 0
        for t in self.toks[start:self.pos]:
            if self.is_punct("{", t):
                depth += 1
            elif self.is_punct("}", t):
                depth -= 1
        if self.pos == start:
            self.advance()
        while self.tok.kind != EOF:
            t = self.tok
            if t.kind == IDENT and t.value in ITEM_KEYWORDS and not self.is_punct(":", self.peek()):
                if depth <= 0 or t.first_on_line:
                    return
            if self.is_punct("{", t):
                depth += 1
            elif self.is_punct("}", t):
                if depth <= 0:
                    return
                depth -= 1
            self.advance()

    def item(self):
        t = self.tok
        if t.kind != IDENT:
            self.fail([repr(k) for k in ITEM_KEYWORDS] + ["'}'"])
        if t.value not in ITEM_KEYWORDS:
            raise _Abort(_err("E003", f"unknown keyword {t.value!r}", t.loc))
        self.advance()
        if t.value in SINGLETON_BLOCKS and t.value in self.b.blocks:
            self.error("E002", f"duplicate {t.value!r} block", t.loc)
        handler = getattr(self, "item_" + t.value)
        value = handler(t)
        if t.value in SINGLETON_BLOCKS and t.value not in self.b.blocks:
            self.b.blocks[t.value] = value

    def block_items(self, parse_one):
        self.expect_punct("{")
        while not self.is_punct("}"):
            if self.tok.kind == EOF:
                self.fail(["'}'"])
            parse_one()
        self.advance()

    # -- C1 .. C4 -------------------------------------------------------------

    def item_sus(self, kw):
        fields = {"system": None, "environment": None}
        agents = []

        def one():
            t = self.expect_attr(("system", "environment", "agent"))
            value = self.expect_string().value
            if t.value == "agent":
                agents.append(value)
            elif fields[t.value] is not None:
                self.error("E002", f"duplicate {t.value!r} in sus block", t.loc)
            else:
                fields[t.value] = value

        self.block_items(one)
        return SusScope(fields["system"], fields["environment"], tuple(agents))

    def _components(self):
        items = []

        def one():
            if not self.is_ident("component"):
                if self.tok.kind == IDENT:
                    raise _Abort(_err("E003", f"unknown keyword {self.tok.value!r}; "
                                              "expected 'component'", self.tok.loc))
                self.fail(["'component'", "'}'"])
            self.advance()
            items.append(self.expect_string().value)

        self.block_items(one)
        return tuple(items)

    def item_acting(self, kw):
        return self._components()

    def item_sensing(self, kw):
        return self._components()

    def item_multiplicity(self, kw):
        values = {}

        def positive():
            t = self.tok
            if t.kind != INT or t.value < 1:
                raise _Abort(_err("E001", f"unexpected {t.describe()}; expected a "
                                          "positive integer", t.loc))
            return self.advance().value

        def one():
            t = self.expect_attr(("sus_entities", "dt_instances", "note"))
            if t.value in values:
                self.error("E002", f"duplicate {t.value!r} in multiplicity block", t.loc)
            if t.value == "sus_entities":
                v = positive()
            elif t.value == "note":
                v = self.expect_string().value
            elif self.is_ident("per_usage") or self.is_ident("single"):
                v = InstanceMode(self.advance().value)
            elif self.tok.kind == INT:
                v = positive()
            else:
                self.fail(["'per_usage'", "'single'", "integer"])
            values.setdefault(t.value, v)

        self.block_items(one)
        return Multiplicity(values.get("sus_entities"), values.get("dt_instances"),
                            values.get("note"))

    # -- C5 / C6 --------------------------------------------------------------

    def _channel(self, name_tok, direction, transfer=None) -> ChannelItem:
        name = name_tok.value
        description = None
        if self.tok.kind == STRING:
            description = self.advance().value
        scale = TimeScale.UNREPORTED
        if self.is_punct("@"):
            self.advance()
            scale = self.time_scale()
        if name in self.channel_names:
            self.error("E002", f"duplicate channel item {name!r}", name_tok.loc)
        self.channel_names.add(name)
        return ChannelItem(name, direction, transfer, scale, description, name_tok.loc)

    def _channel_block(self, kw, heads):
        items = []
        nones = set()

        def one():
            t = self.tok
            if t.kind != IDENT or t.value not in heads:
                if t.kind == IDENT:
                    raise _Abort(_err("E003", f"unknown keyword {t.value!r}; expected "
                                              f"{_fmt_expected(repr(h) for h in heads)}", t.loc))
                self.fail([repr(h) for h in heads] + ["'}'"])
            self.advance()
            direction, transfer, allow_none = heads[t.value]
            if allow_none and self.is_ident("none"):
                self.advance()
                nones.add(t.value)
                return
            name_tok = self.expect_string()
            items.append(self._channel(name_tok, direction, transfer))

        self.block_items(one)
        return ChannelBlock(tuple(items), frozenset(nones), kw.loc)

    def item_data(self, kw):
        return self._channel_block(kw, {
            "automatic": (Direction.DATA, Transfer.AUTOMATIC, True),
            "manual": (Direction.DATA, Transfer.MANUAL, True),
        })

    def item_insights(self, kw):
        return self._channel_block(kw, {"insight": (Direction.INSIGHT, None, False)})

    def item_actions(self, kw):
        return self._channel_block(kw, {
            "automatic": (Direction.AUTOMATIC_ACTION, None, True),
            "agent": (Direction.AGENT_ACTION, None, True),
        })

    # -- C7 .. C10 ------------------------------------------------------------

    def _reserve(self, name_tok, kind) -> bool:
        # names are claimed before a block body is parsed so that a broken
        # body does not cascade into E004 on later flows
        if name_tok.value in self.node_names:
            self.error("E002", f"duplicate node name {name_tok.value!r}", name_tok.loc)
            return False
        self.node_names[name_tok.value] = kind
        return True

    def _lifecycle_ids(self):
        ids = []
        while True:
            t = self.tok
            if t.kind != IDENT:
                self.fail(["life-cycle stage identifier"])
            self.advance()
            if t.value in ids:
                self.warn("W001", f"duplicate life-cycle stage {t.value!r} ignored", t.loc)
            else:
                ids.append(t.value)
            if not self.is_punct(","):
                return tuple(ids)
            self.advance()

    def item_usage(self, kw):
        name_tok = self.expect_string()
        fresh = self._reserve(name_tok, NodeKind.USAGE)
        attrs = {}

        def one():
            t = self.expect_attr(("mode", "time_scale", "lifecycle", "fidelity"))
            if t.value in attrs:
                self.error("E002", f"duplicate {t.value!r} attribute", t.loc)
            if t.value == "mode":
                m = self.tok
                if m.kind == IDENT and m.value in _MODES:
                    value = _MODES[self.advance().value]
                elif m.kind == IDENT:
                    raise _Abort(_err("E003", f"unknown usage mode {m.value!r}; expected "
                                              f"{_fmt_expected(_MODES)}", m.loc))
                else:
                    self.fail(list(_MODES))
            elif t.value == "time_scale":
                value = self.time_scale()
            elif t.value == "lifecycle":
                value = self._lifecycle_ids()
            else:
                value = self.expect_string().value
            attrs.setdefault(t.value, value)

        self.block_items(one)
        if fresh:
            self.b.nodes.append(Node(
                name_tok.value, NodeKind.USAGE,
                time_scale=attrs.get("time_scale", TimeScale.UNREPORTED),
                mode=attrs.get("mode", UsageMode.UNREPORTED),
                lifecycles=attrs.get("lifecycle", ()),
                fidelity_note=attrs.get("fidelity"),
                keyword="usage", location=name_tok.loc))

    def item_enabler(self, kw):
        name_tok = self.expect_string()
        fresh = self._reserve(name_tok, NodeKind.ENABLER)
        attrs = {}

        def one():
            t = self.expect_attr(("time_scale",))
            if t.value in attrs:
                self.error("E002", f"duplicate {t.value!r} attribute", t.loc)
            attrs.setdefault(t.value, self.time_scale())

        self.block_items(one)
        if fresh:
            self.b.nodes.append(Node(
                name_tok.value, NodeKind.ENABLER,
                time_scale=attrs.get("time_scale", TimeScale.UNREPORTED),
                keyword="enabler", location=name_tok.loc))

    def item_model(self, kw):
        name_tok = self.expect_string()
        if self._reserve(name_tok, NodeKind.MODEL_DATA):
            self.b.nodes.append(Node(name_tok.value, NodeKind.MODEL_DATA,
                                     keyword=kw.value, location=name_tok.loc))

    item_datum = item_model

    def item_flow(self, kw):
        src = self.expect_string()
        self.expect_punct("->")
        dst = self.expect_string()
        pair = (src.value, dst.value)
        if any(e.pair == pair for e, _, _ in self.b.flows):
            self.error("E002", f"duplicate flow {src.value!r} -> {dst.value!r}", kw.loc)
            return
        self.b.flows.append((Edge(src.value, dst.value, kw.loc), src.loc, dst.loc))

    def resolve_flows(self):
        for edge, src_loc, dst_loc in self.b.flows:
            for loc, name in ((src_loc, edge.source), (dst_loc, edge.target)):
                if name not in self.node_names:
                    self.error("E004", f"flow endpoint {name!r} is not a declared node", loc)

    # -- C12 .. C14 -----------------------------------------------------------

    def item_lifecycle(self, kw):
        stages = []
        seen = set()

        def one():
            t = self.tok
            if t.kind != IDENT or not self.is_punct(":", self.peek()):
                self.fail(["life-cycle stage identifier followed by ':'", "'}'"])
            self.advance()
            self.advance()
            usages = []
            while True:
                s = self.expect_string()
                if s.value in usages:
                    self.warn("W001", f"duplicate usage {s.value!r} in stage "
                                      f"{t.value!r} ignored", s.loc)
                else:
                    usages.append(s.value)
                if not self.is_punct(","):
                    break
                self.advance()
            if t.value in seen:
                self.error("E002", f"duplicate life-cycle stage {t.value!r}", t.loc)
                return
            seen.add(t.value)
            stages.append(LifecycleStage(t.value, tuple(usages), t.loc))

        self.block_items(one)
        return tuple(stages)

    def item_fidelity(self, kw):
        general = None
        notes = []
        locs = []

        def one():
            nonlocal general
            t = self.tok
            if self.is_ident("general") and self.is_punct(":", self.peek()):
                self.advance()
                self.advance()
                text = self.expect_string().value
                if general is not None:
                    self.error("E002", "duplicate 'general' fidelity note", t.loc)
                else:
                    general = text
                return
            if t.kind == IDENT:
                raise _Abort(_err("E003", f"unknown keyword {t.value!r}; expected "
                                          "'general:' or a usage name", t.loc))
            usage = self.expect_string()
            self.expect_punct(":")
            text = self.expect_string().value
            if any(u == usage.value for u, _ in notes):
                self.error("E002", f"duplicate fidelity note for {usage.value!r}", usage.loc)
                return
            notes.append((usage.value, text))
            locs.append(usage.loc)

        self.block_items(one)
        return FidelityBlock(general, tuple(notes), tuple(locs))

    def item_evolution(self, kw):
        steps = []

        def one():
            if not self.is_ident("step"):
                if self.tok.kind == IDENT:
                    raise _Abort(_err("E003", f"unknown keyword {self.tok.value!r}; "
                                              "expected 'step'", self.tok.loc))
                self.fail(["'step'", "'}'"])
            self.advance()
            steps.append(self.expect_string().value)

        self.block_items(one)
        return tuple(steps)


def parse(src: SourceFile) -> ParseResult:
    """Parse one `.dtd` source into a description plus diagnostics."""
    tokens, diags = tokenize(src.content)
    p = _Parser(tokens, diags)
    b = p.parse()
    unique = {}
    for diag in diags:
        unique.setdefault((diag.code, diag.location), diag)
    diags = sorted(unique.values(), key=sort_key)
    if b is None or any(d.is_error for d in diags):
        return ParseResult(None, tuple(diags))
    constellation = None
    if b.nodes or b.flows:
        constellation = Constellation(tuple(b.nodes), tuple(e for e, _, _ in b.flows))
    bl = b.blocks
    d = DtDescription(
        name=b.name,
        sus=bl.get("sus"),
        acting=bl.get("acting"),
        sensing=bl.get("sensing"),
        multiplicity=bl.get("multiplicity"),
        data=bl.get("data"),
        insights=bl.get("insights"),
        actions=bl.get("actions"),
        constellation=constellation,
        fidelity=bl.get("fidelity"),
        lifecycle_stages=bl.get("lifecycle"),
        evolution=bl.get("evolution"),
    )
    return ParseResult(d, tuple(diags))


def parse_text(text: str, path: str = "<string>") -> ParseResult:
    return parse(SourceFile(path, text))


def parse_file(path) -> ParseResult:
    return parse(SourceFile.read(path))


# -----------------------------------------------------------------------------
# renderer
# -----------------------------------------------------------------------------

_REVERSE_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}
_TS_KEYWORD = {v: k for k, v in _TIME_SCALES.items()}


def quote(text: str) -> str:
    return '"' + "".join(_REVERSE_ESCAPES.get(c, c) for c in text) + '"'


def _channel_line(head: str, item: ChannelItem) -> str:
    out = f"{head} {quote(item.name)}"
    if item.description is not None:
        out += " " + quote(item.description)
    if item.time_scale is not TimeScale.UNREPORTED:
        out += " @ " + _TS_KEYWORD[item.time_scale]
    return out


def render(d: DtDescription) -> str:
    """Render *d* as canonical `.dtd` text (LF endings, two-space indent)."""
    out = [f"digital_twin {quote(d.name)} {{"]

    def block(keyword, lines):
        if not lines:
            out.append(f"  {keyword} {{}}")
            return
        out.append(f"  {keyword} {{")
        out.extend("    " + ln for ln in lines)
        out.append("  }")

    if d.sus is not None:
        lines = []
        if d.sus.system is not None:
            lines.append(f"system: {quote(d.sus.system)}")
        if d.sus.environment is not None:
            lines.append(f"environment: {quote(d.sus.environment)}")
        lines += [f"agent: {quote(a)}" for a in d.sus.agents]
        block("sus", lines)
    for keyword, comps in (("acting", d.acting), ("sensing", d.sensing)):
        if comps is not None:
            block(keyword, [f"component {quote(c)}" for c in comps])
    if d.multiplicity is not None:
        m = d.multiplicity
        lines = []
        if m.sus_entities is not None:
            lines.append(f"sus_entities: {m.sus_entities}")
        if isinstance(m.dt_instances, InstanceMode):
            lines.append(f"dt_instances: {m.dt_instances.value}")
        elif m.dt_instances is not None:
            lines.append(f"dt_instances: {m.dt_instances}")
        if m.note is not None:
            lines.append(f"note: {quote(m.note)}")
        block("multiplicity", lines)
    if d.data is not None:
        lines = [f"{kw} none" for kw in ("automatic", "manual") if kw in d.data.none_declared]
        lines += [_channel_line(i.transfer.value, i) for i in d.data.items]
        block("data", lines)
    if d.insights is not None:
        block("insights", [_channel_line("insight", i) for i in d.insights.items])
    if d.actions is not None:
        lines = [f"{kw} none" for kw in ("automatic", "agent") if kw in d.actions.none_declared]
        heads = {Direction.AUTOMATIC_ACTION: "automatic", Direction.AGENT_ACTION: "agent"}
        lines += [_channel_line(heads[i.direction], i) for i in d.actions.items]
        block("actions", lines)

    if d.constellation is not None:
        for n in d.constellation.nodes:
            if n.kind is NodeKind.MODEL_DATA:
                out.append(f"  {n.keyword} {quote(n.name)}")
                continue
            attrs = []
            if n.kind is NodeKind.USAGE and n.mode is not UsageMode.UNREPORTED:
                attrs.append(f"mode: {n.mode.value}")
            if n.time_scale is not TimeScale.UNREPORTED:
                attrs.append(f"time_scale: {_TS_KEYWORD[n.time_scale]}")
            if n.kind is NodeKind.USAGE and n.lifecycles:
                attrs.append("lifecycle: " + ", ".join(n.lifecycles))
            if n.kind is NodeKind.USAGE and n.fidelity_note is not None:
                attrs.append(f"fidelity: {quote(n.fidelity_note)}")
            block(f"{n.kind.value} {quote(n.name)}", attrs)
        for e in d.constellation.edges:
            out.append(f"  flow {quote(e.source)} -> {quote(e.target)}")

    if d.lifecycle_stages is not None:
        block("lifecycle", [f"{s.stage}: " + ", ".join(quote(u) for u in s.usages)
                            for s in d.lifecycle_stages])
    if d.fidelity is not None:
        lines = []
        if d.fidelity.general is not None:
            lines.append(f"general: {quote(d.fidelity.general)}")
        lines += [f"{quote(u)}: {quote(t)}" for u, t in d.fidelity.notes]
        block("fidelity", lines)
    if d.evolution is not None:
        block("evolution", [f"step {quote(s)}" for s in d.evolution])
    out.append("}")
    return "\n".join(out) + "\n"
