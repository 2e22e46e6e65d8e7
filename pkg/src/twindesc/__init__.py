"""Toolkit for digital-twin description files (``.dtd``).

Parse a description, check it, place it on the digital model / shadow / twin
ladder, slice its constellation, and generate an Asset Administration Shell
skeleton or a Markdown checklist report from it.
"""

from importlib import resources

__version__ = "0.1.0"

from .aas import (  # noqa: E402
    AasDocument, SupportLevel, map_to_aas, sanitize_id_short, serialize_aas, support_level,
)
from .analysis import (  # noqa: E402
    Classification, Verdict, classify, classify_presences, classify_usage_mode, validate,
)
from .constellation import enumerate_slices, extract_slice, to_dot  # noqa: E402
from .model import (  # noqa: E402
    CharacteristicId, Constellation, Diagnostic, DtDescription, NodeKind, Presence,
    Severity, Slice, TimeScale, UsageMode, completeness, presence_of_automatic_actions,
    presence_of_automatic_data,
)
from .parser import ParseResult, SourceFile, parse, parse_file, parse_text, render  # noqa: E402
from .report import ReportOptions, render_report  # noqa: E402


def corpus_path(name: str):
    """Path of a bundled example description, e.g. ``corpus_path("smart_clamp.dtd")``."""
    return resources.files(__name__).joinpath("corpus", name)


def load_corpus(name: str) -> DtDescription:
    result = parse_text(corpus_path(name).read_text(encoding="utf-8"), name)
    if not result.ok:
        raise ValueError(f"bundled corpus file {name} does not parse")
    return result.description
