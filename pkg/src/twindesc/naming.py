"""idShort generation for AAS elements and DOT node ids."""

from __future__ import annotations

import re
from typing import Iterable

_WORD = re.compile(r"[A-Za-z0-9_]+")


def sanitize_id_short(name: str) -> str:
    """Turn a free-text name into a camelCase identifier.

    >>> sanitize_id_short("Estimate Tool Wear")
    'estimateToolWear'
    >>> sanitize_id_short("3D reference model")
    '_3dReferenceModel'
    """
    if not name:
        raise ValueError("cannot derive an idShort from an empty name")
    words = _WORD.findall(name)
    if not words:
        return "_"
    head = words[0].lower()
    tail = "".join(w[:1].upper() + w[1:].lower() for w in words[1:])
    out = head + tail
    if out[0].isdigit():
        out = "_" + out
    return out


def assign_id_shorts(names: Iterable[str], taken: Iterable[str] = ()) -> list[str]:
    """Sanitize *names* in order, suffixing 2, 3, ... on collisions."""
    return dedupe([sanitize_id_short(n) for n in names], taken)


def dedupe(ids: Iterable[str], taken: Iterable[str] = ()) -> list[str]:
    used = set(taken)
    out = []
    for base in ids:
        candidate, k = base, 2
        while candidate in used:
            candidate = f"{base}{k}"
            k += 1
        used.add(candidate)
        out.append(candidate)
    return out
