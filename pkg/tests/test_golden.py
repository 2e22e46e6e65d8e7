"""Byte-for-byte comparison against the frozen outputs in tests/golden.

To regenerate after an intended change, run the CLI with --out into
tests/golden and audit the diff before committing it.
"""

import pytest

from conftest import GOLDEN
from twindesc import load_corpus
from twindesc.aas import map_to_aas, serialize_aas
from twindesc.constellation import to_dot
from twindesc.report import render_report


def outputs():
    clamp = load_corpus("smart_clamp.dtd")
    return {
        "smart_clamp.aas.json": serialize_aas(map_to_aas(clamp)),
        "smart_clamp.dot": to_dot(clamp.constellation, name=clamp.name),
        "smart_clamp.md": render_report(clamp),
        "empty.aas.json": serialize_aas(map_to_aas(load_corpus("minimal.dtd"))),
    }


@pytest.mark.parametrize("name", sorted(outputs()))
def test_golden(name):
    expected = (GOLDEN / name).read_bytes()
    assert outputs()[name].encode("utf-8") == expected
