import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from twindesc import load_corpus  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def clamp():
    return load_corpus("smart_clamp.dtd")


@pytest.fixture(scope="session")
def robot():
    return load_corpus("human_robot.dtd")
