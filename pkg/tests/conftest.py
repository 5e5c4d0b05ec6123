import sys
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden" / "v1"


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


def pytest_terminal_summary(terminalreporter):
    lines = [
        line
        for mod in list(sys.modules.values())
        for line in getattr(mod, "ACCEPTANCE_LINES", None) or []
    ]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
