import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vhembed.chimera import ChimeraSpec
from vhembed.embedders import hardware

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def spec433():
    return ChimeraSpec(4, 3, 3)


@pytest.fixture(scope="session")
def spec488():
    return ChimeraSpec(4, 8, 8)


@pytest.fixture(scope="session")
def hw433(spec433):
    return hardware(spec433)


@pytest.fixture(scope="session")
def hw488(spec488):
    return hardware(spec488)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
