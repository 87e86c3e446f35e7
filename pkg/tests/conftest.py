import sys
from pathlib import Path

import pytest

from fiberstab.dlp import EnvelopeModel

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def m34():
    return EnvelopeModel.build(34, 0, 1)


@pytest.fixture(scope="session")
def m13():
    return EnvelopeModel.build(13, 0, 1)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
