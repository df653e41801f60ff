import sys

import pytest

from crepant_kit import verifier
from crepant_kit.numfield import ONE


@pytest.fixture(scope="session")
def rings():
    return verifier.build_all("plus-i", ONE)


@pytest.fixture(scope="session")
def rings_minus():
    return verifier.build_all("minus-i", ONE)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
