from pathlib import Path

import pytest

from relaxcheck.checker import Checker
from relaxcheck.grammar import CheckConfig

DATA = Path(__file__).resolve().parents[1] / "src" / "relaxcheck" / "data"
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def checker():
    return Checker()


@pytest.fixture(scope="session")
def admin_checker():
    return Checker(config=CheckConfig(sublanguage="administrative"))


@pytest.fixture(scope="session")
def lexicon(checker):
    return checker.lexicon


@pytest.fixture(scope="session")
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
