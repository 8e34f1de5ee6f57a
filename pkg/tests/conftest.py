import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def golden():
    return json.loads((FIXTURES / "vader_golden.json").read_text(encoding="utf-8"))["cases"]


@pytest.fixture(scope="session")
def lexicon():
    from vaxsent.vader import default_lexicon
    return default_lexicon()


ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    def record(number, name, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} ({detail})"
        ACCEPTANCE[number] = line
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
