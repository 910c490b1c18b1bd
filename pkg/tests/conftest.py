import json
import time
from pathlib import Path

import pytest

from sympres import git, smoothness
from sympres.model import default_model

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def model():
    return default_model()


@pytest.fixture(scope="session")
def stability_report(model):
    return git.analyze_linearization(model)


@pytest.fixture(scope="session")
def jacobian(model):
    return smoothness.build_jacobian(model)


@pytest.fixture(scope="session")
def certificate():
    return smoothness.load_certificate()


@pytest.fixture(scope="session")
def a1_figure():
    return json.loads((FIXTURES / "a1_sections.json").read_text())


ACCEPTANCE_LINES: list[str] = []


class _Criterion:
    """Times a block, checks it against a limit and records one summary line."""

    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        passed = exc_type is None and elapsed <= self.limit
        ACCEPTANCE_LINES.append(f"criterion {self.number} {'PASS' if passed else 'FAIL'}: "
                                f"{self.title} ({elapsed:.1f}s, limit {self.limit:g}s)")
        if exc_type is None and not passed:
            raise AssertionError(f"criterion {self.number} took {elapsed:.1f}s > {self.limit:g}s")
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
