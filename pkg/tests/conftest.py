from __future__ import annotations

import sys
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from setmerge.datasets import movie_example, southern_women  # noqa: E402

# criterion number -> list of (check, status, detail); filled by test_acceptance
RESULTS: dict[int, list[tuple[str, str, str]]] = defaultdict(list)


@pytest.fixture(scope="session")
def movies():
    return movie_example()


@pytest.fixture(scope="session")
def women():
    return southern_women()


def criterion_line(number: int) -> str:
    checks = RESULTS[number]
    statuses = {s for _, s, _ in checks}
    overall = "FAIL" if "FAIL" in statuses else "SKIP" if statuses == {"SKIP"} else "PASS"
    notes = "; ".join(f"{name}: {status}" + (f" ({detail})" if detail else "") for name, status, detail in checks)
    return f"CRITERION {number}: {overall} | {notes}"


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(criterion_line(number))
