from __future__ import annotations

import pytest

_RESULTS: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: `criterion(name, ok, detail)` returns ok."""

    def record(name: str, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
        _RESULTS.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _RESULTS:
            terminalreporter.write_line(line)
