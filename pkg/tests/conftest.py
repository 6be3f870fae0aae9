"""Collects one verdict line per acceptance criterion and prints them at the end."""

import pytest

_VERDICTS: dict[int, str] = {}


class Recorder:
    def __call__(self, number: int, passed: bool, detail: str) -> bool:
        line = f"[criterion {number}] {'PASS' if passed else 'FAIL'}: {detail}"
        _VERDICTS[number] = line
        print(line)
        return passed


@pytest.fixture(scope="session")
def criterion():
    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        terminalreporter.write_line(_VERDICTS[number])
