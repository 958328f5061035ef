import pytest

CRITERIA: list[str] = []


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion.

    Usage: ``with criterion("3", "prop7 zero traces"): ...``
    """
    from contextlib import contextmanager

    @contextmanager
    def record(number: str, label: str):
        try:
            yield
        except BaseException as exc:
            first = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            CRITERIA.append(f"criterion {number} FAIL {label}: {first[:160]}")
            raise
        CRITERIA.append(f"criterion {number} PASS {label}")

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
