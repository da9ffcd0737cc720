import pytest

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record a pass/fail line for the acceptance summary, then assert it."""

    def record(tag, description, passed, detail=""):
        _CRITERIA.append((tag, description, bool(passed), detail))
        assert passed, f"{tag} {description}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for tag, description, passed, detail in _CRITERIA:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {tag} {description} {detail}".rstrip())
