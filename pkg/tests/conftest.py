import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(id, title, passed, detail)``."""

    def record(cid, title, passed, detail=""):
        _ACCEPTANCE.append((cid, title, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title, passed, detail in sorted(_ACCEPTANCE, key=lambda r: int(r[0].split("-")[1])):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {cid} {title}" + (f"  ({detail})" if detail else ""))
