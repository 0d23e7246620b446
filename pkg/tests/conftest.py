import pytest

_CRITERIA = {}


class CriterionLog:
    """Collects one pass/fail line per acceptance criterion (parts are and-ed)."""

    def record(self, number, ok, detail):
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        prev = _CRITERIA.get(number)
        if prev is not None:
            ok, detail = ok and prev[0], prev[1] + "; " + detail
        _CRITERIA[number] = (ok, detail)
        return ok


@pytest.fixture(scope="session")
def criterion():
    return CriterionLog()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
