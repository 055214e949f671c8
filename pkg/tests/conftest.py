import pytest

# criterion number -> list of (part, passed, seconds, detail)
_CRITERIA: dict[int, list] = {}
_TITLES: dict[int, tuple[str, float]] = {}


@pytest.fixture
def record_criterion():
    """Record one part of an acceptance criterion for the end-of-run summary."""

    def record(number, title, limit, part, passed, seconds, detail=""):
        _TITLES[number] = (title, limit)
        _CRITERIA.setdefault(number, []).append((part, bool(passed), seconds, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, limit = _TITLES[number]
        parts = _CRITERIA[number]
        seconds = sum(p[2] for p in parts)
        ok = all(p[1] for p in parts) and seconds < limit
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title} ({seconds:.1f}s, limit {limit:.0f}s)")
        for part, passed, secs, detail in parts:
            if not passed or detail:
                mark = "ok" if passed else "FAILED"
                terminalreporter.write_line(f"    {part}: {mark} {detail}".rstrip())
