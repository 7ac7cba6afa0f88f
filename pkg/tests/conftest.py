import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion; printed in the terminal summary."""
    lines = request.config.stash[_LINES]

    def record(number: int, title: str, passed: bool, seconds: float, limit: float, note: str = ""):
        in_time = seconds < limit
        verdict = "PASS" if passed and in_time else "FAIL"
        extra = f"  {note}" if note else ""
        lines.append(f"[{verdict}] criterion {number}: {title}  ({seconds:.2f}s, limit {limit:g}s){extra}")
        return passed and in_time

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for ln in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(ln)
