import pytest

from partition_stats.distributions import Exponential, Normal, Uniform

REFERENCE = [Uniform(0, 1), Exponential(1), Normal(0, 1)]


@pytest.fixture(params=REFERENCE, ids=lambda d: d.to_text())
def reference_dist(request):
    return request.param


ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, description: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] {criterion}: {description}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
