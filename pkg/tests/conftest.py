import pytest

from modenergy import kernels
from modenergy.sieve import Sieve


@pytest.fixture(params=sorted(kernels.available()))
def backend(request):
    """Each importable kernel backend in turn."""
    return kernels.get(request.param)


@pytest.fixture(scope="session")
def small_sieve():
    return Sieve(10_000)


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(number, title, ok, detail)``."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def record(number, title, ok, detail=""):
        lines.append((number, title, bool(ok), detail))
        assert ok, f"criterion {number} ({title}) failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(lines):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
