import pytest

from k3tk import _data
from k3tk.permgroup import load_group

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def bundled():
    """Load a bundled group file by stem, e.g. ``bundled("a6")``."""
    cache = {}

    def load(stem):
        if stem not in cache:
            cache[stem] = load_group(_data.data_path(f"{stem}.grp"))
        return cache[stem]

    return load


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
