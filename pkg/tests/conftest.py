import os

import pytest

ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    path = tmp_path_factory.mktemp("octe-cache")
    old = os.environ.get("OCTOLATTICE_CACHE")
    os.environ["OCTOLATTICE_CACHE"] = str(path)
    yield path
    if old is None:
        os.environ.pop("OCTOLATTICE_CACHE", None)
    else:
        os.environ["OCTOLATTICE_CACHE"] = old


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.rstrip("abcdefgh")), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
