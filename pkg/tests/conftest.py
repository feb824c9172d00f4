import pathlib

import pytest

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"

# One "acceptance NN PASS/FAIL" line per criterion, printed after the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line("  " + line)


@pytest.fixture(scope="session")
def data_dir() -> pathlib.Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def tri3_path(data_dir) -> pathlib.Path:
    return data_dir / "tri3.tsp"


@pytest.fixture(scope="session")
def bench51_path(data_dir) -> pathlib.Path:
    return data_dir / "bench51.tsp"


@pytest.fixture(scope="session")
def geo50_path(data_dir) -> pathlib.Path:
    return data_dir / "geo50.csv"
