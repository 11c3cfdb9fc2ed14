import os

import pytest

from isoperim import dp


def pytest_collection_modifyitems(config, items):
    if os.environ.get("ISOPERIM_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="set ISOPERIM_EXTENDED=1 to run")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def tables_2000():
    return dp.build_helper_tables(2000)


@pytest.fixture(scope="session")
def tables_small():
    return dp.build_helper_tables(120)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
