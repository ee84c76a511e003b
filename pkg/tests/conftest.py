import os
import random

import pytest

SEED = int(os.environ.get("UPHOCORE_TEST_SEED", "20240607"))


@pytest.fixture
def rng():
    return random.Random(SEED)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running checks, enabled by UPHOCORE_SLOW=1")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("UPHOCORE_SLOW"):
        return
    skip = pytest.mark.skip(reason="set UPHOCORE_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k].line())
    passed = sum(r.passed for r in RESULTS.values())
    terminalreporter.write_line(f"{passed}/{len(RESULTS)} criteria passed")
