import time

import pytest

from commspecial.verify import run_verification


@pytest.fixture(scope="session")
def verify_report():
    """One full verification run shared by all tests that need it."""
    start = time.monotonic()
    report = run_verification(draws=100, seed=0, tol=1e-7)
    report["_elapsed_seconds"] = time.monotonic() - start
    return report


def property_by_name(report, name):
    for prop in report["properties"]:
        if prop["name"] == name:
            return prop
    raise KeyError(name)
