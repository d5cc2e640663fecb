from functools import lru_cache

import pytest

from e2top.catalog import group_by_name


@lru_cache(maxsize=None)
def named(name):
    """Catalog groups are built once per session and treated as read-only."""
    return group_by_name(name)


@pytest.fixture
def grp():
    return named


# acceptance results, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {msg}")
