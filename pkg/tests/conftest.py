import functools
import sys

import pytest

from finmod import build_catalog, builtin_ring


@functools.lru_cache(maxsize=None)
def catalog(name: str, max_size: int = 64, max_gens: int = 2):
    """Catalogs are expensive; share one per (ring, bound) across the session."""
    return build_catalog(builtin_ring(name), max_size, max_gens)


@pytest.fixture(scope="session")
def cat():
    return catalog


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
