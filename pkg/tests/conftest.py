import sys
from functools import lru_cache
from pathlib import Path

import pytest

from matquot.matroid import enumerate_matroids, mask_of, uniform

sys.path.insert(0, str(Path(__file__).parent))


@lru_cache(maxsize=None)
def matroids_upto(n: int):
    """Every matroid on ground sets of size at most ``n``."""
    return tuple(M for m in range(n + 1) for M in enumerate_matroids(m))


def subsets(n: int):
    return range(1 << n)


@pytest.fixture(scope="session")
def small_matroids():
    return matroids_upto(4)


def sample_matroids():
    """A varied handful of named matroids on up to 8 elements."""
    from matquot.fixtures import gamma_major, gamma_matroid, non_pappus

    out = [uniform(r, n) for n in range(0, 7) for r in range(0, n + 1)]
    out += [gamma_matroid(6), gamma_major(6), non_pappus().delete(1 << 8), non_pappus().contract(1 << 8)]
    out += [uniform(1, 2).dual(), uniform(2, 4).delete(mask_of([0]))]
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
