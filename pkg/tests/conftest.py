import numpy as np
import pytest

from eprgames.games import PRISONERS_DILEMMA


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def pd():
    return PRISONERS_DILEMMA


def random_profiles(rng, n, margin=0.0):
    ta = rng.uniform(margin, np.pi - margin, n)
    tb = rng.uniform(margin, np.pi - margin, n)
    pa = rng.uniform(0, 2 * np.pi, n)
    pb = rng.uniform(0, 2 * np.pi, n)
    return ta, pa, tb, pb


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
