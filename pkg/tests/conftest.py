import numpy as np
import pytest

from cyclicq.checks import Ctx
from cyclicq.config import Config


def make_ctx(N=3, seed=0, **kw):
    return Ctx(Config(N=N, seed=seed, **kw), np.random.default_rng(seed))


@pytest.fixture
def ctx3():
    return make_ctx(3, seed=11)


@pytest.fixture
def ctx5():
    return make_ctx(5, seed=12)


def rel(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(a), np.linalg.norm(b))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
