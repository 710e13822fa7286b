import random

import pytest

from quiverhom.algebra import quiver_algebra
from quiverhom.dsl import INTRO_TEXT, parse
from quiverhom.presentation import Quiver, RelationIdeal
from quiverhom.verify import FuzzConfig, random_algebra

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture
def intro():
    return parse(INTRO_TEXT).algebra()


@pytest.fixture
def acceptance():
    return ACCEPTANCE


def linear_quiver(n, square_zero=False):
    q = Quiver.build([str(i + 1) for i in range(n)],
                     [(f"a{i + 1}", str(i + 1), str(i + 2)) for i in range(n - 1)])
    words = [(i + 1, i) for i in range(n - 2)] if square_zero else []
    return quiver_algebra(q, RelationIdeal.monomial(q, words))


def truncated_loop(k):
    """k[x]/(x^k) on one vertex."""
    q = Quiver.build(["1"], [("x", "1", "1")])
    return quiver_algebra(q, RelationIdeal.monomial(q, [(0,) * k]))


def seeded_algebras(count, seed=0, max_dim=20):
    cfg = FuzzConfig(seed=seed, max_dim=max_dim)
    out = []
    for t in range(count):
        rng = random.Random(seed * 1000003 + t)
        out.append(random_algebra(rng, cfg))
    return out


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
