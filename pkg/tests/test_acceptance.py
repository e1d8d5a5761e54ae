"""Acceptance criteria at full scale.

Runs the whole suite once (about half a minute) and prints one
``[PASS]``/``[FAIL]`` line per criterion, regardless of ``-s``. Tolerances are
the suite defaults: Penrose residual 1e-9, closed form vs SVD path 1e-8, exact
oracle 1e-10, exact example float agreement 1e-12, runtime budget 10 s.

Also runnable directly: ``python tests/test_acceptance.py``.
"""

import pytest

from dualmp.suite import SuiteConfig, run_suite

CONFIG = SuiteConfig(seed=0, tol=1e-9, scale=1.0, workers=1)
NUMBERS = range(1, 10)


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run_suite(CONFIG)}


@pytest.mark.parametrize("number", NUMBERS)
def test_criterion(number, results, capsys):
    r = results[number]
    with capsys.disabled():
        print("\n" + r.line(), end="")
    assert r.passed, r.line()


def test_all_criteria_reported(results):
    assert sorted(results) == list(NUMBERS)


if __name__ == "__main__":
    rs = run_suite(CONFIG)
    for r in rs:
        print(r.line())
    raise SystemExit(0 if all(r.passed for r in rs) else 1)
