"""Randomized invariant suites: smoke runs, determinism, replayable seeds."""

import pytest

from framekit.suites import SUITES, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_smoke(name):
    result = run_suite(name, 10, seed=0)
    assert result.passed, result.failures[:1]
    assert result.trials == 10
    assert result.name == name


def test_same_seed_same_outcome():
    a = run_suite("pencil-rayleigh", 12, seed=9)
    b = run_suite("pencil-rayleigh", 12, seed=9)
    assert a.passed == b.passed
    assert len(a.failures) == len(b.failures)


def test_unknown_suite_raises():
    with pytest.raises(KeyError):
        run_suite("nope", 5, seed=0)
