"""Pinned worked-example models: every registered case must pass, repeatably."""

import pytest

from framekit.registry import case_code, case_names, run_case


@pytest.mark.parametrize("name", case_names())
def test_case_passes(name):
    outcome = run_case(name)
    assert outcome.passed, outcome.first_failure()
    assert outcome.assertions  # every case pins at least one value


def test_cases_are_deterministic():
    for name in case_names():
        first = run_case(name)
        second = run_case(name)
        obs1 = [(a.label, a.observed) for a in first.assertions]
        obs2 = [(a.label, a.observed) for a in second.assertions]
        assert obs1 == obs2


def test_short_codes_alias_the_names():
    for name in case_names():
        code = case_code(name)
        assert run_case(code).case_id == run_case(name).case_id


def test_unknown_case_raises():
    with pytest.raises(KeyError):
        run_case("definitely-not-a-case")
