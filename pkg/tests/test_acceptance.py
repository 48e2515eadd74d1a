"""Acceptance criteria 1 to 10; each prints a PASS/FAIL line in the terminal summary."""

import pytest

from c2d4.acceptance import AcceptanceConfig, run_one
from conftest import FIXTURES

OUTCOMES = []


@pytest.mark.parametrize("k", range(1, 11), ids=lambda k: f"criterion_{k}")
def test_criterion(k):
    outcome = run_one(k, AcceptanceConfig(), FIXTURES)
    OUTCOMES.append(outcome)
    assert outcome.passed, outcome.line()
