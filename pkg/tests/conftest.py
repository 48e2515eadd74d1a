import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from c2d4.model import C2D4Curve

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.load_profile("repo")

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def family_f():
    return C2D4Curve.from_roots(-1, [(-5, 5), (-4, -12), (2, -6)])


@pytest.fixture(scope="session")
def fixtures_root():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    outcomes = getattr(mod, "OUTCOMES", None)
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for outcome in sorted(outcomes, key=lambda o: o.number):
        terminalreporter.write_line(outcome.line())
