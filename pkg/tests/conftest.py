from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def even_sl3():
    """Even-case coefficient tensors for sl3 (about 9 s, computed once)."""
    from twisted_yangian import fixtures
    from twisted_yangian.coeffs import compute_even_coeffs
    return compute_even_coeffs(fixtures.sl3())


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
