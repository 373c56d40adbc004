"""Shared fixtures and the acceptance-summary reporting hook.

Expensive artifacts (count tables, certified constants, the large height
tables) are built once per session.  Acceptance tests record one line per
criterion through the ``acceptance`` fixture; the terminal summary prints a
PASS/FAIL line for each criterion at the end of the run.
"""

import time

import pytest

import theta_heights as th

_ACCEPTANCE_LINES: dict[int, tuple[bool, str]] = {}


class AcceptanceRecorder:
    """Record a criterion verdict, then enforce it as a test assertion."""

    def check(self, number: int, ok: bool, detail: str) -> None:
        _ACCEPTANCE_LINES[number] = (bool(ok), detail)
        assert ok, f"criterion {number}: {detail}"


@pytest.fixture(scope="session")
def acceptance() -> AcceptanceRecorder:
    return AcceptanceRecorder()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE_LINES):
        ok, detail = _ACCEPTANCE_LINES[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {number}: {verdict} - {detail}")


@pytest.fixture(scope="session")
def counts_1000() -> th.CountTable:
    return th.count_trees(1000)


@pytest.fixture(scope="session")
def rho_10() -> th.CertifiedReal:
    return th.compute_rho(1e-10)


@pytest.fixture(scope="session")
def lam_10(rho_10) -> th.CertifiedReal:
    return th.compute_lambda(th.compute_rho(1e-12), 1e-10)


@pytest.fixture(scope="session")
def params(lam_10) -> th.ThetaParams:
    return th.ThetaParams(float(lam_10.value))


BUILD_SECONDS: dict[str, float] = {}


@pytest.fixture(scope="session")
def large_height_columns() -> th.HeightCountTable:
    """Height-bounded counts up to h = 999 with columns n in {250, 500, 1000}.

    This is the one genuinely expensive artifact (a few minutes); it serves
    the distribution-convergence and moment acceptance tests jointly.
    """
    start = time.monotonic()
    table = th.height_bounded_counts(
        1000, 999, keep_rows=False, track_columns=(250, 500, 1000)
    )
    BUILD_SECONDS["large_height_columns"] = time.monotonic() - start
    return table


@pytest.fixture(scope="session")
def build_seconds() -> dict[str, float]:
    return BUILD_SECONDS


@pytest.fixture(scope="session")
def large_distributions(large_height_columns) -> dict[int, th.HeightDistribution]:
    return {
        n: th.height_distribution(n, large_height_columns) for n in (250, 500, 1000)
    }
