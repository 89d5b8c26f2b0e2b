"""Shared session fixtures: the worked algebra contexts and towers."""

import pytest

from superflag.degeneration import LevelTower
from superflag.liesuper import build_context
from superflag.modules import build_realization

# Populated by tests/test_acceptance.py; echoed once at the end of the run so
# the terminal output carries one summary line per acceptance criterion.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def acceptance():
    """Record one PASS/FAIL summary line per criterion, then assert it.

    The line is appended before asserting so a failing criterion still shows
    up in the end-of-run summary.
    """

    def record(name: str, ok: bool, detail: str, elapsed: float, limit: float):
        within = elapsed <= limit
        status = "PASS" if (ok and within) else "FAIL"
        line = f"{status} {name}: {detail} [{elapsed:.2f}s / {limit:.0f}s]"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
        assert within, f"time budget exceeded: {line}"

    return record


@pytest.fixture(scope="session")
def osp_context():
    return build_context("osp", 1, 2, (2, 1))


@pytest.fixture(scope="session")
def osp_real(osp_context):
    return build_realization(osp_context, [("flip-natural", 1)])


@pytest.fixture(scope="session")
def osp_tower(osp_context, osp_real):
    tower = LevelTower(osp_context.basis, osp_real)
    for k in (1, 2, 3):
        tower.essential(k)
    return tower


@pytest.fixture(scope="session")
def gl11_context():
    return build_context("gl", 1, 1, (1, 0))


@pytest.fixture(scope="session")
def gl11_real(gl11_context):
    return build_realization(gl11_context, [("natural", 0)])


@pytest.fixture(scope="session")
def sl12_context():
    return build_context("sl", 1, 2, (3, -1))


@pytest.fixture(scope="session")
def sl12_real(sl12_context):
    return build_realization(sl12_context, [("natural", 0)])


@pytest.fixture(scope="session")
def sl3_context():
    return build_context("sl", 3, 0, (3, 2))


@pytest.fixture(scope="session")
def sl3_adjoint(sl3_context):
    return build_realization(
        sl3_context, [("natural", 0), ("dual-natural", 2)]
    )


@pytest.fixture(scope="session")
def sl3_tower(sl3_context, sl3_adjoint):
    return LevelTower(sl3_context.basis, sl3_adjoint)


@pytest.fixture(scope="session")
def sl2_context():
    return build_context("sl", 2, 0, (1,))
