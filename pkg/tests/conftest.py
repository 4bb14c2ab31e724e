import warnings
from pathlib import Path

import pytest

from nnv import load_election
from nnv.ballot import LENIENT

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"
SCHEMAS = ROOT / "schemas"


def load_fixture(name):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return load_election(FIXTURES / f"{name}.json", mode=LENIENT)


@pytest.fixture
def election0():
    return load_fixture("election0")


@pytest.fixture
def election1():
    return load_fixture("election1")


@pytest.fixture
def election2():
    return load_fixture("election2")


@pytest.fixture
def worked():
    return load_fixture("worked_example")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py::test_criterion_" in getattr(rep, "nodeid", "") and rep.when == "call":
                name = rep.nodeid.split("::")[-1][len("test_criterion_"):]
                num, _, what = name.partition("_")
                lines.append((int(num), f"{'PASS' if outcome == 'passed' else 'FAIL'}  "
                                        f"criterion {int(num):2d}: {what.replace('_', ' ')}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
