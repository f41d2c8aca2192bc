import pytest

from bracekit import groups as G
from bracekit.enumeration import build_corpus
from bracekit.smallgroups import by_name


@pytest.fixture(scope="session")
def s3():
    return G.symmetric_group(3)


@pytest.fixture(scope="session")
def s4():
    return G.symmetric_group(4)


@pytest.fixture(scope="session")
def q8():
    return G.dicyclic_group(2)


@pytest.fixture(scope="session")
def klein():
    return G.direct_product(G.cyclic_group(2), G.cyclic_group(2))


@pytest.fixture(scope="session")
def corpus12():
    return build_corpus(range(1, 13), timestamp="1970-01-01T00:00:00+00:00")


@pytest.fixture(scope="session")
def order8_corpus():
    return build_corpus([8], timestamp="1970-01-01T00:00:00+00:00")


@pytest.fixture(scope="session")
def library():
    return by_name


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion" in nodeid and rep.when == "call":
                rows.append((nodeid.split("::")[-1], outcome))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(rows):
            terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
