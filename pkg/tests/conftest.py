from importlib import resources

import pytest

from irradkit.ontology import load_builtin_ontology
from irradkit.turtle_io import dataset_from_graph, parse_turtle


@pytest.fixture()
def ontology():
    return load_builtin_ontology()


@pytest.fixture(scope="session")
def golden_text():
    return (resources.files("irradkit") / "data" / "fcc_radmon.ttl").read_text()


@pytest.fixture()
def golden_dataset(ontology, golden_text):
    ds, issues = dataset_from_graph(parse_turtle(golden_text), ontology)
    assert issues == []
    return ds


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance criterion, visible regardless of capture."""
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for name, status in RESULTS:
            terminalreporter.write_line(f"{status}  {name}")
