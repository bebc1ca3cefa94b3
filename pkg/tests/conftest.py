import pytest

from shiftcis.exactset import analyze

SETS = {
    "sinc": [("-1/2", "1/2")],
    "littlewood_paley": [("-1", "-1/2"), ("1/2", "1")],
    "journe": [("2", "16/7"), ("2/7", "1/2"), ("-1/2", "-2/7"), ("-16/7", "-2")],
    "nonsymmetric": [("3", "16/5"), ("1/5", "1/3"), ("4/3", "3/2"), ("-1/2", "-1/3"), ("-4/3", "-1")],
}


@pytest.fixture(scope="session")
def example_sets():
    """name -> (TransversalSet, CongruenceData, AlphaRegion)."""
    return {name: analyze(pieces) for name, pieces in SETS.items()}


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(acceptance_log.RESULTS):
            terminalreporter.write_line(acceptance_log.line(number))
