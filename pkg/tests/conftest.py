import pytest

from hzseries.hurwitz import default_table

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def table():
    return default_table(8004)


@pytest.fixture
def criterion(request):
    """Record the outcome of an acceptance criterion under the given label."""
    labels = []

    def mark(label):
        labels.append(label)

    yield mark
    rep = getattr(request.node, "rep_call", None)
    for label in labels:
        ACCEPTANCE[label] = bool(rep and rep.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"{'PASS' if ACCEPTANCE[label] else 'FAIL'}  {label}")
