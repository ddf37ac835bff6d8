import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_CRITERIA = []


@pytest.fixture
def criterion(request):
    """Time an acceptance criterion and record one PASS/FAIL line for the summary."""
    import time

    class Recorder:
        def __init__(self):
            self.start = time.perf_counter()
            self.detail = ""

        def elapsed(self):
            return time.perf_counter() - self.start

    rec = Recorder()
    yield rec
    failed = getattr(request.node, "rep_call", None)
    ok = failed is not None and failed.passed
    line = f"{'PASS' if ok else 'FAIL'}  {request.node.name}  {rec.detail}  ({rec.elapsed():.2f} s)"
    _CRITERIA.append(line)
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
