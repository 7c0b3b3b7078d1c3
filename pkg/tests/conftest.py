import pytest

_CRITERIA = []


def pytest_addoption(parser):
    parser.addoption("--run-expensive", action="store_true", default=False,
                     help="run the long reproduction runs marked 'expensive'")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-expensive"):
        return
    skip = pytest.mark.skip(reason="needs --run-expensive")
    for item in items:
        if "expensive" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def criterion(request):
    """Record one acceptance line; its status comes from the call-phase report."""
    entry = {"name": request.node.name, "ok": False, "detail": ""}
    _CRITERIA.append(entry)
    request.node._criterion = entry

    def report(detail):
        entry["detail"] = detail

    return report


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    entry = getattr(item, "_criterion", None)
    if entry is not None and rep.when == "call":
        entry["ok"] = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for entry in _CRITERIA:
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"{status}  {entry['name']}  {entry['detail']}")
