import pytest

from psisolv.catalog_io import catalog


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = catalog(name)
        return cache[name]

    return get


_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion, reported in the summary")


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.failed):
        label = dict(report.user_properties).get("acceptance")
        if label:
            if "[" in report.nodeid:
                label += " [" + report.nodeid.split("[", 1)[1]
            _ACCEPTANCE[report.nodeid] = (label, "PASS" if report.passed else "FAIL")


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    marker = item.get_closest_marker("acceptance")
    if marker:
        item.user_properties.append(("acceptance", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in sorted(_ACCEPTANCE.values(), key=lambda x: int(x[0].split()[0][2:])):
        terminalreporter.write_line(f"{status}  {label}")
