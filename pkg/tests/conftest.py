import pytest

from tangentoids import QQ, ZZ, Modular, product

CERTIFIED_RINGS = [ZZ, QQ, Modular(4), Modular(6), product(Modular(2), Modular(3))]
FINITE_RINGS = [Modular(2), Modular(3), Modular(4), Modular(6), product(Modular(2), Modular(3))]


@pytest.fixture(params=CERTIFIED_RINGS, ids=str)
def ring(request):
    return request.param


@pytest.fixture(params=FINITE_RINGS, ids=str)
def finite_ring(request):
    return request.param


# one PASS/FAIL line per acceptance criterion in the terminal summary
_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.name.startswith("test_criterion_") and (rep.when == "call" or rep.failed):
        number = int(item.name.split("_")[2])
        title = (item.function.__doc__ or item.name).strip().splitlines()[0]
        prev = _CRITERIA.get(number)
        _CRITERIA[number] = (prev is None or prev[0]) and rep.passed, title, rep.duration


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, title, seconds = _CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({seconds:.2f} s)")
