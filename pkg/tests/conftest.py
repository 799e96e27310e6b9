import pytest

from clopen_order.systems import SubshiftComponent, SystemSpace, fibonacci, thue_morse, tribonacci


@pytest.fixture(scope="session")
def fib():
    return SystemSpace([SubshiftComponent(fibonacci(), "fib")], "fib")


@pytest.fixture(scope="session")
def tm():
    return SystemSpace([SubshiftComponent(thue_morse(), "tm")], "tm")


@pytest.fixture(scope="session")
def trib():
    return SystemSpace([SubshiftComponent(tribonacci(), "trib")], "trib")


@pytest.fixture(scope="session")
def fib_tm():
    return SystemSpace(
        [SubshiftComponent(fibonacci(), "fib"), SubshiftComponent(thue_morse(), "tm")], "fib_tm_union"
    )


@pytest.fixture(scope="session")
def tm_tm():
    return SystemSpace(
        [SubshiftComponent(thue_morse(), "tm"), SubshiftComponent(thue_morse(), "tm#2")], "tm_tm_union"
    )


@pytest.fixture(scope="session")
def tm3():
    return SystemSpace([SubshiftComponent(thue_morse(), f"tm{i}") for i in range(3)], "tm3")


# -- acceptance summary -------------------------------------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = call.excinfo is not None
    if call.when == "call" or failed:
        detail = dict(item.user_properties).get("detail", "")
        prev = _ACCEPTANCE.get(number)
        if prev is None or prev[1]:
            _ACCEPTANCE[number] = (title, not failed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok, detail = _ACCEPTANCE[number]
        line = f"{'PASS' if ok else 'FAIL'}  [{number:2d}] {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
