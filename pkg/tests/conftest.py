import pytest

from cheegersweep import generate

_CRITERIA = []


def record_criterion(number, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
    _CRITERIA.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def c4():
    return generate("cycle", n=4)


@pytest.fixture
def k4():
    return generate("complete", n=4)


@pytest.fixture
def p3():
    return generate("path", n=3)


@pytest.fixture
def petersen():
    return generate("petersen")
