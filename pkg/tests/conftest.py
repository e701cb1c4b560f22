import pytest

from cyclosum.congruence import make_context

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def contexts():
    """Shared VerificationContexts keyed by (p, r, l); built on first use."""
    cache = {}

    def get(p, r, l):
        if (p, r, l) not in cache:
            cache[p, r, l] = make_context(p, r, l)
        return cache[p, r, l]

    return get


@pytest.fixture(scope="session")
def ctx19(contexts):
    return contexts(19, 1, 3)


@pytest.fixture(scope="session")
def ctx37(contexts):
    return contexts(37, 1, 3)


@pytest.fixture(scope="session")
def ctx101(contexts):
    return contexts(101, 1, 5)


@pytest.fixture(scope="session")
def ctx343(contexts):
    return contexts(7, 3, 3)


@pytest.fixture
def acceptance_line():
    def emit(criterion, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
