import pytest

from mtcgauge import catalog

# every catalog entry that is a genuine input theory (the toric-code fixture included)
CATALOG = catalog.catalog_keys()
SMALL = [k for k in CATALOG if catalog.named_entry(k).rank <= 5]


@pytest.fixture(params=CATALOG)
def any_theory(request):
    return catalog.named_entry(request.param)


@pytest.fixture
def fib():
    return catalog.named_entry("fibonacci")


@pytest.fixture
def semion():
    return catalog.named_entry("semion")


@pytest.fixture
def trivial():
    return catalog.named_entry("trivial")


@pytest.fixture
def ising():
    return catalog.named_entry("ising")


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {text}")
