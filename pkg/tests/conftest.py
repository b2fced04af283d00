import contextlib

import pytest

from koornwinder.params import ModelParams

# three generic parameter points (qh, th, k0, k1, k0p, k1p)
GENERIC = [
    ("1/3", "1/2", "1/2", "2/3", "1/5", "3/7"),
    ("1/2", "2/3", "1/3", "1/4", "3/5", "1/2"),
    ("2/5", "1/3", "3/4", "1/2", "1/3", "2/7"),
]

ACCEPTANCE = {}


def generic(n, which=0):
    return ModelParams(n, *GENERIC[which])


@pytest.fixture(params=[0, 1, 2], ids=["P1", "P2", "P3"])
def which(request):
    return request.param


@contextlib.contextmanager
def criterion(number, title):
    """Record the outcome of one acceptance criterion and print a status line."""
    key = (number, title)
    try:
        yield
    except BaseException as exc:
        ACCEPTANCE.setdefault(key, []).append(f"FAIL ({type(exc).__name__}: {str(exc)[:120]})")
        print(f"criterion {number} [{title}]: FAIL")
        raise
    ACCEPTANCE.setdefault(key, []).append("PASS")
    print(f"criterion {number} [{title}]: PASS")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), outcomes in sorted(ACCEPTANCE.items()):
        fails = [o for o in outcomes if o != "PASS"]
        status = fails[0] if fails else "PASS"
        terminalreporter.write_line(f"criterion {number:>2} {title}: {status} ({len(outcomes)} case(s))")
