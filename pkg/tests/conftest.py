import numpy as np
import pytest

from qemhj.profiles import make_ambiguity

# criterion id -> (status, detail); filled by test_acceptance, echoed in the terminal summary
ACCEPTANCE = {}


def record(key, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE[key] = (status, detail)
    print(f"{status} {key}: {detail}")


@pytest.fixture
def amb0():
    return make_ambiguity(0.0, -1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split()[1].split("[")[0]), k)):
        status, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{status} {key}: {detail}")
