import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from qwmp import QMatrix, WeightPair  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

DATA = os.path.join(os.path.dirname(__file__), "data")

EXAMPLE_A = [["1", "i", "j"], ["-k", "i", "1"], ["k", "j", "-i"], ["j", "-1", "i"]]
EXAMPLE_N_INV = [
    ["23", "16-2i-2j+10k", "-16+10i-2j-2k"],
    ["16+2i+2j-10k", "29", "-19-i-13j-k"],
    ["-16-10i+2j+2k", "-19+i+13j+k", "29"],
]
EXAMPLE_M = [["2", "k", "i", "0"], ["-k", "2", "0", "j"], ["-i", "0", "2", "k"], ["0", "-j", "-k", "2"]]
EXAMPLE_B = ["1", "0", "i", "k"]


@pytest.fixture(scope="session")
def example():
    A = QMatrix.from_rows(EXAMPLE_A)
    M = QMatrix.from_rows(EXAMPLE_M)
    N_inv = QMatrix.from_rows(EXAMPLE_N_INV)
    return {
        "A": A,
        "M": M,
        "N_inv": N_inv,
        "W": WeightPair(M, N_inv=N_inv),
        "b": QMatrix.column(EXAMPLE_B),
    }


@pytest.fixture(scope="session")
def data_dir():
    return DATA


_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
