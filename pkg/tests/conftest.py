import random
from fractions import Fraction

import pytest

from zinbiel import BasisChange, make_f1, make_f2, make_f3, make_nf
from zinbiel.catalog import dim4_catalog
from zinbiel.linalg import rank


def random_change(n, rng, span=3):
    """Random invertible rational matrix with small numerators and denominators."""
    while True:
        rows = [[Fraction(rng.randint(-span, span), rng.randint(1, span)) for _ in range(n)] for _ in range(n)]
        if rank(rows) == n:
            return BasisChange(rows)


def catalog_algebras():
    """Every named algebra used by the suites: NF_1..NF_10, the filiform classes for n = 5..8, and A_1..A_16."""
    out = {f"NF{n}": make_nf(n) for n in range(1, 11)}
    for n in range(5, 9):
        out[f"F1({n})"] = make_f1(n)
        out[f"F2({n})"] = make_f2(n)
        out[f"F3({n})"] = make_f3(n)
    out.update(dim4_catalog())
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def catalog():
    return catalog_algebras()


# --- acceptance summary -------------------------------------------------------

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or report.when != "call":
        return
    _ACCEPTANCE[report.nodeid] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (outcome, duration) in sorted(_ACCEPTANCE.items(), key=lambda kv: _order(kv[0])):
        name = nodeid.split("::")[-1]
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}  ({duration:.2f}s)")


def _order(nodeid):
    name = nodeid.split("::")[-1]
    digits = "".join(ch for ch in name.split("_")[1] if ch.isdigit()) if "_" in name else ""
    return int(digits) if digits else 0, name

