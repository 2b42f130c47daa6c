import sympy as sp
import pytest

from gvpairs.symcore import RatFunc

LAM1, LAM2 = sp.symbols("lam1 lam2")


def to_sympy(x: RatFunc):
    """Convert via the canonical text form (an independent route through sympy)."""
    return sp.sympify(x.to_text().replace("^", "**"), locals={"lam1": LAM1, "lam2": LAM2})


def sympy_equal(x: RatFunc, expr) -> bool:
    if isinstance(expr, str):
        expr = sp.sympify(expr.replace("^", "**"), locals={"lam1": LAM1, "lam2": LAM2})
    return sp.cancel(to_sympy(x) - expr) == 0


@pytest.fixture
def sym():
    return LAM1, LAM2


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
