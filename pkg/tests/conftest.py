import numpy as np
import pytest

from cppcopula.copulas import CopulaSpec

_ACCEPTANCE_LINES = []


def record(criterion, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    _ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


ALL_SPECS = [
    CopulaSpec.independence(),
    CopulaSpec.lower(),
    CopulaSpec.upper(),
    CopulaSpec.clayton(2.0),
    CopulaSpec.clayton(-1.0),
    CopulaSpec.gaussian(0.75),
    CopulaSpec.band(0.3),
]

# copulas in the strict sense (uniform margins); band excluded
COPULA_SPECS = [
    CopulaSpec.independence(),
    CopulaSpec.lower(),
    CopulaSpec.upper(),
    CopulaSpec.clayton(-1.0),
    CopulaSpec.clayton(-0.5),
    CopulaSpec.clayton(0.5),
    CopulaSpec.clayton(1.0),
    CopulaSpec.clayton(5.0),
    CopulaSpec.clayton(20.0),
    CopulaSpec.gaussian(-0.6),
    CopulaSpec.gaussian(0.75),
    CopulaSpec.gaussian(0.9712),
]


@pytest.fixture
def grid101():
    g = np.linspace(0.0, 1.0, 101)
    return np.meshgrid(g, g, indexing="ij")
