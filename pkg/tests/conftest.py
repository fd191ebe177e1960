import numpy as np
import pytest

from fermereo.exterior import AntiSymTensor, wedge
from fermereo.projectors import sigma
from fermereo.subspace import Subspace

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20241015)


@pytest.fixture(scope="session")
def warm_kernels():
    """Trigger numba compilation so timed sections measure the computation only."""
    e = AntiSymTensor.basis(4, (0,))
    wedge(e, AntiSymTensor.basis(4, (1,)))
    sigma(Subspace.span([1, 1, 0, 0]), 2, 1)
    sigma(Subspace.coordinate(4, [0]), 2, 1)
    from fermereo.exterior import is_decomposable

    is_decomposable(AntiSymTensor.basis(4, (0, 1)))


@pytest.fixture
def acceptance():
    def record(name: str, ok: bool, detail: str = ""):
        _ACCEPTANCE.append((name, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
