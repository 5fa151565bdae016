import pytest

from henonseq import _pure

try:
    from henonseq import _core
except ImportError:  # extension not built
    _core = None

BACKENDS = [pytest.param(_pure, id="pure")]
if _core is not None:
    BACKENDS.append(pytest.param(_core, id="compiled"))


@pytest.fixture(params=BACKENDS)
def kernels(request):
    return request.param


@pytest.fixture
def compiled():
    if _core is None:
        pytest.skip("compiled extension not built")
    return _core


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split("#")[1].split()[0])):
        terminalreporter.write_line(line)
