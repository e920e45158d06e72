import numpy as np
import pytest

from possport import StandardModel, hara, power, triangular

SEED = 20240611


@pytest.fixture
def rng():
    print(f"rng seed = {SEED}")
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def ref_model():
    """HARA(-1, 0, 2) at w = 1 with the centered (0.2, 0.3) triangular risk."""
    return StandardModel(1.0, triangular(-1.0 / 60.0, 0.2, 0.3), power(2), hara(-1.0, 0.0, 2.0))


_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion (echoed in the summary)."""
    def record(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
