import numpy as np
import pytest
from hypothesis import settings

from logmaj.generators import GenConfig, random_matrix, random_psd, random_strict_contraction

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("repo")


def diag(*values):
    return np.diag(values).astype(np.complex128)


@pytest.fixture
def psd_pair():
    def make(n, seed=0):
        return random_psd(GenConfig(seed, n)), random_psd(GenConfig(seed + 1000, n))

    return make


@pytest.fixture
def contraction_pair():
    def make(n, seed=0):
        return (random_strict_contraction(GenConfig(seed, n)),
                random_strict_contraction(GenConfig(seed + 1000, n)))

    return make


@pytest.fixture
def matrix_pair():
    def make(n, seed=0):
        return random_matrix(GenConfig(seed, n)), random_matrix(GenConfig(seed + 1000, n))

    return make


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def record_criterion(number: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE.append(f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
