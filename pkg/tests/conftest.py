import math

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repo")

PI_3 = math.pi / 3


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_complex(rng, m):
    return rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))


def random_hermitian(rng, m):
    z = random_complex(rng, m)
    return (z + z.conj().T) / 2


def random_psd(rng, m):
    z = random_complex(rng, m)
    return z @ z.conj().T


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_registry

    lines = acceptance_registry.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
