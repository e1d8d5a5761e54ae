import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dualmp.matrix import DualMatrix, random_dual

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def dm(std, dual=None):
    """Dual matrix from nested lists; ``dual`` defaults to zero."""
    std = np.asarray(std, dtype=complex)
    dual = np.zeros_like(std) if dual is None else np.asarray(dual, dtype=complex)
    return DualMatrix(std, dual)


# the worked pairs used throughout
ROW = dm([[1, 0]], [[0, 1]])  # [1 ε]
DIAG = dm([[1, 0], [0, 0]], [[0, 0], [0, 1]])  # diag(1, ε)
CORNER = dm([[0, 0], [0, 0]], [[0, 0], [0, 1]])  # [[0,0],[0,ε]]

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def dual_matrices(draw, max_dim=5, square=False):
    m = draw(st.integers(1, max_dim))
    n = m if square else draw(st.integers(1, max_dim))
    r = draw(st.integers(0, min(m, n)))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_dual(m, n, r, seed)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
