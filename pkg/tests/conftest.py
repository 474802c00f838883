import numpy as np
import pytest

from triwalk.algebra import normalize_spinor


@pytest.fixture
def random_spinors():
    """Factory for reproducible batches of random normalized spinors."""

    def make(count: int, seed: int = 0):
        rng = np.random.default_rng(seed)
        return [
            normalize_spinor(rng.normal(size=3) + 1j * rng.normal(size=3))
            for _ in range(count)
        ]

    return make
