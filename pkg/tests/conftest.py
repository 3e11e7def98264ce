from __future__ import annotations

import numpy as np
import pytest

from qdesign.designs import catalog, catalog_names
from qdesign.haar import random_density


@pytest.fixture(scope="session")
def designs():
    """All built-in designs, constructed once per session."""
    return {name: catalog(name) for name in catalog_names()}


@pytest.fixture
def rng():
    return np.random.default_rng(20250810)


def random_states(rng, d: int, count: int):
    """Alternating mixed and pure random density matrices."""
    out = []
    for i in range(count):
        rank = 1 if i % 2 else None
        out.append(random_density(d, rng, rank=rank))
    return out
