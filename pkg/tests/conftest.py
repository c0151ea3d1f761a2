import math
from itertools import product

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tensor_numrange.generators import random_tensor

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

half_shapes = st.lists(st.integers(1, 3), min_size=1, max_size=3).filter(
    lambda s: math.prod(s) <= 9
)
seeds = st.integers(0, 2**32 - 1)


@st.composite
def square_tensors(draw, shapes=half_shapes):
    shape = tuple(draw(shapes))
    return random_tensor(np.random.default_rng(draw(seeds)), shape)


def loop_einstein(a, b, n):
    """Explicit nested-loop contraction over all multi-indices."""
    lead, mid, trail = a.shape[: a.ndim - n], a.shape[a.ndim - n :], b.shape[n:]
    out = np.zeros(lead + trail, dtype=complex)
    for i in product(*map(range, lead)):
        for j in product(*map(range, trail)):
            out[i + j] = sum(a[i + k] * b[k + j] for k in product(*map(range, mid)))
    return out


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
