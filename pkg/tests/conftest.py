import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qtchain import census, core, pathform

settings.register_profile("ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

FIGURE_SPEC = "k=6; R D Gx R"


@pytest.fixture(scope="session")
def figure():
    D = pathform.parse_path_spec(FIGURE_SPEC)
    return pathform.reconstruct(D), D


@st.composite
def quasitrivial_tables(draw, k_min=1, k_max=5):
    k = draw(st.integers(k_min, k_max))
    t = np.diag(np.arange(1, k + 1))
    for x in range(k):
        for y in range(k):
            if x != y:
                t[x, y] = draw(st.sampled_from((x + 1, y + 1)))
    return core.new_table(k, t)


@st.composite
def raw_tables(draw, k_min=1, k_max=5):
    k = draw(st.integers(k_min, k_max))
    vals = draw(st.lists(st.integers(1, k), min_size=k * k, max_size=k * k))
    return core.new_table(k, np.array(vals).reshape(k, k))


_PATHS = {k: list(census.enumerate_paths(k)) for k in range(1, 7)}


@st.composite
def decompositions(draw, k_min=1, k_max=6):
    k = draw(st.integers(k_min, k_max))
    return draw(st.sampled_from(_PATHS[k]))
