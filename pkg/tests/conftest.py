import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from biframe.catalog import example1_phi, example1_xi, example2_phi, example2_xi
from biframe.family import VectorFamily, sample_family
from biframe.measure import make_counting_measure, make_uniform_quadrature
from biframe.sampling import family_from_columns, random_family, random_measure

settings.register_profile("ci", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


def onb(n=2, scale=1.0, field="real"):
    dtype = np.complex128 if field == "complex" else np.float64
    return VectorFamily(make_counting_measure(n), scale * np.eye(n, dtype=dtype), label="onb")


def columns(*vectors):
    """Counting-measure family from explicit vectors."""
    return VectorFamily(make_counting_measure(len(vectors)), np.array(vectors, dtype=float))


def example1(nodes=16):
    space = make_uniform_quadrature((0.0, 1.0), nodes)
    return sample_family(space, example1_xi), sample_family(space, example1_phi)


def example2(nodes=16):
    space = make_uniform_quadrature((0.0, 1.0), nodes)
    return sample_family(space, example2_xi), sample_family(space, example2_phi)


@st.composite
def random_pairs(draw, max_dim=6, max_nodes=24, fields=("real", "complex")):
    seed = draw(st.integers(0, 2**32 - 1))
    dim = draw(st.integers(2, max_dim))
    nodes = draw(st.integers(1, max_nodes))
    field = draw(st.sampled_from(fields))
    rng = np.random.default_rng(seed)
    space = random_measure(rng, nodes)
    return random_family(rng, space, dim, field, "xi"), random_family(rng, space, dim, field, "phi"), rng


seeds = st.integers(0, 2**32 - 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


__all__ = ["ACCEPTANCE_LINES", "columns", "example1", "example2", "family_from_columns", "onb", "random_pairs", "seeds"]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
