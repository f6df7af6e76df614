import math
from pathlib import Path

import numpy as np
import pytest

from leibniz import PointSystem
from leibniz.sphere import sphere_through

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

TETRA_C = 1 / (2 * math.sqrt(2))
REGULAR_TETRA = [[TETRA_C, TETRA_C, TETRA_C], [TETRA_C, -TETRA_C, -TETRA_C],
                 [-TETRA_C, TETRA_C, -TETRA_C], [-TETRA_C, -TETRA_C, TETRA_C]]


def pytest_addoption(parser):
    parser.addoption("--update-golden", action="store_true", help="rewrite golden CLI outputs")


@pytest.fixture
def update_golden(request):
    return request.config.getoption("--update-golden")


@pytest.fixture
def tri345():
    return PointSystem([[0, 0], [4, 0], [0, 3]])


@pytest.fixture
def equilateral():
    return PointSystem([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])


@pytest.fixture
def regular_tetra():
    return PointSystem(REGULAR_TETRA)


@pytest.fixture
def trirectangular():
    return PointSystem([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])


def sample_on_sphere(rng, n, d, center=None, radius=None):
    """Points drawn uniformly on a random (or given) sphere, plus that sphere."""
    if center is None:
        center = rng.uniform(-10, 10, d)
    if radius is None:
        radius = float(10 ** rng.uniform(-1, 2))
    u = rng.standard_normal((n, d))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    ps = PointSystem(center + radius * u)
    return ps, sphere_through(ps, center, radius)


def random_points(rng, n, d, lo=-1e3, hi=1e3):
    return PointSystem(rng.uniform(lo, hi, (n, d)))
