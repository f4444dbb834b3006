import numpy as np
import pytest

from swphase import gell_mann_basis


@pytest.fixture(scope="session")
def basis2():
    return gell_mann_basis(2)


@pytest.fixture(scope="session")
def basis3():
    return gell_mann_basis(3)


@pytest.fixture(scope="session")
def basis4():
    return gell_mann_basis(4)


def ball_vector(rng: np.random.Generator, dim: int, radius: float) -> np.ndarray:
    """A random vector of the given norm, for seeded test inputs."""
    v = rng.normal(size=dim)
    return radius * v / np.linalg.norm(v)
