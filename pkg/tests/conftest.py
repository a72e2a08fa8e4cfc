import numpy as np
import pytest

from graphpsd import (
    Graph,
    build_laplacian,
    eigendecompose,
    fit_lowpass_filter,
    random_sensor_graph,
)


@pytest.fixture
def path3():
    """Path graph 0-1-2 with unit weights."""
    return Graph(n_vertices=3, edges=((0, 1, 1.0), (1, 2, 1.0)))


@pytest.fixture
def path3_basis(path3):
    return eigendecompose(build_laplacian(path3))


@pytest.fixture(scope="session")
def sensor100():
    """The reference 100-vertex sensor graph used by the experiments."""
    return random_sensor_graph(100, 6, seed=1)


@pytest.fixture(scope="session")
def sensor100_basis(sensor100):
    return eigendecompose(build_laplacian(sensor100))


@pytest.fixture(scope="session")
def sensor100_filter(sensor100_basis):
    return fit_lowpass_filter(sensor100_basis, length=7, rate=3.0)


def star_graph(n):
    """Star with hub 0; its Laplacian has eigenvalue 1 repeated n-2 times."""
    return Graph(n_vertices=n, edges=tuple((0, i, 1.0) for i in range(1, n)))


def random_weighted_graph(n, density, seed):
    """Erdos-Renyi style weighted graph (possibly disconnected)."""
    rng = np.random.default_rng(seed)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                edges.append((i, j, float(rng.uniform(0.2, 2.0))))
    if not edges:
        edges.append((0, 1, 1.0))
    return Graph(n_vertices=n, edges=tuple(edges))
