# conftest.py
import numpy as np
import pytest

from kuniform.tools.graph_core import Graph
from kuniform.tools.graph_families import FamilySpec, generate_family

# Signed stabilizer elements of the four-vertex star 0-1, 1-2, 1-3.
STAR4_EXPANSION = {
    '+IIII', '+XZII', '+ZXZZ', '+IZXI', '+IZIX', '+YYZZ', '+ZYYZ', '+IIXX',
    '+XIXI', '+XIIX', '+ZYZY', '-YXYZ', '-ZXYY', '+XZXX', '-YXZY', '-YYYY',
}


def random_graph(rng, n, p=0.5):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, pairs)


def family(name, size=None, rows=None, cols=None):
    return generate_family(FamilySpec(name, n=size, rows=rows, cols=cols))


@pytest.fixture
def star4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])


@pytest.fixture
def single_edge():
    return Graph.from_edges(2, [(0, 1)])


@pytest.fixture
def c4():
    return family('cycle', 4)


@pytest.fixture
def c5():
    return family('cycle', 5)


@pytest.fixture
def torus55():
    return family('torus', rows=5, cols=5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
