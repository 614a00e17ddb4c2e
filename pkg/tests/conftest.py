import networkx as nx
import pytest

from src.graph.core import TruncatedGraph, from_networkx
from src.graph.generators import FamilyBundle, generate_family


@pytest.fixture(scope="session")
def line() -> FamilyBundle:
    return generate_family("two_sided_line", 4)


@pytest.fixture(scope="session")
def pendant_cycle() -> FamilyBundle:
    return generate_family("cycle_with_pendant_pairs:4", 2)


@pytest.fixture(scope="session")
def biregular() -> FamilyBundle:
    return generate_family("biregular_tree:2,3", 4)


@pytest.fixture(scope="session")
def grid() -> FamilyBundle:
    return generate_family("grid2d", 3)


@pytest.fixture
def hexagon() -> TruncatedGraph:
    return from_networkx(nx.cycle_graph(6))


@pytest.fixture
def path5() -> TruncatedGraph:
    return from_networkx(nx.path_graph(5), frontier=[0, 4], center=2, radius=2)
