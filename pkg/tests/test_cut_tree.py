import networkx as nx
import pytest
from hypothesis import given

from src.errors import InputError, StructureError
from src.cuts.treeset import check_tree_set
from src.graph.core import TruncatedGraph
from src.graph.generators import FamilyBundle
from src.tree.cut_tree import build_cut_tree, phi, pointing_cuts, region, tree_from_cuts

from .strategies import PROPERTY_SETTINGS, edge_cuts, trees


def hub_of(tree) -> str:
    return max(tree.vertices, key=lambda v: tree.nx.degree[v])


def test_pendant_cycle_tree_is_a_star(pendant_cycle: FamilyBundle) -> None:
    _, tree, mapping = tree_from_cuts(pendant_cycle.graph, pendant_cycle.canonical_cuts)
    assert nx.is_isomorphic(tree.nx, nx.star_graph(4))
    center = hub_of(tree)
    assert mapping.preimages[center] == ()
    # each hub lands on its own leaf together with its pendant pair
    assert mapping.phi["v1"] == mapping.phi["v1.a"] == mapping.phi["v1.b"] != center
    assert sorted(len(p) for p in mapping.preimages.values()) == [0, 3, 3, 3, 3]


def test_line_tree_and_regions(line: FamilyBundle) -> None:
    _, tree, mapping = tree_from_cuts(line.graph, line.canonical_cuts)
    assert nx.is_isomorphic(tree.nx, nx.star_graph(7))
    center = hub_of(tree)
    assert mapping.preimages[center] == ()
    assert all(len(mapping.preimages[v]) == 1 for v in tree.vertices if v != center)
    assert mapping.regions[center].diameter == 6
    assert set(mapping.excluded) == {"x:-4", "x:4"}
    assert "x:4" not in mapping.phi


def test_biregular_tree_is_its_own_structure_tree(biregular: FamilyBundle) -> None:
    _, tree, mapping = tree_from_cuts(biregular.graph, biregular.canonical_cuts)
    assert nx.is_isomorphic(tree.nx, biregular.graph.nx)
    assert max(r.diameter for r in mapping.regions.values()) == 2
    assert len(tree.blocks[0]) + len(tree.blocks[1]) == len(tree.vertices)


def test_directed_edges_reverse_under_complement(pendant_cycle: FamilyBundle) -> None:
    tree_set, tree, _ = tree_from_cuts(pendant_cycle.graph, pendant_cycle.canonical_cuts)
    for i in range(len(tree_set)):
        j = tree_set.complement(i)
        assert (tree.o(j), tree.t(j)) == (tree.t(i), tree.o(i))
    assert len(tree.undirected_edges()) == len(tree_set) // 2


def test_split_hexagon(hexagon: TruncatedGraph) -> None:
    _, tree, mapping = tree_from_cuts(hexagon, [{"0", "1", "2"}, {"3", "4", "5"}])
    assert len(tree.vertices) == 2
    assert mapping.phi["0"] == mapping.phi["2"] != mapping.phi["3"]
    assert pointing_cuts(tree.tree_set, "1") == [tree.tree_set.index_of({"0", "1", "2"})]


def test_regions_are_rederived(pendant_cycle: FamilyBundle) -> None:
    _, tree, mapping = tree_from_cuts(pendant_cycle.graph, pendant_cycle.canonical_cuts)
    for v in tree.vertices:
        assert region(pendant_cycle.graph, tree, mapping, v) == mapping.regions[v]
    with pytest.raises(InputError):
        region(pendant_cycle.graph, tree, mapping, "t99")


def test_phi_needs_the_matching_tree(hexagon: TruncatedGraph, pendant_cycle: FamilyBundle) -> None:
    _, tree, _ = tree_from_cuts(pendant_cycle.graph, pendant_cycle.canonical_cuts)
    other = check_tree_set(hexagon, [{"0", "1", "2"}, {"3", "4", "5"}])
    with pytest.raises(InputError):
        phi(hexagon, other, tree)


def test_crossing_cuts_do_not_make_a_tree(hexagon: TruncatedGraph) -> None:
    with pytest.raises(StructureError):
        tree_from_cuts(hexagon, [{"0", "1", "2"}, {"3", "4", "5"}, {"1", "2", "3"}, {"0", "4", "5"}])


def test_structure_json(line: FamilyBundle) -> None:
    _, tree, mapping = tree_from_cuts(line.graph, line.canonical_cuts)
    data = tree.to_json()
    assert len(data["edges"]) == 14
    assert mapping.to_json()["preimage_sizes"][hub_of(tree)] == 0


@PROPERTY_SETTINGS
@given(trees())
def test_tree_of_edge_cuts_is_the_tree(g: TruncatedGraph) -> None:
    tree_set = check_tree_set(g, edge_cuts(g))
    tree = build_cut_tree(tree_set)
    mapping = phi(g, tree_set, tree, strict=True)
    assert nx.is_isomorphic(tree.nx, g.nx)
    assert all(len(p) == 1 for p in mapping.preimages.values())
    for x, y in g.edges:
        assert tree.distance(mapping.phi[x], mapping.phi[y]) == 1
