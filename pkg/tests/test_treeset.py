import pytest
from hypothesis import given

from src.errors import InputError, StructureError
from src.cuts.treeset import (
    TreeSet,
    TreeSetViolation,
    check_tree_set,
    coterminal_classes,
    decreasing_chains,
    orbit_closure,
    relation,
)
from src.graph.core import TruncatedGraph
from src.graph.generators import FamilyBundle

from .strategies import PROPERTY_SETTINGS, edge_cuts, trees


def pendant_sides(bundle: FamilyBundle, i: int) -> tuple[frozenset[str], frozenset[str]]:
    side = frozenset({f"v{i}", f"v{i}.a", f"v{i}.b"})
    return side, bundle.graph.complement(side)


def test_line_cuts_form_a_loose_tree_set(line: FamilyBundle) -> None:
    tree_set = check_tree_set(line.graph, line.canonical_cuts)
    assert isinstance(tree_set, TreeSet)
    assert len(tree_set) == 14
    assert not tree_set.tight


def test_tightness_can_be_required(line: FamilyBundle) -> None:
    verdict = check_tree_set(line.graph, line.canonical_cuts, require_tight=True)
    assert isinstance(verdict, TreeSetViolation)
    assert verdict.axiom == "tightness"


def test_crossing_cuts(hexagon: TruncatedGraph) -> None:
    cuts = [{"0", "1", "2"}, {"3", "4", "5"}, {"1", "2", "3"}, {"0", "4", "5"}]
    verdict = check_tree_set(hexagon, cuts)
    assert isinstance(verdict, TreeSetViolation)
    assert verdict.axiom == "S1"
    assert len(verdict.witness) == 2
    with pytest.raises(StructureError):
        verdict.require()


def test_missing_complement(hexagon: TruncatedGraph) -> None:
    verdict = check_tree_set(hexagon, [{"0", "1", "2"}])
    assert isinstance(verdict, TreeSetViolation)
    assert verdict.axiom == "S4"


def test_empty_or_full_member(hexagon: TruncatedGraph) -> None:
    assert check_tree_set(hexagon, [hexagon.vertices]).axiom == "S3"
    assert check_tree_set(hexagon, [set()]).axiom == "S3"
    with pytest.raises(InputError):
        check_tree_set(hexagon, [])


def test_pendant_cycle_relations(pendant_cycle: FamilyBundle) -> None:
    tree_set = check_tree_set(pendant_cycle.graph, pendant_cycle.canonical_cuts)
    p1, _ = pendant_sides(pendant_cycle, 1)
    p2, p2_star = pendant_sides(pendant_cycle, 2)
    assert tree_set.tight
    assert relation(tree_set, p1, p1) == "equal"
    assert relation(tree_set, p2_star, p1) == "e≫f"
    assert relation(tree_set, p1, p2_star) == "f≫e"
    assert relation(tree_set, p1, p2) == "e⇌f"


def test_pendant_cycle_classes(pendant_cycle: FamilyBundle) -> None:
    tree_set = check_tree_set(pendant_cycle.graph, pendant_cycle.canonical_cuts)
    classes = coterminal_classes(tree_set)
    assert sorted(len(c) for c in classes) == [1, 1, 1, 1, 4]
    big = max(classes, key=len)
    assert all(len(tree_set.cuts[i].side) == 9 for i in big)


def test_decreasing_chain_through_a_vertex(line: FamilyBundle) -> None:
    tree_set = check_tree_set(line.graph, line.canonical_cuts)
    chain = decreasing_chains(tree_set, "x:1")
    assert len(chain) == 2
    assert chain[-1].side == {"x:1"}
    assert decreasing_chains(tree_set, "x:4")[-1].side != {"x:4"}


def test_orbit_closure_adds_complements(line: FamilyBundle) -> None:
    orbit = orbit_closure(line.graph, line.aut_generators, {"x:1"})
    assert len(orbit) == 4
    assert {c.side for c in orbit} >= {frozenset({"x:1"}), frozenset({"x:-1"})}


@PROPERTY_SETTINGS
@given(trees())
def test_edge_cuts_of_a_tree_form_a_tight_tree_set(g: TruncatedGraph) -> None:
    tree_set = check_tree_set(g, edge_cuts(g))
    assert isinstance(tree_set, TreeSet)
    assert tree_set.tight
    assert len(coterminal_classes(tree_set)) == len(g.vertices)
