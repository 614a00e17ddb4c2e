import pytest

from src.errors import BudgetError, InputError
from src.graph.automorphisms import (
    close_group,
    compose,
    enumerate_automorphisms,
    is_automorphism,
    orbit_of_sets,
    require_automorphism,
    truncation_automorphisms,
)
from src.graph.core import TruncatedGraph
from src.graph.generators import FamilyBundle


def test_group_of_the_pendant_cycle(pendant_cycle: FamilyBundle) -> None:
    group = close_group(pendant_cycle.aut_generators)
    assert len(group) == 128
    assert all(is_automorphism(pendant_cycle.graph, a) for a in group[:10])


def test_brute_force_agrees_with_generators(pendant_cycle: FamilyBundle) -> None:
    found, complete = truncation_automorphisms(pendant_cycle.graph)
    assert complete
    assert len(found) == 128


def test_enumeration_stops_at_the_limit(pendant_cycle: FamilyBundle) -> None:
    found, complete = enumerate_automorphisms(pendant_cycle.graph.nx, limit=5)
    assert len(found) == 5
    assert not complete


def test_frontier_is_preserved(path5: TruncatedGraph) -> None:
    found, _ = truncation_automorphisms(path5)
    assert len(found) == 2
    lopsided = TruncatedGraph.build(["a", "b", "c"], [("a", "b"), ("b", "c")], frontier=["a"])
    assert not is_automorphism(lopsided, {"a": "c", "b": "b", "c": "a"})
    assert len(truncation_automorphisms(lopsided)[0]) == 1


def test_non_automorphisms(path5: TruncatedGraph) -> None:
    assert not is_automorphism(path5, {"0": "1", "1": "0", "2": "2", "3": "3", "4": "4"})
    assert not is_automorphism(path5, {"0": "4", "4": "0"})
    with pytest.raises(InputError):
        require_automorphism(path5, {"0": "1", "1": "0", "2": "2", "3": "3", "4": "4"})


def test_compose_applies_first_then_second() -> None:
    first = {"a": "b", "b": "c", "c": "a"}
    second = {"a": "a", "b": "c", "c": "b"}
    assert compose(first, second) == {"a": "c", "b": "b", "c": "a"}


def test_orbit_of_a_set(line: FamilyBundle) -> None:
    orbit = orbit_of_sets(line.aut_generators, frozenset({"x:1"}))
    assert orbit == {frozenset({"x:1"}), frozenset({"x:-1"})}


def test_group_budget(pendant_cycle: FamilyBundle) -> None:
    with pytest.raises(BudgetError) as caught:
        close_group(pendant_cycle.aut_generators, budget=10)
    assert caught.value.budget == "GROUP_BUDGET"
    assert caught.value.partial["elements"] > 10
