import pytest

from src.errors import InputError
from src.graph.automorphisms import is_automorphism
from src.graph.core import ball, induced
from src.graph.generators import FamilyBundle, FamilySpec, generate, generate_family, z2_block_size

ALL_FAMILIES = [
    ("two_sided_line", 3),
    ("cycle_with_pendant_pairs:4", 2),
    ("cycle_with_pendant_pairs:5", 2),
    ("biregular_tree:2,3", 3),
    ("regular_tree:3", 3),
    ("attached_biregular:2,3", 3),
    ("grid2d", 3),
    ("free_product_a_b_c", 2),
    ("free_product_a_Z2block", 3),
    ("broom", 4),
    ("mixed_end_fan", 3),
]

BALL_FAMILIES = [
    "two_sided_line",
    "biregular_tree:2,3",
    "regular_tree:3",
    "attached_biregular:2,3",
    "grid2d",
    "free_product_a_b_c",
]


def test_parse_reads_parameters() -> None:
    spec = FamilySpec.parse("biregular_tree:2,3", 4)
    assert (spec.name, spec.p, spec.q, spec.radius) == ("biregular_tree", 2, 3, 4)
    assert spec.label == "biregular_tree:2,3"
    assert FamilySpec.parse("cycle_with_pendant_pairs:5", 2).n == 5
    assert FamilySpec.parse("regular_tree:4", 2).label == "regular_tree:4"


@pytest.mark.parametrize(
    "text, radius",
    [("broom:3", 2), ("no_such_family", 2), ("two_sided_line", 0), ("biregular_tree:x", 2), ("cycle_with_pendant_pairs:2", 2)],
)
def test_bad_family_specs(text: str, radius: int) -> None:
    with pytest.raises(InputError):
        FamilySpec.parse(text, radius)


def test_pendant_cycle_needs_radius_two() -> None:
    with pytest.raises(InputError):
        generate_family("cycle_with_pendant_pairs:4", 1)


def test_sizes(line: FamilyBundle, pendant_cycle: FamilyBundle, biregular: FamilyBundle, grid: FamilyBundle) -> None:
    assert len(line.graph.vertices) == 9
    assert len(line.canonical_cuts) == 14
    assert line.graph.frontier == {"x:-4", "x:4"}
    assert len(pendant_cycle.graph.vertices) == 12
    assert len(pendant_cycle.canonical_cuts) == 8
    assert not pendant_cycle.graph.frontier
    assert len(biregular.graph.vertices) == 19
    assert len(biregular.canonical_cuts) == 36
    assert len(grid.graph.vertices) == 25
    assert not grid.canonical_cuts
    assert len(generate_family("broom", 5).graph.vertices) == 16


def test_line_cuts_are_not_tight(line: FamilyBundle) -> None:
    assert not line.tight_cuts
    assert frozenset({"x:1"}) in line.canonical_cuts


@pytest.mark.parametrize("text, radius", ALL_FAMILIES)
def test_generators_are_automorphisms(text: str, radius: int) -> None:
    bundle = generate_family(text, radius)
    for a in bundle.aut_generators:
        assert is_automorphism(bundle.graph, a)


@pytest.mark.parametrize("text, radius", ALL_FAMILIES)
def test_canonical_cuts_are_closed_under_complement(text: str, radius: int) -> None:
    bundle = generate_family(text, radius)
    cuts = set(bundle.canonical_cuts)
    assert all(bundle.graph.complement(c) in cuts for c in cuts)


@pytest.mark.parametrize("text", BALL_FAMILIES)
def test_truncation_is_a_ball_of_the_next(text: str) -> None:
    small = generate_family(text, 2).graph
    big = generate_family(text, 3).graph
    inner = ball(big, big.center, 2)
    assert small.vertices == inner
    assert small.edges == induced(big, inner).edges


def test_identifiers_are_stable_across_radii() -> None:
    small = generate_family("free_product_a_b_c", 1).graph
    big = generate_family("free_product_a_b_c", 2).graph
    assert small.vertices <= big.vertices
    assert small.vertices == {"e", "a1", "a-1", "z1,0", "z-1,0", "z0,1", "z0,-1"}


def test_z2_block_grows_with_radius() -> None:
    assert [z2_block_size(r) for r in (1, 2, 3, 4)] == [1, 1, 2, 3]
    assert not generate(FamilySpec(name="free_product_a_Z2block", radius=3)).ball_truncation
