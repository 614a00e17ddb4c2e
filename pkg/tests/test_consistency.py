import pytest

from src.errors import InputError
from src.analysis.consistency import end_stab_check, fixes_shadow, theorem4_consistency
from src.analysis.ends import shadow_context
from src.graph.generators import FamilySpec, OrbitClaim


def spec(text: str) -> FamilySpec:
    return FamilySpec.parse(text, 1)


@pytest.mark.parametrize(
    "text, radii",
    [
        ("two_sided_line", [3, 4, 5]),
        ("biregular_tree:2,3", [2, 3, 4]),
        ("regular_tree:3", [2, 3, 4]),
        ("attached_biregular:2,3", [2, 3, 4]),
        ("free_product_a_b_c", [1, 2, 3]),
        ("free_product_a_Z2block", [1, 2, 3]),
    ],
)
def test_three_criteria_agree(text: str, radii: list[int]) -> None:
    report = theorem4_consistency(spec(text), radii)
    assert report.applicable
    assert report.consistent
def test_line_fails_every_criterion() -> None:
    report = theorem4_consistency(spec("two_sided_line"), [3, 4, 5])
    assert (report.qi, report.ramified_p1, report.transitive_p1) == (False, False, False)


def test_biregular_passes_every_criterion() -> None:
    report = theorem4_consistency(spec("biregular_tree:2,3"), [2, 3, 4])
    assert (report.qi, report.ramified_p1, report.transitive_p1) == (True, True, True)


def test_families_without_cuts_are_skipped() -> None:
    assert not theorem4_consistency(spec("broom"), [4, 5, 6]).applicable


def test_end_stabilizer_on_the_line() -> None:
    context = shadow_context(spec("two_sided_line"))
    shadow = context.shadows[0]
    reflection = context.main.aut_generators[0]
    assert not fixes_shadow(reflection, shadow)
    report = end_stab_check(context, shadow)
    assert report.generators == 0
    assert report.covering_ball
    assert report.verdict == "diagnostic"
    assert report.diagnostic.startswith("(Q2) fails by region growth")


def test_end_stabilizer_needs_canonical_cuts() -> None:
    context = shadow_context(spec("grid2d"))
    with pytest.raises(InputError):
        end_stab_check(context, context.shadows[0])


def test_end_stabilizer_on_the_biregular_tree() -> None:
    context = shadow_context(spec("biregular_tree:2,3"))
    assert len(context.shadows) == 4
    for shadow in context.shadows:
        report = end_stab_check(context, shadow)
        assert report.covering_ball
        assert report.r0 == 1
        assert report.separated
        assert report.image.kind == "end"
        assert report.verdict == "qi-predicted"


def test_end_stabilizer_with_a_trivial_orbit() -> None:
    context = shadow_context(spec("biregular_tree:2,3"))
    report = end_stab_check(context, context.shadows[0], auts=[], claim=OrbitClaim(vertices=("r",), radius=0))
    assert not report.covering_ball
    assert report.verdict == "inconclusive"
