import pytest

from src.errors import InputError
from src.analysis.qi import covering_ball_check
from src.analysis.ramification import diameter_witness, star_ball_scan, uniform_ramification
from src.graph.generators import FamilySpec, generate


def spec(text: str) -> FamilySpec:
    return FamilySpec.parse(text, 1)


def test_broom_has_a_star_ball() -> None:
    scan = star_ball_scan(spec("broom"), [4, 5, 6])
    assert scan.star_ball
    assert [row.diameters for row in scan.rows] == [(2, 3, 4), (1, 2, 3)]
    assert scan.monotone
    assert scan.frontier_components


@pytest.mark.parametrize("text", ["grid2d", "two_sided_line", "biregular_tree:2,3"])
def test_no_star_ball(text: str) -> None:
    scan = star_ball_scan(spec(text), [2, 3, 4])
    assert not scan.star_ball
    assert all(row.diameters == (0, 0, 0) for row in scan.rows)


def test_candidates_must_fit_inside_the_truncation() -> None:
    with pytest.raises(InputError):
        star_ball_scan(spec("grid2d"), [1, 2, 3], candidates=(1,))


def test_uniform_ramification() -> None:
    assert uniform_ramification(spec("grid2d"), [2, 3, 4]).verdict
    assert uniform_ramification(spec("two_sided_line"), [2, 3, 4]).verdict
    broom = uniform_ramification(spec("broom"), [4, 5, 6])
    assert broom.star_ball
    assert not broom.verdict


def test_diameter_witnesses() -> None:
    assert diameter_witness(spec("two_sided_line"), [2, 3, 4]).kind == "metric-ray"
    assert diameter_witness(spec("broom"), [4, 5, 6]).kind == "star-ball"


@pytest.mark.parametrize(
    "text", ["two_sided_line", "grid2d", "biregular_tree:2,3", "regular_tree:3", "attached_biregular:2,3"]
)
def test_almost_transitive_families_ramify_uniformly(text: str) -> None:
    radii = [2, 3, 4]
    for r in radii:
        bundle = generate(spec(text).at(r))
        assert any(covering_ball_check(bundle.graph, claim).covered for claim in bundle.orbit_claims)
    ramification = uniform_ramification(spec(text), radii)
    assert not ramification.star_ball
    assert ramification.verdict
