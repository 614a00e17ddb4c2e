import time

import pytest

from src.errors import InputError
from src.analysis.ends import classify_ends, end_shadows, label_shadow
from src.graph.generators import FamilySpec


def spec(text: str) -> FamilySpec:
    return FamilySpec.parse(text, 1)


def test_line_has_two_thin_proper_ends_sent_to_the_hub() -> None:
    report = classify_ends(spec("two_sided_line"))
    assert report.main_radius == 3
    assert len(report.ends) == 2
    assert all(e.label.kind == "proper" and e.label.thickness == "thin" for e in report.ends)
    assert all(e.image is not None and e.image.kind == "vertex" for e in report.ends)
    assert len({e.image.vertex for e in report.ends}) == 1
    assert report.p1 is False


def test_fan_has_exactly_one_mixed_end() -> None:
    report = classify_ends(spec("mixed_end_fan"))
    kinds = [e.label.kind for e in report.ends]
    assert kinds.count("mixed") == 1
    mixed = next(e for e in report.ends if e.label.kind == "mixed")
    assert mixed.shadow.attached
    assert report.p1 is None


def test_grid_has_one_end() -> None:
    assert len(end_shadows(spec("grid2d"))) == 1


def test_broom_carries_no_ray() -> None:
    assert not any(s.carries_ray for s in end_shadows(spec("broom")))


def test_free_product_generated_by_a_b_c() -> None:
    report = classify_ends(spec("free_product_a_b_c"))
    assert any(e.label.thickness == "thick" and e.image.kind == "vertex" for e in report.ends)
    along_a = [e for e in report.ends if e.shadow.members in (frozenset({"a3"}), frozenset({"a-3"}))]
    assert len(along_a) == 2
    assert all((e.label.kind, e.label.thickness, e.image.kind) == ("proper", "thin", "end") for e in along_a)
    assert report.p1 is False


def test_free_product_with_growing_blocks() -> None:
    started = time.perf_counter()
    report = classify_ends(spec("free_product_a_Z2block"))
    assert time.perf_counter() - started < 60
    assert any(e.label.kind == "point" and e.image.kind == "vertex" for e in report.ends)
    assert report.p1 is True


def test_vertex_shadows_are_point_ends() -> None:
    for shadow in end_shadows(spec("free_product_a_Z2block")):
        if shadow.source == "vertex":
            assert label_shadow(shadow).kind == "point"
            assert not shadow.chain


def test_ball_radii_are_checked() -> None:
    with pytest.raises(InputError):
        classify_ends(spec("two_sided_line"), (0, 1))


def test_report_json() -> None:
    data = classify_ends(spec("two_sided_line")).to_json()
    assert set(data) == {"family", "main_radius", "ball_radii", "components_per_radius", "ends", "p1", "p2"}
    assert data["components_per_radius"] == {"0": 2, "1": 2, "2": 2}
    assert data["ends"][0]["shadow"]["source"] == "ray"
