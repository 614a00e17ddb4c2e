import json

import pytest

from src.cli import main
from src.config import settings


def last_line(text: str) -> dict:
    return json.loads(text.strip().splitlines()[-1])


def test_generate_writes_a_graph(tmp_path) -> None:
    out = tmp_path / "g.json"
    assert main(["generate", "--family", "broom", "--radius", "5", "--out", str(out)]) == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert len(data["vertices"]) == 16
    assert data["frontier"] == ["h.5.5"]
    assert not (tmp_path / "g.cuts.json").exists()


def test_generate_is_byte_identical(tmp_path) -> None:
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    main(["generate", "--family", "two_sided_line", "--radius", "3", "--out", str(first)])
    main(["generate", "--family", "two_sided_line", "--radius", "3", "--out", str(second)])
    assert first.read_bytes() == second.read_bytes()
    assert (tmp_path / "a.cuts.json").exists()


def test_treeset_from_files(tmp_path, capsys: pytest.CaptureFixture[str]) -> None:
    graph = tmp_path / "line.json"
    main(["generate", "--family", "two_sided_line", "--radius", "3", "--out", str(graph)])
    code = main(["treeset", "--input", str(graph), "--cuts", str(tmp_path / "line.cuts.json")])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["verified"] is True


def test_output_must_not_overwrite_input(tmp_path, capsys: pytest.CaptureFixture[str]) -> None:
    graph = tmp_path / "line.json"
    main(["generate", "--family", "two_sided_line", "--radius", "3", "--out", str(graph)])
    assert main(["treeset", "--input", str(graph), "--out", str(graph)]) == 2
    assert last_line(capsys.readouterr().err)["error"] == "InputError"


def test_tree_of_the_pendant_cycle_is_a_star(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["tree", "--family", "cycle_with_pendant_pairs:4", "--radius", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph T {")
    assert out.count(" -- ") == 4


def test_trend_under_strict(capsys: pytest.CaptureFixture[str]) -> None:
    args = ["trend", "--family", "two_sided_line", "--radii", "3..8"]
    assert main(args) == 0
    assert main(args + ["--strict"]) == 1
    outputs = capsys.readouterr().out
    assert '"unbounded-trend"' in outputs


def test_bad_family(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["generate", "--family", "no_such_family"]) == 2
    error = last_line(capsys.readouterr().err)
    assert error["error"] == "InputError"


def test_budget_override(capsys: pytest.CaptureFixture[str]) -> None:
    before = settings.NODE_BUDGET
    assert main(["cuts", "--family", "two_sided_line", "--radius", "3", "--budget", "1"]) == 3
    error = last_line(capsys.readouterr().err)
    assert error["error"] == "BudgetError"
    assert error["budget"] == "NODE_BUDGET"
    assert settings.NODE_BUDGET == before


def test_cuts_through_an_edge(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["cuts", "--family", "two_sided_line", "--radius", "3", "--k", "1", "--edge", "x:0,x:1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["cuts"]) == 1
    assert data["structure_orbits"] == []


def test_l_analysis(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["l-analysis", "--family", "cycle_with_pendant_pairs:4", "--radius", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert (data["aut_x"], data["aut_t"], data["image"]) == (128, 24, 8)


def test_qi_verdicts(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["qi", "--family", "two_sided_line", "--radius", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "qi"
    assert main(["qi", "--family", "two_sided_line", "--radii", "3..5", "--strict"]) == 1


def test_ends_overlay(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["ends", "--family", "two_sided_line", "--format", "dot"]) == 0
    assert "fillcolor=palegreen" in capsys.readouterr().out


def test_report_on_a_finite_family(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["report", "--family", "cycle_with_pendant_pairs:4", "--radius", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["graph"] == {"vertices": 12, "edges": 12, "frontier": 0}
    assert "ends" not in data
    assert data["qi"]["verdict"] == "qi"
