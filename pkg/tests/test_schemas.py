import json
from pathlib import Path

import jsonschema
import pytest

from src.cli import main

SCHEMAS = Path(__file__).resolve().parents[1] / "schemas"

CASES = [
    ("graph", ["generate", "--family", "biregular_tree:2,3", "--radius", "3"]),
    ("cuts", ["cuts", "--family", "two_sided_line", "--radius", "3", "--k", "1"]),
    ("treeset", ["treeset", "--family", "cycle_with_pendant_pairs:4", "--radius", "2"]),
    ("structure", ["tree", "--family", "two_sided_line", "--radius", "3", "--format", "json"]),
    ("phi", ["phi", "--family", "biregular_tree:2,3", "--radius", "3"]),
    ("qi-report", ["qi", "--family", "two_sided_line", "--radii", "3..5"]),
    ("trend", ["trend", "--family", "broom", "--radii", "4..6", "--measure", "star-ball"]),
    ("trend", ["trend", "--family", "grid2d", "--radii", "2..4", "--measure", "ramification"]),
    ("ends", ["ends", "--family", "mixed_end_fan"]),
    ("l-analysis", ["l-analysis", "--family", "cycle_with_pendant_pairs:4", "--radius", "2"]),
    ("report", ["report", "--family", "two_sided_line", "--radius", "3", "--radii", "3..5"]),
]


@pytest.mark.parametrize("schema, argv", CASES, ids=[" ".join(argv[:1] + argv[2:3]) for _, argv in CASES])
def test_output_matches_schema(schema: str, argv: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    assert main(argv) == 0
    document = json.loads(capsys.readouterr().out)
    jsonschema.validate(instance=document, schema=json.loads((SCHEMAS / f"{schema}.schema.json").read_text()))


def test_schemas_are_valid() -> None:
    for path in sorted(SCHEMAS.glob("*.schema.json")):
        jsonschema.Draft202012Validator.check_schema(json.loads(path.read_text()))
