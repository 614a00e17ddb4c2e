"""JSON and DOT artifacts written by the CLI."""

import json
from pathlib import Path
from typing import Any

from src.analysis.ends import EndsReport
from src.tree.cut_tree import CutTree, StructureMapping
from src.logger.logg import logs

logger = logs("export.log")

KIND_COLOURS = {"point": "lightblue", "mixed": "orange", "proper": "palegreen"}


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def write_artifact(text: str, out: str | Path | None) -> None:
    """Write to `out`, or to stdout when no path is given."""
    if out is None:
        print(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n", encoding="utf-8")
    logger.info("wrote %s (%d bytes)", path, len(text) + 1)


def structure_json(tree: CutTree, mapping: StructureMapping) -> dict:
    """`structure.json`: coterminality classes, directed cut edges, φ table and regions."""
    return {"tree": tree.to_json(), "mapping": mapping.to_json()}


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def image_kinds(ends: EndsReport) -> dict[str, str]:
    """Tree vertex -> kind of the first end shadow Φ sends there."""
    kinds: dict[str, str] = {}
    for end in ends.ends:
        if end.image is not None and end.image.kind == "vertex" and end.image.vertex is not None:
            kinds.setdefault(end.image.vertex, end.label.kind)
    return kinds


def tree_dot(tree: CutTree, mapping: StructureMapping, ends: EndsReport | None = None) -> str:
    """Undirected DOT of T; labels carry |φ⁻¹(v)|, fill colour the kind of an end landing on v."""
    kinds = image_kinds(ends) if ends is not None else {}
    result = ["graph T {", "    overlap=scalexy;"]
    for v in tree.vertices:
        attributes = [f"label={_quote(f'{v} ({len(mapping.preimages.get(v, ()))})')}"]
        if v in kinds:
            attributes += ["style=filled", f"fillcolor={KIND_COLOURS[kinds[v]]}"]
        result.append(f"    {_quote(v)} [{','.join(attributes)}]")
    for u, v in tree.undirected_edges():
        result.append(f"    {_quote(u)} -- {_quote(v)}")
    result.append("}")
    return "\n".join(result)

