"""
Batch front-end: one verb per invocation, JSON (or DOT) on stdout or `--out`.

Exit codes: 0 success, 1 failed verdict under `--strict` or a structural
failure, 2 bad input, 3 exhausted budget. Errors are printed to stderr as
one line of JSON.
"""

import argparse
import json
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

from pydantic import ValidationError

from src.analysis.consistency import theorem4_consistency
from src.analysis.ends import DEFAULT_BALL_RADII, classify_ends
from src.analysis.qi import qi_constants, qi_verdict_trend, region_trend
from src.analysis.ramification import star_ball_scan, uniform_ramification
from src.analysis.trend import check_radii, parse_radii
from src.config import settings
from src.cuts.engine import all_tight_cuts, enumerate_tight_cuts
from src.cuts.structure import find_structure_cuts
from src.cuts.treeset import TreeSet, check_tree_set
from src.errors import InputError, StructreeError
from src.export import dumps, structure_json, tree_dot, write_artifact
from src.graph.core import TruncatedGraph, load_graph
from src.graph.generators import FamilyBundle, FamilySpec, generate
from src.tree.actions import L_analysis
from src.tree.cut_tree import build_cut_tree, phi, tree_from_cuts
from src.logger.logg import logs

logger = logs("cli.log")

VERBS = ("generate", "cuts", "treeset", "tree", "phi", "qi", "trend", "ends", "l-analysis", "report")


class Failed(Exception):
    """A verdict that fails under --strict; the artifact is still written."""


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="structree", description="Tight cuts, cut trees and end analysis.")
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("--family", help="Family spec, e.g. cycle_with_pendant_pairs:4 or biregular_tree:2,3")
    parser.add_argument("--radius", type=int, default=3, help="Truncation radius (default: 3)")
    parser.add_argument("--radii", help="Radii for trend verbs, A..B or a comma list")
    parser.add_argument("--ball-radii", default=",".join(map(str, DEFAULT_BALL_RADII)),
                        help="Ball radii for end shadows (default: 0,1,2)")
    parser.add_argument("--input", type=Path, help="Graph JSON file used instead of --family")
    parser.add_argument("--cuts", type=Path, help="Cut list JSON (sorted vertex lists) for --input graphs")
    parser.add_argument("--edge", help="Edge u,v: only cuts separating it, with u inside")
    parser.add_argument("--k", type=int, default=None, help="Maximal edge-boundary size (default: settings)")
    parser.add_argument("--measure", choices=("region", "star-ball", "ramification"), default="region",
                        help="What the trend verb tracks (default: region)")
    parser.add_argument("--budget", type=int, help="Overrides the node and group budgets for this run")
    parser.add_argument("--strict", action="store_true", help="Exit 1 on a violated or not-qi verdict")
    parser.add_argument("--out", type=Path, help="Output path (default: stdout)")
    parser.add_argument("--format", choices=("json", "dot"), default=None,
                        help="Output format (default: dot for tree, json otherwise)")
    return parser.parse_args(argv)


# ------------------------------------ inputs ------------------------------------


def _spec(args: argparse.Namespace, radius: int | None = None) -> FamilySpec:
    if not args.family:
        raise InputError(f"{args.verb} needs --family")
    return FamilySpec.parse(args.family, args.radius if radius is None else radius)


def _radii(args: argparse.Namespace) -> list[int]:
    if not args.radii:
        raise InputError(f"{args.verb} needs --radii")
    return check_radii(parse_radii(args.radii))


def _source(args: argparse.Namespace) -> tuple[TruncatedGraph, list[frozenset[str]], FamilyBundle | None]:
    """Graph, cut list and bundle from --family, or graph and cuts from --input/--cuts."""
    if args.input is not None:
        if args.out is not None and args.out.resolve() == args.input.resolve():
            raise InputError("--out would overwrite --input")
        g = load_graph(args.input)
        cuts = []
        if args.cuts is not None:
            try:
                cuts = [frozenset(c) for c in json.loads(args.cuts.read_text(encoding="utf-8"))]
            except (OSError, ValueError, TypeError) as exc:
                raise InputError(f"cannot read cuts from {args.cuts}: {exc}") from exc
        return g, cuts, None
    bundle = generate(_spec(args))
    return bundle.graph, list(bundle.canonical_cuts), bundle


def _tree_set(g: TruncatedGraph, cuts: list[frozenset[str]]) -> TreeSet:
    if not cuts:
        raise InputError("no cuts: pass --cuts or a family that ships canonical cuts")
    verdict = check_tree_set(g, cuts)
    if not isinstance(verdict, TreeSet):
        verdict.require()
    return verdict


# ------------------------------------ verbs ------------------------------------


def run_generate(args: argparse.Namespace) -> str:
    bundle = generate(_spec(args))
    if args.out is not None and bundle.canonical_cuts:
        sidecar = args.out.with_name(f"{args.out.stem}.cuts.json")
        write_artifact(dumps([sorted(c) for c in bundle.canonical_cuts]), sidecar)
    return dumps(bundle.graph.to_json())


def run_cuts(args: argparse.Namespace) -> str:
    g, _, bundle = _source(args)
    k = args.k or settings.DEFAULT_K
    if args.edge:
        u, _, v = args.edge.partition(",")
        found = enumerate_tight_cuts(g, (u, v), k)
    else:
        found = all_tight_cuts(g, k)
    auts = bundle.aut_generators if bundle is not None else ()
    orbits = find_structure_cuts(g, auts, k) if not args.edge else []
    return dumps({
        "k": k,
        "cuts": [c.to_json() for c in found],
        "structure_orbits": [
            {"representative": sorted(s.cut.side), "orbit_size": s.orbit_size} for s in orbits
        ],
    })


def run_treeset(args: argparse.Namespace) -> str:
    g, cuts, _ = _source(args)
    if not cuts:
        raise InputError("no cuts: pass --cuts or a family that ships canonical cuts")
    verdict = check_tree_set(g, cuts)
    if isinstance(verdict, TreeSet):
        return dumps({"verified": True, "tree_set": verdict.to_json()})
    text = dumps({"verified": False, "violation": verdict.to_json()})
    if args.strict:
        raise Failed(text)
    return text


def run_tree(args: argparse.Namespace) -> str:
    g, cuts, _ = _source(args)
    _, tree, mapping = tree_from_cuts(g, cuts)
    if (args.format or "dot") == "dot":
        return tree_dot(tree, mapping)
    return dumps(structure_json(tree, mapping))


def run_phi(args: argparse.Namespace) -> str:
    g, cuts, _ = _source(args)
    tree_set = _tree_set(g, cuts)
    mapping = phi(g, tree_set, build_cut_tree(tree_set), strict=args.strict)
    return dumps(mapping.to_json())


def run_qi(args: argparse.Namespace) -> str:
    if args.radii:
        report = qi_verdict_trend(_spec(args), _radii(args))
    else:
        g, cuts, _ = _source(args)
        _, tree, mapping = tree_from_cuts(g, cuts)
        report = qi_constants(g, tree, mapping)
    text = dumps(report.to_json())
    if args.strict and report.verdict != "qi":
        raise Failed(text)
    return text


def run_trend(args: argparse.Namespace) -> str:
    spec, radii = _spec(args), _radii(args)
    match args.measure:
        case "region":
            trend = region_trend(spec, radii)
            failed = trend.verdict == "unbounded-trend"
            data = trend.model_dump(mode="json")
        case "star-ball":
            scan = star_ball_scan(spec, radii)
            failed = scan.star_ball
            data = scan.model_dump(mode="json")
        case "ramification":
            ramification = uniform_ramification(spec, radii)
            failed = not ramification.verdict
            data = ramification.model_dump(mode="json")
    text = dumps(data)
    if args.strict and failed:
        raise Failed(text)
    return text


def run_ends(args: argparse.Namespace) -> str:
    spec = _spec(args)
    report = classify_ends(spec, parse_radii(args.ball_radii))
    if args.format == "dot":
        bundle = generate(spec.at(report.main_radius))
        _, tree, mapping = tree_from_cuts(bundle.graph, bundle.canonical_cuts)
        return tree_dot(tree, mapping, report)
    return dumps(report.to_json())


def run_l_analysis(args: argparse.Namespace) -> str:
    g, cuts, _ = _source(args)
    _, tree, mapping = tree_from_cuts(g, cuts)
    return dumps(L_analysis(g, tree, mapping).model_dump(mode="json"))


def run_report(args: argparse.Namespace) -> str:
    """generate, tree set, tree, φ, qi and ends for one family in one document."""
    spec = _spec(args)
    bundle = generate(spec)
    g = bundle.graph
    document: dict = {"family": spec.label, "radius": spec.radius, "graph": {
        "vertices": len(g.vertices), "edges": len(g.edges), "frontier": len(g.frontier),
    }}
    failed = False
    if bundle.canonical_cuts:
        verdict = check_tree_set(g, bundle.canonical_cuts)
        if isinstance(verdict, TreeSet):
            tree = build_cut_tree(verdict)
            mapping = phi(g, verdict, tree)
            document["tree_set"] = verdict.to_json()
            document["structure"] = structure_json(tree, mapping)
            if not mapping.uncovered:
                qi = qi_verdict_trend(spec, _radii(args)) if args.radii else qi_constants(g, tree, mapping)
                document["qi"] = qi.to_json()
                failed = qi.verdict != "qi"
        else:
            document["tree_set"] = {"verified": False, "violation": verdict.to_json()}
            failed = True
    if g.center is not None and g.frontier:
        document["ends"] = classify_ends(spec, parse_radii(args.ball_radii)).to_json()
    if args.radii:
        document["consistency"] = theorem4_consistency(spec, _radii(args)).model_dump(mode="json")
    text = dumps(document)
    if args.strict and failed:
        raise Failed(text)
    return text


RUNNERS: dict[str, Callable[[argparse.Namespace], str]] = {
    "generate": run_generate,
    "cuts": run_cuts,
    "treeset": run_treeset,
    "tree": run_tree,
    "phi": run_phi,
    "qi": run_qi,
    "trend": run_trend,
    "ends": run_ends,
    "l-analysis": run_l_analysis,
    "report": run_report,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = parse_args(argv)
    saved = settings.NODE_BUDGET, settings.GROUP_BUDGET
    if args.budget is not None:
        settings.NODE_BUDGET = settings.GROUP_BUDGET = args.budget
    try:
        write_artifact(RUNNERS[args.verb](args), args.out)
        return 0
    except Failed as failed:
        write_artifact(str(failed), args.out)
        logger.info("%s: verdict failed under --strict", args.verb)
        return 1
    except ValidationError as exc:
        err: StructreeError = InputError(str(exc))
    except StructreeError as exc:
        err = exc
    except Exception as exc:
        logger.exception("%s failed", args.verb)
        err = StructreeError(f"{type(exc).__name__}: {exc}")
    finally:
        settings.NODE_BUDGET, settings.GROUP_BUDGET = saved
    print(json.dumps(err.as_dict(), sort_keys=True, default=str), file=sys.stderr)
    return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
