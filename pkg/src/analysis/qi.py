"""
Quasi-isometry between a graph and its cut tree: the constants of φ and its
quasi-inverse ψ at one truncation, the region-diameter trend across radii and
the almost-transitivity checks.
"""

from collections.abc import Sequence
from typing import Literal

import networkx as nx
from pydantic import BaseModel, ConfigDict

from src.analysis.trend import Trend, check_radii, sweep, trend_verdict
from src.config import settings
from src.errors import CoverageError, InputError
from src.graph.core import TruncatedGraph, multi_source_distances, set_diameter
from src.graph.generators import FamilySpec, OrbitClaim, generate
from src.tree.cut_tree import CutTree, StructureMapping, tree_from_cuts
from src.logger.logg import logs

logger = logs("qi.log")

Verdict = Literal["qi", "not-qi-trend", "inconclusive"]


class RegionTrend(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: str
    radii: tuple[int, ...]
    diameters: tuple[int, ...]
    verdict: Trend


class QiReport(BaseModel):
    """Constants of (Q1)-(Q4) at one truncation.

    b comes from preimage and region diameters; the sampled pairs then confirm
    d_T(φx, φy) <= a·d_X(x, y) and d_X(x, y) <= b·d_T(φx, φy) + 2c.
    """

    model_config = ConfigDict(frozen=True)

    a: int
    b: float
    c: int
    d: int
    psi: dict[str, str]
    witnesses: dict[str, list[str]]
    q1_holds: bool
    bound_holds: bool
    verdict: Verdict
    trend: RegionTrend | None = None

    def to_json(self) -> dict:
        data = self.model_dump(mode="json", exclude={"trend"})
        data["trend"] = None if self.trend is None else self.trend.model_dump(mode="json")
        return data


def _psi(tree: CutTree, mapping: StructureMapping) -> tuple[dict[str, str], int] | None:
    """ψ(v) = least vertex of φ⁻¹(r(v)), where r(v) is v or its least neighbour with nonempty preimage."""
    nonempty = {v for v, p in mapping.preimages.items() if p}
    if not nonempty:
        return None
    psi, worst = {}, 0
    for v in tree.vertices:
        if v in nonempty:
            target = v
        else:
            near = [w for w in tree.nx[v] if w in nonempty]
            if near:
                target = min(near, key=tree.vertices.index)
            else:
                target = _nearest(tree, v, nonempty)
        psi[v] = min(mapping.preimages[target])
        worst = max(worst, tree.distance(v, target))
    return psi, worst


def _nearest(tree: CutTree, v: str, targets: set[str]) -> str:
    dist = nx.single_source_shortest_path_length(tree.nx, v)
    reachable = [w for w in targets if w in dist]
    if not reachable:
        raise InputError(f"no tree vertex with nonempty preimage is reachable from {v}")
    return min(reachable, key=lambda w: (dist[w], tree.vertices.index(w)))


def qi_constants(
    g: TruncatedGraph, tree: CutTree, mapping: StructureMapping, trend: RegionTrend | None = None
) -> QiReport:
    """Constants a, b, c, d with witnesses, a ψ table and a verdict.

    The verdict is not-qi-trend when a supplied region trend is unbounded and
    inconclusive when ψ cannot be built or a sampled pair breaks the bounds.
    """
    if mapping.uncovered:
        raise CoverageError("φ is not defined on every interior vertex", uncovered=list(mapping.uncovered))
    phi = mapping.phi
    witnesses: dict[str, list[str]] = {}

    a = 0
    for x, y in sorted(g.edges):
        if x in phi and y in phi:
            step = tree.distance(phi[x], phi[y])
            if step > a:
                a, witnesses["a"] = step, [x, y]

    pre_diam = {v: mapping.preimage_diameter(g, v) for v in tree.vertices if mapping.preimages[v]}
    c = 0
    for v, value in pre_diam.items():
        if value > c:
            c, witnesses["c"] = value, [v]

    region_diam = {v: mapping.regions[v].diameter for v in tree.vertices}
    twice_b = 0
    for w in tree.vertices:
        if w in pre_diam:
            for v in tree.nx[w]:
                if v in pre_diam and region_diam[v] + region_diam[w] > twice_b:
                    twice_b, witnesses["b"] = region_diam[v] + region_diam[w], [v, w]
            continue
        around = sorted((v for v in tree.nx[w] if v in pre_diam), key=tree.vertices.index)
        for i, v1 in enumerate(around):
            for v2 in around[i + 1:]:
                value = pre_diam[v1] + pre_diam[v2] + region_diam[w]
                if value > twice_b:
                    twice_b, witnesses["b"] = value, [v1, w, v2]
    b = twice_b / 2

    psi_result = _psi(tree, mapping)
    psi, d = psi_result if psi_result is not None else ({}, 0)

    domain = sorted(phi)
    q1 = bound = True
    for x in domain[: settings.PAIR_SAMPLE_LIMIT]:
        dist = g.bfs(x)
        for y in domain:
            dx, dt = dist[y], tree.distance(phi[x], phi[y])
            if dt > a * dx:
                q1 = False
                witnesses.setdefault("q1_violation", [x, y])
            if dx > b * dt + 2 * c:
                bound = False
                witnesses.setdefault("bound_violation", [x, y])

    if psi_result is None or d > 1 or not (q1 and bound):
        verdict: Verdict = "inconclusive"
    elif trend is not None and trend.verdict == "unbounded-trend":
        verdict = "not-qi-trend"
    else:
        verdict = "qi"
    report = QiReport(
        a=a, b=b, c=c, d=d, psi=psi, witnesses=witnesses, q1_holds=q1, bound_holds=bound, verdict=verdict, trend=trend
    )
    logger.info("qi constants a=%d b=%.1f c=%d d=%d, verdict %s", a, b, c, d, verdict)
    return report


def max_region_diameter(spec: FamilySpec) -> int:
    bundle = generate(spec)
    if not bundle.canonical_cuts:
        raise InputError(f"family {spec.label} ships no canonical cuts")
    _, _, mapping = tree_from_cuts(bundle.graph, bundle.canonical_cuts)
    return max(r.diameter for r in mapping.regions.values())


def region_trend(spec: FamilySpec, radii: Sequence[int]) -> RegionTrend:
    """max_v diam R(v) of the canonical tree set, one truncation per radius."""
    radii = check_radii(radii)
    diameters = [value for _, value in sweep(radii, lambda r: max_region_diameter(spec.at(r)), f"Regions {spec.label}")]
    trend = RegionTrend(family=spec.label, radii=tuple(radii), diameters=tuple(diameters), verdict=trend_verdict(diameters))
    logger.info("%s region diameters %s: %s", spec.label, diameters, trend.verdict)
    return trend


def qi_verdict_trend(spec: FamilySpec, radii: Sequence[int]) -> QiReport:
    """qi_constants at the largest radius, judged together with the region trend."""
    trend = region_trend(spec, radii)
    bundle = generate(spec.at(max(radii)))
    _, tree, mapping = tree_from_cuts(bundle.graph, bundle.canonical_cuts)
    return qi_constants(bundle.graph, tree, mapping, trend)


class CoveringBall(BaseModel):
    model_config = ConfigDict(frozen=True)

    covered: bool
    radius: int
    farthest: str
    distance: int


def covering_ball_check(g: TruncatedGraph, claim: OrbitClaim) -> CoveringBall:
    """Every vertex within `claim.radius` of the claimed orbit; the farthest vertex is the witness."""
    if not claim.vertices:
        raise InputError("the claimed orbit is empty")
    dist = multi_source_distances(g, claim.vertices)
    farthest = max(g.order, key=lambda x: (dist[x], x))
    return CoveringBall(
        covered=dist[farthest] <= claim.radius, radius=claim.radius, farthest=farthest, distance=dist[farthest]
    )


if __name__ == "__main__":
    pass
