"""
End shadows: ends approximated by nested components of ball complements, their
point/mixed/proper labels and their images under the end structure mapping Φ.

Everything is computed on a main truncation of radius max(ball radii) + SHADOW_MARGIN
and compared with a probe truncation one step larger. Growth between the two
stands in for "infinite".
"""

from collections.abc import Iterable, Sequence
from typing import Literal

import networkx as nx
from networkx.algorithms.connectivity import local_node_connectivity
from networkx.algorithms.flow import build_residual_network, edmonds_karp
from pydantic import BaseModel, ConfigDict

from src.analysis.trend import check_radii
from src.config import settings
from src.cuts.treeset import TreeSet
from src.errors import CoverageError, InputError, StructureError
from src.graph.core import TruncatedGraph, VertexSet, ball, components
from src.graph.generators import FamilyBundle, FamilySpec, generate
from src.tree.cut_tree import CutTree, tree_from_cuts
from src.logger.logg import logs

logger = logs("ends.log")

DEFAULT_BALL_RADII = (0, 1, 2)

_SOURCE, _SINK = "__source__", "__sink__"

Kind = Literal["point", "mixed", "proper"]
Thickness = Literal["thin", "thick", "unknown-heuristic"]


class ChainLevel(BaseModel):
    model_config = ConfigDict(frozen=True)

    radius: int
    members: VertexSet
    touches_frontier: bool


class EndShadow(BaseModel):
    """A candidate end.

    Ray shadows come from nested complement components (`chain`, one level per
    ball radius). Vertex shadows are classes of vertices whose degree grows with
    the truncation; their chain is empty and `members` is the class.
    """

    model_config = ConfigDict(frozen=True)

    ident: str
    source: Literal["ray", "vertex"]
    chain: tuple[ChainLevel, ...] = ()
    members: VertexSet
    carries_ray: bool
    carries_infinite_degree_vertex: bool
    attached: tuple[str, ...] = ()
    connectivity: tuple[int, ...] = ()
    probe_size: int = 0

    def to_json(self) -> dict:
        return {
            "id": self.ident,
            "source": self.source,
            "chain": [
                {"radius": lvl.radius, "size": len(lvl.members), "min": min(lvl.members)} for lvl in self.chain
            ],
            "members": sorted(self.members),
            "carries_ray": self.carries_ray,
            "carries_infinite_degree_vertex": self.carries_infinite_degree_vertex,
            "attached": list(self.attached),
            "connectivity": list(self.connectivity),
        }


class EndLabel(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Kind
    thickness: Thickness


class EndImage(BaseModel):
    """Φ of a shadow: a tree vertex, or a tree end given by its terminus sequence."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["vertex", "end"]
    vertex: str | None = None
    ray: tuple[str, ...] = ()


class ClassifiedEnd(BaseModel):
    model_config = ConfigDict(frozen=True)

    shadow: EndShadow
    label: EndLabel
    image: EndImage | None = None

    @property
    def settled(self) -> bool:
        return self.label.thickness != "unknown-heuristic"


class ShadowContext(BaseModel):
    """Main and probe truncations a set of shadows was computed on."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    main: FamilyBundle
    probe: FamilyBundle
    ball_radii: tuple[int, ...]
    components_per_radius: dict[int, int]
    shadows: tuple[EndShadow, ...]


class EndsReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: str
    main_radius: int
    ball_radii: tuple[int, ...]
    components_per_radius: dict[int, int]
    ends: tuple[ClassifiedEnd, ...]
    p1: bool | None = None
    p2: bool | None = None

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "main_radius": self.main_radius,
            "ball_radii": list(self.ball_radii),
            "components_per_radius": {str(m): n for m, n in sorted(self.components_per_radius.items())},
            "ends": [
                {
                    "shadow": e.shadow.to_json(),
                    "kind": e.label.kind,
                    "thickness": e.label.thickness,
                    "image": None if e.image is None else e.image.model_dump(mode="json"),
                }
                for e in self.ends
            ],
            "p1": self.p1,
            "p2": self.p2,
        }


# ------------------------------------ helpers ------------------------------------


def _frontier_components(g: TruncatedGraph, center: str, m: int) -> list[VertexSet]:
    outside = g.vertices - ball(g, center, m)
    return [c.members for c in components(g, outside) if c.touches_frontier]


class _SinkNetwork:
    """A graph with one vertex set contracted to a sink, for λ(v, target) from many sources.

    The capacity graph and its residual network are built once; each source reuses
    them and its value is cached.
    """

    def __init__(self, graph: nx.Graph, target: VertexSet) -> None:
        self.boundary = sum(1 for _ in nx.edge_boundary(graph, target))
        self._values: dict[str, int] = {}
        self._flow = nx.DiGraph()
        self._residual = None
        if self.boundary < 2:
            return
        for a, b in graph.edges:
            if a in target and b in target:
                continue
            a2 = _SINK if a in target else a
            b2 = _SINK if b in target else b
            for s, t in ((a2, b2), (b2, a2)):
                if self._flow.has_edge(s, t):
                    self._flow[s][t]["capacity"] += 1
                else:
                    self._flow.add_edge(s, t, capacity=1)
        self._residual = build_residual_network(self._flow, "capacity")

    def connectivity(self, v: str) -> int:
        """Edge-disjoint paths from v into the target."""
        if self._residual is None:
            return self.boundary
        if v not in self._values:
            self._values[v] = int(
                nx.maximum_flow_value(self._flow, v, _SINK, flow_func=edmonds_karp, residual=self._residual)
            )
        return self._values[v]


def _disjoint_paths(g: TruncatedGraph, element: VertexSet) -> int:
    """Vertex-disjoint paths inside `element` from its inner boundary to the frontier."""
    sinks = element & g.frontier
    sources = {x for x in element if any(y not in element for y in g.nx[x])}
    if not sinks or not sources:
        return 0
    graph = nx.Graph(g.nx.subgraph(element))
    graph.add_edges_from((_SOURCE, x) for x in sources)
    graph.add_edges_from((x, _SINK) for x in sinks)
    return local_node_connectivity(graph, _SOURCE, _SINK)


def _thickness(counts: Sequence[int]) -> Thickness:
    last = list(counts)[-2:]
    if len(last) < 2:
        return "unknown-heuristic"
    if last == [1, 1]:
        return "thin"
    if min(last) >= 2 and last[1] > last[0]:
        return "thick"
    return "unknown-heuristic"


def _growing(main: TruncatedGraph, probe: TruncatedGraph) -> list[str]:
    return [
        x for x in main.order
        if x not in main.frontier and x in probe.vertices and probe.degree(x) > main.degree(x)
    ]


def _two_edge_classes(graph: nx.Graph, members: Iterable[str]) -> list[VertexSet]:
    sub = nx.Graph(graph.subgraph(members))
    sub.remove_edges_from(list(nx.bridges(sub)))
    return sorted((frozenset(c) for c in nx.connected_components(sub)), key=min)


# ------------------------------------ shadows ------------------------------------


def shadow_context(spec: FamilySpec, ball_radii: Sequence[int] = DEFAULT_BALL_RADII) -> ShadowContext:
    """Build the ray and vertex shadows of a family."""
    radii = check_radii(ball_radii)
    top = radii[-1] + settings.SHADOW_MARGIN
    main_bundle = generate(spec.at(top))
    probe_bundle = generate(spec.at(top + 1))
    main, probe = main_bundle.graph, probe_bundle.graph
    center = main.center
    if center is None or probe.center != center:
        raise InputError(f"family {spec.label} has no center to grow balls from")

    try:
        levels = {m: _frontier_components(main, center, m) for m in radii}
        last = radii[-1]
        probe_outside = probe.vertices - ball(probe, center, last)
        probe_pieces = components(probe, probe_outside)
        piece_of = {x: k for k, c in enumerate(probe_pieces) for x in c.members}

        grouped: dict[int, list[VertexSet]] = {}
        for comp in levels[last]:
            key = piece_of.get(min(comp))
            if key is None or not probe_pieces[key].touches_frontier:
                logger.debug("component at %s dies in the probe", min(comp))
                continue
            grouped.setdefault(key, []).append(comp)

        growing = _growing(main, probe)
        dist_main, dist_probe = main.bfs(center), probe.bfs(center)
        near_growing = [v for v in growing if dist_main[v] <= radii[-2]]
        path_counts: dict[VertexSet, int] = {}
        networks: dict[tuple[bool, VertexSet], _SinkNetwork] = {}

        # chain elements at small radii are shared by many shadows
        def paths(element: VertexSet) -> int:
            if element not in path_counts:
                path_counts[element] = _disjoint_paths(main, element)
            return path_counts[element]

        def lam(in_probe: bool, v: str, target: VertexSet) -> int:
            slot = (in_probe, target)
            if slot not in networks:
                networks[slot] = _SinkNetwork(probe.nx if in_probe else main.nx, target)
            return networks[slot].connectivity(v)

        shadows: list[EndShadow] = []
        attached_anywhere: set[str] = set()
        for key in sorted(grouped, key=lambda k: min(probe_pieces[k].members)):
            tails = grouped[key]
            union = frozenset().union(*tails)
            chain = []
            for m in radii:
                members = frozenset().union(*(c for c in levels[m] if c & union))
                chain.append(ChainLevel(radius=m, members=members, touches_frontier=True))
            probe_piece = probe_pieces[key].members

            reach_main = max(dist_main[f] for f in union & main.frontier) - last
            reach_probe = max(dist_probe[f] for f in probe_piece & probe.frontier) - last

            attached = []
            for v in near_growing:
                innermost = lam(False, v, chain[-1].members)
                if innermost < 2 or lam(False, v, chain[-2].members) < 2:
                    continue
                if lam(True, v, probe_piece) > innermost:
                    attached.append(v)
            attached_anywhere.update(attached)

            shadows.append(
                EndShadow(
                    ident=f"s{len(shadows)}",
                    source="ray",
                    chain=tuple(chain),
                    members=union,
                    carries_ray=reach_probe > reach_main,
                    carries_infinite_degree_vertex=bool(attached),
                    attached=tuple(attached),
                    connectivity=tuple(paths(lvl.members) for lvl in chain),
                    probe_size=len(probe_piece),
                )
            )

        loose = [v for v in growing if v not in attached_anywhere]
        probe_interior = [x for x in probe.order if x not in probe.frontier]
        probe_classes = _two_edge_classes(probe.nx, probe_interior)
        probe_class_of = {x: c for c in probe_classes for x in c}
        for cls in _two_edge_classes(main.nx, loose):
            grown = probe_class_of.get(min(cls), cls)
            shadows.append(
                EndShadow(
                    ident=f"s{len(shadows)}",
                    source="vertex",
                    members=cls,
                    carries_ray=False,
                    carries_infinite_degree_vertex=True,
                    probe_size=len(grown),
                )
            )

        logger.info(
            "%s: %d shadows (%d from vertices) at main radius %d",
            spec.label, len(shadows), sum(s.source == "vertex" for s in shadows), top,
        )
        return ShadowContext(
            main=main_bundle,
            probe=probe_bundle,
            ball_radii=tuple(radii),
            components_per_radius={m: len(levels[m]) for m in radii},
            shadows=tuple(shadows),
        )
    except Exception:
        logger.exception("Shadow computation for %s failed", spec.label)
        raise


def end_shadows(spec: FamilySpec, ball_radii: Sequence[int] = DEFAULT_BALL_RADII) -> list[EndShadow]:
    return list(shadow_context(spec, ball_radii).shadows)


def label_shadow(shadow: EndShadow) -> EndLabel:
    if shadow.source == "vertex":
        if len(shadow.members) >= 2 and shadow.probe_size > len(shadow.members):
            thickness: Thickness = "thick"
        elif len(shadow.members) == 1 and shadow.probe_size == 1:
            thickness = "thin"
        else:
            thickness = "unknown-heuristic"
        return EndLabel(kind="point", thickness=thickness)
    if shadow.carries_infinite_degree_vertex:
        kind: Kind = "mixed"
    elif shadow.carries_ray:
        kind = "proper"
    else:
        kind = "point"
    return EndLabel(kind=kind, thickness=_thickness(shadow.connectivity))


# ------------------------------------ Φ ------------------------------------


def _termini(tree_set: TreeSet, tree: CutTree, members: VertexSet) -> list[str]:
    """Termini of the minimal cuts that contain `members`."""
    target = tree_set.graph.mask(members)
    masks = tree_set.masks
    containing = sorted((i for i, m in enumerate(masks) if target & ~m == 0), key=lambda i: masks[i].bit_count())
    minimal: list[int] = []
    for i in containing:
        if not any(masks[j] & ~masks[i] == 0 for j in minimal):
            minimal.append(i)
    return sorted({tree.t(i) for i in minimal}, key=tree.vertices.index)


def phi_end(tree_set: TreeSet, tree: CutTree, shadow: EndShadow) -> EndImage:
    """A tree vertex when the minimal containing cuts settle, a tree end when they keep moving."""
    levels = [lvl.members for lvl in shadow.chain[-2:]] if shadow.chain else [shadow.members, shadow.members]
    per_level = [_termini(tree_set, tree, members) for members in levels]
    if not per_level[-1]:
        raise CoverageError(f"shadow {shadow.ident} lies in no cut", uncovered=[shadow.ident])
    if per_level[0] == per_level[-1]:
        if len(per_level[-1]) != 1:
            raise StructureError(
                f"minimal cuts containing shadow {shadow.ident} end at different tree vertices", witness=per_level[-1]
            )
        return EndImage(kind="vertex", vertex=per_level[-1][0])
    ray = [t[0] for t in (_termini(tree_set, tree, lvl.members) for lvl in shadow.chain) if len(t) == 1]
    return EndImage(kind="end", ray=tuple(ray))


def p1_holds(ends: Iterable[ClassifiedEnd]) -> bool:
    """Among settled shadows, those sent to tree vertices are exactly the point shadows."""
    for end in ends:
        if not end.settled or end.image is None:
            continue
        if (end.image.kind == "vertex") != (end.label.kind == "point"):
            return False
    return True


def p2_holds(ends: Iterable[ClassifiedEnd]) -> bool:
    """(P1), no mixed shadows, no thick proper shadows and thin proper shadows sent to tree ends."""
    ends = list(ends)
    if not p1_holds(ends):
        return False
    for end in ends:
        if end.label.kind == "mixed":
            return False
        if end.label.kind == "proper" and end.label.thickness == "thick":
            return False
        if end.label.kind == "proper" and end.label.thickness == "thin":
            if end.image is not None and end.image.kind != "end":
                return False
    return True


def classify_ends(spec: FamilySpec, ball_radii: Sequence[int] = DEFAULT_BALL_RADII) -> EndsReport:
    """Label every shadow and, when the family ships canonical cuts, map it under Φ."""
    context = shadow_context(spec, ball_radii)
    main = context.main
    tree_set = tree = None
    if main.canonical_cuts:
        tree_set, tree, _ = tree_from_cuts(main.graph, main.canonical_cuts)
    ends = []
    for shadow in context.shadows:
        image = phi_end(tree_set, tree, shadow) if tree is not None else None
        ends.append(ClassifiedEnd(shadow=shadow, label=label_shadow(shadow), image=image))
    report = EndsReport(
        family=spec.label,
        main_radius=main.spec.radius,
        ball_radii=context.ball_radii,
        components_per_radius=context.components_per_radius,
        ends=tuple(ends),
        p1=p1_holds(ends) if tree is not None else None,
        p2=p2_holds(ends) if tree is not None else None,
    )
    logger.info(
        "%s: kinds %s, P1=%s, P2=%s",
        spec.label, [f"{e.label.kind}/{e.label.thickness}" for e in ends], report.p1, report.p2,
    )
    return report


if __name__ == "__main__":
    pass
