"""
Finite graphs with a marked frontier, standing in for balls of infinite graphs.

Everything downstream computes on `TruncatedGraph`: the graph metric, edge and
vertex boundaries of vertex sets, components of induced subgraphs and diameters
measured in the ambient graph.
"""

import json
from collections.abc import Iterable
from pathlib import Path
from typing import Literal

import networkx as nx
from pydantic import BaseModel, ConfigDict, PrivateAttr, ValidationError, field_validator, model_validator

from src.errors import InputError
from src.logger.logg import logs

logger = logs("graph.log")

# One side e of a potential cut; the complement e* is implicit in the carrier graph.
VertexSet = frozenset[str]
Edge = tuple[str, str]

DISCONNECTED = "disconnected-infinite"


class Boundaries(BaseModel):
    model_config = ConfigDict(frozen=True)

    delta: frozenset[Edge]
    theta: VertexSet
    inner_theta: VertexSet


class Component(BaseModel):
    model_config = ConfigDict(frozen=True)

    members: VertexSet
    touches_frontier: bool


class TruncatedGraph(BaseModel):
    """Connected simple graph with a frontier sphere.

    `frontier` is empty for genuinely finite graphs. When both `center` and
    `radius` are set, every frontier vertex lies at distance `radius` from `center`.
    """

    model_config = ConfigDict(frozen=True)

    vertices: frozenset[str]
    edges: frozenset[Edge]
    frontier: frozenset[str] = frozenset()
    center: str | None = None
    radius: int | None = None

    _nx: nx.Graph = PrivateAttr(default=None)
    _bfs: dict = PrivateAttr(default_factory=dict)
    _index: dict = PrivateAttr(default_factory=dict)

    @field_validator("edges", mode="before")
    @classmethod
    def _normalise_edges(cls, value: Iterable) -> frozenset:
        normalised = set()
        for edge in value:
            u, v = tuple(edge)
            if u == v:
                raise ValueError(f"loop at vertex {u!r}")
            normalised.add((u, v) if u < v else (v, u))
        return frozenset(normalised)

    @model_validator(mode="after")
    def _check_invariants(self) -> "TruncatedGraph":
        if not self.vertices:
            raise ValueError("graph has no vertices")
        stray = {x for edge in self.edges for x in edge} - self.vertices
        if stray:
            raise ValueError(f"edge endpoints outside the vertex set: {sorted(stray)[:5]}")
        if not self.frontier <= self.vertices:
            raise ValueError("frontier is not a subset of the vertices")
        if self.radius is not None and self.radius < 0:
            raise ValueError("radius must be non-negative")

        graph = nx.Graph()
        graph.add_nodes_from(sorted(self.vertices))
        graph.add_edges_from(sorted(self.edges))
        if not nx.is_connected(graph):
            raise ValueError("graph is not connected")
        self._nx = graph
        self._index = {x: i for i, x in enumerate(sorted(self.vertices))}

        if self.center is not None:
            if self.center not in self.vertices:
                raise ValueError(f"center {self.center!r} is not a vertex")
            if self.radius is not None:
                dist = self.bfs(self.center)
                off = [x for x in self.frontier if dist[x] != self.radius]
                if off:
                    raise ValueError(f"frontier vertices off the sphere of radius {self.radius}: {sorted(off)[:5]}")
        return self

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        edges: Iterable[Edge],
        frontier: Iterable[str] = (),
        center: str | None = None,
        radius: int | None = None,
    ) -> "TruncatedGraph":
        """Validate and construct; pydantic failures surface as InputError."""
        try:
            return cls(
                vertices=frozenset(vertices),
                edges=frozenset(tuple(e) for e in edges),
                frontier=frozenset(frontier),
                center=center,
                radius=radius,
            )
        except ValidationError as exc:
            raise InputError(f"invalid graph: {exc.errors()[0]['msg']}") from exc

    def _key(self) -> tuple:
        return (self.vertices, self.edges, self.frontier, self.center, self.radius)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    # --- accessors ---

    @property
    def nx(self) -> nx.Graph:
        return self._nx

    @property
    def order(self) -> list[str]:
        """Vertices in canonical (sorted identifier) order."""
        return list(self._index)

    def index(self, x: str) -> int:
        return self._index[x]

    def neighbors(self, x: str) -> list[str]:
        self.require(x)
        return sorted(self._nx[x])

    def degree(self, x: str) -> int:
        return self._nx.degree[x]

    def require(self, *xs: str) -> None:
        for x in xs:
            if x not in self._index:
                raise InputError(f"unknown vertex {x!r}")

    def bfs(self, x: str) -> dict[str, int]:
        """Distances from x to every vertex, cached per source."""
        cached = self._bfs.get(x)
        if cached is None:
            cached = nx.single_source_shortest_path_length(self._nx, x)
            self._bfs[x] = cached
        return cached

    # --- masks ---

    def mask(self, s: Iterable[str]) -> int:
        """Bit mask of a vertex set in canonical vertex order."""
        m = 0
        for x in s:
            m |= 1 << self._index[x]
        return m

    def unmask(self, m: int) -> VertexSet:
        order = self.order
        out = []
        i = 0
        while m:
            if m & 1:
                out.append(order[i])
            m >>= 1
            i += 1
        return frozenset(out)

    @property
    def full_mask(self) -> int:
        return (1 << len(self._index)) - 1

    def complement(self, s: Iterable[str]) -> VertexSet:
        return self.vertices - frozenset(s)

    def to_json(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "edges": [list(e) for e in sorted(self.edges)],
            "frontier": sorted(self.frontier),
            "center": self.center,
            "radius": self.radius,
        }


def from_networkx(graph: nx.Graph, frontier: Iterable[str] = (), center: str | None = None,
                  radius: int | None = None) -> TruncatedGraph:
    """Wrap a networkx graph; node labels are converted to strings."""
    return TruncatedGraph.build(
        vertices=(str(x) for x in graph.nodes),
        edges=((str(u), str(v)) for u, v in graph.edges),
        frontier=(str(x) for x in frontier),
        center=None if center is None else str(center),
        radius=radius,
    )


def to_networkx(g: TruncatedGraph) -> nx.Graph:
    graph = g.nx.copy()
    nx.set_node_attributes(graph, {x: x in g.frontier for x in graph.nodes}, "frontier")
    return graph


def load_graph(path: str | Path) -> TruncatedGraph:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read graph file {path}: {exc}") from exc
    return TruncatedGraph.build(
        vertices=data.get("vertices", []),
        edges=data.get("edges", []),
        frontier=data.get("frontier", []),
        center=data.get("center"),
        radius=data.get("radius"),
    )


def save_graph(g: TruncatedGraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(g.to_json(), sort_keys=True, indent=2) + "\n", encoding="utf-8")


# --------------------------------------- metric ---------------------------------------


def distance(g: TruncatedGraph, x: str, y: str) -> int:
    """Length of a shortest x-y path."""
    g.require(x, y)
    return g.bfs(x)[y]


def set_distance(g: TruncatedGraph, s: Iterable[str], x: str) -> int:
    """dm(s, x): distance from the nearest member of s."""
    members = list(s)
    if not members:
        raise InputError("distance to an empty set is undefined")
    return min(g.bfs(y)[x] for y in members)


def multi_source_distances(g: TruncatedGraph, sources: Iterable[str]) -> dict[str, int]:
    sources = list(sources)
    if not sources:
        raise InputError("no source vertices")
    g.require(*sources)
    return dict(nx.multi_source_dijkstra_path_length(g.nx, sources))


def ball(g: TruncatedGraph, x: str, r: int) -> VertexSet:
    """B(x, r)."""
    g.require(x)
    return frozenset(y for y, d in g.bfs(x).items() if d <= r)


def sphere(g: TruncatedGraph, x: str, r: int) -> VertexSet:
    g.require(x)
    return frozenset(y for y, d in g.bfs(x).items() if d == r)


def set_diameter(g: TruncatedGraph, s: Iterable[str]) -> int | Literal["disconnected-infinite"]:
    """Diameter of s in the ambient metric of g; paths may leave s."""
    members = sorted(set(s))
    if not members:
        raise InputError("diameter of an empty set is undefined")
    g.require(*members)
    best = 0
    for i, x in enumerate(members):
        dist = g.bfs(x)
        for y in members[i + 1:]:
            d = dist.get(y)
            if d is None:
                return DISCONNECTED
            best = max(best, d)
    return best


def diameter_witness(g: TruncatedGraph, s: Iterable[str]) -> tuple[int, tuple[str, str] | None]:
    """Diameter of s together with a pair realising it."""
    members = sorted(set(s))
    if not members:
        raise InputError("diameter of an empty set is undefined")
    best, pair = 0, (members[0], members[0])
    for i, x in enumerate(members):
        dist = g.bfs(x)
        for y in members[i + 1:]:
            if dist[y] > best:
                best, pair = dist[y], (x, y)
    return best, pair


# ------------------------------------- boundaries -------------------------------------


def _proper_side(g: TruncatedGraph, e: Iterable[str]) -> VertexSet:
    side = frozenset(e)
    g.require(*side)
    if not side:
        raise InputError("empty vertex set has no boundary")
    if side == g.vertices:
        raise InputError("the full vertex set has no boundary")
    return side


def edge_boundary(g: TruncatedGraph, e: Iterable[str]) -> frozenset[Edge]:
    side = _proper_side(g, e)
    return frozenset((u, v) if u < v else (v, u) for u, v in nx.edge_boundary(g.nx, side))


def boundaries(g: TruncatedGraph, e: Iterable[str]) -> Boundaries:
    """δe, θe and Iθe = θ(e*)."""
    side = _proper_side(g, e)
    delta = edge_boundary(g, side)
    theta = frozenset(v if u in side else u for u, v in delta)
    inner = frozenset(u if u in side else v for u, v in delta)
    return Boundaries(delta=delta, theta=theta, inner_theta=inner)


def is_connected_set(g: TruncatedGraph, s: Iterable[str]) -> bool:
    members = frozenset(s)
    if not members:
        return False
    return nx.is_connected(g.nx.subgraph(members))


def components(g: TruncatedGraph, s: Iterable[str]) -> list[Component]:
    """Maximal connected pieces of the subgraph induced on s, flagged when they meet the frontier."""
    members = frozenset(s)
    g.require(*members)
    pieces = [frozenset(c) for c in nx.connected_components(g.nx.subgraph(members))]
    pieces.sort(key=lambda c: min(c))
    return [Component(members=c, touches_frontier=bool(c & g.frontier)) for c in pieces]


def induced(g: TruncatedGraph, s: Iterable[str]) -> TruncatedGraph:
    """Induced subgraph on a connected vertex set, keeping the frontier it meets."""
    members = frozenset(s)
    g.require(*members)
    sub = g.nx.subgraph(members)
    center = g.center if g.center in members else None
    return TruncatedGraph.build(
        vertices=members,
        edges=sub.edges,
        frontier=members & g.frontier,
        center=center,
        radius=None,
    )


if __name__ == "__main__":
    pass
