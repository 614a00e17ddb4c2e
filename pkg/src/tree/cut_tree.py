"""
Cut tree T(E) of a verified tree set and the vertex structure mapping φ.

Tree vertices are coterminality classes of cuts; cut e is the directed edge
from the class of e* to the class of e.
"""

from collections.abc import Iterable

import networkx as nx
from pydantic import BaseModel, ConfigDict, PrivateAttr

from src.cuts.treeset import TreeSet, check_tree_set, coterminal_classes
from src.errors import CoverageError, InputError, StructureError
from src.graph.core import TruncatedGraph, VertexSet, boundaries, set_diameter
from src.logger.logg import logs

logger = logs("cut_tree.log")


class CutTree(BaseModel):
    """Vertices `t0, t1, ...` in the order of their first cut; `terminus[i]` and `origin[i]` index them."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tree_set: TreeSet
    vertices: tuple[str, ...]
    members: tuple[tuple[int, ...], ...]
    terminus: tuple[int, ...]
    origin: tuple[int, ...]
    blocks: tuple[frozenset[str], frozenset[str]]

    _nx: nx.Graph = PrivateAttr(default=None)
    _dist: dict = PrivateAttr(default_factory=dict)

    def model_post_init(self, context, /) -> None:
        tree = nx.Graph()
        tree.add_nodes_from(self.vertices)
        tree.add_edges_from(self.undirected_edges())
        self._nx = tree

    @property
    def nx(self) -> nx.Graph:
        return self._nx

    def t(self, cut: int) -> str:
        return self.vertices[self.terminus[cut]]

    def o(self, cut: int) -> str:
        return self.vertices[self.origin[cut]]

    def undirected_edges(self) -> list[tuple[str, str]]:
        pairs = {tuple(sorted((self.o(i), self.t(i)))) for i in range(len(self.terminus))}
        return sorted(pairs)

    def distance(self, u: str, v: str) -> int:
        cached = self._dist.get(u)
        if cached is None:
            cached = nx.single_source_shortest_path_length(self._nx, u)
            self._dist[u] = cached
        return cached[v]

    def to_json(self) -> dict:
        sides = [sorted(c.side) for c in self.tree_set.cuts]
        return {
            "vertices": list(self.vertices),
            "classes": {v: [sides[i] for i in self.members[k]] for k, v in enumerate(self.vertices)},
            "edges": [
                {"cut": sides[i], "origin": self.o(i), "terminus": self.t(i)} for i in range(len(sides))
            ],
            "blocks": [sorted(b) for b in self.blocks],
        }


def build_cut_tree(tree_set: TreeSet) -> CutTree:
    """Coterminality classes become vertices; T1, T2 and the tree shape are re-checked."""
    classes = coterminal_classes(tree_set)
    n = len(tree_set)
    class_of = [0] * n
    for k, members in enumerate(classes):
        for i in members:
            class_of[i] = k
    comp = [tree_set.complement(i) for i in range(n)]
    terminus = tuple(class_of)
    origin = tuple(class_of[comp[i]] for i in range(n))

    for i in range(n):
        if (terminus[comp[i]], origin[comp[i]]) != (origin[i], terminus[i]):
            raise StructureError("T1 fails", witness=sorted(tree_set.cuts[i].side))
        if terminus[i] == origin[i]:
            raise StructureError("a cut is coterminal with its complement", witness=sorted(tree_set.cuts[i].side))
    for i in range(n):
        for j in range(n):
            if j == comp[i]:
                continue
            if tree_set.points(i, j) != (terminus[i] == origin[j]):
                raise StructureError(
                    "T2 fails", witness=[sorted(tree_set.cuts[i].side), sorted(tree_set.cuts[j].side)]
                )

    names = tuple(f"t{k}" for k in range(len(classes)))
    graph = nx.Graph()
    graph.add_nodes_from(names)
    graph.add_edges_from((names[origin[i]], names[terminus[i]]) for i in range(n))
    if graph.number_of_edges() != n // 2 or not nx.is_tree(graph):
        raise StructureError("the cut classes do not form a tree", witness=names)

    depth = nx.single_source_shortest_path_length(graph, names[0])
    blocks = (
        frozenset(v for v in names if depth[v] % 2 == 0),
        frozenset(v for v in names if depth[v] % 2 == 1),
    )
    tree = CutTree(
        tree_set=tree_set,
        vertices=names,
        members=tuple(tuple(m) for m in classes),
        terminus=terminus,
        origin=origin,
        blocks=blocks,
    )
    logger.info("Cut tree built: %d vertices, %d edges", len(names), n // 2)
    return tree


# ------------------------------------ φ and regions ------------------------------------


class Region(BaseModel):
    model_config = ConfigDict(frozen=True)

    members: VertexSet
    diameter: int | str


class StructureMapping(BaseModel):
    """φ on the interior vertices.

    Frontier vertices are outside the domain and listed in `excluded`;
    `pointing[x]` is N(x) and `n_of_v[v]` is N(v), both as cut indices.
    """

    model_config = ConfigDict(frozen=True)

    phi: dict[str, str]
    pointing: dict[str, tuple[int, ...]]
    n_of_v: dict[str, tuple[int, ...]]
    preimages: dict[str, tuple[str, ...]]
    regions: dict[str, Region]
    excluded: tuple[str, ...] = ()
    uncovered: tuple[str, ...] = ()

    @property
    def image(self) -> frozenset[str]:
        return frozenset(self.phi.values())

    def preimage_diameter(self, g: TruncatedGraph, v: str) -> int | None:
        members = self.preimages.get(v, ())
        return set_diameter(g, members) if members else None

    def to_json(self) -> dict:
        return {
            "phi": dict(sorted(self.phi.items())),
            "regions": {
                v: {"members": sorted(r.members), "diameter": r.diameter} for v, r in sorted(self.regions.items())
            },
            "preimage_sizes": {v: len(p) for v, p in sorted(self.preimages.items())},
            "excluded": list(self.excluded),
            "uncovered": list(self.uncovered),
        }


def pointing_cuts(tree_set: TreeSet, x: str) -> list[int]:
    """Members containing x with no member containing x strictly inside."""
    bit = 1 << tree_set.graph.index(x)
    masks = tree_set.masks
    containing = sorted((i for i, m in enumerate(masks) if m & bit), key=lambda i: masks[i].bit_count())
    minimal: list[int] = []
    for i in containing:
        if not any(masks[j] & ~masks[i] == 0 for j in minimal):
            minimal.append(i)
    return sorted(minimal)


def _theta(g: TruncatedGraph, side: VertexSet, cache: dict[VertexSet, VertexSet]) -> VertexSet:
    if side not in cache:
        cache[side] = boundaries(g, side).theta
    return cache[side]


def phi(g: TruncatedGraph, tree_set: TreeSet, tree: CutTree, strict: bool = False) -> StructureMapping:
    """Vertex structure mapping with pointing cuts, N(v) and regions.

    Every cut pointing at x must end at the same tree vertex; a disagreement
    raises StructureError. With `strict`, vertices in no cut raise CoverageError.
    """
    if tree.tree_set is not tree_set and tree.tree_set != tree_set:
        raise InputError("the cut tree was built from a different tree set")
    try:
        mapping: dict[str, str] = {}
        pointing: dict[str, tuple[int, ...]] = {}
        uncovered = []
        for x in g.order:
            if x in g.frontier:
                continue
            cuts = pointing_cuts(tree_set, x)
            if not cuts:
                uncovered.append(x)
                continue
            termini = {tree.t(i) for i in cuts}
            if len(termini) != 1:
                raise StructureError(
                    f"cuts pointing at {x} end at different tree vertices", witness={"vertex": x, "termini": sorted(termini)}
                )
            mapping[x] = termini.pop()
            pointing[x] = tuple(cuts)
        if uncovered and strict:
            raise CoverageError("vertices contained in no cut", uncovered=uncovered)

        preimages: dict[str, list[str]] = {v: [] for v in tree.vertices}
        for x, v in mapping.items():
            preimages[v].append(x)
        n_of_v = {v: tree.members[k] for k, v in enumerate(tree.vertices)}
        thetas: dict[VertexSet, VertexSet] = {}
        regions = {}
        for v in tree.vertices:
            members = set(preimages[v])
            for i in n_of_v[v]:
                members |= _theta(g, tree_set.cuts[i].side, thetas)
            regions[v] = Region(members=frozenset(members), diameter=set_diameter(g, members))

        result = StructureMapping(
            phi=mapping,
            pointing=pointing,
            n_of_v=n_of_v,
            preimages={v: tuple(p) for v, p in preimages.items()},
            regions=regions,
            excluded=tuple(sorted(g.frontier)),
            uncovered=tuple(uncovered),
        )
        logger.info(
            "φ computed on %d vertices; %d of %d tree vertices hit", len(mapping), len(result.image), len(tree.vertices)
        )
        return result
    except (StructureError, CoverageError):
        raise
    except Exception:
        logger.exception("φ computation failed")
        raise


def region(g: TruncatedGraph, tree: CutTree, mapping: StructureMapping, v: str) -> Region:
    """R(v) re-derived from the cuts with terminus v and checked against the stored table."""
    if v not in tree.vertices:
        raise InputError(f"unknown tree vertex {v!r}")
    members = set(mapping.preimages.get(v, ()))
    for i in mapping.n_of_v[v]:
        members |= boundaries(g, tree.tree_set.cuts[i].side).theta
    derived = Region(members=frozenset(members), diameter=set_diameter(g, members))
    if derived != mapping.regions[v]:
        raise StructureError(f"stored region of {v} disagrees with its definition", witness=v)
    return derived


def tree_from_cuts(g: TruncatedGraph, cuts: Iterable[Iterable[str]]) -> tuple[TreeSet, CutTree, StructureMapping]:
    """Verify, build and map in one call; raises on any axiom violation."""
    verdict = check_tree_set(g, cuts)
    if not isinstance(verdict, TreeSet):
        verdict.require()
    tree = build_cut_tree(verdict)
    return verdict, tree, phi(g, verdict, tree)


if __name__ == "__main__":
    pass
