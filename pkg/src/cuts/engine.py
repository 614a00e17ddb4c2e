"""
Tight edge-cuts: classification, bounded enumeration through a fixed edge and
an exhaustive reference enumeration for small graphs.
"""

from collections.abc import Iterable
from typing import Literal

from pydantic import BaseModel, ConfigDict

from src.config import settings
from src.errors import BudgetError, InputError
from src.graph.core import Edge, TruncatedGraph, VertexSet, edge_boundary, is_connected_set
from src.logger.logg import logs

logger = logs("cuts.log")

NontrivialFlag = Literal["trivial", "nontrivial", "frontier_dependent"]


class Cut(BaseModel):
    """One side e of an edge-cut; e* is the complement in the carrier graph."""

    model_config = ConfigDict(frozen=True)

    side: VertexSet
    boundary_size: int
    tight: bool
    nontrivial_flag: NontrivialFlag

    @property
    def key(self) -> tuple[int, list[str]]:
        return (len(self.side), sorted(self.side))

    def to_json(self) -> dict:
        return {
            "side": sorted(self.side),
            "boundary_size": self.boundary_size,
            "tight": self.tight,
            "nontrivial_flag": self.nontrivial_flag,
        }


def cut_key(side: Iterable[str]) -> tuple[int, list[str]]:
    """Canonical ordering of vertex sets: by size, then by sorted identifiers."""
    members = sorted(side)
    return (len(members), members)


def classify_cut(g: TruncatedGraph, e: Iterable[str]) -> Cut:
    side = frozenset(e)
    delta = edge_boundary(g, side)
    rest = g.complement(side)
    tight = is_connected_set(g, side) and is_connected_set(g, rest)
    if not g.frontier:
        flag: NontrivialFlag = "frontier_dependent"
    elif side & g.frontier and rest & g.frontier:
        flag = "nontrivial"
    else:
        flag = "trivial"
    return Cut(side=side, boundary_size=len(delta), tight=tight, nontrivial_flag=flag)


# ------------------------------------- bit masks -------------------------------------


def _adjacency_masks(g: TruncatedGraph) -> list[int]:
    adj = [0] * len(g.order)
    for u, v in g.edges:
        i, j = g.index(u), g.index(v)
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return adj


def _mask_connected(adj: list[int], m: int) -> bool:
    if not m:
        return False
    reached = todo = m & -m
    while todo:
        bit = todo & -todo
        todo ^= bit
        new = adj[bit.bit_length() - 1] & m & ~reached
        reached |= new
        todo |= new
    return reached == m


def _check_edge(g: TruncatedGraph, p: Edge, k: int) -> tuple[str, str]:
    if k < 1:
        raise InputError(f"boundary bound k must be positive, got {k}")
    u, v = sorted(p)
    if not g.nx.has_edge(u, v):
        raise InputError(f"{{{u}, {v}}} is not an edge of the graph")
    return u, v


def enumerate_tight_cuts(g: TruncatedGraph, p: Edge, k: int, budget: int | None = None) -> list[Cut]:
    """All tight cuts e with p in δe and |δe| <= k, one per complementary pair.

    The reported side contains the smaller endpoint of p. Connected sets are
    grown from that endpoint; each excluded neighbour adds at least one boundary
    edge, so at most k - 1 exclusions happen along any search path.
    """
    u, v = _check_edge(g, p, k)
    limit = budget or settings.NODE_BUDGET
    adj = _adjacency_masks(g)
    full = g.full_mask
    iu, iv = g.index(u), g.index(v)

    start_s, start_x = 1 << iu, 1 << iv
    stack = [(start_s, start_x, adj[iu], 1)]
    found: list[int] = []
    nodes = 0
    while stack:
        s, x, nbr, boundary = stack.pop()
        nodes += 1
        if nodes > limit:
            raise BudgetError(
                f"tight-cut enumeration through {{{u}, {v}}} exceeded the node budget",
                budget="NODE_BUDGET", limit=limit, partial={"cuts": len(found), "nodes": nodes},
            )
        candidates = nbr & ~s & ~x
        if not candidates:
            if _mask_connected(adj, full & ~s):
                found.append(s)
            continue
        bit = candidates & -candidates
        w = bit.bit_length() - 1
        # exclude w: every edge between S and w joins the boundary
        excluded = boundary + (adj[w] & s).bit_count()
        if excluded <= k:
            stack.append((s, x | bit, nbr, excluded))
        # include w: edges from w to already excluded vertices join the boundary
        included = boundary + (adj[w] & x).bit_count()
        if included <= k:
            stack.append((s | bit, x, nbr | adj[w], included))

    cuts = sorted((classify_cut(g, g.unmask(m)) for m in found), key=lambda c: c.key)
    logger.debug("edge {%s, %s}, k=%d: %d tight cuts after %d search nodes", u, v, k, len(cuts), nodes)
    return cuts


def brute_force_tight_cuts(g: TruncatedGraph, p: Edge, k: int) -> list[Cut]:
    """Reference enumeration over every subset containing the smaller endpoint of p."""
    u, v = _check_edge(g, p, k)
    n = len(g.order)
    if n > settings.BRUTE_FORCE_LIMIT:
        raise InputError(f"brute force is limited to {settings.BRUTE_FORCE_LIMIT} vertices, graph has {n}")
    adj = _adjacency_masks(g)
    full = g.full_mask
    iu, iv = g.index(u), g.index(v)
    found = []
    for m in range(1 << n):
        if not (m >> iu) & 1 or (m >> iv) & 1:
            continue
        boundary = sum((adj[i] & ~m & full).bit_count() for i in range(n) if (m >> i) & 1)
        if boundary <= k and _mask_connected(adj, m) and _mask_connected(adj, full & ~m):
            found.append(classify_cut(g, g.unmask(m)))
    return sorted(found, key=lambda c: c.key)


def all_tight_cuts(g: TruncatedGraph, k: int, budget: int | None = None) -> list[Cut]:
    """Union over every edge, both sides of each pair included."""
    sides: set[VertexSet] = set()
    for p in sorted(g.edges):
        for cut in enumerate_tight_cuts(g, p, k, budget):
            sides.add(cut.side)
            sides.add(g.complement(cut.side))
    logger.info("%d tight cuts with boundary at most %d", len(sides), k)
    return [classify_cut(g, s) for s in sorted(sides, key=cut_key)]


def intersection_boundary_holds(g: TruncatedGraph, e: VertexSet, f: VertexSet) -> bool:
    """δ(e ∩ f) ⊆ δe ∪ δf whenever e ∩ f is a proper nonempty subset."""
    meet = e & f
    if not meet or meet == g.vertices:
        return True
    return edge_boundary(g, meet) <= edge_boundary(g, e) | edge_boundary(g, f)


if __name__ == "__main__":
    pass
