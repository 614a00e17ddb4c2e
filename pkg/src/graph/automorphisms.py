"""Vertex permutations of truncations: validation, group closure and brute-force enumeration."""

from collections import deque
from collections.abc import Iterable, Mapping

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from src.config import settings
from src.errors import BudgetError, InputError
from src.graph.core import TruncatedGraph, VertexSet
from src.logger.logg import logs

logger = logs("automorphisms.log")

Permutation = Mapping[str, str]


def is_automorphism(g: TruncatedGraph, perm: Permutation) -> bool:
    """Bijection of V that preserves adjacency and maps the frontier onto itself."""
    if set(perm) != g.vertices or set(perm.values()) != g.vertices:
        return False
    for u, v in g.edges:
        if not g.nx.has_edge(perm[u], perm[v]):
            return False
    return all(perm[x] in g.frontier for x in g.frontier)


def require_automorphism(g: TruncatedGraph, perm: Permutation) -> None:
    if not is_automorphism(g, perm):
        moved = sorted(x for x, y in perm.items() if x != y)[:5]
        raise InputError("permutation is not an automorphism of the truncation", moved=moved)


def apply(perm: Permutation, s: Iterable[str]) -> VertexSet:
    return frozenset(perm[x] for x in s)


def compose(first: Permutation, second: Permutation) -> dict[str, str]:
    """x -> second(first(x))."""
    return {x: second[y] for x, y in first.items()}


def _freeze(perm: Permutation) -> tuple[tuple[str, str], ...]:
    return tuple(sorted(perm.items()))


def close_group(generators: Iterable[Permutation], budget: int | None = None) -> list[dict[str, str]]:
    """All products of the generators, identity first."""
    generators = [dict(p) for p in generators]
    limit = budget or settings.GROUP_BUDGET
    if not generators:
        return []
    identity = {x: x for x in generators[0]}
    seen = {_freeze(identity)}
    group = [identity]
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for gen in generators:
            nxt = compose(current, gen)
            key = _freeze(nxt)
            if key not in seen:
                seen.add(key)
                group.append(nxt)
                queue.append(nxt)
                if len(group) > limit:
                    raise BudgetError(
                        "group closure exceeded its budget",
                        budget="GROUP_BUDGET", limit=limit, partial={"elements": len(group)},
                    )
    return group


def orbit_of_sets(generators: Iterable[Permutation], start: VertexSet, budget: int | None = None) -> set[VertexSet]:
    """Orbit of one vertex set under the group generated by `generators`."""
    generators = list(generators)
    limit = budget or settings.GROUP_BUDGET
    orbit = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for gen in generators:
            image = apply(gen, current)
            if image not in orbit:
                orbit.add(image)
                queue.append(image)
                if len(orbit) > limit:
                    raise BudgetError(
                        "orbit closure exceeded its budget",
                        budget="GROUP_BUDGET", limit=limit, partial={"orbit": len(orbit)},
                    )
    return orbit


def enumerate_automorphisms(
    graph: nx.Graph, marked: Iterable = (), limit: int | None = None
) -> tuple[list[dict], bool]:
    """Automorphisms of `graph` fixing the `marked` set setwise.

    Returns the list found and whether the enumeration finished before `limit`.
    """
    limit = limit or settings.AUTOMORPHISM_BUDGET
    marked = set(marked)
    coloured = graph.copy()
    nx.set_node_attributes(coloured, {x: x in marked for x in coloured.nodes}, "marked")
    matcher = GraphMatcher(coloured, coloured, node_match=lambda a, b: a["marked"] == b["marked"])
    found = []
    for mapping in matcher.isomorphisms_iter():
        found.append(mapping)
        if len(found) >= limit:
            logger.warning("automorphism enumeration stopped at %d (AUTOMORPHISM_BUDGET)", limit)
            return found, False
    return found, True


def truncation_automorphisms(g: TruncatedGraph, limit: int | None = None) -> tuple[list[dict[str, str]], bool]:
    return enumerate_automorphisms(g.nx, g.frontier, limit)


if __name__ == "__main__":
    pass
