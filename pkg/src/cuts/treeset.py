"""
Tree sets: verification of the nesting axioms, the pointing relations and the
coterminality classes that become the vertices of the cut tree.
"""

from collections.abc import Iterable, Sequence
from typing import Any, Literal

import networkx as nx
from pydantic import BaseModel, ConfigDict, PrivateAttr

from src.errors import InputError, StructureError
from src.graph.automorphisms import Permutation, orbit_of_sets
from src.graph.core import TruncatedGraph, VertexSet
from src.cuts.engine import Cut, classify_cut, cut_key
from src.logger.logg import logs

logger = logs("treeset.log")

Axiom = Literal["S1", "S2", "S3", "S4", "tightness"]
Relation = Literal["equal", "e≫f", "f≫e", "e⇌f", "comparable-distant", "incomparable-via-complement"]


class TreeSetViolation(BaseModel):
    """First failed axiom with the lexicographically first witnesses."""

    model_config = ConfigDict(frozen=True)

    axiom: Axiom
    message: str
    witness: tuple[tuple[str, ...], ...] = ()

    def require(self) -> None:
        raise StructureError(f"{self.axiom} violated: {self.message}", witness=[list(w) for w in self.witness])

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "message": self.message, "witness": [list(w) for w in self.witness]}


class TreeSet(BaseModel):
    """A verified complementation-closed nested family of cuts.

    Cuts are stored in canonical order; `points_to` holds index pairs (i, j)
    with cuts[i] ≫ cuts[j]. `tight` records whether every member is tight.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    graph: TruncatedGraph
    cuts: tuple[Cut, ...]
    points_to: frozenset[tuple[int, int]]
    points_away: frozenset[tuple[int, int]]
    tight: bool
    max_interval: int

    _index: dict[VertexSet, int] = PrivateAttr(default_factory=dict)
    _masks: list[int] = PrivateAttr(default_factory=list)

    def model_post_init(self, context: Any, /) -> None:
        self._index = {c.side: i for i, c in enumerate(self.cuts)}
        self._masks = [self.graph.mask(c.side) for c in self.cuts]

    def __len__(self) -> int:
        return len(self.cuts)

    @property
    def sides(self) -> list[VertexSet]:
        return [c.side for c in self.cuts]

    @property
    def masks(self) -> list[int]:
        return self._masks

    def index_of(self, side: Iterable[str]) -> int:
        key = frozenset(side)
        if key not in self._index:
            raise InputError("vertex set is not a member of the tree set", side=sorted(key))
        return self._index[key]

    def complement(self, i: int) -> int:
        return self._index[self.graph.complement(self.cuts[i].side)]

    def points(self, i: int, j: int) -> bool:
        return (i, j) in self.points_to

    def to_json(self) -> dict:
        sides = [sorted(c.side) for c in self.cuts]
        return {
            "cuts": [c.to_json() for c in self.cuts],
            "points_to": [[sides[i], sides[j]] for i, j in sorted(self.points_to)],
            "tight": self.tight,
            "max_interval": self.max_interval,
        }


def _is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def check_tree_set(
    g: TruncatedGraph, cuts: Iterable[Iterable[str]], require_tight: bool = False
) -> TreeSet | TreeSetViolation:
    """Verify S1-S4 and compute ≫ and ⇌.

    Non-tight members are reported through `TreeSet.tight`; with `require_tight`
    they become a tightness violation instead.
    """
    sides = sorted({frozenset(c) for c in cuts}, key=cut_key)
    if not sides:
        raise InputError("the cut list is empty")
    for s in sides:
        g.require(*s)
        if not s or s == g.vertices:
            return TreeSetViolation(
                axiom="S3", message="the empty set or the full vertex set is listed", witness=(tuple(sorted(s)),)
            )
    members = set(sides)
    for s in sides:
        if g.complement(s) not in members:
            return TreeSetViolation(axiom="S4", message="complement missing", witness=(tuple(sorted(s)),))

    classified = [classify_cut(g, s) for s in sides]
    loose = [c for c in classified if not c.tight]
    if loose and require_tight:
        return TreeSetViolation(
            axiom="tightness", message="member is not a tight cut", witness=(tuple(sorted(loose[0].side)),)
        )

    full = g.full_mask
    masks = [g.mask(s) for s in sides]
    for i, a in enumerate(masks):
        for j in range(i + 1, len(masks)):
            b = masks[j]
            if not (_is_subset(a, b) or _is_subset(b, a) or a & b == 0 or a | b == full):
                return TreeSetViolation(
                    axiom="S1",
                    message="crossing pair: none of the four inclusions holds",
                    witness=(tuple(sorted(sides[i])), tuple(sorted(sides[j]))),
                )

    points_to, max_interval = _pointing(masks)
    index = {s: i for i, s in enumerate(sides)}
    comp = [index[g.complement(s)] for s in sides]
    points_away = frozenset(
        (min(comp[a], f), max(comp[a], f)) for a, f in points_to if (comp[f], comp[a]) in points_to
    )
    tree_set = TreeSet(
        graph=g,
        cuts=tuple(classified),
        points_to=frozenset(points_to),
        points_away=points_away,
        tight=not loose,
        max_interval=max_interval,
    )
    logger.info(
        "Tree set verified: %d cuts, %d pointing pairs, tight=%s", len(sides), len(points_to), tree_set.tight
    )
    return tree_set


def _pointing(masks: Sequence[int]) -> tuple[set[tuple[int, int]], int]:
    """e ≫ f for every f and every minimal strict superset e of f."""
    order = sorted(range(len(masks)), key=lambda i: masks[i].bit_count())
    points_to = set()
    max_interval = 0
    for f in range(len(masks)):
        above = [e for e in order if e != f and _is_subset(masks[f], masks[e])]
        max_interval = max(max_interval, len(above))
        kept: list[int] = []
        for e in above:
            if not any(_is_subset(masks[d], masks[e]) for d in kept):
                kept.append(e)
                points_to.add((e, f))
    return points_to, max_interval


def relation(tree_set: TreeSet, e: Iterable[str], f: Iterable[str]) -> Relation:
    i, j = tree_set.index_of(e), tree_set.index_of(f)
    if i == j:
        return "equal"
    if tree_set.points(i, j):
        return "e≫f"
    if tree_set.points(j, i):
        return "f≫e"
    if (min(i, j), max(i, j)) in tree_set.points_away:
        return "e⇌f"
    a, b = tree_set.masks[i], tree_set.masks[j]
    if _is_subset(a, b) or _is_subset(b, a):
        return "comparable-distant"
    return "incomparable-via-complement"


def relation_table(tree_set: TreeSet) -> dict[tuple[int, int], Relation]:
    """Every ordered pair of members; built on demand since it is quadratic."""
    sides = tree_set.sides
    return {(i, j): relation(tree_set, sides[i], sides[j]) for i in range(len(sides)) for j in range(len(sides))}


def orbit_closure(
    g: TruncatedGraph, auts: Iterable[Permutation], e: Iterable[str], budget: int | None = None
) -> list[Cut]:
    """{e, e*} closed under the group generated by `auts`, in canonical order."""
    start = frozenset(e)
    auts = list(auts)
    sides = orbit_of_sets(auts, start, budget) | orbit_of_sets(auts, g.complement(start), budget)
    return [classify_cut(g, s) for s in sorted(sides, key=cut_key)]


def decreasing_chains(tree_set: TreeSet, x: str | None = None) -> list[Cut]:
    """A longest strictly decreasing chain of members, all containing x when given."""
    candidates = [i for i, c in enumerate(tree_set.cuts) if x is None or x in c.side]
    candidates.sort(key=lambda i: -len(tree_set.cuts[i].side))
    masks = tree_set.masks
    best: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for pos, i in enumerate(candidates):
        best[i], parent[i] = 1, None
        for j in candidates[:pos]:
            if masks[i] != masks[j] and _is_subset(masks[i], masks[j]) and best[j] + 1 > best[i]:
                best[i], parent[i] = best[j] + 1, j
    if not candidates:
        return []
    tail = max(candidates, key=lambda i: (best[i], -i))
    chain = []
    while tail is not None:
        chain.append(tree_set.cuts[tail])
        tail = parent[tail]
    return chain[::-1]


def coterminal_classes(tree_set: TreeSet) -> list[list[int]]:
    """Classes of e ~ f :⟺ e = f or e ≫ f*, each verified to be a clique of the relation."""
    relation = nx.Graph()
    relation.add_nodes_from(range(len(tree_set)))
    # e ≫ f means e ~ f*
    relation.add_edges_from((e, tree_set.complement(f)) for e, f in tree_set.points_to)
    classes = sorted((sorted(c) for c in nx.connected_components(relation)), key=lambda m: m[0])

    for members in classes:
        for pos, e in enumerate(members):
            for f in members[pos + 1:]:
                if not relation.has_edge(e, f):
                    triple = nx.shortest_path(relation, e, f)[:3]
                    logger.error("Coterminality is not transitive on %s", triple)
                    raise StructureError(
                        "coterminality is not an equivalence relation",
                        witness=[sorted(tree_set.cuts[i].side) for i in triple],
                    )
    return classes


if __name__ == "__main__":
    pass
