"""
Truncations of the example families, each bundled with its canonical tree set,
truncation-level automorphisms and almost-transitivity claims.

Identifiers are stable across radii so cross-radius comparisons can match
vertices by name.
"""

from collections import deque
from collections.abc import Callable, Iterable
from typing import Literal

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.errors import InputError
from src.graph.core import TruncatedGraph, VertexSet
from src.logger.logg import logs

logger = logs("generators.log")

FamilyName = Literal[
    "two_sided_line",
    "cycle_with_pendant_pairs",
    "biregular_tree",
    "regular_tree",
    "attached_biregular",
    "grid2d",
    "free_product_a_b_c",
    "free_product_a_Z2block",
    "broom",
    "mixed_end_fan",
]

Automorphism = dict[str, str]


class FamilySpec(BaseModel):
    """A family of graphs and the radius of the requested truncation.

    `n` is the cycle length, `p`/`q` the degrees of the two blocks of a
    semi-regular tree and `d` the degree of a regular tree.
    """

    model_config = ConfigDict(frozen=True)

    name: FamilyName
    radius: int = Field(ge=1)
    n: int = Field(default=4, ge=3)
    p: int = Field(default=2, ge=2)
    q: int = Field(default=3, ge=2)
    d: int = Field(default=3, ge=2)

    @classmethod
    def parse(cls, text: str, radius: int) -> "FamilySpec":
        """Read `name[:params]`, e.g. `cycle_with_pendant_pairs:4` or `biregular_tree:2,3`."""
        name, _, params = text.partition(":")
        values = [v for v in params.split(",") if v] if params else []
        try:
            ints = [int(v) for v in values]
            extra: dict[str, int] = {}
            if name == "cycle_with_pendant_pairs" and ints:
                extra["n"] = ints[0]
            elif name in ("biregular_tree", "attached_biregular") and ints:
                extra["p"], extra["q"] = ints[0], ints[1] if len(ints) > 1 else ints[0]
            elif name == "regular_tree" and ints:
                extra["d"] = ints[0]
            elif ints:
                raise InputError(f"family {name!r} takes no parameters")
            return cls(name=name, radius=radius, **extra)
        except (ValueError, ValidationError) as exc:
            raise InputError(f"invalid family spec {text!r} at radius {radius}: {exc}") from exc

    def at(self, radius: int) -> "FamilySpec":
        return self.model_copy(update={"radius": radius})

    @property
    def label(self) -> str:
        if self.name == "cycle_with_pendant_pairs":
            return f"{self.name}:{self.n}"
        if self.name in ("biregular_tree", "attached_biregular"):
            return f"{self.name}:{self.p},{self.q}"
        if self.name == "regular_tree":
            return f"{self.name}:{self.d}"
        return self.name


class OrbitClaim(BaseModel):
    """Claim that every vertex lies within `radius` of the listed orbit."""

    model_config = ConfigDict(frozen=True)

    vertices: tuple[str, ...]
    radius: int = Field(ge=0)


class FamilyBundle(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: FamilySpec
    graph: TruncatedGraph
    canonical_cuts: tuple[VertexSet, ...] = ()
    # E_L has disconnected co-singletons, so not every shipped family is tight.
    tight_cuts: bool = True
    aut_generators: tuple[Automorphism, ...] = ()
    orbit_claims: tuple[OrbitClaim, ...] = ()
    # orbit of the stabilizer of any end; the same for every end of the family
    end_stabilizer_claim: OrbitClaim | None = None
    # True when the truncation at radius r is exactly the r-ball of every larger truncation.
    ball_truncation: bool = True


# ------------------------------------ helpers ------------------------------------


def _side_of_edge(graph: nx.Graph, u: str, v: str) -> VertexSet:
    """Component containing v once the bridge {u, v} is removed."""
    graph.remove_edge(u, v)
    try:
        side = frozenset(nx.node_connected_component(graph, v))
    finally:
        graph.add_edge(u, v)
    if u in side:
        raise InputError(f"edge {{{u}, {v}}} is not a bridge")
    return side


def _bridge_cuts(vertices: Iterable[str], edges: Iterable[tuple[str, str]],
                 bridges: Iterable[tuple[str, str]]) -> tuple[VertexSet, ...]:
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from(edges)
    everything = frozenset(graph.nodes)
    cuts = set()
    for u, v in bridges:
        side = _side_of_edge(graph, u, v)
        cuts.add(side)
        cuts.add(everything - side)
    return tuple(sorted(cuts, key=lambda c: (len(c), sorted(c))))


def _relabel(mapping: Callable[[str], str], vertices: Iterable[str]) -> Automorphism:
    return {x: mapping(x) for x in sorted(vertices)}


# ------------------------------------ families ------------------------------------


def _two_sided_line(spec: FamilySpec) -> FamilyBundle:
    r = spec.radius
    name = lambda k: f"x:{k}"
    vertices = [name(k) for k in range(-r, r + 1)]
    edges = [(name(k), name(k + 1)) for k in range(-r, r)]
    graph = TruncatedGraph.build(vertices, edges, frontier=[name(-r), name(r)], center=name(0), radius=r)
    cuts = []
    for k in range(-r + 1, r):
        single = frozenset([name(k)])
        cuts += [single, graph.complement(single)]
    reflection = {name(k): name(-k) for k in range(-r, r + 1)}
    return FamilyBundle(
        spec=spec,
        graph=graph,
        canonical_cuts=tuple(cuts),
        tight_cuts=False,
        aut_generators=(reflection,),
        # translations move the frontier, so transitivity is shipped as a claim
        orbit_claims=(OrbitClaim(vertices=tuple(sorted(vertices)), radius=0),),
        # translations also fix both ends
        end_stabilizer_claim=OrbitClaim(vertices=tuple(sorted(vertices)), radius=0),
    )


def _cycle_with_pendant_pairs(spec: FamilySpec) -> FamilyBundle:
    if spec.radius < 2:
        raise InputError("cycle_with_pendant_pairs needs radius >= 2 to contain the pendant pairs")
    n = spec.n
    hub = lambda i: f"v{(i - 1) % n + 1}"
    vertices, edges, cuts = [], [], []
    for i in range(1, n + 1):
        vertices += [hub(i), f"{hub(i)}.a", f"{hub(i)}.b"]
        edges += [(hub(i), hub(i + 1)), (hub(i), f"{hub(i)}.a"), (hub(i), f"{hub(i)}.b")]
    graph = TruncatedGraph.build(vertices, edges)
    for i in range(1, n + 1):
        # the vertices of the pair of hanging edges at v_i, hub included
        pair = frozenset([hub(i), f"{hub(i)}.a", f"{hub(i)}.b"])
        cuts += [pair, graph.complement(pair)]

    def shift(step: Callable[[int], int]) -> Callable[[str], str]:
        def move(x: str) -> str:
            base, _, leaf = x.partition(".")
            moved = hub(step(int(base[1:])))
            return f"{moved}.{leaf}" if leaf else moved
        return move

    rotation = _relabel(shift(lambda i: i + 1), vertices)
    reflection = _relabel(shift(lambda i: 2 - i), vertices)
    swap = {x: x for x in vertices} | {"v1.a": "v1.b", "v1.b": "v1.a"}
    return FamilyBundle(
        spec=spec,
        graph=graph,
        canonical_cuts=tuple(cuts),
        aut_generators=(rotation, reflection, swap),
        orbit_claims=(OrbitClaim(vertices=tuple(hub(i) for i in range(1, n + 1)), radius=1),),
        ball_truncation=False,
    )


def _semi_regular_tree(spec: FamilySpec, p: int, q: int, triangles: bool = False) -> FamilyBundle:
    """Root in the block of degree p; with `triangles`, a triangle hangs at every vertex of that block."""
    r = spec.radius
    depth = {"r": 0}
    children: dict[str, list[str]] = {}
    queue = deque(["r"])
    while queue:
        x = queue.popleft()
        if depth[x] == r:
            children[x] = []
            continue
        if x == "r":
            count = p
        else:
            count = (p if depth[x] % 2 == 0 else q) - 1
        children[x] = [f"{x}.{i}" for i in range(count)]
        for c in children[x]:
            depth[c] = depth[x] + 1
            queue.append(c)

    tree_edges = [(x, c) for x, cs in children.items() for c in cs]
    vertices = list(depth)
    edges = list(tree_edges)
    if triangles:
        for x, dx in list(depth.items()):
            if dx % 2 == 0 and dx + 1 <= r:
                t1, t2 = f"{x}:t1", f"{x}:t2"
                vertices += [t1, t2]
                edges += [(x, t1), (x, t2), (t1, t2)]
                depth[t1] = depth[t2] = dx + 1
    frontier = [x for x, dx in depth.items() if dx == r]
    graph = TruncatedGraph.build(vertices, edges, frontier=frontier, center="r", radius=r)

    generators = []
    for x, cs in sorted(children.items()):
        for a, b in zip(cs, cs[1:]):
            generators.append(_relabel(_swap_subtrees(a, b), vertices))
    if triangles:
        for x in sorted(v for v in depth if v.endswith(":t1")):
            base = x[:-3]
            generators.append({v: v for v in vertices} | {f"{base}:t1": f"{base}:t2", f"{base}:t2": f"{base}:t1"})

    block = tuple(sorted(x for x, dx in depth.items() if dx % 2 == 0 and ":" not in x))
    return FamilyBundle(
        spec=spec,
        graph=graph,
        canonical_cuts=_bridge_cuts(vertices, edges, tree_edges),
        aut_generators=tuple(generators),
        orbit_claims=(OrbitClaim(vertices=block, radius=1),),
        # translations along any line towards an end act transitively on the root's block
        end_stabilizer_claim=OrbitClaim(vertices=block, radius=1),
    )


def _swap_subtrees(a: str, b: str) -> Callable[[str], str]:
    def move(x: str) -> str:
        for src, dst in ((a, b), (b, a)):
            if x == src or x.startswith(src + ".") or x.startswith(src + ":"):
                return dst + x[len(src):]
        return x
    return move


def _grid2d(spec: FamilySpec) -> FamilyBundle:
    r = spec.radius
    name = lambda i, j: f"g:{i},{j}"
    points = [(i, j) for i in range(-r, r + 1) for j in range(-r, r + 1) if abs(i) + abs(j) <= r]
    present = set(points)
    edges = [(name(i, j), name(i + di, j + dj)) for i, j in points for di, dj in ((1, 0), (0, 1))
             if (i + di, j + dj) in present]
    frontier = [name(i, j) for i, j in points if abs(i) + abs(j) == r]
    graph = TruncatedGraph.build([name(*pt) for pt in points], edges, frontier=frontier,
                                 center=name(0, 0), radius=r)
    rotation = {name(i, j): name(-j, i) for i, j in points}
    reflection = {name(i, j): name(j, i) for i, j in points}
    return FamilyBundle(
        spec=spec,
        graph=graph,
        aut_generators=(rotation, reflection),
        orbit_claims=(OrbitClaim(vertices=tuple(sorted(graph.vertices)), radius=0),),
    )


def _broom(spec: FamilySpec) -> FamilyBundle:
    r = spec.radius
    vertices, edges = ["h"], []
    for j in range(1, r + 1):
        tail = [f"h.{j}.{i}" for i in range(1, j + 1)]
        vertices += tail
        edges += list(zip(["h"] + tail, tail))
    graph = TruncatedGraph.build(vertices, edges, frontier=[f"h.{r}.{r}"], center="h", radius=r)
    return FamilyBundle(spec=spec, graph=graph, ball_truncation=False)


def _mixed_end_fan(spec: FamilySpec) -> FamilyBundle:
    """Hub joined to every vertex of a horizontal ray b0, b1, ...; above b_k hangs a column
    of k vertices whose tops c_k.k form a second ray starting at b0."""
    r = spec.radius
    vertices = ["hub"] + [f"b{k}" for k in range(r + 1)]
    edges = [("hub", f"b{k}") for k in range(r + 1)] + [(f"b{k}", f"b{k + 1}") for k in range(r)]
    for k in range(1, r + 1):
        column = [f"c{k}.{j}" for j in range(1, k + 1)]
        vertices += column
        edges += list(zip([f"b{k}"] + column, column))
    edges += [("b0", "c1.1")] + [(f"c{k}.{k}", f"c{k + 1}.{k + 1}") for k in range(1, r)]
    graph = TruncatedGraph.build(vertices, edges, frontier=[f"b{r}", f"c{r}.{r}"], center="hub")
    return FamilyBundle(spec=spec, graph=graph, ball_truncation=False)


# ------------------------------- free products Z * Z^2 -------------------------------

Word = tuple[tuple[int, ...], ...]  # syllables (0, n) for a^n, (1, i, j) for b^i c^j


def _times(word: Word, gen: tuple[int, ...]) -> Word:
    """Right multiplication in normal form."""
    if word and word[-1][0] == gen[0]:
        if gen[0] == 0:
            merged = (0, word[-1][1] + gen[1])
            empty = merged[1] == 0
        else:
            merged = (1, word[-1][1] + gen[1], word[-1][2] + gen[2])
            empty = merged[1:] == (0, 0)
        return word[:-1] if empty else word[:-1] + (merged,)
    return word + (gen,)


def _word_name(word: Word) -> str:
    if not word:
        return "e"
    return ".".join(f"a{s[1]}" if s[0] == 0 else f"z{s[1]},{s[2]}" for s in word)


def _free_product(spec: FamilySpec, block: int | None) -> FamilyBundle:
    """Cayley graph of Z * Z^2.

    With `block=None` the generators are a, b, c. Otherwise all of Z^2 generates,
    so every Z^2 coset is a clique; the truncation keeps syllables b^i c^j with
    |i| + |j| <= block and words of syllable length at most the radius.
    """
    r = spec.radius
    a_moves = [(0, 1), (0, -1)]
    if block is None:
        z_moves = [(1, 1, 0), (1, -1, 0), (1, 0, 1), (1, 0, -1)]
    else:
        reach = 2 * block
        z_moves = [(1, i, j) for i in range(-reach, reach + 1) for j in range(-reach, reach + 1)
                   if 0 < abs(i) + abs(j) <= reach]

    def admissible(word: Word) -> bool:
        return block is None or all(s[0] == 0 or abs(s[1]) + abs(s[2]) <= block for s in word)

    dist: dict[Word, int] = {(): 0}
    queue = deque([()])
    while queue:
        w = queue.popleft()
        if dist[w] == r:
            continue
        for gen in a_moves + z_moves:
            v = _times(w, gen)
            if v not in dist and admissible(v):
                dist[v] = dist[w] + 1
                queue.append(v)

    names = {w: _word_name(w) for w in dist}
    edges, bridges = set(), []
    for w in dist:
        for gen in a_moves + z_moves:
            v = _times(w, gen)
            if v in dist:
                edge = tuple(sorted((names[w], names[v])))
                if edge not in edges:
                    edges.add(edge)
                    if gen[0] == 0:
                        bridges.append((names[w], names[v]))
    frontier = [names[w] for w, d in dist.items() if d == r]
    graph = TruncatedGraph.build(names.values(), edges, frontier=frontier, center="e", radius=r)

    def induced(f: Callable[[tuple[int, ...]], tuple[int, ...]]) -> Automorphism:
        return {names[w]: names[tuple(f(s) for s in w)] for w in dist}

    invert_a = induced(lambda s: (0, -s[1]) if s[0] == 0 else s)
    invert_b = induced(lambda s: s if s[0] == 0 else (1, -s[1], s[2]))
    swap_bc = induced(lambda s: s if s[0] == 0 else (1, s[2], s[1]))
    logger.debug("free product %s radius %d: %d vertices, %d a-edges", spec.name, r, len(dist), len(bridges))
    return FamilyBundle(
        spec=spec,
        graph=graph,
        canonical_cuts=_bridge_cuts(names.values(), edges, bridges),
        aut_generators=(invert_a, invert_b, swap_bc),
        orbit_claims=(OrbitClaim(vertices=tuple(sorted(graph.vertices)), radius=0),),
        ball_truncation=block is None,
    )


def z2_block_size(radius: int) -> int:
    """L1 radius of the Z^2 block kept at a given truncation radius; grows with the radius."""
    return max(1, radius - 1)


# ------------------------------------- entry -------------------------------------


def generate(spec: FamilySpec) -> FamilyBundle:
    """Build the truncation of `spec` with its canonical cuts, automorphisms and orbit claims."""
    try:
        match spec.name:
            case "two_sided_line":
                bundle = _two_sided_line(spec)
            case "cycle_with_pendant_pairs":
                bundle = _cycle_with_pendant_pairs(spec)
            case "biregular_tree":
                bundle = _semi_regular_tree(spec, spec.p, spec.q)
            case "regular_tree":
                bundle = _semi_regular_tree(spec, spec.d, spec.d)
            case "attached_biregular":
                bundle = _semi_regular_tree(spec, spec.p, spec.q, triangles=True)
            case "grid2d":
                bundle = _grid2d(spec)
            case "free_product_a_b_c":
                bundle = _free_product(spec, block=None)
            case "free_product_a_Z2block":
                bundle = _free_product(spec, block=z2_block_size(spec.radius))
            case "broom":
                bundle = _broom(spec)
            case "mixed_end_fan":
                bundle = _mixed_end_fan(spec)
        logger.info(
            "Generated %s at radius %d: %d vertices, %d edges, %d canonical cuts",
            spec.label, spec.radius, len(bundle.graph.vertices), len(bundle.graph.edges),
            len(bundle.canonical_cuts),
        )
        return bundle
    except InputError:
        raise
    except Exception:
        logger.exception("Generation of %s failed", spec.label)
        raise


def generate_family(text: str, radius: int) -> FamilyBundle:
    return generate(FamilySpec.parse(text, radius))


if __name__ == "__main__":
    pass
