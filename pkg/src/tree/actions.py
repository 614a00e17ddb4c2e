"""
Automorphisms acting on the cut tree: the induced action g^T, the operator
L: g -> g^T and the equivariance checks that come with φ.
"""

from collections.abc import Iterable

import networkx as nx
from pydantic import BaseModel, ConfigDict

from src.config import settings
from src.errors import BudgetError, InputError
from src.graph.automorphisms import (
    Permutation,
    apply,
    enumerate_automorphisms,
    require_automorphism,
    truncation_automorphisms,
)
from src.graph.core import TruncatedGraph
from src.tree.cut_tree import CutTree, StructureMapping
from src.logger.logg import logs

logger = logs("cut_tree.log")


class InducedAut(BaseModel):
    """g^T on every tree vertex; `extended` is set when φ misses part of VT."""

    model_config = ConfigDict(frozen=True)

    source: dict[str, str]
    action: dict[str, str]
    extended: bool
    formulas_hold: bool

    @property
    def is_identity(self) -> bool:
        return all(v == w for v, w in self.action.items())


def cut_permutation(tree: CutTree, a: Permutation) -> list[int] | None:
    """Image index of every cut, or None when a does not map E onto itself."""
    tree_set = tree.tree_set
    images = []
    for cut in tree_set.cuts:
        image = apply(a, cut.side)
        try:
            images.append(tree_set.index_of(image))
        except InputError:
            return None
    return images


def induced_aut(
    g: TruncatedGraph, tree: CutTree, mapping: StructureMapping, a: Permutation
) -> InducedAut:
    """g^T(t(e)) = t(g(e)), checked against the three φ-compatibility identities."""
    require_automorphism(g, a)
    images = cut_permutation(tree, a)
    if images is None:
        raise InputError("automorphism does not preserve the cut family")

    action: dict[str, str] = {}
    for i, j in enumerate(images):
        v, w = tree.t(i), tree.t(j)
        if action.setdefault(v, w) != w:
            raise InputError(f"automorphism splits the coterminality class of {v}")

    holds = True
    for x, v in mapping.phi.items():
        # g^T φ(x) = φ g(x)
        if mapping.phi.get(a[x]) != action[v]:
            holds = False
            break
    if holds:
        for v in mapping.image:
            # φ⁻¹ g^T(v) = g φ⁻¹(v)
            if frozenset(mapping.preimages[action[v]]) != apply(a, mapping.preimages[v]):
                holds = False
                break
    if holds:
        holds = all(tree.nx.has_edge(action[u], action[w]) for u, w in tree.nx.edges)

    return InducedAut(
        source=dict(a),
        action=action,
        extended=mapping.image != frozenset(tree.vertices),
        formulas_hold=holds,
    )


class LReport(BaseModel):
    """Counts for L: Aut(X) -> Aut(T) restricted to automorphisms that preserve E."""

    model_config = ConfigDict(frozen=True)

    aut_x: int
    aut_t: int
    preserving: int
    image: int
    injective: bool
    surjective: bool


def L_analysis(
    g: TruncatedGraph, tree: CutTree, mapping: StructureMapping, limit: int | None = None
) -> LReport:
    """Brute-force both groups and count the distinct induced actions."""
    limit = limit or settings.AUTOMORPHISM_BUDGET
    auts_x, done_x = truncation_automorphisms(g, limit)
    auts_t, done_t = enumerate_automorphisms(tree.nx, limit=limit)
    if not (done_x and done_t):
        raise BudgetError(
            "automorphism enumeration exceeded its budget; counts are lower bounds",
            budget="AUTOMORPHISM_BUDGET", limit=limit, partial={"aut_x": len(auts_x), "aut_t": len(auts_t)},
        )
    preserving = 0
    actions = set()
    for a in auts_x:
        if cut_permutation(tree, a) is None:
            continue
        preserving += 1
        induced = induced_aut(g, tree, mapping, a)
        actions.add(tuple(sorted(induced.action.items())))
    report = LReport(
        aut_x=len(auts_x),
        aut_t=len(auts_t),
        preserving=preserving,
        image=len(actions),
        injective=len(actions) == preserving,
        surjective=len(actions) == len(auts_t),
    )
    logger.info(
        "L: |Aut X| = %d, |Aut T| = %d, |image| = %d", report.aut_x, report.aut_t, report.image
    )
    return report


def tree_orbits(tree: CutTree, actions: Iterable[InducedAut]) -> list[list[str]]:
    """Orbits on VT of the group generated by the given actions."""
    moves = nx.Graph()
    moves.add_nodes_from(tree.vertices)
    for induced in actions:
        moves.add_edges_from(induced.action.items())
    orbits = (sorted(m, key=tree.vertices.index) for m in nx.connected_components(moves))
    return sorted(orbits, key=lambda m: tree.vertices.index(m[0]))


class LemmaReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    coterminal_pointing: bool
    same_neighbourhood: bool
    distance_equivariance: bool
    action_compatibility: bool
    orbit_preimage_diameters: bool
    orbit_region_diameters: bool
    orbits: list[list[str]]
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def lemma_checks(
    g: TruncatedGraph, tree: CutTree, mapping: StructureMapping, auts: Iterable[Permutation]
) -> LemmaReport:
    """Equivariance and coterminality facts that hold for every verified instance.

    Distance equivariance is checked from up to PAIR_SAMPLE_LIMIT source vertices.
    Diameter equalities are checked inside orbits of the supplied automorphisms.
    """
    violations = []
    coterminal = all(len({tree.t(i) for i in cuts}) == 1 for cuts in mapping.pointing.values())
    if not coterminal:
        violations.append("cuts pointing at one vertex have different termini")
    same = all(set(mapping.pointing[x]) == set(mapping.n_of_v[v]) for x, v in mapping.phi.items())
    if not same:
        violations.append("N(x) differs from N(φ(x))")

    preserving = [a for a in auts if cut_permutation(tree, a) is not None]
    actions = [induced_aut(g, tree, mapping, a) for a in preserving]
    compatible = all(act.formulas_hold for act in actions)
    if not compatible:
        violations.append("an induced action breaks g^T φ = φ g")

    domain = sorted(mapping.phi)
    sources = domain[: settings.PAIR_SAMPLE_LIMIT]
    equivariant = True
    for a in preserving:
        for x in sources:
            for y in domain:
                if a[x] not in mapping.phi or a[y] not in mapping.phi:
                    continue
                before = tree.distance(mapping.phi[x], mapping.phi[y])
                after = tree.distance(mapping.phi[a[x]], mapping.phi[a[y]])
                if before != after:
                    equivariant = False
                    break
            if not equivariant:
                break
        if not equivariant:
            violations.append("d_T(φx, φy) is not preserved by an automorphism")
            break

    orbits = tree_orbits(tree, actions)
    preimage_ok = region_ok = True
    for orbit in orbits:
        pre = {mapping.preimage_diameter(g, v) for v in orbit if mapping.preimages[v]}
        if len(pre) > 1:
            preimage_ok = False
        if len({mapping.regions[v].diameter for v in orbit}) > 1:
            region_ok = False
    if not preimage_ok:
        violations.append("preimage diameters differ inside an orbit")
    if not region_ok:
        violations.append("region diameters differ inside an orbit")

    return LemmaReport(
        coterminal_pointing=coterminal,
        same_neighbourhood=same,
        distance_equivariance=equivariant,
        action_compatibility=compatible,
        orbit_preimage_diameters=preimage_ok,
        orbit_region_diameters=region_ok,
        orbits=orbits,
        violations=violations,
    )


if __name__ == "__main__":
    pass
