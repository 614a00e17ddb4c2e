"""
Almost transitivity restricted to an end stabilizer, and agreement of the
quasi-isometry, ramification and transitivity criteria on one family.
"""

from collections.abc import Iterable, Sequence
from typing import Literal

from pydantic import BaseModel, ConfigDict

from src.analysis.ends import DEFAULT_BALL_RADII, EndImage, EndShadow, ShadowContext, classify_ends, phi_end
from src.analysis.qi import covering_ball_check, qi_verdict_trend
from src.analysis.ramification import uniform_ramification
from src.config import settings
from src.errors import InputError
from src.graph.automorphisms import Permutation, apply, require_automorphism
from src.graph.core import multi_source_distances, set_diameter
from src.graph.generators import FamilySpec, OrbitClaim, generate
from src.tree.cut_tree import tree_from_cuts
from src.logger.logg import logs

logger = logs("qi.log")


class CutNeighbourhood(BaseModel):
    model_config = ConfigDict(frozen=True)

    cut: tuple[str, ...]
    size: int
    diameter: int


class EndStabReport(BaseModel):
    """Covering ball under the stabilizer of one shadow, with the sets M_f and the separation constant n0."""

    model_config = ConfigDict(frozen=True)

    shadow: str
    generators: int
    covering_ball: bool
    r0: int
    neighbourhoods: tuple[CutNeighbourhood, ...]
    n0: int
    separated: bool | None
    unseparated: tuple[str, ...] = ()
    image: EndImage
    diagnostic: str | None = None
    verdict: Literal["qi-predicted", "inconclusive", "diagnostic"]


def fixes_shadow(a: Permutation, shadow: EndShadow) -> bool:
    levels = [lvl.members for lvl in shadow.chain] or [shadow.members]
    return all(apply(a, members) == members for members in levels)


def end_stab_check(
    context: ShadowContext,
    shadow: EndShadow,
    auts: Iterable[Permutation] | None = None,
    claim: OrbitClaim | None = None,
) -> EndStabReport:
    """Almost transitivity of the stabilizer of one end shadow, for a family with canonical cuts.

    `auts` must fix every chain element; by default the family generators that
    do are used. `claim` is a symbolic orbit claim for the stabilizer (e.g.
    translations of the line) and defaults to the one the family ships; without
    either, the orbit of the center under `auts` is used.
    """
    bundle = context.main
    g = bundle.graph
    if not bundle.canonical_cuts:
        raise InputError(f"family {bundle.spec.label} ships no canonical cuts")
    if auts is None:
        auts = [a for a in bundle.aut_generators if fixes_shadow(a, shadow)]
    auts = list(auts)
    for a in auts:
        require_automorphism(g, a)
        if not fixes_shadow(a, shadow):
            raise InputError(f"automorphism does not fix shadow {shadow.ident}")

    if claim is None:
        claim = bundle.end_stabilizer_claim
    if claim is not None:
        cover = covering_ball_check(g, claim)
        found, r0 = cover.covered, claim.radius
    else:
        orbit = {g.center} | {a[g.center] for a in auts}
        cover = covering_ball_check(g, OrbitClaim(vertices=tuple(sorted(orbit)), radius=0))
        r0 = cover.distance
        found = g.radius is not None and r0 < g.radius

    tree_set, tree, _ = tree_from_cuts(g, bundle.canonical_cuts)
    target = g.mask(shadow.members)
    containing = [i for i, m in enumerate(tree_set.masks) if target & ~m == 0]

    neighbourhoods = []
    for i in containing:
        side = tree_set.cuts[i].side
        rest = g.complement(side)
        dist = multi_source_distances(g, side)
        near = [x for x in rest if dist[x] <= 4 * r0]
        diameter = set_diameter(g, near) if near else 0
        neighbourhoods.append(CutNeighbourhood(cut=tuple(sorted(side)), size=len(near), diameter=diameter))
    n0 = 2 * max((n.diameter for n in neighbourhoods), default=0)

    separated, unseparated = None, ()
    if shadow.chain:
        masks = tree_set.masks
        end_cuts = [
            i for i in containing
            if any(j != i and (masks[i] & ~masks[j] == 0 or masks[j] & ~masks[i] == 0) for j in containing)
        ]
        outer = sorted(shadow.chain[0].members - shadow.members - g.frontier)
        inner = sorted(shadow.members)
        separated = True
        for x in outer[: settings.PAIR_SAMPLE_LIMIT]:
            dist = g.bfs(x)
            bit_x = 1 << g.index(x)
            for y in inner:
                if dist[y] <= n0:
                    continue
                bit_y = 1 << g.index(y)
                if not any(masks[i] & bit_y and not masks[i] & bit_x for i in end_cuts):
                    separated, unseparated = False, (x, y)
                    break
            if not separated:
                break

    image = phi_end(tree_set, tree, shadow)
    diagnostic = None
    if separated is False:
        diagnostic = (
            f"(Q2) fails by region growth: no nested cut containing the end separates {unseparated[0]} "
            f"from {unseparated[1]} beyond n0 = {n0}"
        )
    elif image.kind == "vertex" and shadow.source == "ray":
        diagnostic = f"(Q2) fails by region growth: Φ sends the end to tree vertex {image.vertex}"

    if diagnostic is not None:
        verdict: Literal["qi-predicted", "inconclusive", "diagnostic"] = "diagnostic"
    elif found:
        verdict = "qi-predicted"
    else:
        verdict = "inconclusive"
    logger.info("end stabilizer check on %s: %s", shadow.ident, verdict)
    return EndStabReport(
        shadow=shadow.ident,
        generators=len(auts),
        covering_ball=found,
        r0=r0,
        neighbourhoods=tuple(neighbourhoods),
        n0=n0,
        separated=separated,
        unseparated=unseparated,
        image=image,
        diagnostic=diagnostic,
        verdict=verdict,
    )


class Theorem4Report(BaseModel):
    """Truncation proxies of three equivalent statements; `consistent` when they agree."""

    model_config = ConfigDict(frozen=True)

    family: str
    applicable: bool
    qi: bool | None = None
    ramified_p1: bool | None = None
    transitive_p1: bool | None = None
    consistent: bool | None = None


def theorem4_consistency(
    spec: FamilySpec, radii: Sequence[int], ball_radii: Sequence[int] = DEFAULT_BALL_RADII
) -> Theorem4Report:
    """qi trend ⟺ uniform ramification with (P1) ⟺ a passing covering-ball claim with (P1)."""
    bundle = generate(spec.at(max(radii)))
    if not bundle.canonical_cuts or not bundle.graph.frontier:
        logger.info("%s: finite or without canonical cuts, skipped", spec.label)
        return Theorem4Report(family=spec.label, applicable=False)

    qi = qi_verdict_trend(spec, radii).verdict == "qi"
    p1 = bool(classify_ends(spec, ball_radii).p1)
    ramified = uniform_ramification(spec, radii).verdict
    transitive = any(covering_ball_check(bundle.graph, c).covered for c in bundle.orbit_claims)
    report = Theorem4Report(
        family=spec.label,
        applicable=True,
        qi=qi,
        ramified_p1=ramified and p1,
        transitive_p1=transitive and p1,
        consistent=qi == (ramified and p1) == (transitive and p1),
    )
    logger.info("%s: theorem 4 proxies %s", spec.label, report.model_dump(exclude={"family", "applicable"}))
    return report


if __name__ == "__main__":
    pass
