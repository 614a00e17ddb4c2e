"""Structure cuts: nontrivial tight cuts whose orbit under the automorphisms, complements included, is a tree set."""

from collections.abc import Iterable

from pydantic import BaseModel, ConfigDict

from src.cuts.engine import Cut, all_tight_cuts
from src.cuts.treeset import TreeSet, check_tree_set, orbit_closure
from src.graph.automorphisms import Permutation, require_automorphism
from src.graph.core import TruncatedGraph, VertexSet
from src.logger.logg import logs

logger = logs("cuts.log")


class StructureCut(BaseModel):
    model_config = ConfigDict(frozen=True)

    cut: Cut
    orbit_size: int
    orbit: tuple[VertexSet, ...]


def find_structure_cuts(
    g: TruncatedGraph, auts: Iterable[Permutation], k: int, budget: int | None = None
) -> list[StructureCut]:
    """One representative per orbit of nontrivial tight cuts with |δe| <= k whose orbit closure is a tree set."""
    auts = list(auts)
    for a in auts:
        require_automorphism(g, a)
    if not g.frontier:
        logger.info("No frontier: a finite graph has no nontrivial cuts")
        return []
    try:
        candidates = [c for c in all_tight_cuts(g, k, budget) if c.nontrivial_flag == "nontrivial"]
        seen: set[VertexSet] = set()
        found = []
        for cut in candidates:
            if cut.side in seen:
                continue
            orbit = orbit_closure(g, auts, cut.side, budget)
            seen.update(c.side for c in orbit)
            verdict = check_tree_set(g, [c.side for c in orbit], require_tight=True)
            if isinstance(verdict, TreeSet):
                found.append(StructureCut(cut=cut, orbit_size=len(orbit), orbit=tuple(c.side for c in orbit)))
            else:
                logger.debug("orbit of %s rejected: %s", sorted(cut.side), verdict.axiom)
        logger.info("%d structure cut orbits among %d nontrivial tight cuts (k=%d)", len(found), len(candidates), k)
        return found
    except Exception:
        logger.exception("Structure cut search failed")
        raise


def structure_tree_set(g: TruncatedGraph, found: Iterable[StructureCut]) -> TreeSet | None:
    """Union of the structure cut orbits, when it is itself a tree set."""
    sides = {side for s in found for side in s.orbit}
    if not sides:
        return None
    verdict = check_tree_set(g, sides, require_tight=True)
    return verdict if isinstance(verdict, TreeSet) else None


if __name__ == "__main__":
    pass
