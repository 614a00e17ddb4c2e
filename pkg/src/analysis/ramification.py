"""Star balls, uniform ramification and what witnesses a large diameter."""

from collections.abc import Sequence
from typing import Literal

import networkx as nx
from pydantic import BaseModel, ConfigDict

from src.analysis.ends import DEFAULT_BALL_RADII, end_shadows
from src.analysis.trend import Trend, check_radii, sweep, trend_verdict
from src.errors import InputError
from src.graph.core import ball, components, set_diameter
from src.graph.generators import FamilySpec, generate
from src.logger.logg import logs

logger = logs("ramification.log")

DEFAULT_CANDIDATES = (0, 1)


class StarBallRow(BaseModel):
    """Largest diameter of a complement component that misses the frontier, per truncation radius."""

    model_config = ConfigDict(frozen=True)

    ball_radius: int
    diameters: tuple[int, ...]
    verdict: Literal["star-ball-trend", "no-star-ball"]


class StarBallScan(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: str
    radii: tuple[int, ...]
    rows: tuple[StarBallRow, ...]
    monotone: bool
    frontier_components: bool

    @property
    def star_ball(self) -> bool:
        return any(row.verdict == "star-ball-trend" for row in self.rows)


def star_ball_scan(
    spec: FamilySpec, radii: Sequence[int], candidates: Sequence[int] = DEFAULT_CANDIDATES
) -> StarBallScan:
    """Track sup diam C₀(B(center, m)) across truncation radii for each candidate m.

    `monotone` checks that a larger ball around the same center keeps a star-ball
    verdict once a smaller one has it. `frontier_components` checks that every
    ball complement keeps at least one component reaching the frontier.
    """
    radii = check_radii(radii)
    candidates = [m for m in candidates if m < min(radii)]
    if not candidates:
        raise InputError("every candidate ball radius reaches the smallest truncation radius")

    def measure(r: int) -> tuple[dict[int, int], bool]:
        g = generate(spec.at(r)).graph
        if g.center is None:
            raise InputError(f"family {spec.label} has no center")
        row, reaching = {}, True
        for m in candidates:
            pieces = components(g, g.vertices - ball(g, g.center, m))
            bounded = [c.members for c in pieces if not c.touches_frontier]
            row[m] = max((set_diameter(g, c) for c in bounded), default=0)
            reaching = reaching and any(c.touches_frontier for c in pieces)
        return row, reaching

    table: dict[int, list[int]] = {m: [] for m in candidates}
    reaching_all = True
    for _, (row, reaching) in sweep(radii, measure, desc=f"Star balls {spec.label}"):
        for m, value in row.items():
            table[m].append(value)
        reaching_all = reaching_all and reaching

    rows = tuple(
        StarBallRow(
            ball_radius=m,
            diameters=tuple(table[m]),
            verdict="star-ball-trend" if trend_verdict(table[m]) == "unbounded-trend" else "no-star-ball",
        )
        for m in candidates
    )
    seen_star = False
    monotone = True
    for row in rows:
        if seen_star and row.verdict != "star-ball-trend":
            monotone = False
        seen_star = seen_star or row.verdict == "star-ball-trend"
    scan = StarBallScan(
        family=spec.label, radii=tuple(radii), rows=rows, monotone=monotone, frontier_components=reaching_all
    )
    logger.info("%s: star-ball verdicts %s", spec.label, [r.verdict for r in rows])
    return scan


class UniformRamification(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: str
    connected: bool
    diameters: tuple[int, ...]
    diameter_trend: Trend
    star_ball: bool
    verdict: bool


def uniform_ramification(spec: FamilySpec, radii: Sequence[int]) -> UniformRamification:
    """Connected, diameter growing with the radius and no star-ball trend."""
    radii = check_radii(radii)
    diameters = []
    connected = True
    for _, g in sweep(radii, lambda r: generate(spec.at(r)).graph, desc=f"Diameters {spec.label}"):
        connected = connected and nx.is_connected(g.nx)
        diameters.append(nx.diameter(g.nx))
    scan = star_ball_scan(spec, radii)
    trend = trend_verdict(diameters)
    return UniformRamification(
        family=spec.label,
        connected=connected,
        diameters=tuple(diameters),
        diameter_trend=trend,
        star_ball=scan.star_ball,
        verdict=connected and trend == "unbounded-trend" and not scan.star_ball,
    )


class DiameterWitness(BaseModel):
    """Why a family looks like it has infinite diameter, if it does."""

    model_config = ConfigDict(frozen=True)

    family: str
    kind: Literal["metric-ray", "star-ball", "none"]
    detail: str


def diameter_witness(
    spec: FamilySpec, radii: Sequence[int], ball_radii: Sequence[int] = DEFAULT_BALL_RADII
) -> DiameterWitness:
    """A shadow carrying a ray, else a star-ball trend, else nothing."""
    rays = [s.ident for s in end_shadows(spec, ball_radii) if s.carries_ray]
    if rays:
        return DiameterWitness(family=spec.label, kind="metric-ray", detail=f"shadows carrying rays: {rays}")
    scan = star_ball_scan(spec, radii)
    if scan.star_ball:
        balls = [row.ball_radius for row in scan.rows if row.verdict == "star-ball-trend"]
        return DiameterWitness(family=spec.label, kind="star-ball", detail=f"star-ball trend at ball radii {balls}")
    return DiameterWitness(family=spec.label, kind="none", detail="no growth witnessed")


if __name__ == "__main__":
    pass
