"""Cross-radius growth verdicts and the progress-bar sweep used by every multi-radius analysis."""

import sys
from collections.abc import Callable, Iterator, Sequence
from typing import Literal, TypeVar

from tqdm import tqdm

from src.config import settings
from src.errors import InputError

T = TypeVar("T")

Trend = Literal["bounded", "unbounded-trend"]


def check_radii(radii: Sequence[int], minimum: int | None = None) -> list[int]:
    """Strictly increasing, non-negative, at least `minimum` entries (TREND_MIN_RADII by default)."""
    radii = list(radii)
    needed = settings.TREND_MIN_RADII if minimum is None else minimum
    if len(radii) < needed:
        raise InputError(f"at least {needed} radii are needed, got {radii}")
    if any(r < 0 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise InputError(f"radii must be non-negative and strictly increasing, got {radii}")
    return radii


def parse_radii(text: str) -> list[int]:
    """`A..B` or a comma list."""
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            return list(range(int(low), int(high) + 1))
        return [int(v) for v in text.split(",") if v]
    except ValueError as exc:
        raise InputError(f"cannot read radii from {text!r}") from exc


def trend_verdict(values: Sequence[int | float]) -> Trend:
    """Unbounded when each of the last TREND_MIN_RADII values exceeds its predecessor by TREND_STEP."""
    tail = list(values)[-settings.TREND_MIN_RADII:]
    if len(tail) < settings.TREND_MIN_RADII:
        return "bounded"
    growing = all(b - a >= settings.TREND_STEP for a, b in zip(tail, tail[1:]))
    return "unbounded-trend" if growing else "bounded"


def sweep(radii: Sequence[int], step: Callable[[int], T], desc: str) -> Iterator[tuple[int, T]]:
    """Run `step` once per radius in order, with a progress bar on interactive terminals."""
    with tqdm(total=len(radii), desc=desc, dynamic_ncols=True, disable=not sys.stderr.isatty()) as pbar:
        for r in radii:
            yield r, step(r)
            pbar.update(1)


if __name__ == "__main__":
    pass
