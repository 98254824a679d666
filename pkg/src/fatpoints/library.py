"""The in-repo fixture library: arrangements and point schemes."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from .schemes import (FatPointScheme, LineArrangement, load_fixture,
                      random_points, singular_locus)

FIXTURE_DIR = Path(__file__).with_name("fixtures")

ARRANGEMENTS = ("generic3", "generic4", "generic5", "xyxmyz", "dual_hesse")
GENERIC = ("generic3", "generic4", "generic5")
POINT_FILES = ("triangle",)
RANDOM_SIZES = (5, 6, 10)
RANDOM_SEED = 1
RANDOM_HEIGHT = 10

__all__ = [
    "FIXTURE_DIR",
    "ARRANGEMENTS",
    "GENERIC",
    "fixture_path",
    "load",
    "arrangement",
    "random_fixture",
    "point_fixtures",
    "arrangement_fixtures",
]


def fixture_path(name_or_path) -> Path:
    """Resolve a path, falling back to the bundled fixture of that name."""
    p = Path(name_or_path)
    if p.exists():
        return p
    for cand in (FIXTURE_DIR / p.name, FIXTURE_DIR / f"{p.name}.arr", FIXTURE_DIR / f"{p.name}.pts"):
        if cand.exists():
            return cand
    raise FileNotFoundError(f"no fixture {name_or_path!s}")


@lru_cache(maxsize=None)
def load(name: str):
    return load_fixture(fixture_path(name))


def arrangement(name: str) -> LineArrangement:
    obj = load(name)
    if not isinstance(obj, LineArrangement):
        raise TypeError(f"{name} is not an arrangement")
    return obj


def random_fixture(s: int, seed: int = RANDOM_SEED) -> FatPointScheme:
    """Seeded random planar points; a heuristic proxy for general points."""
    S = random_points(s, 2, seed, height=RANDOM_HEIGHT)
    return FatPointScheme(S.points, S.multiplicities, name=f"random{s}")


def arrangement_fixtures() -> list:
    return [arrangement(n) for n in ARRANGEMENTS]


def point_fixtures(seed: int = RANDOM_SEED, include_arrangements: bool = True) -> list:
    """Reduced point schemes: the coordinate triangle, seeded random points
    and (optionally) the supports of the arrangements' singular loci."""
    out = [load(n) for n in POINT_FILES]
    out += [random_fixture(s, seed) for s in RANDOM_SIZES]
    if include_arrangements:
        for A in arrangement_fixtures():
            S = singular_locus(A).support()
            out.append(FatPointScheme(S.points, S.multiplicities, name=f"{A.name}.points"))
    return out
