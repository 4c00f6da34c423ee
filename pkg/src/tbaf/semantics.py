"""Timed coherence, defense, admissibility and extension enumeration.

All verifiers accept an optional ``window``: the check is then carried out
only for the time points inside it.  Every timed predicate here is decided
point by point, so checking a collection on each elementary region
separately gives the same verdict as checking it at once.  The oracle relies
on this to search region by region.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Mapping, Optional

from . import baf as classical
from .baf import CapExceeded
from .defeats import (
    Collection,
    basic_defeat_time,
    basic_defeaters,
    check_collection,
    defeat_time,
    regions_of,
    t_inclusion,
    t_intersection,
    windows,
)
from .framework import TBAF, snapshot_at
from .intervals import (
    EMPTY,
    FULL,
    IntervalSet,
    breakpoints,
    difference,
    intersect,
    is_subset,
    representative,
    union,
)

__all__ = [
    "SemanticsFlavor",
    "Caps",
    "ExtensionReport",
    "NotAnAttacker",
    "t_intersection",
    "t_inclusion",
    "is_conflict_free_t",
    "is_safe_t",
    "is_closed_t",
    "defense_profile",
    "acceptable_profile",
    "defends_all_t",
    "admissibility_t",
    "is_t_stable",
    "verify",
    "enumerate_extensions",
    "skeptical_acceptance",
]


class SemanticsFlavor(Enum):
    T_STABLE = "t-stable"
    TD_PREFERRED = "td-preferred"
    TS_PREFERRED = "ts-preferred"
    TC_PREFERRED = "tc-preferred"

    @property
    def classical(self) -> str:
        """Name of the matching classical semantics in ``baf.extensions``."""
        return {"t-stable": "stable", "td-preferred": "d", "ts-preferred": "s", "tc-preferred": "c"}[self.value]

    @property
    def admissibility(self) -> Optional[str]:
        return None if self is SemanticsFlavor.T_STABLE else "t" + self.classical


class NotAnAttacker(ValueError):
    pass


def _times(c: Collection, window: Optional[IntervalSet]) -> dict[str, IntervalSet]:
    if window is None:
        return dict(c.items())
    out = {}
    for a, t in c.items():
        t = intersect(t, window)
        if t:
            out[a] = t
    return out


def _av(f: TBAF, a: str, window: Optional[IntervalSet]) -> IntervalSet:
    return f.av(a) if window is None else intersect(f.av(a), window)


def is_conflict_free_t(f: TBAF, c: Collection, window: Optional[IntervalSet] = None) -> bool:
    T = _times(c, window)
    victims = windows(f).victims
    for a, ta in T.items():
        for b in victims.get(a, ()):
            tb = T.get(b)
            if tb is not None and defeat_time(f, ta, a, b, tb):
                return False
    return True


def _defeat_span(f: TBAF, T: Mapping[str, IntervalSet], x: str, x_times: IntervalSet) -> IntervalSet:
    """Times in ``x_times`` at which some collection member defeats ``x``."""
    out = EMPTY
    for b in windows(f).defeaters.get(x, ()):
        tb = T.get(b)
        if tb is not None:
            out = union(out, defeat_time(f, tb, b, x, x_times))
    return out


def _support_span(f: TBAF, T: Mapping[str, IntervalSet], x: str, window: Optional[IntervalSet]) -> IntervalSet:
    """Times at which ``x`` is in the collection or reached by support from it."""
    reach = windows(f).support_reach
    out = T.get(x, EMPTY)
    av_x = _av(f, x, window)
    for b, tb in T.items():
        w = reach.get((b, x))
        if w is not None:
            out = union(out, intersect(intersect(tb, av_x), w))
    return out


def is_safe_t(f: TBAF, c: Collection, window: Optional[IntervalSet] = None) -> bool:
    T = _times(c, window)
    for x in f.arguments:
        span = _defeat_span(f, T, x, _av(f, x, window))
        if span and intersect(span, _support_span(f, T, x, window)):
            return False
    return True


def is_closed_t(f: TBAF, c: Collection, window: Optional[IntervalSet] = None) -> bool:
    T = _times(c, window)
    for a, b in f.supports:
        ta = T.get(a)
        if ta is None:
            continue
        need = intersect(ta, f.av(b))
        if need and not is_subset(need, T.get(b, EMPTY)):
            return False
    return True


def defense_profile(f: TBAF, a: str, b: str, c: Collection) -> IntervalSet:
    """Times of Av(a) at which some member of ``c`` defeats the attacker ``b``."""
    if not basic_defeat_time(f, b, a):
        raise NotAnAttacker(f"{b} does not defeat {a}")
    return intersect(f.av(a), _defeat_span(f, dict(c.items()), b, f.av(b)))


def acceptable_profile(f: TBAF, a: str, c: Collection, window: Optional[IntervalSet] = None) -> IntervalSet:
    T = _times(c, window)
    av_a = _av(f, a, window)
    out = av_a
    for b in basic_defeaters(f, a):
        hit = defeat_time(f, f.av(b), b, a, av_a)
        if not hit:
            continue
        defended = intersect(av_a, _defeat_span(f, T, b, f.av(b)))
        out = intersect(out, union(difference(av_a, hit), defended))
        if not out:
            break
    return out


def defends_all_t(f: TBAF, c: Collection, window: Optional[IntervalSet] = None) -> bool:
    T = _times(c, window)
    return all(is_subset(t, acceptable_profile(f, a, c, window)) for a, t in T.items())


def admissibility_t(f: TBAF, c: Collection, flavor: str, window: Optional[IntervalSet] = None) -> bool:
    flavor = flavor.lower()
    if flavor not in ("td", "ts", "tc"):
        raise ValueError(f"unknown admissibility flavor {flavor!r}")
    check_collection(f, c)
    if flavor == "ts":
        coherent = is_safe_t(f, c, window)
    else:
        coherent = is_conflict_free_t(f, c, window)
        if coherent and flavor == "tc":
            coherent = is_closed_t(f, c, window)
    return coherent and defends_all_t(f, c, window)


def is_t_stable(f: TBAF, c: Collection, window: Optional[IntervalSet] = None) -> bool:
    check_collection(f, c)
    if not is_conflict_free_t(f, c, window):
        return False
    T = _times(c, window)
    for a in f.arguments:
        outside = difference(_av(f, a, window), T.get(a, EMPTY))
        if outside and not is_subset(outside, _defeat_span(f, T, a, outside)):
            return False
    return True


def verify(f: TBAF, c: Collection, flavor: SemanticsFlavor, window: Optional[IntervalSet] = None) -> bool:
    """Direct timed check matching ``flavor`` (admissibility for preferred flavors)."""
    if flavor is SemanticsFlavor.T_STABLE:
        return is_t_stable(f, c, window)
    return admissibility_t(f, c, flavor.admissibility, window)


# ---------------------------------------------------------------- enumeration


@dataclass(frozen=True)
class Caps:
    arguments: int = 20
    breakpoints: int = 64
    candidates: int = 10_000

    @classmethod
    def from_env(cls, var: str = "TBAF_CAPS") -> "Caps":
        raw = os.environ.get(var)
        if not raw:
            return cls()
        parts = [p.strip() for p in raw.split(",")]
        if len(parts) != 3:
            raise ValueError(f"{var} must be 'args,breakpoints,candidates'")
        return cls(*(int(p) for p in parts))


@dataclass
class ExtensionReport:
    flavor: SemanticsFlavor
    extensions: list[Collection]
    skeptical: dict[str, IntervalSet]
    candidates: int = 0
    rejected: int = 0
    regions: list[IntervalSet] = field(default_factory=list)


def _skeptical(f: TBAF, exts: list[Collection]) -> dict[str, IntervalSet]:
    out = {}
    for a in f.arguments:
        acc = None
        for e in exts:
            t = e.times(a)
            acc = t if acc is None else intersect(acc, t)
            if not acc:
                break
        out[a] = acc if acc else EMPTY
    return out


def _assemble(f: TBAF, regions: list[IntervalSet], choice: tuple[frozenset, ...]) -> Collection:
    times: dict[str, IntervalSet] = {}
    for region, members in zip(regions, choice):
        for a in members:
            times[a] = union(times.get(a, EMPTY), region)
    return Collection.lenient(times)


def _maximal_by_region(choices: list[tuple[frozenset, ...]]) -> list[int]:
    """Indices of choices not strictly below another one, region by region."""
    keep = []
    for i, ci in enumerate(choices):
        dominated = False
        for j, cj in enumerate(choices):
            if i != j and ci != cj and all(x <= y for x, y in zip(ci, cj)):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return keep


def enumerate_extensions(
    f: TBAF,
    flavor: SemanticsFlavor | str,
    caps: Optional[Caps] = None,
) -> ExtensionReport:
    """Region-wise classical solving, stitching, direct verification, maximality.

    Extensions are quantized: every profile is a union of elementary regions.
    """
    flavor = SemanticsFlavor(flavor)
    caps = caps or Caps.from_env()
    if len(f.arguments) > caps.arguments:
        raise CapExceeded("arguments", caps.arguments, len(f.arguments))
    points = breakpoints(f.availability.values())
    if len(points) > caps.breakpoints:
        raise CapExceeded("breakpoints", caps.breakpoints, len(points))
    regions = regions_of(f)
    options = []
    total = 1
    for region in regions:
        snap = snapshot_at(f, representative(region))
        opts = classical.extensions(snap, flavor.classical, caps.arguments)
        options.append(opts)
        total *= len(opts)
        if total > caps.candidates:
            raise CapExceeded("candidates", caps.candidates, total)
    choices = list(product(*options)) if total else []
    verified = []
    rejected = 0
    for choice in choices:
        c = _assemble(f, regions, choice)
        if verify(f, c, flavor):
            verified.append((choice, c))
        else:
            rejected += 1
    if flavor is not SemanticsFlavor.T_STABLE:
        keep = _maximal_by_region([ch for ch, _ in verified])
        verified = [verified[i] for i in keep]
    exts = sorted({c for _, c in verified}, key=Collection.sort_key)
    return ExtensionReport(flavor, exts, _skeptical(f, exts), len(choices), rejected, regions)


def skeptical_acceptance(report: ExtensionReport, a: str) -> IntervalSet:
    return report.skeptical.get(a, EMPTY)
