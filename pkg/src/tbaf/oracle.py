"""Brute-force ground truth and property harness.

The oracle searches the quantized collection space directly: a candidate's
profile times are unions of elementary regions.  Nothing here goes through
the classical solver except the Theorem 1 check, whose whole point is to
compare against it.

Two search modes are available.  The joint mode enumerates every quantized
collection and filters with the timed verifiers over the whole line; the
factored mode searches each region on its own (sound because every timed
predicate is decided pointwise) and takes the cross product of per-region
answers.  Both are exhaustive; tests check that they agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional

from . import baf as classical
from .baf import CapExceeded
from .defeats import (
    Collection,
    basic_defeat_time,
    collection_from_dict,
    collection_to_dict,
    regions_of,
    windows,
)
from .framework import BAF, TBAF, from_dict, snapshot_at, to_dict
from .intervals import (
    EMPTY,
    Bound,
    Interval,
    IntervalSet,
    breakpoints,
    contains_point,
    format_number,
    intersect,
    is_subset,
    representative,
    union,
    union_all,
)
from .semantics import (
    SemanticsFlavor,
    enumerate_extensions,
    is_closed_t,
    is_conflict_free_t,
    is_safe_t,
    defends_all_t,
    is_t_stable,
    verify,
)

ORACLE_MAX_ARGUMENTS = 6
ORACLE_MAX_BREAKPOINTS = 8
JOINT_LIMIT = 512


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    max_arguments: int = 5
    max_intervals_per_argument: int = 3
    attack_density: float = 0.3
    support_density: float = 0.3
    endpoint_universe: tuple[int, int] = (0, 10)


def _random_times(rng: random.Random, cfg: GeneratorConfig) -> IntervalSet:
    lo, hi = cfg.endpoint_universe
    parts = []
    for _ in range(rng.randint(1, cfg.max_intervals_per_argument)):
        a = rng.randint(lo, hi)
        b = rng.randint(a, hi)
        if a == b:
            parts.append(Interval(Bound(a, True), Bound(b, True)))
        else:
            parts.append(Interval(Bound(a, rng.random() < 0.5), Bound(b, rng.random() < 0.5)))
    return IntervalSet(parts)


def random_tbaf(cfg: GeneratorConfig) -> TBAF:
    """Deterministic random T-BAF; relation draws are disjoint per ordered pair."""
    rng = random.Random(cfg.seed)
    n = rng.randint(1, cfg.max_arguments)
    names = [chr(ord("A") + i) if n <= 26 else f"a{i}" for i in range(n)]
    av = {a: _random_times(rng, cfg) for a in names}
    attacks, supports = set(), set()
    for x in names:
        for y in names:
            r = rng.random()
            if r < cfg.attack_density:
                attacks.add((x, y))
            elif r < cfg.attack_density + cfg.support_density and x != y:
                supports.add((x, y))
    return TBAF(BAF(frozenset(names), attacks, supports), av)


def random_baf(seed: int, max_arguments: int = 6, attack_density: float = 0.25, support_density: float = 0.25) -> BAF:
    """Untimed counterpart of ``random_tbaf`` (at least one argument)."""
    rng = random.Random(seed)
    names = [chr(ord("A") + i) for i in range(rng.randint(1, max_arguments))]
    attacks, supports = set(), set()
    for x in names:
        for y in names:
            r = rng.random()
            if r < attack_density:
                attacks.add((x, y))
            elif r < attack_density + support_density and x != y:
                supports.add((x, y))
    return BAF(frozenset(names), attacks, supports)


def corpus(count: int = 200, base_seed: int = 0, **kw) -> list[TBAF]:
    return [random_tbaf(GeneratorConfig(seed=base_seed + k, **kw)) for k in range(count)]


def within_oracle_caps(f: TBAF) -> bool:
    return (
        len(f.arguments) <= ORACLE_MAX_ARGUMENTS
        and len(breakpoints(f.availability.values())) <= ORACLE_MAX_BREAKPOINTS
    )


def _check_caps(f: TBAF):
    if len(f.arguments) > ORACLE_MAX_ARGUMENTS:
        raise CapExceeded("oracle arguments", ORACLE_MAX_ARGUMENTS, len(f.arguments))
    nb = len(breakpoints(f.availability.values()))
    if nb > ORACLE_MAX_BREAKPOINTS:
        raise CapExceeded("oracle breakpoints", ORACLE_MAX_BREAKPOINTS, nb)


def _available_regions(f: TBAF, regions) -> dict[str, list[int]]:
    return {
        a: [k for k, r in enumerate(regions) if is_subset(r, f.av(a))]
        for a in f.arguments
    }


def _subsets(items):
    for k in range(len(items) + 1):
        yield from combinations(items, k)


def joint_space_size(f: TBAF) -> int:
    regions = regions_of(f)
    size = 1
    for ks in _available_regions(f, regions).values():
        size *= 2 ** len(ks)
    return size


def _strictly_below(c: Collection, d: Collection) -> bool:
    return c != d and c <= d


def brute_force_joint(f: TBAF, flavor: SemanticsFlavor) -> set[Collection]:
    """Every quantized collection, filtered with whole-line verifiers."""
    _check_caps(f)
    flavor = SemanticsFlavor(flavor)
    regions = regions_of(f)
    avail = _available_regions(f, regions)
    per_arg = []
    for a in f.arguments:
        per_arg.append([union_all(regions[k] for k in ks) for ks in _subsets(avail[a])])
    good = []
    for combo in product(*per_arg):
        c = Collection.lenient(dict(zip(f.arguments, combo)))
        if verify(f, c, flavor):
            good.append(c)
    if flavor is not SemanticsFlavor.T_STABLE:
        good = [c for c in good if not any(_strictly_below(c, d) for d in good)]
    return set(good)


def _region_answers(f: TBAF, region: IntervalSet, flavor: SemanticsFlavor) -> list[frozenset]:
    live = [a for a in f.arguments if is_subset(region, f.av(a))]
    ok = []
    for s in _subsets(live):
        c = Collection({a: region for a in s})
        if verify(f, c, flavor, window=region):
            ok.append(frozenset(s))
    if flavor is not SemanticsFlavor.T_STABLE:
        ok = [s for s in ok if not any(s < t for t in ok)]
    return ok


def brute_force_factored(f: TBAF, flavor: SemanticsFlavor, limit: int = 10_000) -> set[Collection]:
    _check_caps(f)
    flavor = SemanticsFlavor(flavor)
    regions = regions_of(f)
    answers = [_region_answers(f, r, flavor) for r in regions]
    total = 1
    for a in answers:
        total *= len(a)
    if total > limit:
        raise CapExceeded("oracle candidates", limit, total)
    out = set()
    for choice in product(*answers):
        times: dict[str, IntervalSet] = {}
        for region, members in zip(regions, choice):
            for a in members:
                times[a] = union(times.get(a, EMPTY), region)
        out.add(Collection.lenient(times))
    return out


def brute_force_timed_extensions(f: TBAF, flavor: SemanticsFlavor, method: str = "auto") -> set[Collection]:
    if method == "auto":
        _check_caps(f)
        method = "joint" if joint_space_size(f) <= JOINT_LIMIT else "factored"
    if method == "joint":
        return brute_force_joint(f, flavor)
    if method == "factored":
        return brute_force_factored(f, flavor)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------- verdicts


@dataclass
class PropertyVerdict:
    name: str
    cases: int = 0
    counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def __str__(self) -> str:
        state = "pass" if self.passed else "FAIL"
        return f"{self.name}: {state} ({self.cases} cases)"


def counterexample(f: TBAF, c: Optional[Collection], prop: str, **witness) -> dict:
    doc = {"property": prop, "framework": to_dict(f)}
    if c is not None:
        doc["collection"] = collection_to_dict(c)
    doc["witness"] = {k: v if isinstance(v, (str, int, list)) else str(v) for k, v in witness.items()}
    return doc


def sample_points(f: TBAF) -> list:
    """All breakpoints plus a representative of every elementary region."""
    pts = set(breakpoints(f.availability.values()))
    pts.update(representative(r) for r in regions_of(f))
    return sorted(pts)


def projection(c: Collection, alpha) -> frozenset:
    return frozenset(a for a, t in c.items() if contains_point(t, alpha))


def check_theorem1(
    f: TBAF,
    flavor: SemanticsFlavor,
    extensions: Optional[list[Collection]] = None,
) -> PropertyVerdict:
    """Project each timed extension at every sample point and look it up among
    the classical extensions of the snapshot there."""
    flavor = SemanticsFlavor(flavor)
    if extensions is None:
        extensions = enumerate_extensions(f, flavor).extensions
    verdict = PropertyVerdict(f"theorem1[{flavor.value}]")
    for alpha in sample_points(f):
        snap = snapshot_at(f, alpha)
        expected = set(classical.extensions(snap, flavor.classical))
        for c in extensions:
            verdict.cases += 1
            proj = projection(c, alpha)
            if proj not in expected:
                verdict.counterexample = counterexample(
                    f, c, verdict.name, alpha=format_number(alpha), projection=sorted(proj)
                )
                return verdict
    return verdict


class _RegionFlags:
    """Cached per-region verdicts of the timed predicates for every subset."""

    def __init__(self, f: TBAF, region: IntervalSet):
        self.f = f
        self.region = region
        self.live = tuple(a for a in f.arguments if is_subset(region, f.av(a)))
        self._cache: dict[frozenset, dict[str, bool]] = {}

    def collection(self, s) -> Collection:
        return Collection({a: self.region for a in s})

    def flags(self, s: frozenset) -> dict[str, bool]:
        got = self._cache.get(s)
        if got is None:
            f, c, w = self.f, self.collection(s), self.region
            got = {
                "cf": is_conflict_free_t(f, c, w),
                "safe": is_safe_t(f, c, w),
                "closed": is_closed_t(f, c, w),
                "defends": defends_all_t(f, c, w),
            }
            self._cache[s] = got
        return got

    def subsets(self):
        return (frozenset(s) for s in _subsets(self.live))


def check_propositions(f: TBAF, flavors_for_prop4=tuple(SemanticsFlavor)) -> list[PropertyVerdict]:
    p1a = PropertyVerdict("prop1a: safe => every t-included collection conflict-free")
    p1b = PropertyVerdict("prop1b: conflict-free and closed => safe")
    inc_sd = PropertyVerdict("class inclusion: ts-admissible => td-admissible")
    inc_cs = PropertyVerdict("class inclusion: tc-admissible => ts-admissible")
    p3 = PropertyVerdict("prop3: closed ts-preferred => tc-preferred")
    p4 = PropertyVerdict("prop4 restricted: skeptical sets disjoint on defeat spans")
    out = [p1a, p1b, inc_sd, inc_cs, p3, p4]

    def fail(v, s, rf, **w):
        if v.counterexample is None:
            v.counterexample = counterexample(f, rf.collection(s), v.name, region=rf.region, **w)

    for region in regions_of(f):
        rf = _RegionFlags(f, region)
        for s in rf.subsets():
            fl = rf.flags(s)
            if fl["safe"]:
                for k in range(len(s) + 1):
                    for sub in combinations(sorted(s), k):
                        p1a.cases += 1
                        if not rf.flags(frozenset(sub))["cf"]:
                            fail(p1a, s, rf, subcollection=sorted(sub))
            p1b.cases += 1
            if fl["cf"] and fl["closed"] and not fl["safe"]:
                fail(p1b, s, rf)
            ts = fl["safe"] and fl["defends"]
            td = fl["cf"] and fl["defends"]
            tc = fl["cf"] and fl["closed"] and fl["defends"]
            inc_sd.cases += 1
            inc_cs.cases += 1
            if ts and not td:
                fail(inc_sd, s, rf)
            if tc and not ts:
                fail(inc_cs, s, rf)

    reports = {}
    for flavor in set(flavors_for_prop4) | {SemanticsFlavor.TS_PREFERRED, SemanticsFlavor.TC_PREFERRED}:
        try:
            reports[flavor] = enumerate_extensions(f, flavor)
        except CapExceeded:
            reports[flavor] = None
    ts_rep, tc_rep = reports[SemanticsFlavor.TS_PREFERRED], reports[SemanticsFlavor.TC_PREFERRED]
    if ts_rep is not None and tc_rep is not None:
        tc_set = set(tc_rep.extensions)
        for e in ts_rep.extensions:
            p3.cases += 1
            if is_closed_t(f, e) and e not in tc_set and p3.counterexample is None:
                p3.counterexample = counterexample(f, e, p3.name)

    for flavor in flavors_for_prop4:
        rep = reports.get(flavor)
        if rep is None:
            continue
        sk = rep.skeptical
        for (b, a) in windows(f).combined:
            span = basic_defeat_time(f, b, a)
            if not span:
                continue
            p4.cases += 1
            clash = intersect(intersect(sk[a], sk[b]), span)
            if clash and p4.counterexample is None:
                p4.counterexample = counterexample(
                    f, None, p4.name, flavor=flavor.value, source=b, target=a, overlap=clash
                )
    return out


# ---------------------------------------------------------------- replay


def replay(doc: dict) -> bool:
    """True when a stored counterexample still fails."""
    f = from_dict(doc["framework"])
    prop = doc["property"]
    w = doc.get("witness", {})
    c = collection_from_dict(doc["collection"], f) if "collection" in doc else None
    region = IntervalSet.parse(w["region"]) if "region" in w else None
    if prop.startswith("theorem1"):
        flavor = SemanticsFlavor(prop[len("theorem1["):-1])
        return not check_theorem1(f, flavor, [c]).passed
    if prop.startswith("prop1a"):
        sub = Collection({a: region for a in w["subcollection"]})
        return is_safe_t(f, c, region) and not is_conflict_free_t(f, sub, region)
    if prop.startswith("prop1b"):
        return is_conflict_free_t(f, c, region) and is_closed_t(f, c, region) and not is_safe_t(f, c, region)
    if prop.startswith("class inclusion: ts"):
        ts = is_safe_t(f, c, region) and defends_all_t(f, c, region)
        return ts and not (is_conflict_free_t(f, c, region) and defends_all_t(f, c, region))
    if prop.startswith("class inclusion: tc"):
        d = defends_all_t(f, c, region)
        tc = is_conflict_free_t(f, c, region) and is_closed_t(f, c, region) and d
        return tc and not (is_safe_t(f, c, region) and d)
    if prop.startswith("prop3"):
        tc = enumerate_extensions(f, SemanticsFlavor.TC_PREFERRED).extensions
        return is_closed_t(f, c) and c not in tc
    if prop.startswith("prop4"):
        flavor = SemanticsFlavor(w["flavor"])
        sk = enumerate_extensions(f, flavor).skeptical
        span = basic_defeat_time(f, w["source"], w["target"])
        return bool(intersect(intersect(sk[w["target"]], sk[w["source"]]), span))
    raise ValueError(f"unknown property {prop!r}")


__all__ = [
    "GeneratorConfig",
    "PropertyVerdict",
    "random_tbaf",
    "random_baf",
    "corpus",
    "within_oracle_caps",
    "brute_force_timed_extensions",
    "brute_force_joint",
    "brute_force_factored",
    "check_theorem1",
    "check_propositions",
    "sample_points",
    "projection",
    "replay",
]
