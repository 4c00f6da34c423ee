"""T-profiles, collections and interval-valued defeat times.

Two views of a defeat time are provided.  ``supported_defeat_time`` and
``secondary_defeat_time`` follow the chain definition literally: every chain
member must carry a profile in the given mapping and the chain's time is the
intersection of all member times.  ``defeat_time`` is the form used by the
semantics: the two endpoints carry arbitrary times while the arguments in
between count with their full availability.  For basic profiles both agree.

The availability windows of the intermediates are computed per elementary
region instead of per chain: within one region every argument is either
available throughout or not at all, so a chain's window is a union of
regions and the union over all chains is the set of regions in which some
chain has all its intermediates available.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Union

from .baf import Chain, ChainKind, all_chains, chains_between
from .framework import TBAF, UnknownArgument
from .intervals import (
    EMPTY,
    IntervalSet,
    breakpoints,
    elementary_regions,
    intersect,
    intersect_all,
    is_subset,
    representative,
    contains_point,
    union,
)


class InvalidCollection(ValueError):
    pass


@dataclass(frozen=True)
class TProfile:
    argument: str
    times: IntervalSet

    def __str__(self) -> str:
        return f"<{self.argument}, {self.times}>"


class Collection(Mapping):
    """Finite set of t-profiles with distinct arguments and nonempty times."""

    __slots__ = ("_items", "_hash")

    def __init__(self, profiles: Union[Mapping[str, IntervalSet], Iterable[TProfile]] = ()):
        if isinstance(profiles, Mapping):
            pairs = list(profiles.items())
        else:
            pairs = [(p.argument, p.times) for p in profiles]
        items: dict[str, IntervalSet] = {}
        for a, t in pairs:
            if isinstance(t, str):
                t = IntervalSet.parse(t)
            if a in items:
                raise InvalidCollection(f"argument {a} appears twice")
            if not t:
                raise InvalidCollection(f"empty times for {a}")
            items[a] = t
        self._items = dict(sorted(items.items()))
        self._hash = None

    @classmethod
    def lenient(cls, mapping: Mapping[str, IntervalSet]) -> "Collection":
        """Build from a mapping, silently dropping empty time sets."""
        return cls({a: t for a, t in mapping.items() if t})

    def __getitem__(self, a: str) -> IntervalSet:
        return self._items[a]

    def __iter__(self) -> Iterator[str]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other) -> bool:
        if isinstance(other, Collection):
            return self._items == other._items
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._items.items()))
        return self._hash

    def __le__(self, other: "Collection") -> bool:
        return t_inclusion(self, other)

    def __repr__(self) -> str:
        body = "; ".join(f"{a}: {t}" for a, t in self._items.items())
        return f"Collection({body})"

    def times(self, a: str) -> IntervalSet:
        return self._items.get(a, EMPTY)

    @property
    def profiles(self) -> tuple[TProfile, ...]:
        return tuple(TProfile(a, t) for a, t in self._items.items())

    def args(self) -> frozenset:
        return frozenset(self._items)

    def restrict(self, window: IntervalSet) -> "Collection":
        return Collection.lenient({a: intersect(t, window) for a, t in self._items.items()})

    def sort_key(self) -> tuple:
        from .intervals import format_interval_set

        return tuple((a, format_interval_set(t)) for a, t in self._items.items())


def check_collection(f: TBAF, c: Collection) -> None:
    """Raise unless every profile names a declared argument within its availability."""
    for a, t in c.items():
        if a not in f.availability:
            raise UnknownArgument(a)
        if not is_subset(t, f.av(a)):
            raise InvalidCollection(f"times of {a} exceed its availability {f.av(a)}")


def t_intersection(c1: Collection, c2: Collection) -> Collection:
    return Collection.lenient({a: intersect(t, c2[a]) for a, t in c1.items() if a in c2})


def t_inclusion(c1: Collection, c2: Collection) -> bool:
    return all(a in c2 and is_subset(t, c2[a]) for a, t in c1.items())


def basic_profile(f: TBAF, a: str) -> TProfile:
    return TProfile(a, f.av(a))


def basic_collection(f: TBAF) -> Collection:
    return Collection.lenient(dict(f.availability))


# ---------------------------------------------------------------- chains


@dataclass(frozen=True)
class TimedChain:
    chain: Chain
    joint_time: IntervalSet

    @property
    def kind(self) -> ChainKind:
        return self.chain.kind


def enumerate_chains(f: TBAF, source: str, target: str, kind: ChainKind) -> list[tuple[str, ...]]:
    return [c.members for c in chains_between(f.baf, source, target, kind)]


def chain_time(profiles: Mapping[str, IntervalSet], members: Iterable[str]) -> IntervalSet:
    out = None
    for a in dict.fromkeys(members):
        t = profiles.get(a)
        if t is None:
            return EMPTY
        out = t if out is None else intersect(out, t)
        if not out:
            return EMPTY
    return out if out is not None else EMPTY


def _defeat_time_literal(f: TBAF, profiles, source, target, kind) -> IntervalSet:
    out = EMPTY
    for c in chains_between(f.baf, source, target, kind):
        out = union(out, chain_time(profiles, c.members))
    return out


def supported_defeat_time(f: TBAF, profiles: Mapping[str, IntervalSet], source: str, target: str) -> IntervalSet:
    """Union over supported chains of the intersection of member times."""
    return _defeat_time_literal(f, profiles, source, target, ChainKind.SUPPORTED)


def secondary_defeat_time(f: TBAF, profiles: Mapping[str, IntervalSet], source: str, target: str) -> IntervalSet:
    return _defeat_time_literal(f, profiles, source, target, ChainKind.SECONDARY)


def timed_chains(f: TBAF, profiles: Optional[Mapping[str, IntervalSet]] = None) -> list[TimedChain]:
    """Every chain with nonempty joint time (basic profiles by default)."""
    profiles = f.availability if profiles is None else profiles
    out = []
    for c in all_chains(f.baf):
        t = chain_time(profiles, c.members)
        if t:
            out.append(TimedChain(c, t))
    return out


# ---------------------------------------------------------------- windows


@dataclass(frozen=True)
class Windows:
    """Per-pair availability of chain intermediates, aggregated by union."""

    supported: Mapping[tuple[str, str], IntervalSet]
    secondary: Mapping[tuple[str, str], IntervalSet]
    combined: Mapping[tuple[str, str], IntervalSet]
    support_reach: Mapping[tuple[str, str], IntervalSet]
    defeaters: Mapping[str, tuple[str, ...]]
    victims: Mapping[str, tuple[str, ...]]


def regions_of(f: TBAF) -> list[IntervalSet]:
    return elementary_regions(breakpoints(f.availability.values()))


def _reach(start: str, sup: Mapping[str, list[str]], live: frozenset) -> set[str]:
    """Arguments reachable from ``start`` by one or more supports whose
    intermediate nodes are all in ``live`` (the endpoint may be anything)."""
    seen: set[str] = set()
    stack = [start]
    expanded = {start}
    while stack:
        x = stack.pop()
        for y in sup.get(x, ()):
            seen.add(y)
            if y in live and y not in expanded:
                expanded.add(y)
                stack.append(y)
    return seen


@lru_cache(maxsize=1024)
def windows(f: TBAF) -> Windows:
    sup: dict[str, list[str]] = {}
    att: dict[str, list[str]] = {}
    for x, y in sorted(f.supports):
        sup.setdefault(x, []).append(y)
    for x, y in sorted(f.attacks):
        att.setdefault(x, []).append(y)
    acc: dict[str, dict] = {"sp": {}, "sc": {}, "sr": {}}

    def add(table, key, region):
        table[key] = union(table.get(key, EMPTY), region)

    for region in regions_of(f):
        t = representative(region)
        live = frozenset(a for a in f.arguments if contains_point(f.av(a), t))
        for s in f.arguments:
            reach = _reach(s, sup, live)
            for x in reach:
                add(acc["sr"], (s, x), region)
            # supported: s (supports through live args) x, then x attacks t
            heads = [s] + [x for x in reach if x in live]
            for x in heads:
                for tgt in att.get(x, ()):
                    add(acc["sp"], (s, tgt), region)
            # secondary: s attacks y, then supports from y; y is interior
            # and, the path being simple, never the target
            for y in att.get(s, ()):
                if y not in live:
                    continue
                for tgt in _reach(y, sup, live):
                    if tgt != y:
                        add(acc["sc"], (s, tgt), region)
    combined: dict = {}
    for table in (acc["sp"], acc["sc"]):
        for k, v in table.items():
            combined[k] = union(combined.get(k, EMPTY), v)
    defeaters: dict[str, list[str]] = {}
    victims: dict[str, list[str]] = {}
    for s, t in sorted(combined):
        defeaters.setdefault(t, []).append(s)
        victims.setdefault(s, []).append(t)
    return Windows(
        acc["sp"],
        acc["sc"],
        combined,
        acc["sr"],
        {t: tuple(v) for t, v in defeaters.items()},
        {s: tuple(v) for s, v in victims.items()},
    )


def defeat_time(
    f: TBAF,
    src_times: IntervalSet,
    source: str,
    target: str,
    tgt_times: IntervalSet,
    kind: Optional[ChainKind] = None,
) -> IntervalSet:
    """Times at which ``source`` (on ``src_times``) defeats ``target`` (on
    ``tgt_times``), with intermediates counted at full availability."""
    w = windows(f)
    table = w.combined if kind is None else (w.supported if kind is ChainKind.SUPPORTED else w.secondary)
    win = table.get((source, target))
    if win is None:
        return EMPTY
    return intersect_all((src_times, tgt_times, win))


def basic_defeat_time(f: TBAF, source: str, target: str, kind: Optional[ChainKind] = None) -> IntervalSet:
    return defeat_time(f, f.av(source), source, target, f.av(target), kind)


def basic_defeaters(f: TBAF, a: str) -> list[str]:
    """Arguments defeating ``a`` with nonempty time over basic profiles."""
    return [b for b in windows(f).defeaters.get(a, ()) if basic_defeat_time(f, b, a)]


# ---------------------------------------------------------------- JSON form


def collection_to_dict(c: Collection) -> dict:
    from .intervals import format_interval_set

    return {"profiles": [{"id": a, "times": format_interval_set(t)} for a, t in c.items()]}


def collection_from_dict(doc, f: Optional[TBAF] = None) -> Collection:
    from .framework import SchemaError

    if not isinstance(doc, dict) or set(doc) != {"profiles"}:
        raise SchemaError("expected an object with the single key 'profiles'")
    if not isinstance(doc["profiles"], list):
        raise SchemaError("expected a list", "$.profiles")
    items = []
    for k, p in enumerate(doc["profiles"]):
        path = f"$.profiles[{k}]"
        if not isinstance(p, dict) or set(p) != {"id", "times"}:
            raise SchemaError("expected an object with keys 'id' and 'times'", path)
        if not isinstance(p["id"], str) or not isinstance(p["times"], str):
            raise SchemaError("id and times must be strings", path)
        items.append(TProfile(p["id"], IntervalSet.parse(p["times"])))
    try:
        c = Collection(items)
    except InvalidCollection as exc:
        raise SchemaError(str(exc), "$.profiles") from exc
    if f is not None:
        check_collection(f, c)
    return c
