"""Classical bipolar semantics: defeats, coherence, admissibility, extensions.

Sets are handled internally as bitmasks over the sorted argument ids.  A
chain is a sequence of arguments: for a *supported* defeat every link is a
support except the last, which is an attack (a direct attack is the
two-element case); for a *secondary* defeat the first link is an attack and
every following link is a support.  Chains are simple paths, except that the
target of a supported chain (or the source of a secondary one) may reappear
inside it; this keeps self-defeat through a support loop, which a strict
simple-path rule would lose, while still bounding the chain set.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator

from .framework import BAF


class ChainKind(Enum):
    SUPPORTED = "supported"
    SECONDARY = "secondary"


class Flavor(Enum):
    D = "d"
    S = "s"
    C = "c"


class CapExceeded(RuntimeError):
    def __init__(self, which: str, limit: int, actual: int):
        super().__init__(f"{which} cap exceeded: {actual} > {limit}")
        self.which = which
        self.limit = limit
        self.actual = actual


DEFAULT_ARG_CAP = 20


@dataclass(frozen=True)
class Chain:
    kind: ChainKind
    members: tuple[str, ...]

    @property
    def source(self) -> str:
        return self.members[0]

    @property
    def target(self) -> str:
        return self.members[-1]

    @property
    def intermediates(self) -> tuple[str, ...]:
        return self.members[1:-1]

    def __str__(self) -> str:
        return "[" + ",".join(self.members) + "]"


def _adjacency(pairs: Iterable[tuple[str, str]]) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {}
    for x, y in sorted(pairs):
        adj.setdefault(x, []).append(y)
    return adj


def _support_paths(start: str, sup: dict[str, list[str]]) -> Iterator[tuple[str, ...]]:
    """All simple support paths from ``start``, including the trivial one."""
    path = [start]
    on_path = {start}

    def walk(node):
        yield tuple(path)
        for nxt in sup.get(node, ()):
            if nxt in on_path:
                continue
            path.append(nxt)
            on_path.add(nxt)
            yield from walk(nxt)
            path.pop()
            on_path.discard(nxt)

    yield from walk(start)


@lru_cache(maxsize=512)
def all_chains(f: BAF) -> tuple[Chain, ...]:
    sup = _adjacency(f.supports)
    att = _adjacency(f.attacks)
    out = []
    for s in f.ordered:
        for path in _support_paths(s, sup):
            for t in att.get(path[-1], ()):
                out.append(Chain(ChainKind.SUPPORTED, path + (t,)))
        for y in att.get(s, ()):
            for path in _support_paths(y, sup):
                if len(path) >= 2:
                    out.append(Chain(ChainKind.SECONDARY, (s,) + path))
    out.sort(key=lambda c: (c.source, c.target, c.kind.value, len(c.members), c.members))
    return tuple(out)


def chains_between(f: BAF, source: str, target: str, kind: ChainKind) -> list[Chain]:
    return [c for c in all_chains(f) if c.source == source and c.target == target and c.kind is kind]


def defeat_pairs(f: BAF) -> set[tuple[str, str, ChainKind, tuple[str, ...]]]:
    """One shortest witness chain for every (source, target, kind) defeat."""
    best: dict[tuple, Chain] = {}
    for c in all_chains(f):
        key = (c.source, c.target, c.kind)
        if key not in best or len(c.members) < len(best[key].members):
            best[key] = c
    return {(s, t, k, c.members) for (s, t, k), c in best.items()}


# ---------------------------------------------------------------- bit index


class _Index:
    """Bitmask view of a BAF: defeat and support reachability per argument."""

    def __init__(self, f: BAF):
        names = f.ordered
        pos = {a: i for i, a in enumerate(names)}
        n = len(names)
        sup = [0] * n
        att = [0] * n
        for x, y in f.supports:
            sup[pos[x]] |= 1 << pos[y]
        for x, y in f.attacks:
            att[pos[x]] |= 1 << pos[y]
        # supp_plus[i]: reachable through one or more supports
        supp_plus = [0] * n
        for i in range(n):
            seen = 0
            frontier = sup[i]
            while frontier:
                seen |= frontier
                nxt = 0
                m = frontier
                while m:
                    low = m & -m
                    nxt |= sup[low.bit_length() - 1]
                    m ^= low
                frontier = nxt & ~seen
            supp_plus[i] = seen
        defeats = [0] * n
        for i in range(n):
            d = att[i]
            m = supp_plus[i]
            while m:
                low = m & -m
                d |= att[low.bit_length() - 1]
                m ^= low
            m = att[i]
            while m:
                low = m & -m
                d |= supp_plus[low.bit_length() - 1]
                m ^= low
            defeats[i] = d
        defeated_by = [0] * n
        for i in range(n):
            m = defeats[i]
            while m:
                low = m & -m
                defeated_by[low.bit_length() - 1] |= 1 << i
                m ^= low
        self.names = names
        self.pos = pos
        self.n = n
        self.all = (1 << n) - 1
        self.sup = sup
        self.supp_plus = supp_plus
        self.defeats = defeats
        self.defeated_by = defeated_by

    def mask(self, s: Iterable[str]) -> int:
        m = 0
        for a in s:
            m |= 1 << self.pos[a]
        return m

    def members(self, m: int) -> frozenset:
        return frozenset(self.names[i] for i in range(self.n) if m >> i & 1)

    def _union(self, table, m: int) -> int:
        out = 0
        while m:
            low = m & -m
            out |= table[low.bit_length() - 1]
            m ^= low
        return out

    def defeated_from(self, m: int) -> int:
        return self._union(self.defeats, m)

    def conflict_free(self, m: int) -> bool:
        return not (self.defeated_from(m) & m)

    def safe(self, m: int) -> bool:
        exposed = m | self._union(self.supp_plus, m)
        return not (self.defeated_from(m) & exposed)

    def closed(self, m: int) -> bool:
        return not (self._union(self.sup, m) & ~m)

    def defends_all(self, m: int) -> bool:
        need = self._union(self.defeated_by, m)
        return not (need & ~self.defeated_from(m))

    def admissible(self, m: int, flavor: Flavor) -> bool:
        if flavor is Flavor.S:
            ok = self.safe(m)
        else:
            ok = self.conflict_free(m)
            if ok and flavor is Flavor.C:
                ok = self.closed(m)
        return ok and self.defends_all(m)

    def stable(self, m: int) -> bool:
        return self.conflict_free(m) and not (self.all & ~m & ~self.defeated_from(m))

    def conflict_free_sets(self) -> Iterator[int]:
        """Every conflict-free mask, by backtracking with pairwise pruning."""
        n = self.n
        bad = [self.defeats[i] | self.defeated_by[i] for i in range(n)]
        stack = [(0, 0)]
        while stack:
            i, m = stack.pop()
            if i == n:
                yield m
                continue
            stack.append((i + 1, m))
            if not (self.defeats[i] >> i & 1) and not (bad[i] & m):
                stack.append((i + 1, m | 1 << i))


@lru_cache(maxsize=4096)
def index(f: BAF) -> _Index:
    return _Index(f)


def _check_cap(f: BAF, cap: int):
    if len(f.arguments) > cap:
        raise CapExceeded("arguments", cap, len(f.arguments))


def defeats(f: BAF) -> set[tuple[str, str]]:
    ix = index(f)
    return {
        (ix.names[i], ix.names[j])
        for i in range(ix.n)
        for j in range(ix.n)
        if ix.defeats[i] >> j & 1
    }


def is_conflict_free(f: BAF, s: Iterable[str]) -> bool:
    ix = index(f)
    return ix.conflict_free(ix.mask(s))


def is_safe(f: BAF, s: Iterable[str]) -> bool:
    ix = index(f)
    return ix.safe(ix.mask(s))


def is_closed(f: BAF, s: Iterable[str]) -> bool:
    ix = index(f)
    return ix.closed(ix.mask(s))


def defends(f: BAF, s: Iterable[str], a: str) -> bool:
    ix = index(f)
    return not (ix.defeated_by[ix.pos[a]] & ~ix.defeated_from(ix.mask(s)))


def admissibility(f: BAF, s: Iterable[str], flavor: Flavor | str) -> bool:
    ix = index(f)
    return ix.admissible(ix.mask(s), Flavor(flavor))


def is_stable(f: BAF, s: Iterable[str]) -> bool:
    ix = index(f)
    return ix.stable(ix.mask(s))


def _sorted_sets(masks: Iterable[int], ix: _Index) -> list[frozenset]:
    return sorted((ix.members(m) for m in masks), key=lambda x: sorted(x))


def stable_extensions(f: BAF, cap: int = DEFAULT_ARG_CAP) -> list[frozenset]:
    _check_cap(f, cap)
    ix = index(f)
    return _sorted_sets((m for m in ix.conflict_free_sets() if ix.stable(m)), ix)


def admissible_sets(f: BAF, flavor: Flavor | str, cap: int = DEFAULT_ARG_CAP) -> list[frozenset]:
    _check_cap(f, cap)
    ix = index(f)
    flavor = Flavor(flavor)
    return _sorted_sets((m for m in ix.conflict_free_sets() if ix.admissible(m, flavor)), ix)


def _maximal(masks: list[int]) -> list[int]:
    masks = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    kept: list[int] = []
    for m in masks:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


@lru_cache(maxsize=4096)
def _preferred_masks(f: BAF, flavor: Flavor) -> tuple[int, ...]:
    ix = index(f)
    return tuple(_maximal([m for m in ix.conflict_free_sets() if ix.admissible(m, flavor)]))


@lru_cache(maxsize=4096)
def _stable_masks(f: BAF) -> tuple[int, ...]:
    ix = index(f)
    return tuple(m for m in ix.conflict_free_sets() if ix.stable(m))


def preferred_extensions(f: BAF, flavor: Flavor | str, cap: int = DEFAULT_ARG_CAP) -> list[frozenset]:
    _check_cap(f, cap)
    return _sorted_sets(_preferred_masks(f, Flavor(flavor)), index(f))


def extensions(f: BAF, semantics: str, cap: int = DEFAULT_ARG_CAP) -> list[frozenset]:
    """Dispatch by name: 'stable', 'd', 's' or 'c' (preferred flavors)."""
    _check_cap(f, cap)
    if semantics == "stable":
        return _sorted_sets(_stable_masks(f), index(f))
    return preferred_extensions(f, semantics, cap)
