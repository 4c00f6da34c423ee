"""Exact algebra over finite unions of time intervals.

Sets are stored as a flat, strictly increasing tuple of *cuts*.  A cut is a
pair ``(value, side)`` where ``side == 0`` sits just below ``value`` and
``side == 1`` just above it.  Consecutive cut pairs delimit the member
intervals, so ``[a-b]`` is ``((a, 0), (b, 1))`` and ``(a-b)`` is
``((a, 1), (b, 0))``.  Strict monotonicity of the cut tuple is exactly the
"disjoint and non-adjacent" condition, which makes the representation
canonical: two sets denote the same points iff their cut tuples are equal.
"""

from __future__ import annotations

import math
import re
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction, str]
Value = Union[Fraction, float]  # float only for +/- infinity

NEG_INF = -math.inf
POS_INF = math.inf


class EmptyInterval(ValueError):
    """Raised when interval bounds describe no points."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def as_value(x) -> Value:
    """Coerce to an exact rational, passing infinities through."""
    if isinstance(x, float):
        if math.isinf(x):
            return x
        raise TypeError("finite floats are not accepted; use Fraction or a decimal string")
    if isinstance(x, str):
        s = x.strip()
        if s in ("+inf", "inf"):
            return POS_INF
        if s == "-inf":
            return NEG_INF
        return Fraction(s)
    return Fraction(x)


@dataclass(frozen=True)
class Bound:
    value: Value
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "value", as_value(self.value))
        if isinstance(self.value, float) and self.closed:
            object.__setattr__(self, "closed", False)


@dataclass(frozen=True)
class Interval:
    lo: Bound
    hi: Bound

    def __post_init__(self):
        if _lo_cut(self.lo) >= _hi_cut(self.hi):
            raise EmptyInterval(f"empty interval {_fmt_interval(self.lo, self.hi)}")

    @property
    def is_point(self) -> bool:
        return self.lo.value == self.hi.value

    def __str__(self) -> str:
        return _fmt_interval(self.lo, self.hi)


def make_interval(lo: Bound, hi: Bound) -> Interval:
    return Interval(lo, hi)


def _lo_cut(b: Bound):
    if b.value == NEG_INF:
        return (NEG_INF, 1)
    return (b.value, 0 if b.closed else 1)


def _hi_cut(b: Bound):
    if b.value == POS_INF:
        return (POS_INF, 0)
    return (b.value, 1 if b.closed else 0)


def _merge(a: tuple, b: tuple, keep) -> tuple:
    """Sweep two cut tuples, emitting cuts where ``keep(in_a, in_b)`` flips."""
    out = []
    i = j = 0
    ina = inb = False
    state = False
    na, nb = len(a), len(b)
    while i < na or j < nb:
        if j >= nb or (i < na and a[i] <= b[j]):
            c = a[i]
        else:
            c = b[j]
        if i < na and a[i] == c:
            ina = not ina
            i += 1
        if j < nb and b[j] == c:
            inb = not inb
            j += 1
        new = keep(ina, inb)
        if new != state:
            out.append(c)
            state = new
    return tuple(out)


def _or(x, y):
    return x or y


def _and(x, y):
    return x and y


def _sub(x, y):
    return x and not y


class IntervalSet:
    """Immutable canonical union of disjoint, maximal intervals."""

    __slots__ = ("_cuts", "_hash")

    def __init__(self, intervals: Iterable[Interval] = ()):
        cuts: tuple = ()
        for iv in intervals:
            cuts = _merge(cuts, (_lo_cut(iv.lo), _hi_cut(iv.hi)), _or)
        self._cuts = cuts
        self._hash = None

    @classmethod
    def _from_cuts(cls, cuts: tuple) -> "IntervalSet":
        s = cls.__new__(cls)
        s._cuts = cuts
        s._hash = None
        return s

    @classmethod
    def point(cls, t: Number) -> "IntervalSet":
        v = as_value(t)
        return cls._from_cuts(((v, 0), (v, 1)))

    @classmethod
    def closed(cls, a: Number, b: Number) -> "IntervalSet":
        return cls([Interval(Bound(a, True), Bound(b, True))])

    @classmethod
    def open(cls, a: Number, b: Number) -> "IntervalSet":
        return cls([Interval(Bound(a, False), Bound(b, False))])

    @classmethod
    def parse(cls, text: str) -> "IntervalSet":
        return parse_interval_set(text)

    @property
    def intervals(self) -> tuple[Interval, ...]:
        c = self._cuts
        out = []
        for k in range(0, len(c), 2):
            (lv, ls), (hv, hs) = c[k], c[k + 1]
            out.append(Interval(Bound(lv, ls == 0), Bound(hv, hs == 1)))
        return tuple(out)

    def __bool__(self) -> bool:
        return bool(self._cuts)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self._cuts == other._cuts

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._cuts)
        return self._hash

    def __repr__(self) -> str:
        return f"IntervalSet({format_interval_set(self)!r})"

    def __str__(self) -> str:
        return format_interval_set(self)

    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        return union(self, other)

    def __and__(self, other: "IntervalSet") -> "IntervalSet":
        return intersect(self, other)

    def __sub__(self, other: "IntervalSet") -> "IntervalSet":
        return difference(self, other)

    def __invert__(self) -> "IntervalSet":
        return complement(self)

    def __le__(self, other: "IntervalSet") -> bool:
        return is_subset(self, other)

    def __contains__(self, t) -> bool:
        return contains_point(self, t)

    @property
    def endpoints(self) -> list[Fraction]:
        return sorted({v for v, _ in self._cuts if not isinstance(v, float)})


EMPTY = IntervalSet()
FULL = IntervalSet._from_cuts(((NEG_INF, 1), (POS_INF, 0)))


def intersect(s1: IntervalSet, s2: IntervalSet) -> IntervalSet:
    if not s1._cuts or not s2._cuts:
        return EMPTY
    if s1._cuts == s2._cuts:
        return s1
    return IntervalSet._from_cuts(_merge(s1._cuts, s2._cuts, _and))


def union(s1: IntervalSet, s2: IntervalSet) -> IntervalSet:
    if not s1._cuts:
        return s2
    if not s2._cuts:
        return s1
    return IntervalSet._from_cuts(_merge(s1._cuts, s2._cuts, _or))


def difference(s1: IntervalSet, s2: IntervalSet) -> IntervalSet:
    if not s1._cuts or not s2._cuts:
        return s1
    return IntervalSet._from_cuts(_merge(s1._cuts, s2._cuts, _sub))


def complement(s: IntervalSet) -> IntervalSet:
    return difference(FULL, s)


def is_subset(s1: IntervalSet, s2: IntervalSet) -> bool:
    return not difference(s1, s2)._cuts


def overlaps(s1: IntervalSet, s2: IntervalSet) -> bool:
    return bool(intersect(s1, s2)._cuts)


def union_all(sets: Iterable[IntervalSet]) -> IntervalSet:
    out = EMPTY
    for s in sets:
        out = union(out, s)
    return out


def intersect_all(sets: Iterable[IntervalSet]) -> IntervalSet:
    out = FULL
    for s in sets:
        out = intersect(out, s)
        if not out:
            break
    return out


def contains_point(s: IntervalSet, t) -> bool:
    v = as_value(t)
    if isinstance(v, float):
        return False
    return bisect_right(s._cuts, (v, 0)) % 2 == 1


def breakpoints(sets: Iterable[IntervalSet]) -> list[Fraction]:
    values = set()
    for s in sets:
        values.update(v for v, _ in s._cuts if not isinstance(v, float))
    return sorted(values)


def elementary_regions(points: Sequence[Fraction]) -> list[IntervalSet]:
    """Points and the open gaps between them, in order, covering the line."""
    if not points:
        return [FULL]
    regions = [IntervalSet._from_cuts(((NEG_INF, 1), (points[0], 0)))]
    for k, p in enumerate(points):
        regions.append(IntervalSet._from_cuts(((p, 0), (p, 1))))
        nxt = points[k + 1] if k + 1 < len(points) else POS_INF
        regions.append(IntervalSet._from_cuts(((p, 1), (nxt, 0))))
    return regions


def representative(region: IntervalSet) -> Fraction:
    """A point inside a single-interval region (midpoint, or 1 beyond a finite end)."""
    (lv, _), (hv, _) = region._cuts[0], region._cuts[1]
    if lv == hv:
        return lv
    if isinstance(lv, float) and isinstance(hv, float):
        return Fraction(0)
    if isinstance(lv, float):
        return hv - 1
    if isinstance(hv, float):
        return lv + 1
    return (lv + hv) / 2


# ---------------------------------------------------------------- text format


def format_number(v: Value) -> str:
    if v == POS_INF:
        return "+inf"
    if v == NEG_INF:
        return "-inf"
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    d = v.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{v.numerator}/{v.denominator}"
    digits = max(twos, fives)
    scaled = abs(v.numerator) * 10**digits // v.denominator
    sign = "-" if v < 0 else ""
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def _fmt_interval(lo: Bound, hi: Bound) -> str:
    left = "[" if lo.closed else "("
    right = "]" if hi.closed else ")"
    return f"{left}{format_number(lo.value)}-{format_number(hi.value)}{right}"


def format_interval_set(s: IntervalSet, braces: bool = True) -> str:
    body = ", ".join(str(iv) for iv in s.intervals)
    if not braces:
        return body if body else "{}"
    return "{" + body + "}"


_BOUND_RE = re.compile(r"[+-]?(?:inf|\d+(?:\.\d+)?(?:/\d+)?)")


def parse_interval_set(text: str) -> IntervalSet:
    p = _Parser(text)
    p.skip()
    if p.peek() == "{":
        p.pos += 1
        p.skip()
        items = []
        if p.peek() == "}":
            p.pos += 1
        else:
            while True:
                items.append(p.interval())
                p.skip()
                ch = p.peek()
                if ch == ",":
                    p.pos += 1
                    continue
                if ch == "}":
                    p.pos += 1
                    break
                p.fail("expected ',' or '}'")
        result = IntervalSet(items)
    else:
        result = IntervalSet([p.interval()])
    p.skip()
    if p.pos != len(text):
        p.fail("trailing characters")
    return result


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, msg: str):
        raise ParseError(msg, self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def bound(self) -> Value:
        self.skip()
        m = _BOUND_RE.match(self.text, self.pos)
        if not m:
            self.fail("expected a number or +inf/-inf")
        token = m.group(0)
        if token.lstrip("+-") == "inf" and token[0] not in "+-":
            self.fail("infinity needs an explicit sign")
        start = self.pos
        self.pos = m.end()
        try:
            v = as_value(token)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad number {token!r}", start) from None
        return v

    def interval(self) -> Interval:
        self.skip()
        start = self.pos
        ch = self.peek()
        if ch not in "[(" or not ch:
            self.fail("expected '[' or '('")
        self.pos += 1
        lo = self.bound()
        self.skip()
        if self.peek() != "-":
            self.fail("expected '-' separator")
        self.pos += 1
        hi = self.bound()
        self.skip()
        close = self.peek()
        if close not in "])" or not close:
            self.fail("expected ']' or ')'")
        self.pos += 1
        try:
            return Interval(Bound(lo, ch == "["), Bound(hi, close == "]"))
        except EmptyInterval as exc:
            raise ParseError(str(exc), start) from exc
