"""Frameworks: untimed BAFs, timed T-BAFs, validation, snapshots and JSON I/O."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .intervals import (
    EMPTY,
    FULL,
    IntervalSet,
    ParseError,
    as_value,
    contains_point,
    format_interval_set,
    intersect,
    parse_interval_set,
)

Pair = tuple[str, str]

_ID_RE = re.compile(r"[^\s\-,{}\[\]()]+")


class Relation(Enum):
    ATTACK = "attack"
    SUPPORT = "support"


class SchemaError(ValueError):
    """A framework document does not match the expected JSON layout."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class NoSuchRelation(KeyError):
    pass


class UnknownArgument(KeyError):
    pass


class InvalidFramework(ValueError):
    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(str(i) for i in report.errors))
        self.report = report


def valid_argument_id(name: str) -> bool:
    return isinstance(name, str) and _ID_RE.fullmatch(name) is not None


@dataclass(frozen=True)
class BAF:
    arguments: frozenset = frozenset()
    attacks: frozenset = frozenset()
    supports: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "arguments", frozenset(self.arguments))
        object.__setattr__(self, "attacks", frozenset(tuple(p) for p in self.attacks))
        object.__setattr__(self, "supports", frozenset(tuple(p) for p in self.supports))

    @property
    def ordered(self) -> tuple[str, ...]:
        return tuple(sorted(self.arguments))

    def restrict(self, keep: Iterable[str]) -> "BAF":
        """Sub-framework induced by ``keep``."""
        keep = frozenset(keep) & self.arguments
        return BAF(
            keep,
            {p for p in self.attacks if p[0] in keep and p[1] in keep},
            {p for p in self.supports if p[0] in keep and p[1] in keep},
        )


@dataclass(frozen=True)
class TBAF:
    baf: BAF
    availability: Mapping[str, IntervalSet] = field(default_factory=dict)

    def __post_init__(self):
        av = {a: self.availability.get(a, EMPTY) for a in sorted(self.baf.arguments)}
        extra = set(self.availability) - set(av)
        if extra:
            raise UnknownArgument(", ".join(sorted(extra)))
        object.__setattr__(self, "availability", MappingProxyType(av))

    def __hash__(self) -> int:
        return hash((self.baf, tuple(self.availability.items())))

    @classmethod
    def build(
        cls,
        availability: Mapping[str, Union[IntervalSet, str]],
        attacks: Iterable[Pair] = (),
        supports: Iterable[Pair] = (),
    ) -> "TBAF":
        av = {
            a: parse_interval_set(t) if isinstance(t, str) else t
            for a, t in availability.items()
        }
        return cls(BAF(frozenset(av), attacks, supports), av)

    @property
    def arguments(self) -> tuple[str, ...]:
        return self.baf.ordered

    @property
    def attacks(self) -> frozenset:
        return self.baf.attacks

    @property
    def supports(self) -> frozenset:
        return self.baf.supports

    def av(self, a: str) -> IntervalSet:
        try:
            return self.availability[a]
        except KeyError:
            raise UnknownArgument(a) from None


def lift(baf: BAF, times: IntervalSet = FULL) -> TBAF:
    """Give every argument of ``baf`` the same availability."""
    return TBAF(baf, {a: times for a in baf.arguments})


def to_baf(f: TBAF) -> BAF:
    return f.baf


# ------------------------------------------------------------------ validation


@dataclass(frozen=True)
class Issue:
    code: str
    subject: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"{self.severity}: {self.code}({self.subject})"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def errors(self) -> tuple[Issue, ...]:
        return tuple(i for i in self.issues if i.severity == "error")

    @property
    def warnings(self) -> tuple[Issue, ...]:
        return tuple(i for i in self.issues if i.severity == "warning")

    @property
    def ok(self) -> bool:
        return not self.errors

    def codes(self) -> set[str]:
        return {i.code for i in self.issues}

    def __bool__(self) -> bool:
        return bool(self.issues)

    def __len__(self) -> int:
        return len(self.issues)


def _validate_parts(args: list[str], attacks, supports, av) -> ValidationReport:
    issues = []
    seen = set()
    for a in args:
        if a in seen:
            issues.append(Issue("DuplicateArgument", a))
        seen.add(a)
        if not valid_argument_id(a):
            issues.append(Issue("InvalidArgumentId", repr(a)))
    for rel in (attacks, supports):
        for x, y in sorted(rel):
            for end in (x, y):
                if end not in seen:
                    issues.append(Issue("UnknownArgument", end))
    for p in sorted(set(attacks) & set(supports)):
        issues.append(Issue("RelationOverlap", f"{p[0]},{p[1]}"))
    for a in sorted(seen):
        if a in av and not av[a]:
            issues.append(Issue("EmptyAvailability", a, "warning"))
    for x, y in sorted(supports):
        if x == y:
            issues.append(Issue("SelfSupport", x, "warning"))
    return ValidationReport(tuple(issues))


def validate(f: Union[TBAF, BAF]) -> ValidationReport:
    if isinstance(f, TBAF):
        return _validate_parts(list(f.arguments), f.attacks, f.supports, f.availability)
    return _validate_parts(sorted(f.arguments), f.attacks, f.supports, {})


# ------------------------------------------------------------ time queries


def relation_time(f: TBAF, kind: Relation, a: str, b: str) -> IntervalSet:
    """Span on which the relation (a, b) is active: both ends available."""
    rel = f.attacks if kind is Relation.ATTACK else f.supports
    if (a, b) not in rel:
        raise NoSuchRelation(f"{kind.value} ({a},{b})")
    return intersect(f.av(a), f.av(b))


def snapshot_at(f: TBAF, t) -> BAF:
    t = as_value(t)
    live = frozenset(a for a in f.arguments if contains_point(f.av(a), t))
    return f.baf.restrict(live)


# ------------------------------------------------------------------ JSON I/O

_TOP_KEYS = {"arguments", "attacks", "supports"}
_ARG_KEYS = {"id", "availability"}


def _pairs(doc, key: str) -> list[Pair]:
    raw = doc.get(key, [])
    if not isinstance(raw, list):
        raise SchemaError("expected a list", f"$.{key}")
    out = []
    for k, item in enumerate(raw):
        path = f"$.{key}[{k}]"
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, str) for x in item)):
            raise SchemaError("expected a pair of argument ids", path)
        out.append((item[0], item[1]))
    return out


def from_dict(doc) -> TBAF:
    if not isinstance(doc, dict):
        raise SchemaError("expected an object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise SchemaError(f"unknown key {sorted(unknown)[0]!r}")
    if "arguments" not in doc:
        raise SchemaError("missing key 'arguments'")
    items = doc["arguments"]
    if not isinstance(items, list):
        raise SchemaError("expected a list", "$.arguments")
    av: dict[str, IntervalSet] = {}
    for k, item in enumerate(items):
        path = f"$.arguments[{k}]"
        if not isinstance(item, dict):
            raise SchemaError("expected an object", path)
        unknown = set(item) - _ARG_KEYS
        if unknown:
            raise SchemaError(f"unknown key {sorted(unknown)[0]!r}", path)
        name = item.get("id")
        if not isinstance(name, str):
            raise SchemaError("missing or non-string id", f"{path}.id")
        if not valid_argument_id(name):
            raise SchemaError(f"invalid argument id {name!r}", f"{path}.id")
        if name in av:
            raise SchemaError(f"duplicate argument id {name!r}", f"{path}.id")
        text = item.get("availability", "{}")
        if not isinstance(text, str):
            raise SchemaError("availability must be a string", f"{path}.availability")
        av[name] = parse_interval_set(text)
    attacks = _pairs(doc, "attacks")
    supports = _pairs(doc, "supports")
    for key, rel in (("attacks", attacks), ("supports", supports)):
        for k, (x, y) in enumerate(rel):
            for end in (x, y):
                if end not in av:
                    raise SchemaError(f"unknown argument {end!r}", f"$.{key}[{k}]")
    f = TBAF(BAF(frozenset(av), attacks, supports), av)
    report = validate(f)
    if not report.ok:
        raise InvalidFramework(report)
    return f


def to_dict(f: TBAF) -> dict:
    return {
        "arguments": [
            {"id": a, "availability": format_interval_set(f.av(a))} for a in f.arguments
        ],
        "attacks": [list(p) for p in sorted(f.attacks)],
        "supports": [list(p) for p in sorted(f.supports)],
    }


def load(text: str) -> TBAF:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno})") from exc
    return from_dict(doc)


def save(f: TBAF) -> str:
    return json.dumps(to_dict(f), indent=2, ensure_ascii=False) + "\n"


def load_file(path) -> TBAF:
    with open(path, encoding="utf-8") as fh:
        return load(fh.read())


__all__ = [
    "BAF",
    "TBAF",
    "Relation",
    "Issue",
    "ValidationReport",
    "SchemaError",
    "NoSuchRelation",
    "UnknownArgument",
    "InvalidFramework",
    "ParseError",
    "lift",
    "to_baf",
    "validate",
    "relation_time",
    "snapshot_at",
    "load",
    "save",
    "load_file",
    "from_dict",
    "to_dict",
]
