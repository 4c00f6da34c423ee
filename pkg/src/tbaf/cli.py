"""Command-line front end.

Exit codes: 0 success or a true answer, 1 usage/parse/validation error,
2 a boolean query answered false, 3 an enumeration cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from . import baf as classical
from .baf import CapExceeded
from .defeats import (
    Collection,
    InvalidCollection,
    collection_from_dict,
    collection_to_dict,
    timed_chains,
)
from .framework import (
    InvalidFramework,
    NoSuchRelation,
    SchemaError,
    TBAF,
    UnknownArgument,
    load,
    snapshot_at,
    validate,
)
from .intervals import (
    IntervalSet,
    ParseError,
    breakpoints,
    contains_point,
    format_interval_set,
    format_number,
)
from .semantics import (
    SemanticsFlavor,
    admissibility_t,
    enumerate_extensions,
    is_closed_t,
    is_conflict_free_t,
    is_safe_t,
    is_t_stable,
)

EXIT_OK, EXIT_ERROR, EXIT_FALSE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class CommandResult:
    code: int
    text: str = ""
    payload: Optional[object] = None


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_framework(path: str) -> TBAF:
    return load(_read(path))


def _load_collection(path: str, f: TBAF) -> Collection:
    try:
        doc = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno})") from exc
    return collection_from_dict(doc, f)


def _times(t: IntervalSet) -> str:
    return format_interval_set(t, braces=False)


# ---------------------------------------------------------------- commands


def cmd_check(args) -> CommandResult:
    f = _load_framework(args.file)
    warnings = [str(i) for i in validate(f).warnings]
    if args.collection is None:
        text = "\n".join(warnings + ["framework is valid"])
        return CommandResult(EXIT_OK, text)
    c = _load_collection(args.collection, f)
    if args.admissible:
        name = f"{args.admissible}-admissible"
        answer = admissibility_t(f, c, args.admissible)
    elif args.stable:
        name, answer = "t-stable", is_t_stable(f, c)
    elif args.safe:
        name, answer = "safe", is_safe_t(f, c)
    elif args.closed:
        name, answer = "closed", is_closed_t(f, c)
    else:
        name, answer = "conflict-free", is_conflict_free_t(f, c)
    text = "\n".join(warnings + [f"{name}: {'yes' if answer else 'no'}"])
    return CommandResult(EXIT_OK if answer else EXIT_FALSE, text, {"property": name, "value": answer})


def cmd_extensions(args) -> CommandResult:
    f = _load_framework(args.file)
    flavor = SemanticsFlavor(args.semantics)
    report = enumerate_extensions(f, flavor)
    payload = {
        "semantics": flavor.value,
        "extensions": [collection_to_dict(c) for c in report.extensions],
        "skeptical": {a: format_interval_set(t) for a, t in report.skeptical.items()},
    }
    if args.json:
        return CommandResult(EXIT_OK, json.dumps(payload, indent=2, ensure_ascii=False), payload)
    lines = [f"{flavor.value}: {len(report.extensions)} extension(s)"]
    for k, c in enumerate(report.extensions, 1):
        lines.append(f"extension {k}:")
        if not c:
            lines.append("  (empty collection)")
        for a, t in c.items():
            lines.append(f"  {a}: {_times(t)}")
    lines.append("skeptical acceptance:")
    for a, t in report.skeptical.items():
        lines.append(f"  {a}: {_times(t)}")
    return CommandResult(EXIT_OK, "\n".join(lines), payload)


def _parse_point(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse time point {text!r}") from None


_SNAPSHOT_SEMANTICS = {
    "stable": "stable",
    "t-stable": "stable",
    "d": "d",
    "s": "s",
    "c": "c",
    "td-preferred": "d",
    "ts-preferred": "s",
    "tc-preferred": "c",
}


def cmd_snapshot(args) -> CommandResult:
    t = _parse_point(args.at)
    f = _load_framework(args.file)
    snap = snapshot_at(f, t)
    lines = [
        f"snapshot at {format_number(t)}",
        "arguments: " + " ".join(snap.ordered),
        "attacks: " + " ".join(f"{x}->{y}" for x, y in sorted(snap.attacks)),
        "supports: " + " ".join(f"{x}->{y}" for x, y in sorted(snap.supports)),
    ]
    payload = {
        "at": format_number(t),
        "arguments": list(snap.ordered),
        "attacks": [list(p) for p in sorted(snap.attacks)],
        "supports": [list(p) for p in sorted(snap.supports)],
    }
    if args.semantics:
        exts = classical.extensions(snap, _SNAPSHOT_SEMANTICS[args.semantics])
        lines.append(f"{args.semantics} extensions:")
        for e in exts:
            lines.append("  {" + ", ".join(sorted(e)) + "}")
        payload["extensions"] = [sorted(e) for e in exts]
    return CommandResult(EXIT_OK, "\n".join(lines), payload)


def cmd_defeats(args) -> CommandResult:
    f = _load_framework(args.file)
    rows = []
    for tc in timed_chains(f):
        c = tc.chain
        rows.append(
            {
                "source": c.source,
                "target": c.target,
                "kind": c.kind.value,
                "chain": list(c.members),
                "time": format_interval_set(tc.joint_time),
            }
        )
    if args.json:
        return CommandResult(EXIT_OK, json.dumps(rows, indent=2, ensure_ascii=False), rows)
    lines = [
        f"{r['source']} → {r['target']} {r['kind']} via [{','.join(r['chain'])}] : {r['time']}"
        for r in rows
    ]
    return CommandResult(EXIT_OK, "\n".join(lines), rows)


# ---------------------------------------------------------------- timeline


@dataclass
class Geometry:
    points: list[Fraction]
    columns: dict[Fraction, int]
    width: int
    # (kind, first column, last column, a time inside the region), in order
    cells: list[tuple[str, int, int, Fraction]]


RAY_COLUMNS = 3


def timeline_geometry(f: TBAF, width: int = 60) -> Geometry:
    """Breakpoint-proportional columns, at least one column per open gap."""
    sets = [s for s in f.availability.values() if s]
    points = breakpoints(sets)
    if not points:
        return Geometry([], {}, RAY_COLUMNS, [("gap", 0, RAY_COLUMNS - 1, Fraction(0))])
    left = any(not s.intervals[0].lo.closed and s.intervals[0].lo.value == -float("inf") for s in sets)
    right = any(s.intervals[-1].hi.value == float("inf") for s in sets)
    col = 0
    cells = []
    columns: dict[Fraction, int] = {}
    if left:
        cells.append(("gap", 0, RAY_COLUMNS - 1, points[0] - 1))
        col = RAY_COLUMNS
    span = points[-1] - points[0]
    budget = max(width - len(points), len(points) - 1)
    for k, p in enumerate(points):
        columns[p] = col
        cells.append(("point", col, col, p))
        col += 1
        if k + 1 < len(points):
            q = points[k + 1]
            n = max(1, round(budget * (q - p) / span))
            cells.append(("gap", col, col + n - 1, (p + q) / 2))
            col += n
    if right:
        cells.append(("gap", col, col + RAY_COLUMNS - 1, points[-1] + 1))
        col += RAY_COLUMNS
    return Geometry(points, columns, col, cells)


def _row(geo: Geometry, s: IntervalSet) -> str:
    inside = [contains_point(s, cell[3]) for cell in geo.cells]
    out = []
    for k, (kind, first, last, _) in enumerate(geo.cells):
        n = last - first + 1
        if kind == "gap":
            out.append(("-" if inside[k] else " ") * n)
            continue
        before = inside[k - 1] if k > 0 else False
        after = inside[k + 1] if k + 1 < len(inside) else False
        if inside[k]:
            g = "=" if before and after else "]" if before else "[" if after else "|"
        else:
            g = ":" if before and after else ")" if before else "(" if after else " "
        out.append(g)
    return "".join(out)


def render_ascii(f: TBAF, width: int = 60) -> str:
    geo = timeline_geometry(f, width)
    names = list(f.arguments)
    pad = max([len(a) for a in names] + [4])
    extra = max([len(format_number(p)) for p in geo.points] + [0])
    axis = [" "] * (geo.width + extra)
    for p, c in geo.columns.items():
        label = format_number(p)
        if all(ch == " " for ch in axis[max(c - 1, 0): c + len(label) + 1]):
            axis[c: c + len(label)] = label
    lines = [f"{'time':<{pad}} |{''.join(axis).rstrip()}"]
    for a in names:
        s = f.av(a)
        row = _row(geo, s)
        mark = "  (!) empty availability" if not s else ""
        lines.append(f"{a:<{pad}} |{row}|{mark}")
    lines.append(
        "legend: [ ] closed bound, ( ) open bound, - covered, = covered through a breakpoint, "
        "| isolated point, : single excluded point"
    )
    return "\n".join(lines)


CELL = 10
ROW = 20
MARGIN = 60


def render_svg(f: TBAF, width: int = 60) -> str:
    geo = timeline_geometry(f, width)
    names = list(f.arguments)
    w = MARGIN + geo.width * CELL + 20
    h = ROW * (len(names) + 2)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="monospace" font-size="11">'
    ]
    for p, c in geo.columns.items():
        x = MARGIN + c * CELL + CELL // 2
        parts.append(
            f'<line data-breakpoint="{format_number(p)}" data-column="{c}" x1="{x}" y1="{ROW}" x2="{x}" y2="{h}" stroke="#ddd"/>'
        )
        parts.append(f'<text x="{x}" y="{ROW - 6}" text-anchor="middle">{escape(format_number(p))}</text>')
    for r, a in enumerate(names, 1):
        y = ROW * r + ROW // 2
        parts.append(f'<text x="4" y="{y + 4}">{escape(a)}</text>')
        row = _row(geo, f.av(a))
        for k, ch in enumerate(row):
            x = MARGIN + k * CELL
            if ch in "-=":
                parts.append(f'<rect x="{x}" y="{y - 3}" width="{CELL}" height="6" fill="#4a7"/>')
            elif ch in "[]()|:":
                parts.append(f'<text data-column="{k}" x="{x + CELL // 2}" y="{y + 4}" text-anchor="middle">{escape(ch)}</text>')
        if not f.av(a):
            parts.append(f'<text x="{MARGIN}" y="{y + 4}" fill="#c00">(!) empty availability</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def cmd_timeline(args) -> CommandResult:
    f = _load_framework(args.file)
    if args.format == "svg":
        return CommandResult(EXIT_OK, render_svg(f, args.width))
    return CommandResult(EXIT_OK, render_ascii(f, args.width))


# ---------------------------------------------------------------- dispatch


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tbaf", description="Timed bipolar argumentation solver")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="validate a framework or test a collection")
    c.add_argument("file")
    c.add_argument("collection", nargs="?")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--conflict-free", action="store_true")
    g.add_argument("--safe", action="store_true")
    g.add_argument("--closed", action="store_true")
    g.add_argument("--admissible", choices=["td", "ts", "tc"])
    g.add_argument("--stable", action="store_true")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("extensions", help="enumerate timed extensions")
    e.add_argument("file")
    e.add_argument("--semantics", required=True, choices=[fl.value for fl in SemanticsFlavor])
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_extensions)

    s = sub.add_parser("snapshot", help="classical framework at one time point")
    s.add_argument("file")
    s.add_argument("--at", required=True)
    s.add_argument("--semantics", choices=sorted(_SNAPSHOT_SEMANTICS))
    s.set_defaults(func=cmd_snapshot)

    t = sub.add_parser("timeline", help="render availability as a chart")
    t.add_argument("file")
    t.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    t.add_argument("--width", type=int, default=60)
    t.set_defaults(func=cmd_timeline)

    d = sub.add_parser("defeats", help="list timed defeat chains")
    d.add_argument("file")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_defeats)
    return p


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "check" and args.collection is not None:
            if not (args.safe or args.closed or args.admissible or args.stable):
                args.conflict_free = True
        return args.func(args)
    except UsageError as exc:
        return CommandResult(EXIT_ERROR, f"error: {exc}")
    except CapExceeded as exc:
        return CommandResult(EXIT_CAP, f"error: {exc}")
    except (
        OSError,
        SchemaError,
        ParseError,
        InvalidFramework,
        InvalidCollection,
        UnknownArgument,
        NoSuchRelation,
        ValueError,
    ) as exc:
        return CommandResult(EXIT_ERROR, f"error: {exc}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    result = run(argv)
    stream = sys.stdout if result.code in (EXIT_OK, EXIT_FALSE) else sys.stderr
    if result.text:
        try:
            print(result.text, file=stream)
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the flush at exit
            sys.stdout = None
    return result.code


if __name__ == "__main__":
    sys.exit(main())
