import json
import re
import subprocess
import sys
from fractions import Fraction

import pytest

from tbaf import example_path, load_example
from tbaf.defeats import collection_from_dict
from tbaf.intervals import format_number
from tbaf.cli import EXIT_CAP, EXIT_ERROR, EXIT_FALSE, EXIT_OK, main, run, timeline_geometry

ABSTRACT = str(example_path("abstract.json"))
APARTMENT = str(example_path("apartment.json"))
EMPTY = str(example_path("empty.json"))


def data(name):
    return str(example_path(name))


@pytest.fixture
def malformed(tmp_path):
    p = tmp_path / "malformed.json"
    p.write_text('{"arguments": [{"id": "A", "availability": "[0-1"}]}', encoding="utf-8")
    return str(p)


@pytest.fixture
def relation_free(tmp_path):
    p = tmp_path / "free.json"
    p.write_text(
        json.dumps({"arguments": [{"id": "A", "availability": "[0-1]"}, {"id": "B", "availability": "{}"}]}),
        encoding="utf-8",
    )
    return str(p)


# ------------------------------------------------------------ check


def test_check_apartment_c3_stable():
    assert run(["check", APARTMENT, data("apartment_c3.json"), "--stable"]).code == EXIT_OK


def test_check_abstract_c1_safe_is_false():
    r = run(["check", ABSTRACT, data("abstract_c1.json"), "--safe"])
    assert r.code == EXIT_FALSE and r.payload == {"property": "safe", "value": False}


def test_check_malformed(malformed):
    r = run(["check", malformed])
    assert r.code == EXIT_ERROR and "error" in r.text


def test_check_validates_only():
    r = run(["check", APARTMENT])
    assert r.code == EXIT_OK and "valid" in r.text


@pytest.mark.parametrize(
    "flag, code",
    [
        ([], EXIT_OK),
        (["--conflict-free"], EXIT_OK),
        (["--admissible", "td"], EXIT_OK),
        (["--admissible", "ts"], EXIT_FALSE),
        (["--stable"], EXIT_OK),
        (["--closed"], EXIT_FALSE),
    ],
)
def test_check_flags_on_c4(flag, code):
    assert run(["check", ABSTRACT, data("abstract_c4.json"), *flag]).code == code


def test_check_bad_inputs(tmp_path):
    assert run(["check", str(tmp_path / "missing.json")]).code == EXIT_ERROR
    outside = tmp_path / "c.json"
    outside.write_text('{"profiles": [{"id": "A", "times": "[0-500]"}]}', encoding="utf-8")
    assert run(["check", ABSTRACT, str(outside)]).code == EXIT_ERROR
    unknown = tmp_path / "u.json"
    unknown.write_text('{"profiles": [{"id": "Q", "times": "[0-1]"}]}', encoding="utf-8")
    assert run(["check", ABSTRACT, str(unknown)]).code == EXIT_ERROR


def test_usage_errors():
    assert run([]).code == EXIT_ERROR
    assert run(["extensions", ABSTRACT]).code == EXIT_ERROR
    assert run(["check", ABSTRACT, data("abstract_c4.json"), "--safe", "--stable"]).code == EXIT_ERROR
    assert run(["extensions", ABSTRACT, "--semantics", "grounded"]).code == EXIT_ERROR


def test_warning_is_reported(relation_free):
    r = run(["check", relation_free])
    assert r.code == EXIT_OK and "EmptyAvailability(B)" in r.text


# ------------------------------------------------------------ extensions


def test_extensions_apartment():
    r = run(["extensions", APARTMENT, "--semantics", "t-stable"])
    assert r.code == EXIT_OK
    assert "A: [0-80]" in r.text


def test_extensions_abstract_td_contains_c4(abstract):
    r = run(["extensions", ABSTRACT, "--semantics", "td-preferred"])
    c4 = collection_from_dict(json.loads(example_path("abstract_c4.json").read_text()), abstract)
    assert c4 in [collection_from_dict(e, abstract) for e in r.payload["extensions"]]
    for line in ("A: [0-100)", "C: [30-50), (70-180)", "G: (80-120]"):
        assert f"  {line}" in r.text


def test_extensions_empty_framework():
    r = run(["extensions", EMPTY, "--semantics", "t-stable"])
    assert r.code == EXIT_OK
    assert r.payload["extensions"] == [{"profiles": []}]
    assert "1 extension(s)" in r.text and "(empty collection)" in r.text


def test_extensions_cap(monkeypatch):
    monkeypatch.setenv("TBAF_CAPS", "20,64,10")
    r = run(["extensions", ABSTRACT, "--semantics", "ts-preferred"])
    assert r.code == EXIT_CAP and "candidates" in r.text


@pytest.mark.parametrize("semantics", ["t-stable", "td-preferred", "tc-preferred"])
@pytest.mark.parametrize("name", ["abstract.json", "apartment.json"])
def test_json_round_trip_through_check(tmp_path, name, semantics):
    r = run(["extensions", data(name), "--semantics", semantics, "--json"])
    payload = json.loads(r.text)
    assert payload == r.payload and payload["semantics"] == semantics
    flag = ["--stable"] if semantics == "t-stable" else ["--admissible", semantics[:2]]
    for k, ext in enumerate(payload["extensions"]):
        p = tmp_path / f"ext{k}.json"
        p.write_text(json.dumps(ext), encoding="utf-8")
        assert run(["check", data(name), str(p), *flag]).code == EXIT_OK


def test_json_round_trip_ts_sample(tmp_path):
    r = run(["extensions", ABSTRACT, "--semantics", "ts-preferred", "--json"])
    exts = r.payload["extensions"]
    assert len(exts) > 1
    for k in (0, len(exts) // 2, len(exts) - 1):
        p = tmp_path / f"ext{k}.json"
        p.write_text(json.dumps(exts[k]), encoding="utf-8")
        assert run(["check", ABSTRACT, str(p), "--admissible", "ts"]).code == EXIT_OK


# ------------------------------------------------------------ snapshot


def test_snapshot_examples():
    r = run(["snapshot", ABSTRACT, "--at", "75"])
    assert r.code == EXIT_OK and "arguments: A C F G H I J" in r.text
    r = run(["snapshot", APARTMENT, "--at", "100"])
    assert "I" not in r.payload["arguments"] and len(r.payload["arguments"]) == 9
    assert run(["snapshot", ABSTRACT, "--at", "10e"]).code == EXIT_ERROR


def test_snapshot_with_semantics():
    r = run(["snapshot", APARTMENT, "--at", "40", "--semantics", "stable"])
    assert r.payload["extensions"] == [sorted("ABCEIJ")]
    assert "{A, B, C, E, I, J}" in r.text
    r = run(["snapshot", APARTMENT, "--at", "1/3"])
    assert r.payload["at"] == "1/3"


# ------------------------------------------------------------ defeats


def test_defeats_lines():
    r = run(["defeats", ABSTRACT])
    lines = r.text.splitlines()
    assert "J → I supported via [J,I] : {(70-90)}" in lines
    assert "E → A supported via [E,B,A] : {[100-100]}" in lines
    assert not any(line.startswith("D → B") for line in lines)


def test_defeats_relation_free(relation_free):
    r = run(["defeats", relation_free])
    assert r.code == EXIT_OK and r.text == "" and r.payload == []
    assert json.loads(run(["defeats", relation_free, "--json"]).text) == []


# ------------------------------------------------------------ timeline


def rows(text):
    out = {}
    for line in text.splitlines()[1:-1]:
        name, rest = line.split("|", 1)
        out[name.strip()] = rest
    return out


def test_timeline_apartment_g_row():
    r = run(["timeline", APARTMENT])
    geo = timeline_geometry(load_example("apartment.json"))
    g = rows(r.text)["G"]
    start, end = geo.columns[Fraction(50)], geo.columns[Fraction(150)]
    assert g[start] == "[" and g[end] == "]"
    assert g[:start].strip() == ""
    assert set(g[start + 1 : end]) <= {"-", "="}
    i = rows(r.text)["I"]
    assert i[geo.columns[Fraction(80)]] == "]"


def test_timeline_glyphs(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(
        json.dumps(
            {
                "arguments": [
                    {"id": "A", "availability": "{(0-2), (2-4]}"},
                    {"id": "B", "availability": "[2-2]"},
                    {"id": "C", "availability": "{}"},
                    {"id": "D", "availability": "[3-+inf)"},
                ]
            }
        ),
        encoding="utf-8",
    )
    r = run(["timeline", str(p), "--width", "12"])
    table = rows(r.text)
    a = table["A"].rstrip("|").rstrip()
    assert a[0] == "(" and ":" in a and a.endswith("]")
    assert "|" in table["B"].rstrip("|")
    assert table["C"].split("|")[0].strip() == ""
    assert "(!) empty availability" in r.text
    assert table["D"].rstrip("|").endswith("---")


def test_svg_and_ascii_agree():
    for name in ("abstract.json", "apartment.json", "editorial.json"):
        f = load_example(name)
        geo = timeline_geometry(f)
        svg = run(["timeline", data(name), "--format", "svg"]).text
        marks = dict(re.findall(r'data-breakpoint="([^"]+)" data-column="(\d+)"', svg))
        assert {k: int(v) for k, v in marks.items()} == {
            format_point(p): c for p, c in geo.columns.items()
        }
        ascii_rows = rows(run(["timeline", data(name)]).text)
        for a in f.arguments:
            # every bound glyph in the ascii row sits in a breakpoint column
            for k, ch in enumerate(ascii_rows[a].rstrip("|")):
                if ch in "[]()|:=":
                    assert k in geo.columns.values()
        assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def format_point(p):
    return format_number(p)


# ------------------------------------------------------------ entry point


def test_main_streams(capsys):
    assert main(["check", ABSTRACT, data("abstract_c1.json"), "--safe"]) == EXIT_FALSE
    out, err = capsys.readouterr()
    assert "safe: no" in out and not err
    assert main(["snapshot", ABSTRACT, "--at", "x"]) == EXIT_ERROR
    out, err = capsys.readouterr()
    assert not out and "error" in err


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "tbaf.cli", "defeats", ABSTRACT],
        capture_output=True,
        text=True,
        encoding="utf-8",
    )
    assert proc.returncode == 0 and "J → I supported" in proc.stdout
