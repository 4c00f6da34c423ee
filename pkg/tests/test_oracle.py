import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tbaf.baf import CapExceeded, stable_extensions
from tbaf.baf import extensions as classical_extensions
from tbaf.defeats import Collection, basic_collection
from tbaf.framework import BAF, TBAF, lift, snapshot_at, validate
from tbaf.intervals import IntervalSet
from tbaf.oracle import (
    JOINT_LIMIT,
    GeneratorConfig,
    brute_force_factored,
    brute_force_joint,
    brute_force_timed_extensions,
    check_propositions,
    check_theorem1,
    corpus,
    joint_space_size,
    projection,
    random_tbaf,
    replay,
    sample_points,
    within_oracle_caps,
)
from tbaf.semantics import SemanticsFlavor, enumerate_extensions, is_conflict_free_t

P = IntervalSet.parse
seeds = st.integers(0, 10**6)


def test_generator_deterministic():
    cfg = GeneratorConfig(seed=42)
    assert random_tbaf(cfg) == random_tbaf(GeneratorConfig(seed=42))
    assert corpus(5) == corpus(5)


def test_generator_density_zero():
    for seed in range(20):
        f = random_tbaf(GeneratorConfig(seed=seed, attack_density=0, support_density=0))
        assert not f.attacks and not f.supports


def test_generator_valid():
    f = random_tbaf(GeneratorConfig(seed=1, max_arguments=5))
    assert validate(f).ok and 1 <= len(f.arguments) <= 5


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_generator_disjoint_and_bounded(seed):
    f = random_tbaf(GeneratorConfig(seed=seed))
    assert not (f.attacks & f.supports)
    assert all(len(t.intervals) <= 3 for t in f.availability.values())
    assert all(0 <= p <= 10 for t in f.availability.values() for p in t.endpoints)


def test_relation_free_unique_extension():
    f = TBAF.build({"A": "[0-3]", "B": "{(1-2), [5-6]}"})
    for fl in SemanticsFlavor:
        assert brute_force_timed_extensions(f, fl) == {basic_collection(f)}


def test_chain_lift_matches_classical():
    b = BAF(set("ABC"), {("B", "A")}, {("C", "B")})
    f = lift(b)
    for fl in SemanticsFlavor:
        got = brute_force_timed_extensions(f, fl)
        assert {c.args() for c in got} == set(classical_extensions(b, fl.classical))
        assert got == set(enumerate_extensions(f, fl).extensions)


def test_triangle_regains_conflict_freeness():
    f = TBAF.build({"A": "[0-10]", "B": "[4-6]", "C": "[0-10]"}, [("B", "A")], [("C", "B")])
    assert not is_conflict_free_t(f, Collection({"A": "[0-10]", "C": "[0-10]"}))
    outside = P("{[0-4), (6-10]}")
    assert is_conflict_free_t(f, Collection({"A": outside, "C": "[0-10]"}))
    expected = Collection({"A": outside, "B": "[4-6]", "C": "[0-10]"})
    for fl in SemanticsFlavor:
        assert brute_force_timed_extensions(f, fl) == {expected}


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_joint_and_factored_agree(seed):
    f = random_tbaf(GeneratorConfig(seed=seed, max_arguments=3, max_intervals_per_argument=2, endpoint_universe=(0, 4)))
    if joint_space_size(f) > JOINT_LIMIT:
        return
    for fl in SemanticsFlavor:
        assert brute_force_joint(f, fl) == brute_force_factored(f, fl)


def test_oracle_caps():
    f = TBAF.build({f"a{i}": "[0-1]" for i in range(7)})
    assert not within_oracle_caps(f)
    with pytest.raises(CapExceeded):
        brute_force_timed_extensions(f, SemanticsFlavor.T_STABLE)
    g = TBAF.build({"A": "{" + ", ".join(f"[{k}-{k}]" for k in range(9)) + "}"})
    with pytest.raises(CapExceeded):
        brute_force_timed_extensions(g, SemanticsFlavor.T_STABLE)


def test_sample_points_cover_regions():
    f = TBAF.build({"A": "[0-2]", "B": "(1-3)"})
    half = Fraction(1, 2)
    assert sample_points(f) == [-1, 0, half, 1, 3 * half, 2, 5 * half, 3, 4]


def test_theorem1_apartment_at_40(apartment):
    (ext,) = enumerate_extensions(apartment, "t-stable").extensions
    proj = projection(ext, 40)
    assert proj == frozenset("CEAIJB")
    assert proj in stable_extensions(snapshot_at(apartment, 40))
    assert check_theorem1(apartment, SemanticsFlavor.T_STABLE).passed


def test_theorem1_empty_framework():
    v = check_theorem1(TBAF.build({}), SemanticsFlavor.T_STABLE)
    assert v.passed


def test_propositions_on_abstract(abstract):
    verdicts = check_propositions(abstract)
    assert len(verdicts) == 6
    assert all(v.passed for v in verdicts), [str(v) for v in verdicts if not v.passed]
    assert all(v.cases > 0 for v in verdicts)


def test_prop1b_vacuous_without_closure():
    # D supports C and C is never in the collection: closure fails, nothing to check
    f = TBAF.build({"C": "[0-2]", "D": "[0-2]", "F": "[0-2]"}, [("F", "C")], [("D", "C")])
    verdicts = {v.name.split(":")[0]: v for v in check_propositions(f)}
    assert verdicts["prop1b"].passed


def test_counterexample_replays():
    f = TBAF.build({"A": "[0-2]", "B": "[1-3]"}, [("A", "B")])
    bogus = Collection({"B": "[1-3]"})
    v = check_theorem1(f, SemanticsFlavor.T_STABLE, [bogus])
    assert not v.passed
    doc = json.loads(json.dumps(v.counterexample))
    assert doc["collection"] == {"profiles": [{"id": "B", "times": "{[1-3]}"}]}
    assert replay(doc) and replay(doc)
    good = check_theorem1(f, SemanticsFlavor.T_STABLE)
    assert good.passed and good.cases > 0


def test_prop1a_counterexample_shape_replays():
    # a hand-made record: the collection is not safe, so replay reports no failure
    f = TBAF.build({"A": "[0-1]"}, [("A", "A")])
    doc = {
        "property": "prop1a: safe => every t-included collection conflict-free",
        "framework": {"arguments": [{"id": "A", "availability": "[0-1]"}], "attacks": [["A", "A"]], "supports": []},
        "collection": {"profiles": [{"id": "A", "times": "[0-1]"}]},
        "witness": {"region": "{(0-1)}", "subcollection": ["A"]},
    }
    assert validate(f).ok
    assert replay(doc) is False


def test_corpus_mostly_within_caps():
    fs = corpus(200)
    assert len(fs) == 200
    assert sum(map(within_oracle_caps, fs)) >= 150
