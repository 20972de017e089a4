"""
Tests for the JSON definition files and the groupoidlab command line
"""

import sys
sys.path.insert(0, 'src')
sys.path.insert(0, '.')

import io
import json
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from algebra.element import AlgebraElement
from cli.serialization import (
    MorphismDefinition,
    NamedElement,
    Scenario,
    dumps,
    load,
    loads,
    save,
    to_document,
)
from cli.suite import run_scenario
from groupoid_core.constructors import cyclic_group, pair_groupoid, symmetric_group3
from groupoid_core.errors import MorphismAxiomError, ParseError
from measure.haar import canonical_counting_haar, haar_from_unit_weights
from measure.measures import UnitMeasure
from morphism.action import GroupoidAction
from morphism.algebraic import AlgebraicMorphism
from morphism.morphism import morphisms_equal
from morphism.zoo import action_to_pair_morphism, cyclic_quotient_map, from_group_homomorphism

import groupoidlab


def _run(*argv):
    """main() with captured stdout/stderr"""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = groupoidlab.main([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


def _swap_morphism():
    z2 = cyclic_group(2)
    swap = GroupoidAction(z2, ["a", "b"], {"a": "0", "b": "0"},
                          {("0", "a"): "a", ("0", "b"): "b", ("1", "a"): "b", ("1", "b"): "a"})
    return action_to_pair_morphism(swap, {"a": Fraction(1, 3), "b": Fraction(2, 3)},
                                   canonical_counting_haar(z2), name="swap")


def _shift_definition():
    z2 = cyclic_group(2)
    shift = AlgebraicMorphism.from_labels(z2, z2, {"0": "0"},
                                          {("0", "0"): "1", ("0", "1"): "0", ("1", "0"): "1", ("1", "1"): "0"})
    haar = canonical_counting_haar(z2)
    return MorphismDefinition(shift, haar, haar, name="shift")


def test_roundtrip():
    """Every artifact kind survives dumps/loads"""
    p3 = pair_groupoid(["1", "2", "3"])
    haar = haar_from_unit_weights(p3, {"(1,1)": 1, "(2,2)": Fraction(1, 2), "(3,3)": 3}, name="λ")
    mu = UnitMeasure(p3, {"(1,1)": Fraction(2, 7), "(3,3)": 5}, name="μ")
    f = AlgebraElement.from_mapping(haar, {"(1,2)": 0.1 + 2j, "(3,1)": -1.5})

    for artifact in (p3, symmetric_group3(), haar, mu):
        assert loads(dumps(artifact)) == artifact
    again = loads(dumps(NamedElement("f", f)))
    assert again.name == "f"
    assert np.array_equal(again.element.coeffs, f.coeffs)
    assert again.element.haar == haar
    swap = _swap_morphism()
    assert morphisms_equal(loads(dumps(swap)), swap)
    print("  Roundtrip: PASS")


def test_parse_errors():
    """Malformed documents raise ParseError with a position"""
    with pytest.raises(ParseError) as exc:
        loads('{"kind": "groupoid",\n  "name": }', path="broken.json")
    assert exc.value.line == 2
    assert exc.value.path == "broken.json"
    with pytest.raises(ParseError):
        loads('{"kind": "ring"}')
    with pytest.raises(ParseError):
        loads('{"kind": "haar", "groupoid": "nowhere-to-be-found", "canonical": true}')
    doc = {"kind": "measure", "groupoid": to_document(pair_groupoid(["1", "2"])), "weights": {"(1,1)": 0.5}}
    with pytest.raises(ParseError):
        loads(json.dumps(doc))
    with pytest.raises(ParseError):
        load("no/such/file.json")
    print("  Parse Errors: PASS")


def test_references():
    """Names resolve against sibling artifacts and neighbouring files"""
    p2 = pair_groupoid(["1", "2"])
    bundle = loads(json.dumps({"kind": "bundle", "artifacts": {
        "λ": {"kind": "haar", "groupoid": "p2", "unit_weights": {"(1,1)": "1", "(2,2)": "1/2"}},
        "p2": to_document(p2),
        "f": {"kind": "algebra-element", "haar": "λ", "coefficients": {"(1,2)": {"re": 1, "im": -1}}},
    }}))
    assert bundle["λ"].groupoid is bundle["p2"]
    assert bundle["λ"].weight_of("(1,2)") == Fraction(1, 2)
    assert bundle["f"].element.value("(1,2)") == 1 - 1j

    with tempfile.TemporaryDirectory() as tmp:
        save(p2, Path(tmp) / "p2.json")
        (Path(tmp) / "h.json").write_text(json.dumps({"kind": "haar", "groupoid": "p2.json", "canonical": True}))
        haar = load(Path(tmp) / "h.json")
        assert haar.groupoid == p2
        assert haar.name == "h"
    print("  References: PASS")


def test_unvalidated_morphism():
    """validate=False keeps broken morphism tables for the check commands"""
    text = dumps(_shift_definition())
    definition = loads(text, validate=False)
    assert isinstance(definition, MorphismDefinition)
    with pytest.raises(MorphismAxiomError):
        definition.build()
    with pytest.raises(MorphismAxiomError):
        loads(text)
    print("  Unvalidated Morphism: PASS")


def test_validate_and_info():
    """validate prints OK, info reports orbits and isotropy"""
    with tempfile.TemporaryDirectory() as tmp:
        path = save(pair_groupoid(["1", "2"]), Path(tmp) / "p2.json")
        code, out, _ = _run("validate", path)
        assert code == 0
        assert out.startswith("OK groupoid pair")

        code, out, _ = _run("info", path, "--format", "json")
        info = json.loads(out)
        assert code == 0
        assert (info["elements"], info["units"], info["orbits"]) == (4, 2, 1)
        assert info["transitive"] and info["principal"]

        code, _, err = _run("validate", Path(tmp) / "missing.json")
        assert code == 2
        assert err.startswith("error:")
    print("  Validate and Info: PASS")


def test_haar_commands():
    """check, canonical and from-weights"""
    with tempfile.TemporaryDirectory() as tmp:
        groupoid = save(pair_groupoid(["1", "2"]), Path(tmp) / "p2.json")
        bad = Path(tmp) / "bad.json"
        bad.write_text(json.dumps({"kind": "haar", "groupoid": "p2.json",
                                   "weights": {"(1,1)": "1", "(1,2)": "1", "(2,1)": "1/2", "(2,2)": "1/2"}}))
        assert _run("haar", "check", bad)[0] == 1
        code, out, _ = _run("haar", "check", bad, "--format", "json")
        assert json.loads(out)["passed"] is False

        counting = Path(tmp) / "counting.json"
        code, out, _ = _run("haar", "canonical", groupoid, "--out", counting)
        assert code == 0 and "Saved" in out
        assert _run("haar", "check", counting)[0] == 0

        code, out, _ = _run("haar", "from-weights", groupoid, "--weight", "(1,1)=1", "--weight", "(2,2)=1/2")
        doc = json.loads(out)
        assert code == 0
        assert doc["weights"]["(1,2)"] == "1/2"
        assert doc["weights"]["(2,1)"] == "1/1"

        assert _run("haar", "from-weights", groupoid, "--weight", "(1,1)=1")[0] == 2
        assert _run("haar", "from-weights", groupoid, "--weight", "(1,1)")[0] == 2
    print("  Haar Commands: PASS")


def test_norm_command():
    """Norm kinds and the quasi-invariance precondition"""
    with tempfile.TemporaryDirectory() as tmp:
        z2 = canonical_counting_haar(cyclic_group(2))
        groupoid = save(z2.groupoid, Path(tmp) / "z2.json")
        haar = save(z2, Path(tmp) / "counting.json")
        plus = save(NamedElement("plus", AlgebraElement.from_mapping(z2, {"0": 1, "1": 1})), Path(tmp) / "plus.json")
        mu = save(UnitMeasure(z2.groupoid, {"0": 1}, name="μ"), Path(tmp) / "mu.json")

        code, out, _ = _run("norm", groupoid, haar, plus, "--kind", "red")
        assert code == 0
        assert abs(json.loads(out)["value"] - 2.0) < 1e-9

        code, out, _ = _run("norm", groupoid, haar, plus, "--measure", mu)
        doc = json.loads(out)
        assert code == 0
        assert doc["violations"] == []

        assert _run("norm", groupoid, haar, plus, "--kind", "II")[0] == 2

        p2 = canonical_counting_haar(pair_groupoid(["1", "2"]))
        p2_groupoid = save(p2.groupoid, Path(tmp) / "p2.json")
        p2_haar = save(p2, Path(tmp) / "p2-counting.json")
        f = save(NamedElement("f", AlgebraElement.point_mass(p2, "(1,2)")), Path(tmp) / "f.json")
        one_point = save(UnitMeasure(p2.groupoid, {"(1,1)": 1}), Path(tmp) / "one-point.json")
        assert _run("norm", p2_groupoid, p2_haar, f, "--measure", one_point)[0] == 2
        # element and Haar system from different groupoids
        assert _run("norm", groupoid, haar, f)[0] == 2
    print("  Norm Command: PASS")


def test_morphism_commands():
    """check, delta and compose"""
    with tempfile.TemporaryDirectory() as tmp:
        swap = save(_swap_morphism(), Path(tmp) / "swap.json")
        code, out, _ = _run("morphism", "delta", swap, "--format", "json")
        doc = json.loads(out)
        assert code == 0
        assert doc["trivial"] is False
        assert doc["delta"]["<(a,a);1>"] == "1/2"
        assert doc["delta"]["<(b,b);1>"] == "2/1"
        assert _run("morphism", "check", swap)[0] == 0

        shift = save(_shift_definition(), Path(tmp) / "shift.json")
        code, out, _ = _run("morphism", "check", shift, "--format", "json")
        assert code == 1
        assert "2" in {v["kind"] for v in json.loads(out)["violations"]}
        assert _run("validate", shift)[0] == 2

        z8, z4, z2 = (canonical_counting_haar(cyclic_group(n)) for n in (8, 4, 2))
        first = save(from_group_homomorphism(z8, z4, cyclic_quotient_map(8, 4)), Path(tmp) / "first.json")
        second = save(from_group_homomorphism(z4, z2, cyclic_quotient_map(4, 2)), Path(tmp) / "second.json")
        composite = Path(tmp) / "composite.json"
        code, _, _ = _run("morphism", "compose", first, second, "--name", "q", "--out", composite)
        assert code == 0
        kh = load(composite)
        assert kh.name == "q"
        assert morphisms_equal(kh, from_group_homomorphism(z8, z2, cyclic_quotient_map(8, 2)))
        assert _run("morphism", "compose", second, first)[0] == 2
    print("  Morphism Commands: PASS")


def _scenario_document(expected_delta="1/3"):
    return {
        "kind": "scenario",
        "name": "pair-two",
        "artifacts": {
            "p2": to_document(pair_groupoid(["1", "2"])),
            "counting": {"kind": "haar", "groupoid": "p2", "canonical": True},
            "μ": {"kind": "measure", "groupoid": "p2", "weights": {"(1,1)": "1/4", "(2,2)": "3/4"}},
            "f": {"kind": "algebra-element", "haar": "counting", "coefficients": {"(1,2)": 1}},
            "shift": to_document(_shift_definition()),
        },
        "checks": [
            {"check": "groupoid", "groupoid": "p2", "expect": {"elements": 4, "transitive": True}},
            {"check": "haar", "haar": "counting"},
            {"check": "quasi-invariance", "haar": "counting", "measure": "μ"},
            {"check": "modular", "haar": "counting", "measure": "μ", "expect": {"(1,2)": expected_delta}},
            {"check": "morphism", "morphism": "shift", "expect_error": "condition-2"},
            {"check": "norm", "element": "f", "measures": ["μ"], "expect_reduced": 1.0, "name": "norms of f"},
        ],
    }


def test_scenario():
    """Scenario checks run in file order and name their outcomes"""
    scenario = loads(json.dumps(_scenario_document()), validate=False)
    assert isinstance(scenario, Scenario)
    report = run_scenario(scenario, seed=7)
    assert report.passed
    names = [o.prop for o in report.cases[0].outcomes]
    assert names[0] == "000.groupoid"
    assert names[-1] == "norms of f"

    wrong = run_scenario(loads(json.dumps(_scenario_document("3")), validate=False))
    assert not wrong.passed
    assert [o.prop for _, o in wrong.failures()] == ["003.modular"]
    print("  Scenario: PASS")


def test_verify_command():
    """verify exits 0 on a passing scenario and 1 on a failing one"""
    with tempfile.TemporaryDirectory() as tmp:
        good = Path(tmp) / "good.json"
        good.write_text(json.dumps(_scenario_document(), ensure_ascii=False), encoding="utf-8")
        bad = Path(tmp) / "bad.json"
        bad.write_text(json.dumps(_scenario_document("3"), ensure_ascii=False), encoding="utf-8")

        code, out, _ = _run("verify", "--scenario", good)
        doc = json.loads(out)
        assert code == 0
        assert doc["passed"] and len(doc["fingerprint"]) == 64

        report = Path(tmp) / "reports" / "bad.txt"
        code, _, err = _run("verify", "--scenario", bad, "--format", "text", "--out", report)
        assert code == 1
        assert "Saved" in err
        assert "FAIL case 0" in report.read_text(encoding="utf-8")
    print("  Verify Command: PASS")


def test_shipped_scenarios():
    """The definition files under scenarios/ load and pass"""
    for name in ("pair2", "z2", "z4", "quotient"):
        assert _run("validate", f"scenarios/{name}.json")[0] == 0
    code, out, _ = _run("morphism", "delta", "scenarios/quotient.json", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["trivial"]
    assert len(doc["delta"]) == 8
    code, out, _ = _run("verify", "--scenario", "scenarios/checks.json")
    assert code == 0, out
    print("  Shipped Scenarios: PASS")


if __name__ == "__main__":
    print("\nRunning tests...\n")
    test_roundtrip()
    test_parse_errors()
    test_references()
    test_unvalidated_morphism()
    test_validate_and_info()
    test_haar_commands()
    test_norm_command()
    test_morphism_commands()
    test_scenario()
    test_verify_command()
    test_shipped_scenarios()
    print("\nAll tests passed!\n")
