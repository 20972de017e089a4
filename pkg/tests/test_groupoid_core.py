"""
Tests for the groupoid data model, constructors and structure queries
"""

import sys
sys.path.insert(0, 'src')

import pytest

from groupoid_core.constructors import (
    action_groupoid,
    cotrivial_set,
    cyclic_group,
    disjoint_union,
    equivalence_relation,
    from_group,
    group_bundle,
    pair_groupoid,
    symmetric_group3,
)
from groupoid_core.errors import (
    BadInverse,
    CompositionDomainMismatch,
    GroupoidLabError,
    MissingUnitAxiom,
    NotAUnit,
    NotComposable,
    UnknownElement,
    ValidationError,
)
from groupoid_core.groupoid import FiniteGroupoid, compose, validate_groupoid
from groupoid_core.structure import (
    hom_set,
    hom_set_sizes,
    is_group_bundle,
    is_principal,
    is_saturated,
    is_transitive,
    isotropy,
    isotropy_summary,
    orbits,
    principal_quotient,
    restriction,
    saturation,
)
from groupoid_core.union_find import UnionFind


def _swap_groupoid():
    return action_groupoid(cyclic_group(2), ["a", "b", "c"],
                           {("0", "a"): "a", ("0", "b"): "b", ("0", "c"): "c",
                            ("1", "a"): "b", ("1", "b"): "a", ("1", "c"): "c"})


def test_pair_groupoid():
    """X × X on two points"""
    g = pair_groupoid(["1", "2"])
    assert len(g) == 4
    assert g.unit_labels == ("(1,1)", "(2,2)")
    assert compose(g, "(1,2)", "(2,1)") == "(1,1)"
    assert compose(g, "(2,1)", "(1,2)") == "(2,2)"
    x = g.index("(1,2)")
    assert g.label(g.r(x)) == "(1,1)"
    assert g.label(g.d(x)) == "(2,2)"
    assert g.label(g.inv(x)) == "(2,1)"
    assert g.name == "pair"
    print("  Pair Groupoid: PASS")


def test_not_composable():
    """d(x) ≠ r(y) is an error, product() returns None"""
    g = pair_groupoid(["1", "2"])
    with pytest.raises(NotComposable):
        compose(g, "(1,2)", "(1,2)")
    assert g.product(g.index("(1,2)"), g.index("(1,2)")) is None
    with pytest.raises(UnknownElement):
        g.index("(3,3)")
    print("  Not Composable: PASS")


def test_groups():
    """Cyclic groups and S3"""
    z3 = cyclic_group(3)
    assert z3.name == "Z/3"
    assert z3.labels == ("0", "1", "2")
    assert compose(z3, "1", "2") == "0"
    assert compose(z3, "2", "2") == "1"
    s3 = symmetric_group3()
    assert len(s3) == 6 and len(s3.units) == 1
    assert s3.unit_labels == ("012",)
    # S3 is not abelian
    assert any(compose(s3, a, b) != compose(s3, b, a) for a in s3.labels for b in s3.labels)
    print("  Groups: PASS")


def test_bad_group_table():
    """A Cayley table without inverses is rejected"""
    rows = [[str((a + b) % 3) for b in range(3)] for a in range(3)]
    rows[1][2] = "1"
    with pytest.raises(BadInverse):
        from_group(["0", "1", "2"], rows)
    with pytest.raises(MissingUnitAxiom):
        from_group(["a", "b"], [["b", "a"], ["a", "a"]])
    with pytest.raises(ValidationError):
        from_group(["a", "b"], {("a", "a"): "a"})
    print("  Bad Group Table: PASS")


def test_validation_errors():
    """Each groupoid axiom has its own error"""
    raw = pair_groupoid(["1", "2"]).to_raw()
    bad_range = dict(raw, range=dict(raw["range"], **{"(1,2)": "(2,2)"}))
    with pytest.raises(CompositionDomainMismatch):
        validate_groupoid(bad_range)

    bad_inverse = dict(raw, inverse=dict(raw["inverse"], **{"(1,2)": "(1,2)"}))
    with pytest.raises(BadInverse):
        validate_groupoid(bad_inverse)

    missing = dict(raw, mul=[t for t in raw["mul"] if t[:2] != ["(1,2)", "(2,1)"]])
    with pytest.raises(CompositionDomainMismatch):
        validate_groupoid(missing)

    with pytest.raises(UnknownElement):
        validate_groupoid(dict(raw, units=["(1,1)", "(9,9)"]))

    with pytest.raises(ValidationError):
        FiniteGroupoid(["a", "a"], [0], [0, 0], [0, 0], [0, 0], {(0, 0): 0})
    print("  Validation Errors: PASS")


def test_raw_roundtrip():
    """to_raw / validate_groupoid give back the same tables"""
    for g in (pair_groupoid(["1", "2", "3"]), symmetric_group3(), _swap_groupoid(),
              disjoint_union(cyclic_group(2), pair_groupoid(["x", "y"]))):
        again = validate_groupoid(g.to_raw(), name=g.name)
        assert again == g
        assert again.labels == g.labels
    print("  Raw Roundtrip: PASS")


def test_action_groupoid():
    """Z/2 swapping a and b, fixing c"""
    g = _swap_groupoid()
    assert len(g) == 6 and len(g.units) == 3
    x = g.index("1|a")
    assert g.label(g.d(x)) == "0|a"
    assert g.label(g.r(x)) == "0|b"
    assert compose(g, "1|b", "1|a") == "0|a"
    parts = orbits(g)
    assert sorted(len(b) for b in parts.blocks) == [1, 2]
    assert parts.same_orbit("0|a", "0|b")
    assert not parts.same_orbit("0|a", "0|c")
    assert len(isotropy(g, "0|c")) == 2
    assert len(isotropy(g, "0|a")) == 1
    print("  Action Groupoid: PASS")


def test_bad_action():
    """An action that ignores the group law is rejected"""
    with pytest.raises(ValidationError):
        action_groupoid(cyclic_group(3), ["a", "b"],
                        lambda g, x: x if g == "0" else ("b" if x == "a" else "a"))
    print("  Bad Action: PASS")


def test_principal_quotient():
    """R has one element per pair of units in a common orbit"""
    g = _swap_groupoid()
    quotient, qmap = principal_quotient(g)
    assert len(quotient) == 5
    assert qmap["1|a"] == "(0|b,0|a)"
    assert qmap["1|c"] == "(0|c,0|c)"
    assert is_principal(quotient)
    assert not is_principal(g)
    print("  Principal Quotient: PASS")


def test_structure_predicates():
    """Transitive, principal and bundle predicates"""
    p3 = pair_groupoid(["1", "2", "3"])
    assert is_transitive(p3) and is_principal(p3)
    assert len(isotropy(p3, "(1,1)")) == 1
    bundle = group_bundle([("p", cyclic_group(2)), ("q", cyclic_group(3))])
    assert is_group_bundle(bundle)
    assert not is_transitive(bundle)
    assert len(orbits(bundle)) == 2
    points = cotrivial_set(["x", "y"])
    assert len(points) == 2 and len(points.units) == 2
    assert is_principal(points) and is_group_bundle(points)
    summary = isotropy_summary(bundle)
    assert sorted(s["isotropy_order"] for s in summary) == [2, 3]
    assert all(s["abelian"] for s in summary)
    print("  Structure Predicates: PASS")


def test_restriction_and_saturation():
    """Reductions to saturated sets"""
    g = equivalence_relation([["1", "2"], ["3"]])
    assert is_saturated(g, ["(1,1)", "(2,2)"])
    assert not is_saturated(g, ["(1,1)"])
    assert saturation(g, ["(1,1)"]) == ("(1,1)", "(2,2)")
    reduced = restriction(g, ["(1,1)", "(2,2)"])
    assert len(reduced) == 4
    assert "(1,2)" in reduced
    with pytest.raises(NotAUnit):
        restriction(g, ["(1,2)"])
    sizes = hom_set_sizes(g)
    assert sizes[("(1,1)", "(2,2)")] == 1
    assert ("(1,1)", "(3,3)") not in sizes
    assert hom_set(g, "(1,1)", "(2,2)") == ("(1,2)",)
    assert hom_set(g, "(1,1)", "(3,3)") == ()
    assert set(hom_set(_swap_groupoid(), "0|b", "0|a")) == {"1|a"}
    with pytest.raises(NotAUnit):
        hom_set(g, "(1,2)", "(2,2)")
    print("  Restriction and Saturation: PASS")


def test_disjoint_union():
    """Part k contributes labels 'k:label'"""
    g = disjoint_union(cyclic_group(2), pair_groupoid(["1", "2"]), cyclic_group(3))
    assert len(g) == 2 + 4 + 3
    assert "1:(1,2)" in g and "2:2" in g
    assert compose(g, "0:1", "0:1") == "0:0"
    with pytest.raises(GroupoidLabError):
        compose(g, "0:1", "2:1")
    assert len(orbits(g)) == 3
    print("  Disjoint Union: PASS")


def test_union_find():
    """Union-find keeps first-insertion order"""
    uf = UnionFind()
    for i in range(5):
        uf.make_set(i)
    assert uf.union(0, 1)
    assert uf.union(2, 3)
    assert not uf.union(1, 0)
    assert uf.size(1) == 2 and uf.size(4) == 1
    assert uf.find(0) == uf.find(1)
    assert uf.find(2) == uf.find(3)
    assert uf.find(0) != uf.find(2)
    assert uf.groups() == [[0, 1], [2, 3], [4]]
    print("  Union-Find: PASS")


if __name__ == "__main__":
    print("\nRunning tests...\n")
    test_pair_groupoid()
    test_not_composable()
    test_groups()
    test_bad_group_table()
    test_validation_errors()
    test_raw_roundtrip()
    test_action_groupoid()
    test_bad_action()
    test_principal_quotient()
    test_structure_predicates()
    test_restriction_and_saturation()
    test_disjoint_union()
    test_union_find()
    print("\nAll tests passed!\n")
