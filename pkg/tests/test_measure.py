"""
Tests for Haar systems, unit measures and modular cocycles
"""

import sys
sys.path.insert(0, 'src')

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from groupoid_core.constructors import action_groupoid, cyclic_group, equivalence_relation, pair_groupoid
from groupoid_core.errors import (
    GroupoidMismatch,
    NonPositiveWeight,
    NotAUnit,
    NotQuasiInvariant,
    ParseError,
    ValidationError,
)
from measure.decomposition import decompose_haar, haar_from_decomposition
from measure.haar import (
    HaarSystem,
    canonical_counting_haar,
    check_haar,
    haar_from_unit_weights,
    haar_structure_weights,
    require_haar,
)
from measure.measures import (
    UnitMeasure,
    check_quasi_invariance,
    induced_measure,
    inverse_measure,
    null_sets_agree,
    quasi_invariance_witness,
    require_quasi_invariant,
)
from measure.modular import ModularCocycle, check_cocycle, modular_function, trivial_cocycle
from measure.rationals import format_rational, to_fraction

fractions = st.fractions(min_value=Fraction(1, 20), max_value=Fraction(20), max_denominator=12)


def test_rationals():
    """Weights are exact; floats are refused"""
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(2) == Fraction(2)
    assert to_fraction(" 1/3 ") == Fraction(1, 3)
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(2)) == "2/1"
    with pytest.raises(ParseError):
        to_fraction(0.5)
    with pytest.raises(ParseError):
        to_fraction("one half")
    with pytest.raises(ParseError):
        to_fraction("1/0")
    print("  Rationals: PASS")


def test_counting_haar():
    """weight ≡ 1 is always a Haar system"""
    for g in (pair_groupoid(["1", "2", "3"]), cyclic_group(4), equivalence_relation([["a", "b"], ["c"]])):
        assert check_haar(canonical_counting_haar(g)).passed
    print("  Counting Haar: PASS")


def test_haar_violations():
    """Range-dependent weights and zero weights are caught"""
    p2 = pair_groupoid(["1", "2"])
    by_range = HaarSystem(p2, {"(1,1)": 1, "(1,2)": 1, "(2,1)": Fraction(1, 2), "(2,2)": Fraction(1, 2)})
    report = check_haar(by_range)
    assert not report.passed
    assert {v.kind for v in report.violations} == {"left-invariance"}

    zero = HaarSystem(p2, [0, 0, 1, 1])
    report = check_haar(zero)
    assert "full-support" in {v.kind for v in report.violations}
    with pytest.raises(NonPositiveWeight):
        require_haar(zero)
    with pytest.raises(ValidationError):
        require_haar(by_range)
    with pytest.raises(ValidationError):
        HaarSystem(p2, [1, 1, 1])
    print("  Haar Violations: PASS")


def test_haar_from_unit_weights():
    """weight(x) = c(d(x))"""
    p2 = pair_groupoid(["1", "2"])
    h = haar_from_unit_weights(p2, {"(1,1)": 1, "(2,2)": Fraction(1, 2)})
    assert h.weight_of("(1,2)") == Fraction(1, 2)
    assert h.weight_of("(2,1)") == 1
    assert check_haar(h).passed
    assert haar_structure_weights(h) == {"(1,1)": 1, "(2,2)": Fraction(1, 2)}
    with pytest.raises(NonPositiveWeight):
        haar_from_unit_weights(p2, {"(1,1)": 1, "(2,2)": 0})
    with pytest.raises(ValidationError):
        haar_from_unit_weights(p2, {"(1,1)": 1})
    print("  Haar From Unit Weights: PASS")


@settings(max_examples=40, deadline=None)
@given(st.lists(fractions, min_size=4, max_size=4))
def test_unit_weight_haar_is_haar(weights):
    """Any positive unit weights give a Haar system that decomposes back"""
    g = equivalence_relation([["1", "2", "3"], ["4"]])
    c = dict(zip(g.unit_labels, weights))
    h = haar_from_unit_weights(g, c)
    assert check_haar(h).passed
    decomposition = decompose_haar(h)
    assert decomposition.recompose() == h.weights
    assert dict(decomposition.beta_tilde) == c
    assert decomposition.delta.is_trivial()
    assert haar_from_decomposition(g, UnitMeasure(g, c)) == h


def test_decomposition():
    """β̃ restricted to an orbit does not depend on the base point"""
    p2 = pair_groupoid(["1", "2"])
    weighted = haar_from_unit_weights(p2, {"(1,1)": 1, "(2,2)": Fraction(1, 2)})
    decomposition = decompose_haar(weighted)
    assert decomposition.orbit_measure("(1,1)") == decomposition.orbit_measure("(2,2)")
    assert all(b == 1 for b in decomposition.beta)
    assert haar_from_decomposition(p2, UnitMeasure(p2, {"(1,1)": 1, "(2,2)": Fraction(1, 2)})) == weighted
    with pytest.raises(NonPositiveWeight):
        haar_from_decomposition(p2, UnitMeasure(p2, {"(1,1)": 1}))
    with pytest.raises(GroupoidMismatch):
        haar_from_decomposition(cyclic_group(2), UnitMeasure(p2, {"(1,1)": 1, "(2,2)": 1}))
    print("  Decomposition: PASS")


def test_unit_measure():
    """Weights live on units and must not all vanish"""
    p2 = pair_groupoid(["1", "2"])
    mu = UnitMeasure(p2, {"(1,1)": Fraction(1, 4)})
    assert mu.support_labels == ("(1,1)",)
    assert mu.weight_of("(2,2)") == 0
    assert not mu.is_full()
    with pytest.raises(NotAUnit):
        UnitMeasure(p2, {"(1,2)": 1})
    with pytest.raises(NonPositiveWeight):
        UnitMeasure(p2, {"(1,1)": -1})
    with pytest.raises(ValidationError):
        UnitMeasure(p2, {"(1,1)": 0})
    print("  Unit Measure: PASS")


def test_induced_measures():
    """λ^μ and its inverse on pair(2) with μ = (1/4, 3/4)"""
    p2 = pair_groupoid(["1", "2"])
    haar = canonical_counting_haar(p2)
    mu = UnitMeasure(p2, {"(1,1)": Fraction(1, 4), "(2,2)": Fraction(3, 4)})
    induced = induced_measure(haar, mu)
    assert induced.weight_of("(1,2)") == Fraction(1, 4)
    assert inverse_measure(induced).weight_of("(1,2)") == Fraction(3, 4)
    print("  Induced Measures: PASS")


def test_quasi_invariance():
    """Saturated support is exactly quasi-invariance"""
    p2 = pair_groupoid(["1", "2"])
    haar = canonical_counting_haar(p2)
    one_point = UnitMeasure(p2, {"(1,1)": 1})
    assert not check_quasi_invariance(haar, one_point)
    assert not null_sets_agree(haar, one_point)
    assert quasi_invariance_witness(haar, one_point) in ("(1,2)", "(2,1)")
    with pytest.raises(NotQuasiInvariant):
        require_quasi_invariant(haar, one_point)
    with pytest.raises(NotQuasiInvariant):
        modular_function(haar, one_point)

    g = equivalence_relation([["1", "2"], ["3"]])
    orbit = UnitMeasure(g, {"(1,1)": 1, "(2,2)": 5})
    assert check_quasi_invariance(canonical_counting_haar(g), orbit)
    assert null_sets_agree(canonical_counting_haar(g), orbit)
    print("  Quasi-Invariance: PASS")


def test_modular_function():
    """Δ((1,2)) = 1/3 for μ = (1/4, 3/4) and counting Haar"""
    p2 = pair_groupoid(["1", "2"])
    haar = canonical_counting_haar(p2)
    mu = UnitMeasure(p2, {"(1,1)": Fraction(1, 4), "(2,2)": Fraction(3, 4)})
    delta = modular_function(haar, mu)
    assert delta.value_of("(1,2)") == Fraction(1, 3)
    assert delta.value_of("(2,1)") == 3
    assert delta.value_of("(1,1)") == 1
    assert check_cocycle(delta).passed
    assert not delta.is_trivial()
    print("  Modular Function: PASS")


def test_modular_function_on_support():
    """Δ lives on the reduction to supp μ"""
    g = equivalence_relation([["1", "2"], ["3"]])
    mu = UnitMeasure(g, {"(1,1)": 1, "(2,2)": 2})
    delta = modular_function(canonical_counting_haar(g), mu)
    assert len(delta.domain) == 4
    assert "(3,3)" not in delta.domain
    assert delta.value_of("(2,1)") == 2
    print("  Modular Function On Support: PASS")


@settings(max_examples=40, deadline=None)
@given(st.lists(fractions, min_size=3, max_size=3), st.lists(fractions, min_size=3, max_size=3))
def test_modular_is_cocycle(mu_weights, unit_weights):
    """Δ_μ is multiplicative for every full μ and Haar system"""
    g = action_groupoid(cyclic_group(3), ["a", "b", "c"],
                        lambda k, x: "abc"[("abc".index(x) + int(k)) % 3])
    units = g.unit_labels
    haar = haar_from_unit_weights(g, dict(zip(units, unit_weights)))
    mu = UnitMeasure(g, dict(zip(units, mu_weights)))
    delta = modular_function(haar, mu)
    assert check_cocycle(delta).passed
    for x in range(len(g)):
        expected = (mu.weight(g.r(x)) * haar.weight(x)) / (mu.weight(g.d(x)) * haar.weight(g.inv(x)))
        assert delta.value_of(g.label(x)) == expected


def test_cocycle_checks():
    """Broken cocycles are reported, nonpositive values refused"""
    z2 = cyclic_group(2)
    assert trivial_cocycle(z2).is_trivial()
    broken = ModularCocycle(z2, [Fraction(1), Fraction(2)])
    kinds = {v.kind for v in check_cocycle(broken).violations}
    assert "inverse" in kinds and "multiplicativity" in kinds
    with pytest.raises(ValidationError):
        ModularCocycle(z2, [Fraction(1), Fraction(0)])
    with pytest.raises(ValidationError):
        ModularCocycle(z2, [Fraction(1)])
    assert list(trivial_cocycle(z2).inv_sqrt()) == [1.0, 1.0]
    print("  Cocycle Checks: PASS")


if __name__ == "__main__":
    print("\nRunning tests...\n")
    test_rationals()
    test_counting_haar()
    test_haar_violations()
    test_haar_from_unit_weights()
    test_unit_weight_haar_is_haar()
    test_decomposition()
    test_unit_measure()
    test_induced_measures()
    test_quasi_invariance()
    test_modular_function()
    test_modular_function_on_support()
    test_modular_is_cocycle()
    test_cocycle_checks()
    print("\nAll tests passed!\n")
