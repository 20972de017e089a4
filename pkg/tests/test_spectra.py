"""
Tests for the eigen-solvers, representations and C*-norms
"""

import sys
sys.path.insert(0, 'src')

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from algebra.element import AlgebraElement
from groupoid_core.constructors import cyclic_group, pair_groupoid
from groupoid_core.errors import UnitNotFound, ValidationError
from measure.haar import canonical_counting_haar, haar_from_unit_weights
from measure.measures import UnitMeasure
from morphism.composition import identity_morphism
from morphism.zoo import h_mu_trivial_morphism, principal_quotient_morphism
from spectra.checks import (
    c_star_identity_residual,
    check_functoriality,
    check_h_hat_restriction,
    check_multiplier_bound,
    check_nondegenerate,
    check_norm_sandwich,
    check_rep_homomorphism,
)
from spectra.eigen import bisection_eigenvalues, jacobi_eigenvalues, jacobi_eigh
from spectra.hilbert import WeightedHilbertSpace
from spectra.norms import (
    NORM_TOL,
    build_norm_report,
    ii_norm,
    norm_h,
    operator_norm,
    reduced_norm,
    trivial_norm,
    trivial_representation_matrix,
)
from spectra.representation import pi_matrix, representation

TOL = 1e-9

P3 = pair_groupoid(["1", "2", "3"])
P3_HAAR = haar_from_unit_weights(P3, {"(1,1)": 1, "(2,2)": Fraction(1, 2), "(3,3)": 3})
P3_MU = UnitMeasure(P3, {"(1,1)": 1, "(2,2)": 2, "(3,3)": Fraction(1, 5)}, name="μ")

coefficients = st.lists(st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False),
                        min_size=2 * len(P3), max_size=2 * len(P3))


def _element(values, haar=P3_HAAR):
    n = len(haar.groupoid)
    return AlgebraElement(haar, np.array(values[:n]) + 1j * np.array(values[n:2 * n]))


def _hermitian(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=12))
def test_jacobi_against_numpy(seed, n):
    """Jacobi and Sturm bisection agree with LAPACK to 1e-8"""
    m = _hermitian(seed, n)
    reference = np.linalg.eigvalsh(m)
    values, sweeps = jacobi_eigh(m)
    assert np.max(np.abs(values - reference)) <= 1e-8 * max(1.0, np.max(np.abs(reference)))
    assert np.max(np.abs(bisection_eigenvalues(m) - reference)) <= 1e-8 * max(1.0, np.max(np.abs(reference)))
    assert sweeps <= 100


def test_eigen_edge_cases():
    """Diagonal, empty and non-Hermitian inputs"""
    values, sweeps = jacobi_eigh(np.diag([3.0, -1.0, 2.0]))
    assert list(values) == [-1.0, 2.0, 3.0]
    assert sweeps == 0
    assert len(jacobi_eigenvalues(np.zeros((0, 0)))) == 0
    assert len(bisection_eigenvalues(np.zeros((0, 0)))) == 0
    assert np.allclose(bisection_eigenvalues(np.array([[2.0, 1j], [-1j, 2.0]])), [1.0, 3.0])
    with pytest.raises(ValidationError):
        jacobi_eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValidationError):
        jacobi_eigh(np.ones((2, 3)))
    print("  Eigen Edge Cases: PASS")


def test_operator_norm():
    """Known operator norms"""
    assert abs(operator_norm(np.ones((2, 2))) - 2.0) < TOL
    assert abs(operator_norm(np.eye(3)) - 1.0) < TOL
    assert abs(operator_norm(np.diag([3.0, -4j])) - 4.0) < TOL
    assert operator_norm(np.zeros((0, 0))) == 0.0
    # a weighted space changes the norm of a non-normal matrix
    space = WeightedHilbertSpace(["x", "y"], [Fraction(1), Fraction(4)])
    shift = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert abs(operator_norm(shift, space) - 0.5) < TOL
    print("  Operator Norm: PASS")


def test_weighted_adjoint():
    """⟨Mξ, ζ⟩ = ⟨ξ, M*ζ⟩ in ℓ²(weights)"""
    space = WeightedHilbertSpace(["a", "b", "c"], [Fraction(1, 3), Fraction(2), Fraction(5)])
    m = _hermitian(7, 3) + np.triu(np.ones((3, 3)))
    xi = np.array([1.0, -2j, 0.5])
    zeta = np.array([0.25j, 1.0, -1.0])
    assert abs(space.inner(m @ xi, zeta) - space.inner(xi, space.adjoint(m) @ zeta)) < TOL
    assert abs(space.norm(np.array([1.0, 0.0, 0.0])) ** 2 - 1 / 3) < TOL
    with pytest.raises(ValidationError):
        WeightedHilbertSpace(["a"], [Fraction(0)])
    print("  Weighted Adjoint: PASS")


def test_reduced_norm_values():
    """‖δ_e ± δ_g‖_red = 2 on Z/2, ‖δ_(1,2)‖_red = 1 on pair(3)"""
    z2 = canonical_counting_haar(cyclic_group(2))
    plus = AlgebraElement.from_mapping(z2, {"0": 1, "1": 1})
    minus = AlgebraElement.from_mapping(z2, {"0": 1, "1": -1})
    assert abs(reduced_norm(plus) - 2.0) < TOL
    assert abs(reduced_norm(minus) - 2.0) < TOL
    assert np.max(np.abs(pi_matrix(identity_morphism(z2), "0", plus) - np.ones((2, 2)))) < TOL
    p3 = canonical_counting_haar(pair_groupoid(["1", "2", "3"]))
    assert abs(reduced_norm(AlgebraElement.point_mass(p3, "(1,2)")) - 1.0) < TOL
    assert reduced_norm(AlgebraElement.zero(p3)) == 0.0
    print("  Reduced Norm Values: PASS")


def test_trivial_representation():
    """II_μ of the constant 1 on pair(2), uniform μ, is all-ones"""
    p2 = canonical_counting_haar(pair_groupoid(["1", "2"]))
    ones = AlgebraElement(p2, np.ones(4))
    uniform = UnitMeasure(p2.groupoid, {"(1,1)": 1, "(2,2)": 1})
    assert np.max(np.abs(trivial_representation_matrix(p2, uniform, ones) - np.ones((2, 2)))) < TOL
    assert abs(ii_norm(p2, uniform, ones) - 2.0) < TOL
    assert abs(trivial_norm(p2, uniform, ones) - reduced_norm(ones)) < NORM_TOL
    print("  Trivial Representation: PASS")


def test_representation_errors():
    """π_{h,t} needs a unit of the target"""
    l = identity_morphism(canonical_counting_haar(pair_groupoid(["1", "2"])))
    with pytest.raises(UnitNotFound):
        representation(l, "(1,2)")
    with pytest.raises(UnitNotFound):
        representation(l, "(7,7)")
    assert representation(l, "(2,2)").space.basis == ("(1,2)", "(2,2)")
    print("  Representation Errors: PASS")


def test_norm_sandwich():
    """‖f‖_h ≤ ‖f‖_red ≤ ‖f‖_I on Z/2"""
    z2 = canonical_counting_haar(cyclic_group(2))
    plus = AlgebraElement.from_mapping(z2, {"0": 1, "1": 1})
    mu = UnitMeasure(z2.groupoid, {"0": 1})
    morphisms = [identity_morphism(z2), principal_quotient_morphism(z2), h_mu_trivial_morphism(z2, mu)]
    assert check_norm_sandwich(plus, morphisms, [mu]).passed
    report = build_norm_report(plus, morphisms, [mu], element="δ_e+δ_g")
    # the quotient sees only the sum of the coefficients
    assert abs(report.morphism_norms["quotient"] - 2.0) < TOL
    assert abs(norm_h(principal_quotient_morphism(z2), AlgebraElement.from_mapping(z2, {"0": 1, "1": -1}))) < TOL
    doc = report.to_dict()
    assert doc["violations"] == []
    assert set(doc["tolerances"]) == {"norm", "residual", "adjoint"}
    print("  Norm Sandwich: PASS")


@settings(max_examples=20, deadline=None)
@given(coefficients, coefficients)
def test_representation_identities(a, b):
    """π is a *-homomorphism bounded by the I-norm, for l and h_μ"""
    f, g = _element(a), _element(b)
    h = h_mu_trivial_morphism(P3_HAAR, P3_MU)
    for m in (identity_morphism(P3_HAAR), h):
        for t in m.target.units:
            assert check_rep_homomorphism(m, t, f, g).passed


@settings(max_examples=20, deadline=None)
@given(coefficients, coefficients, coefficients)
def test_norm_properties(a, b, c):
    """Sandwich, C*-identity, multiplier bound and ĥ restriction"""
    f = _element(a)
    h = h_mu_trivial_morphism(P3_HAAR, P3_MU)
    assert check_norm_sandwich(f, [h], [P3_MU]).passed
    assert c_star_identity_residual(f) < 1e-7
    n = len(h.target)
    xi = AlgebraElement(h.target_haar, np.array(b[:n]) + 1j * np.array(c[:n]))
    assert check_multiplier_bound(h, f, xi) < 1e-7
    for t in h.target.units:
        assert check_h_hat_restriction(h, t, f, xi) < 1e-7
    l = identity_morphism(P3_HAAR)
    s = h.target.units[0]
    assert check_functoriality(l, h, f, _element(b), xi, s) < 1e-7


def test_nondegenerate():
    """π_{h,t} is nondegenerate for every target unit"""
    h = h_mu_trivial_morphism(P3_HAAR, P3_MU)
    for m in (identity_morphism(P3_HAAR), h):
        assert all(check_nondegenerate(m, t) for t in m.target.units)
    print("  Nondegenerate: PASS")


if __name__ == "__main__":
    print("\nRunning tests...\n")
    test_jacobi_against_numpy()
    test_eigen_edge_cases()
    test_operator_norm()
    test_weighted_adjoint()
    test_reduced_norm_values()
    test_trivial_representation()
    test_representation_errors()
    test_norm_sandwich()
    test_representation_identities()
    test_norm_properties()
    test_nondegenerate()
    print("\nAll tests passed!\n")
