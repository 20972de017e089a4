"""
Measures on the unit space and the measures they induce on the groupoid.
"""

from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from groupoid_core.errors import (
    GroupoidMismatch,
    NonPositiveWeight,
    NotAUnit,
    NotQuasiInvariant,
    ValidationError,
)
from groupoid_core.groupoid import FiniteGroupoid
from measure.haar import HaarSystem
from measure.rationals import RationalLike, to_fraction


class UnitMeasure:
    """Nonnegative exact weights on Γ⁽⁰⁾; units left out weigh 0"""

    def __init__(self, groupoid: FiniteGroupoid, weights: Mapping[str, RationalLike], name: str = ""):
        self.groupoid = groupoid
        self.name = name
        values: Dict[int, Fraction] = {u: Fraction(0) for u in groupoid.units}
        for lab, w in weights.items():
            u = groupoid.index(lab)
            if not groupoid.is_unit(u):
                raise NotAUnit(f"measure weight given on non-unit {lab}", (lab,))
            value = to_fraction(w)
            if value < 0:
                raise NonPositiveWeight(f"measure weight of {lab} is negative", (lab,))
            values[u] = value
        if not any(values.values()):
            raise ValidationError("unit measure has empty support", (), axiom="empty-support")
        self._weights = values

    def weight(self, u: int) -> Fraction:
        return self._weights[u]

    def weight_of(self, label: str) -> Fraction:
        return self._weights[self.groupoid.index(label)]

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(u for u in self.groupoid.units if self._weights[u] > 0)

    @property
    def support_labels(self) -> Tuple[str, ...]:
        return tuple(self.groupoid.label(u) for u in self.support)

    def is_full(self) -> bool:
        return len(self.support) == len(self.groupoid.units)

    def to_mapping(self) -> Dict[str, Fraction]:
        return {self.groupoid.label(u): w for u, w in self._weights.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitMeasure):
            return NotImplemented
        return self.groupoid == other.groupoid and self._weights == other._weights

    def __hash__(self) -> int:
        return hash((self.groupoid, tuple(sorted(self._weights.items()))))

    def __repr__(self) -> str:
        return f"UnitMeasure({self.name or '<anon>'}, support={list(self.support_labels)})"


class ElementMeasure:
    """A measure on the groupoid given by its point masses"""

    def __init__(self, groupoid: FiniteGroupoid, weights: Tuple[Fraction, ...]):
        self.groupoid = groupoid
        self.weights = tuple(weights)

    def weight_of(self, label: str) -> Fraction:
        return self.weights[self.groupoid.index(label)]

    def null_set(self) -> frozenset:
        return frozenset(x for x, w in enumerate(self.weights) if w == 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementMeasure):
            return NotImplemented
        return self.groupoid == other.groupoid and self.weights == other.weights

    def __hash__(self) -> int:
        return hash(self.weights)


def _same_groupoid(h: HaarSystem, mu: UnitMeasure) -> None:
    if h.groupoid is not mu.groupoid and h.groupoid != mu.groupoid:
        raise GroupoidMismatch("Haar system and measure live on different groupoids",
                               (h.groupoid.name, mu.groupoid.name))


def induced_measure(h: HaarSystem, mu: UnitMeasure) -> ElementMeasure:
    """λ^μ({x}) = μ(r(x))·weight(x)"""
    _same_groupoid(h, mu)
    g = h.groupoid
    return ElementMeasure(g, tuple(mu.weight(g.r(x)) * h.weight(x) for x in range(len(g))))


def inverse_measure(m: ElementMeasure) -> ElementMeasure:
    """Image under inversion: m⁻¹({x}) = m({x⁻¹})"""
    g = m.groupoid
    return ElementMeasure(g, tuple(m.weights[g.inv(x)] for x in range(len(g))))


def quasi_invariance_witness(h: HaarSystem, mu: UnitMeasure) -> Optional[str]:
    """An element leaving supp μ, or None when the support is saturated"""
    _same_groupoid(h, mu)
    g = h.groupoid
    for x in range(len(g)):
        if (mu.weight(g.r(x)) > 0) != (mu.weight(g.d(x)) > 0):
            return g.label(x)
    return None


def check_quasi_invariance(h: HaarSystem, mu: UnitMeasure) -> bool:
    """Saturated-support criterion for λ^μ ~ (λ^μ)⁻¹"""
    return quasi_invariance_witness(h, mu) is None


def require_quasi_invariant(h: HaarSystem, mu: UnitMeasure) -> None:
    witness = quasi_invariance_witness(h, mu)
    if witness is not None:
        g = h.groupoid
        x = g.index(witness)
        raise NotQuasiInvariant(
            f"support of {mu.name or 'μ'} is not saturated: {witness} joins "
            f"{g.label(g.d(x))} and {g.label(g.r(x))}",
            (witness, g.label(g.d(x)), g.label(g.r(x))))


def null_sets_agree(h: HaarSystem, mu: UnitMeasure) -> bool:
    """Brute-force comparison of the null sets of λ^μ and (λ^μ)⁻¹"""
    m = induced_measure(h, mu)
    return m.null_set() == inverse_measure(m).null_set()
