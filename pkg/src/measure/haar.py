"""
Haar systems on finite groupoids.

On a finite groupoid a Haar system is a strictly positive weight per
element, invariant under left translation: weight(xy) = weight(y) for
y ∈ Γ^{d(x)}. Every such system has the form weight(x) = c(d(x)).
"""

import logging
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from groupoid_core.errors import NonPositiveWeight, ValidationError
from groupoid_core.groupoid import FiniteGroupoid
from groupoid_core.reports import CheckReport
from measure.rationals import RationalLike, to_fraction

logger = logging.getLogger(__name__)


class HaarSystem:
    """Per-element exact weights on a groupoid

    Construction only requires the weights to be total; check_haar
    decides whether they form a Haar system.
    """

    def __init__(self, groupoid: FiniteGroupoid,
                 weights: Union[Sequence[RationalLike], Mapping[str, RationalLike]], name: str = ""):
        self.groupoid = groupoid
        self.name = name
        if isinstance(weights, Mapping):
            missing = [lab for lab in groupoid.labels if lab not in weights]
            if missing:
                raise ValidationError("weight map is not total", tuple(missing[:3]), axiom="table-shape")
            values = [weights[lab] for lab in groupoid.labels]
        else:
            values = list(weights)
            if len(values) != len(groupoid):
                raise ValidationError("weight list length differs from the element count",
                                      (len(values), len(groupoid)), axiom="table-shape")
        self._weights: Tuple[Fraction, ...] = tuple(to_fraction(v) for v in values)
        self._floats: Optional[np.ndarray] = None

    @property
    def weights(self) -> Tuple[Fraction, ...]:
        return self._weights

    def weight(self, x: int) -> Fraction:
        return self._weights[x]

    def weight_of(self, label: str) -> Fraction:
        return self._weights[self.groupoid.index(label)]

    def lambda_upper(self, u: int) -> Dict[int, Fraction]:
        """λ^u on Γ^u"""
        return {x: self._weights[x] for x in self.groupoid.range_fiber(u)}

    def lambda_lower(self, u: int) -> Dict[int, Fraction]:
        """λ_u on Γ_u: λ_u({x}) = weight(x⁻¹)"""
        g = self.groupoid
        return {x: self._weights[g.inv(x)] for x in g.source_fiber(u)}

    def as_floats(self) -> np.ndarray:
        if self._floats is None:
            self._floats = np.array([float(w) for w in self._weights], dtype=float)
            self._floats.setflags(write=False)
        return self._floats

    def to_mapping(self) -> Dict[str, Fraction]:
        return dict(zip(self.groupoid.labels, self._weights))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, HaarSystem):
            return NotImplemented
        return self._weights == other._weights and self.groupoid == other.groupoid

    def __hash__(self) -> int:
        return hash((self.groupoid, self._weights))

    def __repr__(self) -> str:
        return f"HaarSystem({self.name or '<anon>'} on {self.groupoid!r})"


def check_haar(h: HaarSystem) -> CheckReport:
    """Exhaustive exact check of full support and left invariance"""
    g = h.groupoid
    report = CheckReport(subject=h.name or "haar")
    for x in range(len(g)):
        if h.weight(x) <= 0:
            report.add("full-support", (g.label(x),), f"weight {h.weight(x)}")
    for x in range(len(g)):
        for y in g.range_fiber(g.d(x)):
            xy = g.mul(x, y)
            if h.weight(xy) != h.weight(y):
                report.add("left-invariance", (g.label(x), g.label(y)),
                           f"weight({g.label(xy)}) = {h.weight(xy)} ≠ weight({g.label(y)}) = {h.weight(y)}")
    logger.debug("check_haar on %r: %d violations", g, len(report.violations))
    return report


def require_haar(h: HaarSystem) -> HaarSystem:
    """Raise on the first failed Haar axiom"""
    report = check_haar(h)
    if not report.passed:
        first = report.violations[0]
        if first.kind == "full-support":
            raise NonPositiveWeight(f"Haar weight must be positive: {first.detail}", first.witness)
        raise ValidationError(f"not left invariant: {first.detail}", first.witness, axiom="haar-invariance")
    return h


def canonical_counting_haar(g: FiniteGroupoid) -> HaarSystem:
    """weight ≡ 1"""
    return HaarSystem(g, [Fraction(1)] * len(g), name="counting")


def haar_from_unit_weights(g: FiniteGroupoid, c: Mapping[str, RationalLike], name: str = "") -> HaarSystem:
    """weight(x) = c(d(x)); the general Haar system on a finite groupoid"""
    values: Dict[int, Fraction] = {}
    for u in g.units:
        lab = g.label(u)
        if lab not in c:
            raise ValidationError(f"no weight given for unit {lab}", (lab,), axiom="table-shape")
        w = to_fraction(c[lab])
        if w <= 0:
            raise NonPositiveWeight(f"unit weight c({lab}) = {w} is not positive", (lab,))
        values[u] = w
    return HaarSystem(g, [values[g.d(x)] for x in range(len(g))], name=name or "unit-weighted")


def haar_structure_weights(h: HaarSystem) -> Dict[str, Fraction]:
    """c(q) = weight of any element of Γ_q^q, here the unit q itself"""
    g = h.groupoid
    return {g.label(u): h.weight(u) for u in g.units}
