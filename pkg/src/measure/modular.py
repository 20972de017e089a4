"""
Modular cocycles: positive exact multiplicative functions on a groupoid.

The same type carries the modular function Δ_μ (on the reduction to
supp μ), δ_G, and the morphism cocycles Δ_h (on G⋊_hΓ).
"""

import logging
import math
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from groupoid_core.errors import ValidationError
from groupoid_core.groupoid import FiniteGroupoid
from groupoid_core.reports import CheckReport
from groupoid_core.structure import restriction
from measure.haar import HaarSystem
from measure.measures import UnitMeasure, require_quasi_invariant

logger = logging.getLogger(__name__)


class ModularCocycle:
    """Positive rational value per element of a domain groupoid"""

    def __init__(self, domain: FiniteGroupoid, values: Sequence[Fraction], name: str = ""):
        if len(values) != len(domain):
            raise ValidationError("cocycle is not total on its domain", (domain.name,), axiom="table-shape")
        self.domain = domain
        self.name = name
        self._values: Tuple[Fraction, ...] = tuple(Fraction(v) for v in values)
        for x, v in enumerate(self._values):
            if v <= 0:
                raise ValidationError(f"cocycle value at {domain.label(x)} is not positive",
                                      (domain.label(x),), axiom="positivity")
        self._inv_sqrt: Optional[np.ndarray] = None

    @property
    def values(self) -> Tuple[Fraction, ...]:
        return self._values

    def value(self, x: int) -> Fraction:
        return self._values[x]

    def value_of(self, label: str) -> Fraction:
        return self._values[self.domain.index(label)]

    def inv_sqrt(self) -> np.ndarray:
        """Δ^{-1/2} in floating point, computed once"""
        if self._inv_sqrt is None:
            self._inv_sqrt = np.array([1.0 / math.sqrt(v) for v in self._values], dtype=float)
            self._inv_sqrt.setflags(write=False)
        return self._inv_sqrt

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self._values)

    def to_mapping(self) -> Dict[str, Fraction]:
        return dict(zip(self.domain.labels, self._values))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModularCocycle):
            return NotImplemented
        return self.domain == other.domain and self._values == other._values

    def __hash__(self) -> int:
        return hash(self._values)


def check_cocycle(c: ModularCocycle) -> CheckReport:
    """Exact unit, inverse and multiplicativity identities"""
    g = c.domain
    report = CheckReport(subject=c.name or "cocycle")
    for u in g.units:
        if c.value(u) != 1:
            report.add("unit", (g.label(u),), f"value {c.value(u)}")
    for x in range(len(g)):
        if c.value(g.inv(x)) * c.value(x) != 1:
            report.add("inverse", (g.label(x),), f"{c.value(x)} · {c.value(g.inv(x))} ≠ 1")
    for x, y, xy in g.composable_pairs():
        if c.value(xy) != c.value(x) * c.value(y):
            report.add("multiplicativity", (g.label(x), g.label(y)),
                       f"{c.value(xy)} ≠ {c.value(x)} · {c.value(y)}")
    return report


def require_cocycle(c: ModularCocycle) -> ModularCocycle:
    report = check_cocycle(c)
    if not report.passed:
        first = report.violations[0]
        raise ValidationError(f"{c.name or 'cocycle'} fails {first.kind}: {first.detail}",
                              first.witness, axiom="cocycle")
    return c


def trivial_cocycle(g: FiniteGroupoid, name: str = "δ") -> ModularCocycle:
    return ModularCocycle(g, [Fraction(1)] * len(g), name=name)


def modular_function(h: HaarSystem, mu: UnitMeasure) -> ModularCocycle:
    """Δ(x) = μ(r(x))·w(x) / (μ(d(x))·w(x⁻¹)) on Γ|_{supp μ}"""
    require_quasi_invariant(h, mu)
    g = h.groupoid
    domain = restriction(g, mu.support_labels, name=f"{g.name}|supp")
    values = []
    for lab in domain.labels:
        x = g.index(lab)
        values.append((mu.weight(g.r(x)) * h.weight(x)) / (mu.weight(g.d(x)) * h.weight(g.inv(x))))
    delta = ModularCocycle(domain, values, name=f"Δ_{mu.name or 'μ'}")
    require_cocycle(delta)
    logger.debug("modular function on %d elements, trivial=%s", len(domain), delta.is_trivial())
    return delta
