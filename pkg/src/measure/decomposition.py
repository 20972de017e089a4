"""
Decomposition of a Haar system over the principal groupoid.

With the isotropy normalization F₀ = indicator of the units, every
finite Haar system factors as weight(x) = beta(x) · beta_tilde(d(x))
with beta ≡ 1 and delta ≡ 1.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from groupoid_core.errors import GroupoidMismatch, NonPositiveWeight, ValidationError
from groupoid_core.groupoid import FiniteGroupoid
from groupoid_core.structure import orbits
from measure.haar import HaarSystem, require_haar
from measure.measures import UnitMeasure
from measure.modular import ModularCocycle, trivial_cocycle


@dataclass(frozen=True)
class HaarDecomposition:
    """beta on elements, beta_tilde on units, delta = δ_G"""
    groupoid: FiniteGroupoid
    beta: Tuple[Fraction, ...]
    beta_tilde: Mapping[str, Fraction]
    delta: ModularCocycle

    def orbit_measure(self, t: str) -> Dict[str, Fraction]:
        """β̃ on the orbit of t; the same map for every t in that orbit"""
        parts = orbits(self.groupoid)
        block = parts.blocks[parts.orbit_index[t]]
        return {s: self.beta_tilde[s] for s in block}

    def recompose(self) -> Tuple[Fraction, ...]:
        g = self.groupoid
        return tuple(self.beta[x] * self.beta_tilde[g.label(g.d(x))] for x in range(len(g)))


def decompose_haar(h: HaarSystem) -> HaarDecomposition:
    require_haar(h)
    g = h.groupoid
    beta = tuple(Fraction(1) for _ in range(len(g)))
    beta_tilde = {g.label(u): h.weight(u) for u in g.units}
    decomposition = HaarDecomposition(g, beta, beta_tilde, trivial_cocycle(g, name="δ_G"))
    if decomposition.recompose() != h.weights:
        bad = next(x for x in range(len(g)) if decomposition.recompose()[x] != h.weight(x))
        raise ValidationError("Haar weights are not constant on source fibers", (g.label(bad),),
                              axiom="recomposition")
    return decomposition


def haar_from_decomposition(g: FiniteGroupoid, beta_tilde: UnitMeasure) -> HaarSystem:
    """weight(x) = β̃(d(x)) for a strictly positive β̃"""
    if beta_tilde.groupoid is not g and beta_tilde.groupoid != g:
        raise GroupoidMismatch("β̃ lives on a different groupoid", (g.name, beta_tilde.groupoid.name))
    if not beta_tilde.is_full():
        missing = [g.label(u) for u in g.units if beta_tilde.weight(u) == 0]
        raise NonPositiveWeight("β̃ must be strictly positive on every unit", tuple(missing[:3]))
    return HaarSystem(g, [beta_tilde.weight(g.d(x)) for x in range(len(g))], name="decomposed")
