"""
Semidirect products G⋊_hΓ and G⁽⁰⁾⋊_{h₀}Γ of a morphism.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from groupoid_core.errors import GroupoidMismatch
from groupoid_core.groupoid import FiniteGroupoid
from measure.haar import HaarSystem
from morphism.action import transformation_groupoid
from morphism.algebraic import AlgebraicMorphism, require_algebraic_morphism, unit_action


@dataclass(frozen=True)
class SemidirectGroupoid:
    """Transformation groupoid of a morphism's action, with its Haar system"""
    groupoid: FiniteGroupoid
    haar: HaarSystem
    provenance: str
    pair_index: Dict[Tuple[int, int], int]

    def pair(self, x: int, g: int) -> int:
        """Index of (x, γ)"""
        return self.pair_index[(x, g)]

    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(self.pair_index, key=self.pair_index.get))


def _unpack(m, source_haar: Optional[HaarSystem]) -> Tuple[AlgebraicMorphism, HaarSystem]:
    algebraic = getattr(m, "algebraic", m)
    haar = source_haar if source_haar is not None else getattr(m, "source_haar", None)
    if haar is None:
        raise GroupoidMismatch("a Haar system on the source is required", (algebraic.name,))
    if haar.groupoid != algebraic.source:
        raise GroupoidMismatch("Haar system does not live on the morphism's source", (algebraic.name,))
    return algebraic, haar


def semidirect_product(m, source_haar: Optional[HaarSystem] = None) -> SemidirectGroupoid:
    """G⋊_hΓ with Haar system {ε_x × λ^{ρ_h(r(x))}}"""
    algebraic, haar = _unpack(m, source_haar)
    require_algebraic_morphism(algebraic)
    name = f"{algebraic.target.name}⋊{algebraic.source.name}"
    groupoid, semi_haar, index = transformation_groupoid(algebraic.as_action(), haar, name=name)
    return SemidirectGroupoid(groupoid, semi_haar, algebraic.name or "h", index)


def unit_semidirect_product(m, source_haar: Optional[HaarSystem] = None) -> SemidirectGroupoid:
    """G⁽⁰⁾⋊_{h₀}Γ; pairs are indexed by (position of the unit in G⁽⁰⁾, γ)"""
    algebraic, haar = _unpack(m, source_haar)
    name = f"{algebraic.target.name}⁽⁰⁾⋊{algebraic.source.name}"
    groupoid, semi_haar, index = transformation_groupoid(unit_action(algebraic), haar, name=name)
    return SemidirectGroupoid(groupoid, semi_haar, f"{algebraic.name or 'h'}₀", index)
