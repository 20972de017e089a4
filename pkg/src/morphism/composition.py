"""
Composition of morphisms and the identity morphism l_Γ.

ρ_kh = ρ_h∘ρ_k and γ·_kh x₂ = (γ·_h ρ_k(r(x₂)))·_k x₂.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from groupoid_core.errors import ChainMismatch, ValidationError
from groupoid_core.reports import CheckReport
from measure.haar import HaarSystem
from morphism.algebraic import AlgebraicMorphism
from morphism.morphism import ZakrzewskiMorphism, make_morphism

logger = logging.getLogger(__name__)


@lru_cache(maxsize=256)
def identity_morphism(haar: HaarSystem) -> ZakrzewskiMorphism:
    """l_Γ: ρ = id, γ·x = γx, Δ_l ≡ 1"""
    g = haar.groupoid
    rho = {u: u for u in g.units}
    act = {(a, b): ab for a, b, ab in g.composable_pairs()}
    return make_morphism(AlgebraicMorphism(g, g, rho, act, name="l"), haar, haar, name=f"l_{g.name}")


def require_chain(h: ZakrzewskiMorphism, k: ZakrzewskiMorphism) -> None:
    if h.target != k.source or h.target_haar != k.source_haar:
        raise ChainMismatch(f"{h.name} does not land where {k.name} starts", (h.name, k.name))


def delta_product_formula(h: ZakrzewskiMorphism, k: ZakrzewskiMorphism, x2: int, g: int, x1: int) -> Fraction:
    """Δ_k(x₂, (γ⁻¹·_h r(x₁))⁻¹) · Δ_h(x₁, γ) for x₁ ∈ G₁^{ρ_k(r(x₂))}"""
    G, G1 = h.source, h.target
    z = h.apply(G.inv(g), G1.r(x1))
    return k.delta_at(x2, G1.inv(z)) * h.delta_at(x1, g)


def delta_alternative_formula(h: ZakrzewskiMorphism, k: ZakrzewskiMorphism, x2: int, g: int, x1: int) -> Fraction:
    """Δ_k(γ⁻¹·_kh x₂, γ⁻¹·_h x₁)⁻¹ · Δ_h(x₁, γ) · Δ_k(x₂, x₁)"""
    G, G1 = h.source, h.target
    z = h.apply(G.inv(g), G1.r(x1))
    w = k.apply(z, x2)
    v = h.apply(G.inv(g), x1)
    return h.delta_at(x1, g) * k.delta_at(x2, x1) / k.delta_at(w, v)


def check_composite_delta(h: ZakrzewskiMorphism, k: ZakrzewskiMorphism, kh: ZakrzewskiMorphism) -> CheckReport:
    """Both product formulas agree with Δ_kh for every auxiliary x₁"""
    G, G1, G2 = h.source, h.target, k.target
    report = CheckReport(subject=kh.name)
    for x2, g in kh.semidirect.pairs():
        expected = kh.delta_at(x2, g)
        for x1 in G1.range_fiber(k.rho(G2.r(x2))):
            if delta_product_formula(h, k, x2, g, x1) != expected:
                report.add("product-formula", (G2.label(x2), G.label(g), G1.label(x1)))
            if delta_alternative_formula(h, k, x2, g, x1) != expected:
                report.add("alternative-formula", (G2.label(x2), G.label(g), G1.label(x1)))
    return report


def compose_morphisms(h: ZakrzewskiMorphism, k: ZakrzewskiMorphism, name: str = "") -> ZakrzewskiMorphism:
    """kh: Γ ⊳ G₂ for h: Γ ⊳ G₁ and k: G₁ ⊳ G₂"""
    require_chain(h, k)
    G, G2 = h.source, k.target
    rho = {x2: h.rho(k.rho(x2)) for x2 in G2.units}
    act: Dict[Tuple[int, int], int] = {}
    for x2 in range(len(G2)):
        u1 = k.rho(G2.r(x2))
        for g in G.source_fiber(h.rho(u1)):
            act[(g, x2)] = k.apply(h.apply(g, u1), x2)
    label = name or f"{k.name}∘{h.name}"
    algebraic = AlgebraicMorphism(G, G2, rho, act, name=label)
    kh = make_morphism(algebraic, h.source_haar, k.target_haar, name=label)
    report = check_composite_delta(h, k, kh)
    if not report.passed:
        first = report.violations[0]
        raise ValidationError(f"Δ_kh disagrees with the {first.kind}", first.witness, axiom="composition")
    logger.debug("composed %s", label)
    return kh
