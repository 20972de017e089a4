"""
Constructors for the standard families of morphisms.

Group homomorphisms, set morphisms, morphisms into pair groupoids
coming from actions, the h_μ morphisms of quasi-invariant measures, and
the quotient onto the principal groupoid.
"""

from typing import Dict, Mapping, Optional, Sequence, Tuple

from groupoid_core.constructors import cotrivial_set, pair_groupoid, pair_label
from groupoid_core.errors import (
    ImageNotSaturated,
    NonPositiveWeight,
    NotAHomomorphism,
    UnitsNotBijective,
)
from groupoid_core.structure import is_saturated, principal_quotient
from measure.haar import HaarSystem, canonical_counting_haar, haar_from_unit_weights
from measure.measures import UnitMeasure, require_quasi_invariant
from measure.rationals import RationalLike, to_fraction
from morphism.action import GroupoidAction, transformation_groupoid, unit_space_action
from morphism.algebraic import AlgebraicMorphism
from morphism.morphism import ZakrzewskiMorphism, make_morphism, principal_is_proper


def from_group_homomorphism(source_haar: HaarSystem, target_haar: HaarSystem, phi: Mapping[str, str],
                            name: str = "") -> ZakrzewskiMorphism:
    """ρ_h = (φ⁽⁰⁾)⁻¹ and γ·_h x = φ(γ)x"""
    G, H = source_haar.groupoid, target_haar.groupoid
    missing = [lab for lab in G.labels if lab not in phi]
    if missing:
        raise NotAHomomorphism("φ is not total", tuple(missing[:3]))
    f = [H.index(phi[lab]) for lab in G.labels]
    for a, b, ab in G.composable_pairs():
        fab = H.product(f[a], f[b])
        if fab is None or fab != f[ab]:
            raise NotAHomomorphism(f"φ({G.label(a)}{G.label(b)}) ≠ φ({G.label(a)})φ({G.label(b)})",
                                   (G.label(a), G.label(b)))
    unit_image = {f[u]: u for u in G.units}
    if len(unit_image) != len(G.units) or set(unit_image) != set(H.units):
        raise UnitsNotBijective("φ does not map the units of the source bijectively onto the target units",
                                tuple(G.unit_labels))
    act = {}
    for x in range(len(H)):
        for g in G.source_fiber(unit_image[H.r(x)]):
            act[(g, x)] = H.mul(f[g], x)
    algebraic = AlgebraicMorphism(G, H, unit_image, act, name=name or "φ")
    return make_morphism(algebraic, source_haar, target_haar, name=name or "φ")


def to_homomorphism(h: ZakrzewskiMorphism) -> Dict[str, str]:
    """φ(γ) = γ·_h ρ_h⁻¹(d(γ)); requires ρ_h bijective"""
    G, H = h.source, h.target
    inverse = {h.rho(t): t for t in H.units}
    if len(inverse) != len(H.units) or set(inverse) != set(G.units):
        raise UnitsNotBijective("ρ_h is not a bijection of unit spaces", tuple(H.unit_labels))
    return {G.label(g): H.label(h.apply(g, inverse[G.d(g)])) for g in range(len(G))}


def to_set_morphism(source_haar: HaarSystem, points: Sequence[str], rho: Mapping[str, str],
                    weights: Optional[Mapping[str, RationalLike]] = None, name: str = "") -> ZakrzewskiMorphism:
    """Morphism into cotrivial(X), determined by ρ_h; the action is trivial"""
    G = source_haar.groupoid
    image = sorted({str(rho[p]) for p in points})
    if not is_saturated(G, image):
        raise ImageNotSaturated("image of ρ_h is not a union of orbits", tuple(image))
    X = cotrivial_set(points, name="X")
    nu = haar_from_unit_weights(X, weights or {p: 1 for p in X.labels})
    rho_idx = {X.index(p): G.index(rho[p]) for p in X.labels}
    act = {(g, x): x for x in range(len(X)) for g in G.source_fiber(rho_idx[x])}
    return make_morphism(AlgebraicMorphism(G, X, rho_idx, act, name=name or "set"), source_haar, nu,
                         name=name or "set")


def action_to_pair_morphism(action: GroupoidAction, mu: Mapping[str, RationalLike], source_haar: HaarSystem,
                            name: str = "") -> ZakrzewskiMorphism:
    """ρ_h(x,x) = ρ(x), γ·_h(x,y) = (γ·x, y), ν = {ε_x × μ}"""
    G = action.actor
    weights = {}
    for p in action.space:
        w = to_fraction(mu[p]) if p in mu else 0
        if w <= 0:
            raise NonPositiveWeight(f"μ({p}) must be positive", (p,))
        weights[p] = w
    X = pair_groupoid(action.space, name="X×X")
    nu = haar_from_unit_weights(X, {pair_label(p, p): w for p, w in weights.items()}, name="ε×μ")

    semi, semi_haar, index = transformation_groupoid(action, source_haar)
    induced = UnitMeasure(semi, {semi.label(index[(x, action.rho(x))]): weights[p]
                                 for x, p in enumerate(action.space)}, name="μ")
    require_quasi_invariant(semi_haar, induced)

    rho = {X.index(pair_label(p, p)): action.rho(x) for x, p in enumerate(action.space)}
    act: Dict[Tuple[int, int], int] = {}
    for (g, x) in action.domain():
        moved = action.space[action.apply(g, x)]
        for y in action.space:
            act[(g, X.index(pair_label(action.space[x], y)))] = X.index(pair_label(moved, y))
    return make_morphism(AlgebraicMorphism(G, X, rho, act, name=name or "pair"), source_haar, nu,
                         name=name or "pair")


def h_mu_trivial_morphism(source_haar: HaarSystem, mu: UnitMeasure, name: str = "") -> ZakrzewskiMorphism:
    """h_μ: Γ ⊳ S₀×S₀ with γ·(u,v) = (r(γ), v), S₀ = supp μ"""
    require_quasi_invariant(source_haar, mu)
    G = source_haar.groupoid
    principal_is_proper(G)
    support = mu.support_labels
    action = unit_space_action(G, support)
    return action_to_pair_morphism(action, {u: mu.weight_of(u) for u in support}, source_haar,
                                   name=name or f"h_{mu.name or 'μ'}")


def principal_quotient_morphism(source_haar: HaarSystem, name: str = "") -> ZakrzewskiMorphism:
    """The homomorphism (r, d): Γ → R as a morphism, counting Haar on R"""
    quotient, qmap = principal_quotient(source_haar.groupoid)
    return from_group_homomorphism(source_haar, canonical_counting_haar(quotient), qmap,
                                   name=name or "quotient")


def cyclic_quotient_map(n: int, m: int) -> Dict[str, str]:
    """Z/n → Z/m, k ↦ k mod m (m divides n)"""
    return {str(k): str(k % m) for k in range(n)}
