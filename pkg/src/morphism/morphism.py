"""
Zakrzewski morphisms h: (Γ, λ) ⊳ (G, ν).

An algebraic morphism plus Haar systems on both sides and the cocycle
Δ_h on G⋊_hΓ tying them together (condition (6)). Δ_h is computed from
the ratio formula and then verified; it is never supplied.
"""

import logging
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np

from groupoid_core.errors import GroupoidMismatch, MorphismAxiomError
from groupoid_core.groupoid import FiniteGroupoid
from groupoid_core.reports import CheckReport
from measure.decomposition import decompose_haar, haar_from_decomposition
from measure.haar import HaarSystem, require_haar
from measure.measures import UnitMeasure
from measure.modular import ModularCocycle, check_cocycle, modular_function
from morphism.algebraic import AlgebraicMorphism, require_algebraic_morphism
from morphism.semidirect import SemidirectGroupoid, semidirect_product, unit_semidirect_product

logger = logging.getLogger(__name__)


def principal_is_proper(g: FiniteGroupoid) -> bool:
    """The principal groupoid of a finite groupoid is always proper"""
    return True


class ZakrzewskiMorphism:
    """A verified morphism; build it with make_morphism"""

    def __init__(self, algebraic: AlgebraicMorphism, source_haar: HaarSystem, target_haar: HaarSystem,
                 semidirect: SemidirectGroupoid, delta: ModularCocycle, name: str = ""):
        self.algebraic = algebraic
        self.source_haar = source_haar
        self.target_haar = target_haar
        self.semidirect = semidirect
        self.delta = delta
        self.name = name or algebraic.name
        self._kernel: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]] = None

    @property
    def source(self) -> FiniteGroupoid:
        return self.algebraic.source

    @property
    def target(self) -> FiniteGroupoid:
        return self.algebraic.target

    def rho(self, t: int) -> int:
        return self.algebraic.rho(t)

    def apply(self, g: int, x: int) -> int:
        return self.algebraic.apply(g, x)

    def delta_at(self, x: int, g: int) -> Fraction:
        """Δ_h(x, γ) for ρ_h(r(x)) = r(γ)"""
        return self.delta.value(self.semidirect.pair(x, g))

    def delta_of(self, x_label: str, g_label: str) -> Fraction:
        return self.delta_at(self.target.index(x_label), self.source.index(g_label))

    def kernel(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Per pair (x, γ) of G⋊_hΓ: x, γ, γ⁻¹·x and Δ_h(x,γ)^{-1/2}·λ(γ)"""
        if self._kernel is None:
            pairs = self.semidirect.pairs()
            G = self.source
            xs = np.array([x for x, _ in pairs], dtype=np.intp)
            gs = np.array([g for _, g in pairs], dtype=np.intp)
            back = np.array([self.apply(G.inv(g), x) for x, g in pairs], dtype=np.intp)
            factor = self.delta.inv_sqrt() * self.source_haar.as_floats()[gs]
            self._kernel = (xs, gs, back, factor)
        return self._kernel

    def __repr__(self) -> str:
        return f"ZakrzewskiMorphism({self.name or 'h'}: {self.source.name} ⊳ {self.target.name})"


def delta_ratio(m: AlgebraicMorphism, source_haar: HaarSystem, target_haar: HaarSystem,
                y: int, eta: int) -> Fraction:
    """Δ_h(y,η) = ν_t(y)·λ(η) / (ν_t(η⁻¹·y)·λ(η⁻¹)), ν_t({x}) = ν(x⁻¹)"""
    G, H = m.source, m.target
    moved = m.apply(G.inv(eta), y)
    numerator = target_haar.weight(H.inv(y)) * source_haar.weight(eta)
    denominator = target_haar.weight(H.inv(moved)) * source_haar.weight(G.inv(eta))
    return numerator / denominator


def check_condition6(m: AlgebraicMorphism, source_haar: HaarSystem, target_haar: HaarSystem,
                     semi: SemidirectGroupoid, delta: ModularCocycle) -> CheckReport:
    """Condition (6) on every point mass, range dependence and the cocycle identities

    For a point mass g at (y, η) the two sides of (6) at t = d(y) are
    Δ_h(y,η)·λ(η⁻¹)·ν_t(η⁻¹·y) and λ(η)·ν_t(y); by linearity the whole
    condition holds iff the two per-pair tallies below agree.
    """
    G, H = m.source, m.target
    report = CheckReport(subject=m.name or "morphism")
    lhs: Dict[int, Fraction] = {}
    rhs: Dict[int, Fraction] = {}
    for (x, g), p in semi.pair_index.items():
        nu_t = target_haar.weight(H.inv(x))
        lam = source_haar.weight(g)
        q = semi.pair(m.apply(G.inv(g), x), G.inv(g))
        lhs[q] = lhs.get(q, Fraction(0)) + delta.value(q) * lam * nu_t
        rhs[p] = rhs.get(p, Fraction(0)) + lam * nu_t
    for p, value in rhs.items():
        if lhs.get(p, Fraction(0)) != value:
            report.add("6", (semi.groupoid.label(p),), f"{lhs.get(p, 0)} ≠ {value}")
    for (x, g), p in semi.pair_index.items():
        if delta.value(p) != delta.value(semi.pair(H.r(x), g)):
            report.add("range-dependence", (H.label(x), G.label(g)), "Δ_h(x,γ) ≠ Δ_h(r(x),γ)")
    for v in check_cocycle(delta).violations:
        report.add(f"cocycle-{v.kind}", v.witness, v.detail)
    return report


def compute_delta_h(m: AlgebraicMorphism, source_haar: HaarSystem, target_haar: HaarSystem,
                    semi: Optional[SemidirectGroupoid] = None) -> ModularCocycle:
    """The unique Δ_h solving condition (6), verified exhaustively

    Full-support Haar systems make every ratio defined and positive, so
    no error is expected on a valid algebraic morphism.
    """
    semi = semi or semidirect_product(m, source_haar)
    values = [delta_ratio(m, source_haar, target_haar, x, g) for x, g in semi.pairs()]
    delta = ModularCocycle(semi.groupoid, values, name=f"Δ_{m.name or 'h'}")
    report = check_condition6(m, source_haar, target_haar, semi, delta)
    if not report.passed:
        first = report.violations[0]
        raise MorphismAxiomError("6", f"Δ_h fails {first.kind}: {first.detail}", first.witness)
    return delta


def make_morphism(m: AlgebraicMorphism, source_haar: HaarSystem, target_haar: HaarSystem,
                  name: str = "") -> ZakrzewskiMorphism:
    """Verify conditions (1)-(6) and wrap the result"""
    if source_haar.groupoid != m.source or target_haar.groupoid != m.target:
        raise GroupoidMismatch("Haar systems do not match the morphism's groupoids", (m.name,))
    require_haar(source_haar)
    require_haar(target_haar)
    require_algebraic_morphism(m)
    semi = semidirect_product(m, source_haar)
    delta = compute_delta_h(m, source_haar, target_haar, semi)
    logger.debug("morphism %s verified: %d pairs, Δ trivial=%s", name or m.name,
                 len(semi.groupoid), delta.is_trivial())
    return ZakrzewskiMorphism(m, source_haar, target_haar, semi, delta, name=name)


def delta_from_unit_modular(h: ZakrzewskiMorphism) -> ModularCocycle:
    """Δ_h(x,γ) = δ_G(γ⁻¹·_h r(x)) · Δ(r(x), γ)

    Δ is the modular function of β̃ (from the decomposition of ν) on
    G⁽⁰⁾⋊_{h₀}Γ with its Haar system.
    """
    G, H = h.source, h.target
    decomposition = decompose_haar(h.target_haar)
    units = unit_semidirect_product(h)
    position = {t: k for k, t in enumerate(H.units)}
    beta_tilde = UnitMeasure(units.groupoid, {
        units.groupoid.label(units.pair(position[t], h.rho(t))): decomposition.beta_tilde[H.label(t)]
        for t in H.units})
    delta_units = modular_function(units.haar, beta_tilde)
    values = []
    for x, g in h.semidirect.pairs():
        t = H.r(x)
        delta_g = decomposition.delta.value(h.apply(G.inv(g), t))
        values.append(delta_g * delta_units.value(units.pair(position[t], g)))
    return ModularCocycle(h.semidirect.groupoid, values, name=f"Δ_{h.name or 'h'} via h₀")


def morphism_with_decomposed_haar(m: AlgebraicMorphism, source_haar: HaarSystem,
                                  beta_tilde: Optional[UnitMeasure] = None,
                                  name: str = "") -> ZakrzewskiMorphism:
    """Choose ν = haar_from_decomposition(G, β̃) on the target (β̃ ≡ 1 by default)"""
    units = unit_semidirect_product(m, source_haar)
    principal_is_proper(units.groupoid)
    if beta_tilde is None:
        beta_tilde = UnitMeasure(m.target, {u: 1 for u in m.target.unit_labels}, name="β̃")
    return make_morphism(m, source_haar, haar_from_decomposition(m.target, beta_tilde), name=name)


def morphisms_equal(h: ZakrzewskiMorphism, k: ZakrzewskiMorphism) -> bool:
    """Equal ρ_h, equal action tables, equal Δ_h (exact)"""
    return (h.algebraic.same_tables(k.algebraic)
            and h.source_haar == k.source_haar and h.target_haar == k.target_haar
            and h.delta.values == k.delta.values)
