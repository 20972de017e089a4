"""
Algebraic morphisms Γ ⊳ G: a momentum map ρ_h: G⁽⁰⁾ → Γ⁽⁰⁾ and a left
action of Γ on G along ρ_h∘r, compatible with the multiplication of G.
"""

import logging
from typing import Dict, Iterable, Mapping, Optional, Tuple

from groupoid_core.errors import DomainMismatch, ImageNotSaturated, MorphismAxiomError
from groupoid_core.groupoid import FiniteGroupoid
from groupoid_core.reports import CheckReport
from groupoid_core.structure import is_saturated
from morphism.action import GroupoidAction

logger = logging.getLogger(__name__)


class AlgebraicMorphism:
    """Momentum and action tables in index form

    rho : target unit ↦ source unit
    act : (γ, x) ↦ γ·x on Γ⋆_hG = {(γ, x): d(γ) = ρ_h(r(x))}
    """

    def __init__(self, source: FiniteGroupoid, target: FiniteGroupoid,
                 rho: Mapping[int, int], act: Mapping[Tuple[int, int], int], name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        for t in target.units:
            if t not in rho:
                raise DomainMismatch(f"ρ_h is undefined at {target.label(t)}", (target.label(t),))
            if not source.is_unit(rho[t]):
                raise DomainMismatch(f"ρ_h({target.label(t)}) is not a unit of the source",
                                     (target.label(t), source.label(rho[t])))
        self._rho: Dict[int, int] = {t: rho[t] for t in target.units}
        self._act: Dict[Tuple[int, int], int] = dict(act)
        for g, x in self._act:
            if source.d(g) != self._rho[target.r(x)]:
                raise DomainMismatch(f"{source.label(g)}·{target.label(x)} is given off Γ⋆_hG",
                                     (source.label(g), target.label(x)))
        for x in range(len(target)):
            for g in source.source_fiber(self._rho[target.r(x)]):
                if (g, x) not in self._act:
                    raise DomainMismatch(f"{source.label(g)}·{target.label(x)} is missing",
                                         (source.label(g), target.label(x)))
        self._action: Optional[GroupoidAction] = None

    @classmethod
    def from_labels(cls, source: FiniteGroupoid, target: FiniteGroupoid, rho: Mapping[str, str],
                    act: Mapping[Tuple[str, str], str], name: str = "") -> "AlgebraicMorphism":
        rho_idx = {target.index(t): source.index(u) for t, u in rho.items()}
        act_idx = {(source.index(g), target.index(x)): target.index(y) for (g, x), y in act.items()}
        return cls(source, target, rho_idx, act_idx, name=name)

    def rho(self, t: int) -> int:
        return self._rho[t]

    def apply(self, g: int, x: int) -> int:
        return self._act[(g, x)]

    def try_apply(self, g: int, x: int) -> Optional[int]:
        return self._act.get((g, x))

    def domain(self) -> Iterable[Tuple[int, int]]:
        return self._act.keys()

    def act_on(self, g_label: str, x_label: str) -> str:
        return self.target.label(self.apply(self.source.index(g_label), self.target.index(x_label)))

    def rho_table(self) -> Dict[str, str]:
        return {self.target.label(t): self.source.label(u) for t, u in self._rho.items()}

    def action_table(self) -> Dict[Tuple[str, str], str]:
        s, t = self.source, self.target
        return {(s.label(g), t.label(x)): t.label(y) for (g, x), y in sorted(self._act.items())}

    def image(self) -> Tuple[str, ...]:
        return tuple(sorted({self.source.label(u) for u in self._rho.values()}))

    def as_action(self) -> GroupoidAction:
        """Γ acting on the set G with momentum ρ_h∘r"""
        if self._action is None:
            t = self.target
            momentum = {t.label(x): self.source.label(self._rho[t.r(x)]) for x in range(len(t))}
            self._action = GroupoidAction(self.source, t.labels, momentum, self.action_table(),
                                          name=f"{self.name or 'h'} on {t.name}")
        return self._action

    def same_tables(self, other: "AlgebraicMorphism") -> bool:
        return (self.source == other.source and self.target == other.target
                and self._rho == other._rho and self._act == other._act)


def check_algebraic_morphism(m: AlgebraicMorphism) -> CheckReport:
    """Exhaustive check of conditions (1)-(5) and the derived identities"""
    G, H = m.source, m.target
    report = CheckReport(subject=m.name or "morphism")
    L, M = G.label, H.label
    for (g, x) in m.domain():
        y = m.apply(g, x)
        if m.rho(H.r(y)) != G.r(g):
            report.add("1", (L(g), M(x)), f"ρ_h(r({L(g)}·{M(x)})) ≠ r({L(g)})")
        if H.d(y) != H.d(x):
            report.add("4", (L(g), M(x)), f"d({L(g)}·{M(x)}) ≠ d({M(x)})")
    for x in range(len(H)):
        if m.apply(m.rho(H.r(x)), x) != x:
            report.add("2", (M(x),), f"ρ_h(r({M(x)}))·{M(x)} ≠ {M(x)}")
    over: Dict[int, list] = {u: [] for u in G.units}
    for x in range(len(H)):
        over[m.rho(H.r(x))].append(x)
    for g1, g2, g12 in G.composable_pairs():
        for x in over[G.d(g2)]:
            inner = m.apply(g2, x)
            outer = m.try_apply(g1, inner)
            if outer is None or m.apply(g12, x) != outer:
                report.add("3", (L(g1), L(g2), M(x)), f"({L(g1)}{L(g2)})·{M(x)} ≠ {L(g1)}·({L(g2)}·{M(x)})")
    for x1, x2, x12 in H.composable_pairs():
        for g in G.source_fiber(m.rho(H.r(x1))):
            left = H.product(m.apply(g, x1), x2)
            if left is None or left != m.apply(g, x12):
                report.add("5", (L(g), M(x1), M(x2)), f"({L(g)}·{M(x1)}){M(x2)} ≠ {L(g)}·({M(x1)}{M(x2)})")
    for (g, x) in m.domain():
        moved_unit = m.apply(g, H.r(x))
        if H.product(moved_unit, x) != m.apply(g, x):
            report.add("factorization", (L(g), M(x)), f"{L(g)}·{M(x)} ≠ ({L(g)}·r({M(x)})){M(x)}")
    for t in H.units:
        for g in G.source_fiber(m.rho(t)):
            moved = m.apply(g, t)
            back = m.try_apply(G.inv(g), H.r(moved))
            if back is None or back != H.inv(moved):
                report.add("inverse-identity", (L(g), M(t)), f"({L(g)}·{M(t)})⁻¹ ≠ {L(g)}⁻¹·r({L(g)}·{M(t)})")
    if not is_saturated(G, m.image()):
        report.add("saturated-image", m.image(), "image of ρ_h is not a union of orbits")
    logger.debug("check_algebraic_morphism %s: %d violations", m.name, len(report.violations))
    return report


def require_algebraic_morphism(m: AlgebraicMorphism) -> AlgebraicMorphism:
    report = check_algebraic_morphism(m)
    if not report.passed:
        first = report.violations[0]
        if first.kind == "saturated-image":
            raise ImageNotSaturated(first.detail, first.witness)
        raise MorphismAxiomError(first.kind, f"{m.name or 'morphism'} fails {first.kind}: {first.detail}",
                                 first.witness)
    return m


def unit_action(m: AlgebraicMorphism) -> GroupoidAction:
    """The induced action on G⁽⁰⁾: γ·_{h₀}t = r(γ·_h t), momentum ρ_h"""
    require_algebraic_morphism(m)
    G, H = m.source, m.target
    act = {}
    for t in H.units:
        for g in G.source_fiber(m.rho(t)):
            act[(G.label(g), H.label(t))] = H.label(H.r(m.apply(g, t)))
    return GroupoidAction(G, H.unit_labels, m.rho_table(), act, name=f"{m.name or 'h'}₀")
