"""
Left groupoid actions on finite sets and their transformation groupoids.
"""

from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from groupoid_core.errors import DomainMismatch, UnknownElement
from groupoid_core.groupoid import FiniteGroupoid
from groupoid_core.reports import CheckReport
from measure.haar import HaarSystem


class GroupoidAction:
    """Γ acting on X with momentum ρ: X → Γ⁽⁰⁾

    The table is defined exactly on Γ∗_ρX = {(γ, x): d(γ) = ρ(x)};
    construction raises DomainMismatch otherwise.
    """

    def __init__(self, actor: FiniteGroupoid, space: Sequence[str], momentum: Mapping[str, str],
                 act: Mapping[Tuple[str, str], str], name: str = ""):
        self.actor = actor
        self.name = name
        self.space: Tuple[str, ...] = tuple(str(p) for p in space)
        self._point = {p: i for i, p in enumerate(self.space)}
        if len(self._point) != len(self.space):
            raise DomainMismatch("action space has repeated points", self.space)
        self._rho: Tuple[int, ...] = tuple(actor.index(momentum[p]) for p in self.space)
        for i, u in enumerate(self._rho):
            if not actor.is_unit(u):
                raise DomainMismatch(f"momentum of {self.space[i]} is not a unit", (self.space[i],))
        table: Dict[Tuple[int, int], int] = {}
        for (g_lab, x_lab), y_lab in act.items():
            g, x, y = actor.index(g_lab), self.point(x_lab), self.point(y_lab)
            if actor.d(g) != self._rho[x]:
                raise DomainMismatch(f"{g_lab}·{x_lab} is given but d({g_lab}) ≠ ρ({x_lab})", (g_lab, x_lab))
            table[(g, x)] = y
        for x in range(len(self.space)):
            for g in actor.source_fiber(self._rho[x]):
                if (g, x) not in table:
                    raise DomainMismatch(f"{actor.label(g)}·{self.space[x]} is missing",
                                         (actor.label(g), self.space[x]))
        self._act = table

    def point(self, label: str) -> int:
        try:
            return self._point[str(label)]
        except KeyError:
            raise UnknownElement(f"{label!r} is not a point of the action space", (label,)) from None

    def rho(self, x: int) -> int:
        return self._rho[x]

    def apply(self, g: int, x: int) -> int:
        return self._act[(g, x)]

    def act_on(self, g_label: str, x_label: str) -> str:
        return self.space[self._act[(self.actor.index(g_label), self.point(x_label))]]

    def domain(self) -> Iterable[Tuple[int, int]]:
        """Γ∗_ρX in index form"""
        return self._act.keys()

    def table(self) -> Dict[Tuple[str, str], str]:
        return {(self.actor.label(g), self.space[x]): self.space[y] for (g, x), y in self._act.items()}


def check_action(a: GroupoidAction) -> CheckReport:
    """Exhaustive check of the three action axioms"""
    G = a.actor
    report = CheckReport(subject=a.name or "action")
    for (g, x), y in ((key, a.apply(*key)) for key in a.domain()):
        if a.rho(y) != G.r(g):
            report.add("momentum", (G.label(g), a.space[x]),
                       f"ρ({a.space[y]}) = {G.label(a.rho(y))} ≠ r({G.label(g)})")
    for x in range(len(a.space)):
        if a.apply(a.rho(x), x) != x:
            report.add("unit", (a.space[x],), f"ρ({a.space[x]}) moves it")
    for g1, g2, g12 in G.composable_pairs():
        for x in range(len(a.space)):
            if a.rho(x) != G.d(g2):
                continue
            if a.apply(g12, x) != a.apply(g1, a.apply(g2, x)):
                report.add("associativity", (G.label(g1), G.label(g2), a.space[x]),
                           f"({G.label(g1)}{G.label(g2)})·{a.space[x]} ≠ "
                           f"{G.label(g1)}·({G.label(g2)}·{a.space[x]})")
    return report


def left_translation_action(g: FiniteGroupoid) -> GroupoidAction:
    """Γ acting on itself by γ·x = γx with momentum r"""
    act = {(g.label(a), g.label(b)): g.label(ab) for a, b, ab in g.composable_pairs()}
    return GroupoidAction(g, g.labels, {lab: g.label(g.r(x)) for x, lab in enumerate(g.labels)}, act,
                          name=f"left translation on {g.name}")


def unit_space_action(g: FiniteGroupoid, units: Iterable[str] = ()) -> GroupoidAction:
    """γ·d(γ) = r(γ) on a saturated set of units (all units by default)"""
    chosen = [str(u) for u in units] or list(g.unit_labels)
    keep = set(chosen)
    act = {}
    for x in range(len(g)):
        if g.label(g.d(x)) in keep:
            act[(g.label(x), g.label(g.d(x)))] = g.label(g.r(x))
    return GroupoidAction(g, chosen, {u: u for u in chosen}, act, name=f"unit action of {g.name}")


def semidirect_label(x: str, g: str) -> str:
    return f"<{x};{g}>"


def transformation_groupoid(a: GroupoidAction, haar: HaarSystem,
                            name: str = "") -> Tuple[FiniteGroupoid, HaarSystem, Dict[Tuple[int, int], int]]:
    """X⋊Γ = {(x, γ): ρ(x) = r(γ)} with Haar system {ε_x × λ^{ρ(x)}}

    r(x, γ) = (x, ρ(x)), d(x, γ) = (γ⁻¹·x, d(γ)),
    (x, γ)⁻¹ = (γ⁻¹·x, γ⁻¹), (x, γ₁)(γ₁⁻¹·x, γ₂) = (x, γ₁γ₂).
    Returns the groupoid, its Haar system, and the (x, γ) ↦ index map.
    """
    G = a.actor
    pairs: List[Tuple[int, int]] = [(x, g) for x in range(len(a.space)) for g in G.range_fiber(a.rho(x))]
    index = {pair: i for i, pair in enumerate(pairs)}

    def back(x: int, g: int) -> int:
        return a.apply(G.inv(g), x)

    units = [index[(x, a.rho(x))] for x in range(len(a.space))]
    r = [index[(x, a.rho(x))] for x, _ in pairs]
    d = [index[(back(x, g), G.d(g))] for x, g in pairs]
    inv = [index[(back(x, g), G.inv(g))] for x, g in pairs]
    products: Dict[Tuple[int, int], int] = {}
    for x, g1 in pairs:
        y = back(x, g1)
        for g2 in G.range_fiber(G.d(g1)):
            products[(index[(x, g1)], index[(y, g2)])] = index[(x, G.mul(g1, g2))]
    labels = [semidirect_label(a.space[x], G.label(g)) for x, g in pairs]
    groupoid = FiniteGroupoid(labels, units, r, d, inv, products, name=name or f"X⋊{G.name}")
    weights = [haar.weight(g) for _, g in pairs]
    return groupoid, HaarSystem(groupoid, weights, name=f"ε×{haar.name or 'λ'}"), index
