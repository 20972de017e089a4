"""
Structural queries: orbits, isotropy, reductions, principal quotient.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Tuple

from groupoid_core.constructors import equivalence_relation, pair_label
from groupoid_core.errors import NotAUnit
from groupoid_core.groupoid import FiniteGroupoid
from groupoid_core.union_find import UnionFind


@dataclass(frozen=True)
class OrbitPartition:
    """Units split into orbits [u]; blocks hold unit labels"""
    blocks: Tuple[Tuple[str, ...], ...]
    orbit_index: Mapping[str, int]

    def same_orbit(self, u: str, v: str) -> bool:
        return self.orbit_index[u] == self.orbit_index[v]

    def __len__(self) -> int:
        return len(self.blocks)


def orbits(g: FiniteGroupoid) -> OrbitPartition:
    """Connected components of u ~ v iff Γ_v^u ≠ ∅ - O(n α(n))"""
    uf = UnionFind()
    for u in g.units:
        uf.make_set(u)
    for x in range(len(g)):
        uf.union(g.r(x), g.d(x))
    blocks = tuple(tuple(g.label(u) for u in sorted(block)) for block in uf.groups())
    orbit_index = {u: k for k, block in enumerate(blocks) for u in block}
    return OrbitPartition(blocks, orbit_index)


def _unit_index(g: FiniteGroupoid, u: str) -> int:
    i = g.index(u)
    if not g.is_unit(i):
        raise NotAUnit(f"{u} is not a unit", (u,))
    return i


def restriction(g: FiniteGroupoid, unit_labels: Iterable[str], name: str = "") -> FiniteGroupoid:
    """Reduction Γ|_S = {x : r(x), d(x) ∈ S}, labels preserved"""
    keep_units = {_unit_index(g, u) for u in unit_labels}
    kept = [x for x in range(len(g)) if g.r(x) in keep_units and g.d(x) in keep_units]
    new = {x: i for i, x in enumerate(kept)}
    return FiniteGroupoid(
        [g.label(x) for x in kept],
        [new[u] for u in sorted(keep_units)],
        [new[g.r(x)] for x in kept],
        [new[g.d(x)] for x in kept],
        [new[g.inv(x)] for x in kept],
        {(new[x], new[y]): new[xy] for x, y, xy in g.composable_pairs() if x in new and y in new},
        name=name or f"{g.name}|S",
    )


def isotropy(g: FiniteGroupoid, u: str) -> FiniteGroupoid:
    """Γ_u^u as a group"""
    i = _unit_index(g, u)
    kept = g.hom(i, i)
    new = {x: k for k, x in enumerate(kept)}
    return FiniteGroupoid(
        [g.label(x) for x in kept],
        [new[i]],
        [new[i]] * len(kept),
        [new[i]] * len(kept),
        [new[g.inv(x)] for x in kept],
        {(new[x], new[y]): new[g.mul(x, y)] for x in kept for y in kept},
        name=f"{g.name}_{u}^{u}",
    )


def principal_quotient(g: FiniteGroupoid) -> Tuple[FiniteGroupoid, Dict[str, str]]:
    """R = {(r(x), d(x))} and the quotient map x ↦ (r(x), d(x))"""
    parts = orbits(g)
    quotient = equivalence_relation([list(block) for block in parts.blocks], name=f"R({g.name})")
    qmap = {g.label(x): pair_label(g.label(g.r(x)), g.label(g.d(x))) for x in range(len(g))}
    return quotient, qmap


def is_principal(g: FiniteGroupoid) -> bool:
    """(r, d) injective, i.e. trivial isotropy"""
    return all(len(g.hom(u, u)) == 1 for u in g.units)


def is_transitive(g: FiniteGroupoid) -> bool:
    return len(orbits(g)) == 1


def is_group_bundle(g: FiniteGroupoid) -> bool:
    return all(g.r(x) == g.d(x) for x in range(len(g)))


def saturation(g: FiniteGroupoid, unit_labels: Iterable[str]) -> Tuple[str, ...]:
    """Smallest union of orbits containing the given units"""
    parts = orbits(g)
    hit = {parts.orbit_index[u] for u in unit_labels}
    return tuple(u for k in sorted(hit) for u in parts.blocks[k])


def is_saturated(g: FiniteGroupoid, unit_labels: Iterable[str]) -> bool:
    """No arrow leaves the set: r(x) ∈ S ⟺ d(x) ∈ S"""
    chosen = {_unit_index(g, u) for u in unit_labels}
    return all((g.r(x) in chosen) == (g.d(x) in chosen) for x in range(len(g)))


def hom_set(g: FiniteGroupoid, u: str, v: str) -> Tuple[str, ...]:
    """Γ_v^u = {x : r(x) = u, d(x) = v}"""
    return tuple(g.label(x) for x in g.hom(_unit_index(g, u), _unit_index(g, v)))


def hom_set_sizes(g: FiniteGroupoid) -> Dict[Tuple[str, str], int]:
    """|Γ_v^u| for every pair of units in a common orbit"""
    sizes: Dict[Tuple[str, str], int] = {}
    for block in orbits(g).blocks:
        idx = [g.index(u) for u in block]
        for u in idx:
            for v in idx:
                sizes[(g.label(u), g.label(v))] = len(g.hom(u, v))
    return sizes


def isotropy_summary(g: FiniteGroupoid) -> List[Dict[str, object]]:
    """Per-orbit listing: units, isotropy order, abelian?"""
    summary: List[Dict[str, object]] = []
    for block in orbits(g).blocks:
        group = isotropy(g, block[0])
        abelian = all(group.mul(x, y) == group.mul(y, x) for x in range(len(group)) for y in range(len(group)))
        summary.append({"units": list(block), "isotropy_order": len(group), "abelian": abelian})
    return summary
