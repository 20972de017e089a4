"""
Seeded random instances for the verification suite.

Groupoids are disjoint unions of action groupoids of Z/n (n ≤ 8) or S₃
on at most 6 points each, at most 60 elements in total. Orbits of Z/n
have sizes dividing n and are rotated by k ↦ i + k; S₃ orbits are
trivial (1 point), sign (2), natural (3) or regular (6). Haar systems
come from haar_from_unit_weights with rationals in (0, 4]. Every draw
goes through one random.Random, so a seed fixes the whole instance.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from algebra.element import AlgebraElement
from groupoid_core.constructors import action_groupoid, cyclic_group, disjoint_union, symmetric_group3
from groupoid_core.groupoid import FiniteGroupoid
from groupoid_core.structure import orbits
from measure.haar import HaarSystem, haar_from_unit_weights
from measure.measures import UnitMeasure
from morphism.action import left_translation_action
from morphism.composition import identity_morphism
from morphism.morphism import ZakrzewskiMorphism
from morphism.zoo import (
    action_to_pair_morphism,
    from_group_homomorphism,
    h_mu_trivial_morphism,
    principal_quotient_morphism,
    to_set_morphism,
)

logger = logging.getLogger(__name__)

MAX_ELEMENTS = 60
MAX_POINTS = 6
MAX_PARTS = 3
S3_ORBITS = {"trivial": 1, "sign": 2, "natural": 3, "regular": 6}
# targets above this size are left out of the zoo
MAX_TARGET = 400


@dataclass(frozen=True)
class PartSpec:
    """One action groupoid: a group name and the kinds of its orbits"""
    group: str
    orbits: Tuple[str, ...]

    @property
    def group_order(self) -> int:
        return 6 if self.group == "S3" else int(self.group.split("/")[1])

    @property
    def points(self) -> int:
        if self.group == "S3":
            return sum(S3_ORBITS[o] for o in self.orbits)
        return sum(int(o) for o in self.orbits)

    @property
    def size(self) -> int:
        return self.group_order * self.points


@dataclass(frozen=True)
class CaseSpec:
    """Everything needed to rebuild a random case deterministically"""
    case_id: int
    seed: int
    parts: Tuple[PartSpec, ...]

    def without_part(self, k: int) -> "CaseSpec":
        return CaseSpec(self.case_id, self.seed, self.parts[:k] + self.parts[k + 1:])


def _divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def random_part(rng: random.Random, budget: int) -> Optional[PartSpec]:
    """A random action groupoid of at most budget elements, or None"""
    choices = [f"Z/{n}" for n in range(1, 9) if n <= budget]
    if budget >= 6:
        choices.append("S3")
    if not choices:
        return None
    group = rng.choice(choices)
    order = 6 if group == "S3" else int(group.split("/")[1])
    room = min(MAX_POINTS, budget // order)
    kinds: List[str] = []
    used = 0
    while used < room:
        if group == "S3":
            fitting = [k for k, s in S3_ORBITS.items() if used + s <= room]
        else:
            fitting = [str(d) for d in _divisors(order) if used + d <= room]
        if not fitting:
            break
        kind = rng.choice(fitting)
        kinds.append(kind)
        used += S3_ORBITS[kind] if group == "S3" else int(kind)
        if rng.random() < 0.35:
            break
    if not kinds:
        return None
    return PartSpec(group, tuple(kinds))


def random_case_spec(case_id: int, seed: int, max_elements: int = MAX_ELEMENTS) -> CaseSpec:
    rng = random.Random(seed)
    parts: List[PartSpec] = []
    budget = max_elements
    for _ in range(rng.randint(1, MAX_PARTS)):
        part = random_part(rng, budget)
        if part is None:
            break
        parts.append(part)
        budget -= part.size
    return CaseSpec(case_id, seed, tuple(parts))


def _orbit_action(part: PartSpec) -> Tuple[FiniteGroupoid, List[str], Dict[Tuple[str, str], str]]:
    """Group, point labels and the action table of one part"""
    if part.group == "S3":
        group = symmetric_group3()
    else:
        group = cyclic_group(part.group_order)
    points: List[str] = []
    table: Dict[Tuple[str, str], str] = {}
    for k, kind in enumerate(part.orbits):
        if part.group == "S3":
            size = S3_ORBITS[kind]
            names = [f"o{k}.{i}" for i in range(size)]
            for g in group.labels:
                odd = sum(1 for i in range(3) for j in range(i + 1, 3) if g[i] > g[j]) % 2
                for i, p in enumerate(names):
                    if kind == "trivial":
                        j = i
                    elif kind == "sign":
                        j = (i + odd) % 2
                    elif kind == "natural":
                        j = int(g[i])
                    else:
                        j = group.labels.index(''.join(g[int(c)] for c in group.labels[i]))
                    table[(g, p)] = names[j]
        else:
            size = int(kind)
            names = [f"o{k}.{i}" for i in range(size)]
            for g in group.labels:
                for i, p in enumerate(names):
                    table[(g, p)] = names[(i + int(g)) % size]
        points.extend(names)
    return group, points, table


def build_groupoid(spec: CaseSpec) -> FiniteGroupoid:
    parts = []
    for part in spec.parts:
        group, points, table = _orbit_action(part)
        parts.append(action_groupoid(group, points, table, name=f"{group.name}⋉{len(points)}"))
    if not parts:
        return action_groupoid(cyclic_group(1), ["p"], {("0", "p"): "p"}, name="point")
    if len(parts) == 1:
        return parts[0]
    return disjoint_union(*parts, name=f"case{spec.case_id}")


def random_rational(rng: random.Random, upper: int = 4) -> Fraction:
    """Uniform-ish rational in (0, upper]"""
    den = rng.randint(1, 6)
    return Fraction(rng.randint(1, upper * den), den)


def random_haar(rng: random.Random, g: FiniteGroupoid, name: str = "λ") -> HaarSystem:
    return haar_from_unit_weights(g, {u: random_rational(rng) for u in g.unit_labels}, name=name)


def random_saturated_measure(rng: random.Random, g: FiniteGroupoid, name: str = "μ") -> UnitMeasure:
    """Random weights on a random nonempty union of orbits"""
    blocks = list(orbits(g).blocks)
    chosen = [b for b in blocks if rng.random() < 0.6] or [rng.choice(blocks)]
    return UnitMeasure(g, {u: random_rational(rng) for block in chosen for u in block}, name=name)


def non_saturated_measure(rng: random.Random, g: FiniteGroupoid) -> Optional[UnitMeasure]:
    """A measure charging part of an orbit; None when every orbit is a point"""
    blocks = [b for b in orbits(g).blocks if len(b) > 1]
    if not blocks:
        return None
    block = rng.choice(blocks)
    return UnitMeasure(g, {block[0]: random_rational(rng)}, name="μ-broken")


def random_element(rng: random.Random, haar: HaarSystem, density: float = 0.6) -> AlgebraElement:
    n = len(haar.groupoid)
    coeffs = np.zeros(n, dtype=complex)
    for x in range(n):
        if rng.random() < density:
            coeffs[x] = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
    return AlgebraElement(haar, coeffs)


def random_hermitian(rng: random.Random, n: int) -> np.ndarray:
    a = np.array([[complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0)) for _ in range(n)] for _ in range(n)])
    return (a + a.conj().T) / 2


def _isolated_units(g: FiniteGroupoid) -> List[str]:
    return [block[0] for block in orbits(g).blocks if len(block) == 1]


def zoo(rng: random.Random, haar: HaarSystem) -> List[ZakrzewskiMorphism]:
    """l, a group-hom with a fresh target Haar system, the principal
    quotient, h_μ, a set morphism and, for small Γ, the pair morphism of
    left translation"""
    g = haar.groupoid
    members = [identity_morphism(haar)]
    identity_map = {lab: lab for lab in g.labels}
    members.append(from_group_homomorphism(haar, random_haar(rng, g, name="ν"), identity_map, name="reweight"))
    members.append(principal_quotient_morphism(haar))
    mu = random_saturated_measure(rng, g)
    if len(mu.support) ** 2 <= MAX_TARGET:
        members.append(h_mu_trivial_morphism(haar, mu))
    isolated = _isolated_units(g)
    if isolated:
        points = [f"x{i}" for i in range(rng.randint(1, 3))]
        members.append(to_set_morphism(haar, points, {p: rng.choice(isolated) for p in points},
                                       {p: random_rational(rng) for p in points}))
    if len(g) ** 2 <= MAX_TARGET:
        action = left_translation_action(g)
        weights = {p: random_rational(rng) for p in action.space}
        members.append(action_to_pair_morphism(action, weights, haar, name="translation"))
    logger.debug("zoo on %r: %s", g, [h.name for h in members])
    return members


def small_zoo(rng: random.Random, haar: HaarSystem) -> List[ZakrzewskiMorphism]:
    """The zoo members whose targets stay small enough to compose further"""
    return [h for h in zoo(rng, haar) if len(h.target) <= MAX_TARGET // 4]


def random_chain(rng: random.Random, haar: HaarSystem,
                 length: int = 2) -> List[ZakrzewskiMorphism]:
    """Composable morphisms h₁: Γ ⊳ G₁, h₂: G₁ ⊳ G₂, ... drawn from the zoo"""
    chain: List[ZakrzewskiMorphism] = []
    current = haar
    for _ in range(length):
        options = small_zoo(rng, current) or [identity_morphism(current)]
        h = rng.choice(options)
        chain.append(h)
        current = h.target_haar
    return chain


def measure_on_support(rng: random.Random, mu: UnitMeasure, name: str = "μ′") -> UnitMeasure:
    """Same support, fresh weights: an equivalent measure"""
    return UnitMeasure(mu.groupoid, {u: random_rational(rng) for u in mu.support_labels}, name=name)


def describe(spec: CaseSpec) -> str:
    if not spec.parts:
        return "point"
    return " ⊔ ".join(f"{p.group}⋉[{','.join(p.orbits)}]" for p in spec.parts)
