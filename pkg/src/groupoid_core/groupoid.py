"""
Finite groupoid data model and exhaustive validation.

A groupoid owns the bijection between string labels (external identity)
and dense integer indices (internal identity). Tables are stored over
indices; every public constructor path ends in the axiom check below.
"""

import logging
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from groupoid_core.errors import (
    BadInverse,
    CompositionDomainMismatch,
    MissingUnitAxiom,
    NonAssociative,
    NotComposable,
    UnknownElement,
    ValidationError,
)

logger = logging.getLogger(__name__)


class FiniteGroupoid:
    """Validated, immutable finite groupoid - O(n + #triples) validation

    labels      : element labels, position = index
    units       : indices of Γ⁽⁰⁾
    range_map   : r as a sequence of indices
    source_map  : d as a sequence of indices
    inverse_map : x ↦ x⁻¹ as a sequence of indices
    products    : (x, y) ↦ xy over exactly the composable pairs
    """

    def __init__(self, labels: Sequence[str], units: Sequence[int],
                 range_map: Sequence[int], source_map: Sequence[int],
                 inverse_map: Sequence[int], products: Mapping[Tuple[int, int], int],
                 name: str = ""):
        self.name = name
        self._labels: Tuple[str, ...] = tuple(str(lab) for lab in labels)
        self._index: Dict[str, int] = {}
        for i, lab in enumerate(self._labels):
            if lab in self._index:
                raise ValidationError(f"duplicate element label {lab!r}", (lab,), axiom="labels")
            self._index[lab] = i
        self._units: Tuple[int, ...] = tuple(sorted(set(int(u) for u in units)))
        self._unit_set = frozenset(self._units)
        self._r: Tuple[int, ...] = tuple(int(v) for v in range_map)
        self._d: Tuple[int, ...] = tuple(int(v) for v in source_map)
        self._inv: Tuple[int, ...] = tuple(int(v) for v in inverse_map)
        self._mul: Dict[Tuple[int, int], int] = {(int(a), int(b)): int(c) for (a, b), c in products.items()}

        self._check_shape()
        self._range_fiber = {u: [] for u in self._units}
        self._source_fiber = {u: [] for u in self._units}
        for x in range(len(self._labels)):
            self._range_fiber[self._r[x]].append(x)
            self._source_fiber[self._d[x]].append(x)
        self._range_fiber = {u: tuple(xs) for u, xs in self._range_fiber.items()}
        self._source_fiber = {u: tuple(xs) for u, xs in self._source_fiber.items()}

        self._check_composition()
        self._check_units_and_inverses()
        self._check_associativity()
        self._pair_arrays: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]] = None
        logger.debug("validated groupoid %s: %d elements, %d units", name or "<anon>",
                     len(self._labels), len(self._units))

    # ------------------------------------------------------------------
    # validation

    def _check_shape(self) -> None:
        n = len(self._labels)
        for name, table in (("range", self._r), ("source", self._d), ("inverse", self._inv)):
            if len(table) != n:
                raise ValidationError(f"{name} map is not total", (name,), axiom="table-shape")
            for x, v in enumerate(table):
                if not 0 <= v < n:
                    raise ValidationError(f"{name} of {self._labels[x]} is not an element",
                                          (self._labels[x],), axiom="table-shape")
        for u in self._units:
            if not 0 <= u < n:
                raise ValidationError("declared unit is not an element", (u,), axiom="table-shape")
        for (a, b), c in self._mul.items():
            if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
                raise ValidationError("composition entry outside the element set", (a, b, c),
                                      axiom="table-shape")
        for u in self._units:
            if self._r[u] != u or self._d[u] != u or self._inv[u] != u:
                raise MissingUnitAxiom(f"unit {self._labels[u]} must satisfy r(u) = d(u) = u = u⁻¹",
                                       (self._labels[u],))
        for x in range(n):
            if self._r[x] not in self._unit_set or self._d[x] not in self._unit_set:
                raise MissingUnitAxiom(f"range or source of {self._labels[x]} is not a declared unit",
                                       (self._labels[x],))

    def _check_composition(self) -> None:
        lab = self._labels
        for (x, y), xy in self._mul.items():
            if self._d[x] != self._r[y]:
                raise CompositionDomainMismatch(f"{lab[x]}·{lab[y]} is declared but d({lab[x]}) ≠ r({lab[y]})",
                                                (lab[x], lab[y]))
            if self._r[xy] != self._r[x] or self._d[xy] != self._d[y]:
                raise CompositionDomainMismatch(f"{lab[x]}·{lab[y]} = {lab[xy]} has the wrong range or source",
                                                (lab[x], lab[y], lab[xy]))
        for x in range(len(lab)):
            for y in self._range_fiber[self._d[x]]:
                if (x, y) not in self._mul:
                    raise CompositionDomainMismatch(f"composable pair ({lab[x]}, {lab[y]}) has no product",
                                                    (lab[x], lab[y]))

    def _check_units_and_inverses(self) -> None:
        lab = self._labels
        mul = self._mul
        for x in range(len(lab)):
            if mul[(self._r[x], x)] != x or mul[(x, self._d[x])] != x:
                raise MissingUnitAxiom(f"r({lab[x]})·{lab[x]} or {lab[x]}·d({lab[x]}) differs from {lab[x]}",
                                       (lab[x],))
            xi = self._inv[x]
            if self._inv[xi] != x or self._r[xi] != self._d[x] or self._d[xi] != self._r[x]:
                raise BadInverse(f"inverse of {lab[x]} is not an involution swapping r and d", (lab[x], lab[xi]))
            if mul[(x, xi)] != self._r[x] or mul[(xi, x)] != self._d[x]:
                raise BadInverse(f"{lab[x]}·{lab[x]}⁻¹ or {lab[x]}⁻¹·{lab[x]} is not the declared unit",
                                 (lab[x], lab[xi]))

    def _check_associativity(self) -> None:
        lab = self._labels
        mul = self._mul
        for x in range(len(lab)):
            for y in self._range_fiber[self._d[x]]:
                xy = mul[(x, y)]
                for z in self._range_fiber[self._d[y]]:
                    if mul[(xy, z)] != mul[(x, mul[(y, z)])]:
                        raise NonAssociative(f"({lab[x]}·{lab[y]})·{lab[z]} ≠ {lab[x]}·({lab[y]}·{lab[z]})",
                                             (lab[x], lab[y], lab[z]))
                if mul[(self._inv[x], xy)] != y or mul[(xy, self._inv[y])] != x:
                    raise BadInverse(f"cancellation fails for ({lab[x]}, {lab[y]})", (lab[x], lab[y]))

    # ------------------------------------------------------------------
    # index-level access

    def __len__(self) -> int:
        return len(self._labels)

    @property
    def size(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def units(self) -> Tuple[int, ...]:
        return self._units

    @property
    def unit_labels(self) -> Tuple[str, ...]:
        return tuple(self._labels[u] for u in self._units)

    def is_unit(self, x: int) -> bool:
        return x in self._unit_set

    def r(self, x: int) -> int:
        return self._r[x]

    def d(self, x: int) -> int:
        return self._d[x]

    def inv(self, x: int) -> int:
        return self._inv[x]

    def product(self, x: int, y: int) -> Optional[int]:
        """xy, or None when d(x) ≠ r(y)"""
        return self._mul.get((x, y))

    def mul(self, x: int, y: int) -> int:
        xy = self._mul.get((x, y))
        if xy is None:
            raise NotComposable(f"{self._labels[x]}·{self._labels[y]} is not defined",
                                (self._labels[x], self._labels[y]))
        return xy

    def range_fiber(self, u: int) -> Tuple[int, ...]:
        """Γ^u = r⁻¹{u}"""
        return self._range_fiber[u]

    def source_fiber(self, u: int) -> Tuple[int, ...]:
        """Γ_u = d⁻¹{u}"""
        return self._source_fiber[u]

    def hom(self, u: int, v: int) -> Tuple[int, ...]:
        """Γ_v^u: arrows from v to u"""
        return tuple(x for x in self._range_fiber[u] if self._d[x] == v)

    def composable_pairs(self) -> Iterator[Tuple[int, int, int]]:
        for (x, y), xy in self._mul.items():
            yield x, y, xy

    def pair_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Composable pairs as index arrays (left, right, product), cached"""
        if self._pair_arrays is None:
            triples = sorted(self._mul.items())
            left = np.array([a for (a, _), _ in triples], dtype=np.intp)
            right = np.array([b for (_, b), _ in triples], dtype=np.intp)
            prod = np.array([c for _, c in triples], dtype=np.intp)
            self._pair_arrays = (left, right, prod)
        return self._pair_arrays

    # ------------------------------------------------------------------
    # label-level access

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownElement(f"no element labelled {label!r} in groupoid {self.name or '<anon>'}",
                                 (label,)) from None

    def label(self, x: int) -> str:
        return self._labels[x]

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return (self._labels == other._labels and self._units == other._units
                and self._r == other._r and self._d == other._d
                and self._inv == other._inv and self._mul == other._mul)

    def __hash__(self) -> int:
        return hash((self._labels, self._units, self._r, self._d))

    def __repr__(self) -> str:
        return f"FiniteGroupoid({self.name or '<anon>'}, {len(self)} elements, {len(self._units)} units)"

    def to_raw(self) -> Dict[str, Any]:
        """The file-format description (see validate_groupoid)"""
        lab = self._labels
        return {
            "elements": list(lab),
            "units": [lab[u] for u in self._units],
            "range": {lab[x]: lab[self._r[x]] for x in range(len(lab))},
            "source": {lab[x]: lab[self._d[x]] for x in range(len(lab))},
            "inverse": {lab[x]: lab[self._inv[x]] for x in range(len(lab))},
            "mul": [[lab[a], lab[b], lab[c]] for (a, b), c in sorted(self._mul.items())],
        }


def validate_groupoid(raw: Mapping[str, Any], name: str = "") -> FiniteGroupoid:
    """Build a validated groupoid from a label-level description

    raw keys: elements, units, range, source, inverse (maps label → label)
    and mul (list of [x, y, xy] triples).
    """
    for key in ("elements", "units", "range", "source", "inverse", "mul"):
        if key not in raw:
            raise ValidationError(f"groupoid description lacks {key!r}", (key,), axiom="table-shape")
    labels = [str(e) for e in raw["elements"]]
    index = {lab: i for i, lab in enumerate(labels)}

    def lookup(label: Any, where: str) -> int:
        try:
            return index[str(label)]
        except KeyError:
            raise UnknownElement(f"{where} refers to unknown element {label!r}", (label,)) from None

    def total(key: str) -> List[int]:
        table = raw[key]
        missing = [lab for lab in labels if lab not in table]
        if missing:
            raise ValidationError(f"{key} map is not total", tuple(missing[:3]), axiom="table-shape")
        return [lookup(table[lab], key) for lab in labels]

    units = [lookup(u, "units") for u in raw["units"]]
    products: Dict[Tuple[int, int], int] = {}
    for entry in raw["mul"]:
        if len(entry) != 3:
            raise ValidationError("composition entries are [x, y, xy] triples", tuple(entry),
                                  axiom="table-shape")
        a, b, c = (lookup(v, "mul") for v in entry)
        if products.get((a, b), c) != c:
            raise CompositionDomainMismatch(f"{entry[0]}·{entry[1]} is declared twice with different values",
                                            (entry[0], entry[1]))
        products[(a, b)] = c
    return FiniteGroupoid(labels, units, total("range"), total("source"), total("inverse"), products,
                          name=name or str(raw.get("name", "")))


def compose(g: FiniteGroupoid, x: str, y: str) -> str:
    """xy looked up in the table; NotComposable when d(x) ≠ r(y)"""
    return g.label(g.mul(g.index(x), g.index(y)))
