"""
Standard groupoid constructors.

Groups, sets, pair groupoids, equivalence relations, group bundles,
action groupoids and disjoint unions. Every result goes through the
FiniteGroupoid axiom check.
"""

from itertools import permutations
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from groupoid_core.errors import BadInverse, MissingUnitAxiom, ValidationError
from groupoid_core.groupoid import FiniteGroupoid

GroupTable = Union[Mapping[Tuple[str, str], str], Sequence[Sequence[str]]]


def from_labelled(labels: Sequence[str], units: Iterable[str], range_map: Mapping[str, str],
                  source_map: Mapping[str, str], inverse_map: Mapping[str, str],
                  products: Mapping[Tuple[str, str], str], name: str = "") -> FiniteGroupoid:
    """Assemble a groupoid from label-keyed tables"""
    index = {lab: i for i, lab in enumerate(labels)}
    return FiniteGroupoid(
        labels,
        [index[u] for u in units],
        [index[range_map[lab]] for lab in labels],
        [index[source_map[lab]] for lab in labels],
        [index[inverse_map[lab]] for lab in labels],
        {(index[a], index[b]): index[c] for (a, b), c in products.items()},
        name=name,
    )


def from_group(elements: Sequence[str], table: GroupTable, name: str = "") -> FiniteGroupoid:
    """Group from its multiplication table (mapping or Cayley rows)"""
    labels = [str(e) for e in elements]
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    products: Dict[Tuple[int, int], int] = {}
    if isinstance(table, Mapping):
        for (a, b), c in table.items():
            products[(index[str(a)], index[str(b)])] = index[str(c)]
    else:
        for i, row in enumerate(table):
            for j, c in enumerate(row):
                products[(i, j)] = index[str(c)]
    missing = [(labels[a], labels[b]) for a in range(n) for b in range(n) if (a, b) not in products]
    if missing:
        raise ValidationError("group table is not total", missing[0], axiom="table-shape")

    identity = next((e for e in range(n)
                     if all(products[(e, a)] == a and products[(a, e)] == a for a in range(n))), None)
    if identity is None:
        raise MissingUnitAxiom("group table has no identity element", tuple(labels[:1]))
    inverse = []
    for a in range(n):
        b = next((b for b in range(n) if products[(a, b)] == identity), None)
        if b is None:
            raise BadInverse(f"{labels[a]} has no inverse", (labels[a],))
        inverse.append(b)
    return FiniteGroupoid(labels, [identity], [identity] * n, [identity] * n, inverse, products, name=name)


def cyclic_group(n: int) -> FiniteGroupoid:
    """Z/n with labels '0'..'n-1'"""
    if n < 1:
        raise ValidationError("cyclic group order must be positive", (n,), axiom="table-shape")
    labels = [str(k) for k in range(n)]
    return from_group(labels, [[str((a + b) % n) for b in range(n)] for a in range(n)], name=f"Z/{n}")


def symmetric_group3() -> FiniteGroupoid:
    """S₃ as permutations of 0,1,2 written as words, composed right to left"""
    perms = [''.join(p) for p in permutations("012")]
    table = {(p, q): ''.join(p[int(q[i])] for i in range(3)) for p in perms for q in perms}
    return from_group(perms, table, name="S3")


def cotrivial_set(points: Sequence[str], name: str = "") -> FiniteGroupoid:
    """A set as a groupoid: every element is a unit, xx = x"""
    labels = [str(p) for p in points]
    n = len(labels)
    return FiniteGroupoid(labels, range(n), range(n), range(n), range(n),
                          {(i, i): i for i in range(n)}, name=name or "cotrivial")


def pair_label(a: str, b: str) -> str:
    return f"({a},{b})"


def equivalence_relation(blocks: Sequence[Sequence[str]], name: str = "") -> FiniteGroupoid:
    """Principal groupoid of a partition: (a,b)(b,c) = (a,c) inside each block"""
    seen: Dict[str, int] = {}
    for k, block in enumerate(blocks):
        for p in block:
            if str(p) in seen:
                raise ValidationError(f"point {p} lies in two blocks", (p,), axiom="partition")
            seen[str(p)] = k
    labels: List[str] = []
    units: List[str] = []
    r: Dict[str, str] = {}
    d: Dict[str, str] = {}
    inv: Dict[str, str] = {}
    products: Dict[Tuple[str, str], str] = {}
    for block in blocks:
        block = [str(p) for p in block]
        units.extend(pair_label(a, a) for a in block)
        for a in block:
            for b in block:
                lab = pair_label(a, b)
                labels.append(lab)
                r[lab] = pair_label(a, a)
                d[lab] = pair_label(b, b)
                inv[lab] = pair_label(b, a)
                for c in block:
                    products[(lab, pair_label(b, c))] = pair_label(a, c)
    return from_labelled(labels, units, r, d, inv, products, name=name or "equivalence")


def pair_groupoid(points: Sequence[str], name: str = "") -> FiniteGroupoid:
    """X × X with (x,y)(y,z) = (x,z); transitive and principal"""
    return equivalence_relation([list(points)], name=name or "pair")


def _require_group(group: FiniteGroupoid, what: str) -> int:
    if len(group.units) != 1:
        raise ValidationError(f"{what} must be a group (one unit)", (group.name,), axiom="group")
    return group.units[0]


def group_bundle(fibers: Sequence[Tuple[str, FiniteGroupoid]], name: str = "") -> FiniteGroupoid:
    """Disjoint family of groups indexed by base points; labels 'base:g'"""
    labels: List[str] = []
    units: List[str] = []
    r: Dict[str, str] = {}
    inv: Dict[str, str] = {}
    products: Dict[Tuple[str, str], str] = {}
    for base, group in fibers:
        e = _require_group(group, f"fiber over {base}")
        tag = lambda x: f"{base}:{group.label(x)}"
        units.append(tag(e))
        for x in range(len(group)):
            labels.append(tag(x))
            r[tag(x)] = tag(e)
            inv[tag(x)] = tag(group.inv(x))
        for x, y, xy in group.composable_pairs():
            products[(tag(x), tag(y))] = tag(xy)
    return from_labelled(labels, units, r, r, inv, products, name=name or "bundle")


def action_label(g: str, x: str) -> str:
    return f"{g}|{x}"


def action_groupoid(group: FiniteGroupoid, points: Sequence[str],
                    action: Union[Mapping[Tuple[str, str], str], Callable[[str, str], str]],
                    name: str = "") -> FiniteGroupoid:
    """Transformation groupoid of a group acting on a set

    The element g|x goes from x to g·x: d(g|x) = e|x, r(g|x) = e|(g·x),
    and (g | h·x)(h | x) = (gh | x).
    """
    e = _require_group(group, "acting group")
    pts = [str(p) for p in points]
    point_set = set(pts)
    act = action if callable(action) else (lambda g, x: action[(g, x)])
    table: Dict[Tuple[int, str], str] = {}
    for g in range(len(group)):
        for x in pts:
            try:
                y = str(act(group.label(g), x))
            except KeyError:
                raise ValidationError(f"action of {group.label(g)} on {x} is undefined",
                                      (group.label(g), x), axiom="group-action") from None
            if y not in point_set:
                raise ValidationError(f"{group.label(g)}·{x} = {y} leaves the point set",
                                      (group.label(g), x), axiom="group-action")
            table[(g, x)] = y
    for x in pts:
        if table[(e, x)] != x:
            raise ValidationError(f"identity moves {x}", (x,), axiom="group-action")
    for g, h, gh in group.composable_pairs():
        for x in pts:
            if table[(gh, x)] != table[(g, table[(h, x)])]:
                raise ValidationError("action is not compatible with the group law",
                                      (group.label(g), group.label(h), x), axiom="group-action")

    labels: List[str] = []
    r: Dict[str, str] = {}
    d: Dict[str, str] = {}
    inv: Dict[str, str] = {}
    products: Dict[Tuple[str, str], str] = {}
    tag = lambda g, x: action_label(group.label(g), x)
    for g in range(len(group)):
        for x in pts:
            lab = tag(g, x)
            labels.append(lab)
            r[lab] = tag(e, table[(g, x)])
            d[lab] = tag(e, x)
            inv[lab] = tag(group.inv(g), table[(g, x)])
    for g, h, gh in group.composable_pairs():
        for x in pts:
            products[(tag(g, table[(h, x)]), tag(h, x))] = tag(gh, x)
    units = [tag(e, x) for x in pts]
    return from_labelled(labels, units, r, d, inv, products,
                         name=name or f"{group.name or 'G'}⋉X")


def disjoint_union(first: FiniteGroupoid, second: FiniteGroupoid, *more: FiniteGroupoid,
                   name: str = "") -> FiniteGroupoid:
    """Disjoint union; part k contributes labels 'k:label'"""
    parts = (first, second) + more
    labels: List[str] = []
    units: List[int] = []
    r: List[int] = []
    d: List[int] = []
    inv: List[int] = []
    products: Dict[Tuple[int, int], int] = {}
    offset = 0
    for k, part in enumerate(parts):
        labels.extend(f"{k}:{lab}" for lab in part.labels)
        units.extend(u + offset for u in part.units)
        for x in range(len(part)):
            r.append(part.r(x) + offset)
            d.append(part.d(x) + offset)
            inv.append(part.inv(x) + offset)
        for x, y, xy in part.composable_pairs():
            products[(x + offset, y + offset)] = xy + offset
        offset += len(part)
    return FiniteGroupoid(labels, units, r, d, inv, products, name=name or "union")
