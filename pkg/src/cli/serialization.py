"""
JSON definition files for groupoids, Haar systems, measures, algebra
elements, morphisms, scenarios and bundles.

Every document is an object with a "kind" key. References to other
artifacts are either inline documents or names, resolved against the
registry, then against sibling artifacts of the same bundle/scenario,
then against files next to the referencing file. A bundle or scenario
artifact may itself be such a name, e.g. "q": "quotient.json".

Weights are "p/q" strings; complex coefficients are {"re": .., "im": ..}.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from algebra.element import AlgebraElement
from groupoid_core.errors import GroupoidMismatch, ParseError
from groupoid_core.groupoid import FiniteGroupoid, validate_groupoid
from measure.haar import HaarSystem, haar_from_unit_weights, require_haar
from measure.measures import UnitMeasure
from measure.rationals import format_rational, to_fraction
from morphism.algebraic import AlgebraicMorphism
from morphism.morphism import ZakrzewskiMorphism, make_morphism

logger = logging.getLogger(__name__)

KINDS = ("groupoid", "haar", "measure", "algebra-element", "morphism", "scenario", "bundle")


@dataclass
class NamedElement:
    """An algebra element with the name it was stored under"""
    name: str
    element: AlgebraElement


@dataclass
class MorphismDefinition:
    """Morphism tables before conditions (1)-(6) are enforced"""
    algebraic: AlgebraicMorphism
    source_haar: HaarSystem
    target_haar: HaarSystem
    name: str = ""

    def build(self) -> ZakrzewskiMorphism:
        return make_morphism(self.algebraic, self.source_haar, self.target_haar, name=self.name)


@dataclass
class Scenario:
    """Named artifacts plus the checks to run on them"""
    name: str
    artifacts: Dict[str, Any] = field(default_factory=dict)
    checks: List[Dict[str, Any]] = field(default_factory=list)


Artifact = Union[FiniteGroupoid, HaarSystem, UnitMeasure, NamedElement, ZakrzewskiMorphism,
                 MorphismDefinition, Scenario, Dict[str, Any]]


def kind_of(value: Any) -> str:
    if isinstance(value, FiniteGroupoid):
        return "groupoid"
    if isinstance(value, HaarSystem):
        return "haar"
    if isinstance(value, UnitMeasure):
        return "measure"
    if isinstance(value, (NamedElement, AlgebraElement)):
        return "algebra-element"
    if isinstance(value, (ZakrzewskiMorphism, MorphismDefinition)):
        return "morphism"
    if isinstance(value, Scenario):
        return "scenario"
    if isinstance(value, dict):
        return "bundle"
    raise ParseError(f"cannot serialize {type(value).__name__}")


def _complex(value: Any, path: str) -> complex:
    if isinstance(value, Mapping):
        try:
            return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
        except (TypeError, ValueError):
            raise ParseError(f"bad complex value {value!r}", path) from None
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    raise ParseError(f"bad complex value {value!r}", path)


class _Resolver:
    """Builds artifacts from documents, resolving references by name"""

    def __init__(self, path: str, registry: Dict[str, Any], pending: Mapping[str, Any], validate: bool):
        self.path = path
        self.base = Path(path).parent if path else Path(".")
        self.registry = registry
        self.pending = dict(pending)
        self.validate = validate
        self._building: set = set()

    def require(self, doc: Mapping[str, Any], key: str, what: str) -> Any:
        if key not in doc:
            raise ParseError(f"{what} definition lacks {key!r}", self.path)
        return doc[key]

    def resolve(self, ref: Any, kind: str, default_groupoid: Optional[FiniteGroupoid] = None) -> Any:
        if isinstance(ref, Mapping):
            return self.build(ref, name="", expected=kind, default_groupoid=default_groupoid)
        if not isinstance(ref, str):
            raise ParseError(f"a {kind} reference must be a name or an inline object, got {ref!r}", self.path)
        found = self.lookup(ref)
        if kind_of(found) != kind:
            raise ParseError(f"{ref!r} is a {kind_of(found)}, expected a {kind}", self.path)
        return found

    def lookup(self, ref: str) -> Any:
        if ref in self.registry:
            found = self.registry[ref]
        elif ref in self.pending:
            if ref in self._building:
                raise ParseError(f"circular reference through {ref!r}", self.path)
            self._building.add(ref)
            pending = self.pending[ref]
            # an artifact given as a string names another artifact or a file
            found = self.lookup(pending) if isinstance(pending, str) else self.build(pending, name=ref)
            self._building.discard(ref)
            self.registry[ref] = found
        elif (self.base / ref).is_file():
            found = load(self.base / ref, registry=self.registry, validate=self.validate)
        else:
            raise ParseError(f"unresolved reference {ref!r}", self.path)
        return found

    def build(self, doc: Mapping[str, Any], name: str = "", expected: Optional[str] = None,
              default_groupoid: Optional[FiniteGroupoid] = None) -> Any:
        if not isinstance(doc, Mapping):
            raise ParseError("a definition must be a JSON object", self.path)
        kind = doc.get("kind", expected)
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r}", self.path)
        if expected is not None and kind != expected:
            raise ParseError(f"expected a {expected}, found a {kind}", self.path)
        name = str(doc.get("name", name))
        if kind == "groupoid":
            return validate_groupoid(doc, name=name)
        if kind == "haar":
            return self._haar(doc, name, default_groupoid)
        if kind == "measure":
            groupoid = self._groupoid(doc, "groupoid", default_groupoid, "measure")
            return UnitMeasure(groupoid, {str(k): to_fraction(v) for k, v in
                                          self.require(doc, "weights", "measure").items()}, name=name)
        if kind == "algebra-element":
            haar = self.resolve(self.require(doc, "haar", "algebra-element"), "haar", default_groupoid)
            coeffs = {str(k): _complex(v, self.path) for k, v in doc.get("coefficients", {}).items()}
            return NamedElement(name, AlgebraElement.from_mapping(haar, coeffs))
        if kind == "morphism":
            return self._morphism(doc, name)
        artifacts = self.require(doc, "artifacts", kind)
        if not isinstance(artifacts, Mapping):
            raise ParseError("artifacts must be an object of named definitions", self.path)
        self.pending.update(artifacts)
        built = {key: self.lookup(key) for key in artifacts}
        if kind == "bundle":
            return built
        checks = doc.get("checks", [])
        if not isinstance(checks, list) or not all(isinstance(c, Mapping) and "check" in c for c in checks):
            raise ParseError("checks must be a list of objects with a 'check' key", self.path)
        return Scenario(name=name or Path(self.path).stem, artifacts=built, checks=[dict(c) for c in checks])

    def _groupoid(self, doc: Mapping[str, Any], key: str, default: Optional[FiniteGroupoid],
                  what: str) -> FiniteGroupoid:
        if key in doc:
            return self.resolve(doc[key], "groupoid")
        if default is None:
            raise ParseError(f"{what} definition lacks {key!r}", self.path)
        return default

    def _haar(self, doc: Mapping[str, Any], name: str, default: Optional[FiniteGroupoid]) -> HaarSystem:
        groupoid = self._groupoid(doc, "groupoid", default, "haar")
        if "unit_weights" in doc:
            haar = haar_from_unit_weights(groupoid, {str(k): to_fraction(v)
                                                     for k, v in doc["unit_weights"].items()}, name=name)
        elif doc.get("canonical"):
            haar = HaarSystem(groupoid, [1] * len(groupoid), name=name or "counting")
        else:
            weights = self.require(doc, "weights", "haar")
            haar = HaarSystem(groupoid, {str(k): to_fraction(v) for k, v in weights.items()}, name=name)
        if self.validate:
            require_haar(haar)
        return haar

    def _side_haar(self, doc: Mapping[str, Any], key: str, groupoid: Optional[FiniteGroupoid]) -> HaarSystem:
        """The Haar system on one side of a morphism; counting when omitted"""
        if key in doc:
            return self.resolve(doc[key], "haar", groupoid)
        if groupoid is None:
            raise ParseError(f"morphism definition needs {key.split('_')[0]!r} or {key!r}", self.path)
        return HaarSystem(groupoid, [1] * len(groupoid), name="counting")

    def _morphism(self, doc: Mapping[str, Any], name: str) -> Union[ZakrzewskiMorphism, MorphismDefinition]:
        source = self.resolve(doc["source"], "groupoid") if "source" in doc else None
        target = self.resolve(doc["target"], "groupoid") if "target" in doc else None
        source_haar = self._side_haar(doc, "source_haar", source)
        target_haar = self._side_haar(doc, "target_haar", target)
        source = source or source_haar.groupoid
        target = target or target_haar.groupoid
        if source_haar.groupoid != source or target_haar.groupoid != target:
            raise GroupoidMismatch("morphism Haar systems do not live on its groupoids", (name,))
        rho = {str(t): str(u) for t, u in self.require(doc, "rho", "morphism").items()}
        act = {}
        for entry in self.require(doc, "action", "morphism"):
            if not isinstance(entry, list) or len(entry) != 3:
                raise ParseError(f"action entries are [γ, x, γ·x] triples, got {entry!r}", self.path)
            act[(str(entry[0]), str(entry[1]))] = str(entry[2])
        algebraic = AlgebraicMorphism.from_labels(source, target, rho, act, name=name)
        definition = MorphismDefinition(algebraic, source_haar, target_haar, name=name)
        return definition.build() if self.validate else definition


def loads(text: str, path: str = "", registry: Optional[Dict[str, Any]] = None,
          validate: bool = True) -> Artifact:
    """Parse one definition document; validate=False skips the axiom checks
    of Haar systems and morphisms so that check commands can report them"""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path, exc.lineno, exc.colno) from None
    registry = registry if registry is not None else {}
    artifact = _Resolver(path, registry, {}, validate).build(doc, name=Path(path).stem if path else "")
    name = getattr(artifact, "name", "")
    if name and not isinstance(artifact, dict):
        registry.setdefault(name, artifact)
    return artifact


def load(path: Union[str, Path], registry: Optional[Dict[str, Any]] = None, validate: bool = True) -> Artifact:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(exc.strerror or "cannot read file", str(path)) from None
    logger.debug("loading %s", path)
    return loads(text, str(path), registry, validate)


def _weights(mapping: Mapping[str, Any]) -> Dict[str, str]:
    return {k: format_rational(to_fraction(v)) for k, v in mapping.items()}


def to_document(artifact: Artifact, name: str = "") -> Dict[str, Any]:
    """Self-contained document; nested artifacts are written inline"""
    kind = kind_of(artifact)
    if kind == "groupoid":
        doc = {"kind": kind, "name": name or artifact.name}
        doc.update(artifact.to_raw())
        return doc
    if kind == "haar":
        return {"kind": kind, "name": name or artifact.name,
                "groupoid": to_document(artifact.groupoid), "weights": _weights(artifact.to_mapping())}
    if kind == "measure":
        return {"kind": kind, "name": name or artifact.name,
                "groupoid": to_document(artifact.groupoid),
                "weights": {k: format_rational(v) for k, v in artifact.to_mapping().items() if v > 0}}
    if kind == "algebra-element":
        element = artifact.element if isinstance(artifact, NamedElement) else artifact
        label = name or (artifact.name if isinstance(artifact, NamedElement) else "")
        return {"kind": kind, "name": label, "haar": to_document(element.haar),
                "coefficients": {k: {"re": v.real, "im": v.imag} for k, v in element.to_mapping().items()}}
    if kind == "morphism":
        algebraic = artifact.algebraic
        haar_doc = lambda h: {"kind": "haar", "name": h.name, "weights": _weights(h.to_mapping())}
        return {
            "kind": kind,
            "name": name or artifact.name,
            "source": to_document(algebraic.source),
            "target": to_document(algebraic.target),
            "source_haar": haar_doc(artifact.source_haar),
            "target_haar": haar_doc(artifact.target_haar),
            "rho": algebraic.rho_table(),
            "action": [[g, x, y] for (g, x), y in algebraic.action_table().items()],
        }
    if kind == "scenario":
        return {"kind": kind, "name": name or artifact.name,
                "artifacts": {k: to_document(v, k) for k, v in artifact.artifacts.items()},
                "checks": list(artifact.checks)}
    return {"kind": "bundle", "artifacts": {k: to_document(v, k) for k, v in artifact.items()}}


def dumps(artifact: Artifact, name: str = "") -> str:
    return json.dumps(to_document(artifact, name), indent=2, ensure_ascii=False)


def save(artifact: Artifact, path: Union[str, Path], name: str = "") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(artifact, name) + "\n", encoding="utf-8")
    return path
