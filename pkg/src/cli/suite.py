"""
The property suite behind `groupoidlab verify`.

Random cases are rebuilt from (case id, seed) inside worker processes,
every registered property runs on each case, and failing properties
are shrunk greedily (drop whole parts, then zero coefficients) while
the failure persists. Reports are sorted by case id so the pool's
scheduling never shows in the output.
"""

import hashlib
import json
import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from algebra.convolution import convolve, i_norm, involution
from algebra.element import AlgebraElement, approximate_identity
from algebra.h_hat import (
    RESIDUAL_TOL,
    check_h_hat_homomorphism,
    check_hermitian_identity,
    check_intertwining,
    h_hat_apply,
    span_check,
)
from cli import generators as gen
from cli.serialization import MorphismDefinition, NamedElement, Scenario, dumps, loads
from groupoid_core.constructors import (
    action_groupoid,
    cyclic_group,
    from_group,
    pair_groupoid,
    pair_label,
    symmetric_group3,
)
from groupoid_core.errors import GroupoidLabError, NotComposable
from groupoid_core.groupoid import compose, validate_groupoid
from groupoid_core.reports import CheckReport
from groupoid_core.structure import (
    is_group_bundle,
    is_principal,
    is_saturated,
    is_transitive,
    isotropy,
    orbits,
    principal_quotient,
    restriction,
)
from measure.decomposition import decompose_haar, haar_from_decomposition
from measure.haar import HaarSystem, canonical_counting_haar, check_haar, haar_from_unit_weights
from measure.haar import haar_structure_weights
from measure.measures import (
    UnitMeasure,
    check_quasi_invariance,
    induced_measure,
    inverse_measure,
    null_sets_agree,
)
from measure.modular import check_cocycle, modular_function
from morphism.action import GroupoidAction, check_action, left_translation_action
from morphism.algebraic import check_algebraic_morphism, unit_action
from morphism.composition import check_composite_delta, compose_morphisms, identity_morphism
from morphism.morphism import ZakrzewskiMorphism, check_condition6, delta_from_unit_modular, morphisms_equal
from morphism.zoo import (
    action_to_pair_morphism,
    cyclic_quotient_map,
    from_group_homomorphism,
    h_mu_trivial_morphism,
    principal_quotient_morphism,
    to_homomorphism,
    to_set_morphism,
)
from spectra.checks import (
    c_star_identity_residual,
    check_functoriality,
    check_h_hat_restriction,
    check_multiplier_bound,
    check_nondegenerate,
    check_norm_sandwich,
    check_rep_homomorphism,
)
from spectra.eigen import bisection_eigenvalues, jacobi_eigenvalues
from spectra.norms import NORM_TOL, ii_norm, norm_h, operator_norm, reduced_norm, trivial_norm
from spectra.norms import trivial_representation_matrix
from spectra.representation import pi_matrix

logger = logging.getLogger(__name__)

THREADS_ENV = "GROUPOIDLAB_THREADS"
SEED_ENV = "GROUPOIDLAB_SEED"
DEFAULT_SEED = 42
EIGEN_TOL = 1e-8
PAPER_SUITE_CASES = 20


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "")
    return int(raw) if raw.strip().lstrip("-").isdigit() else DEFAULT_SEED


def worker_count() -> int:
    """GROUPOIDLAB_THREADS, else the CPU count"""
    raw = os.environ.get(THREADS_ENV, "")
    if raw.strip().isdigit() and int(raw) > 0:
        return int(raw)
    return os.cpu_count() or 1


# ============================================================================
# OUTCOMES AND REPORTS
# ============================================================================

@dataclass
class Verdict:
    passed: bool
    residual: Optional[float] = None
    witness: Tuple[str, ...] = ()
    detail: str = ""


def _holds(condition: bool, witness: Iterable[Any] = (), detail: str = "") -> Verdict:
    if condition:
        return Verdict(True)
    return Verdict(False, witness=tuple(str(w) for w in witness), detail=detail)


def _within(residual: float, tol: float, witness: Iterable[Any] = (), detail: str = "") -> Verdict:
    residual = float(residual)
    if residual <= tol:
        return Verdict(True, residual)
    return Verdict(False, residual, tuple(str(w) for w in witness), detail or f"residual {residual:.3e} > {tol:.0e}")


def _from_report(report: CheckReport) -> Verdict:
    if report.passed:
        return Verdict(True)
    first = report.violations[0]
    return Verdict(False, witness=first.witness, detail=f"{report.subject}: {first.kind} {first.detail}".strip())


def _all(verdicts: Iterable[Verdict]) -> Verdict:
    worst: Optional[float] = None
    for v in verdicts:
        if not v.passed:
            return v
        if v.residual is not None:
            worst = v.residual if worst is None else max(worst, v.residual)
    return Verdict(True, worst)


def _raises(fn: Callable[[], Any], *expected: type) -> Verdict:
    try:
        fn()
    except expected as exc:
        return Verdict(True, detail=type(exc).__name__)
    except GroupoidLabError as exc:
        return Verdict(False, witness=exc.witness, detail=f"raised {type(exc).__name__}: {exc}")
    names = "/".join(e.__name__ for e in expected)
    return Verdict(False, detail=f"expected {names}, nothing was raised")


@dataclass
class Outcome:
    """One property on one case"""
    prop: str
    passed: bool
    residual: Optional[float] = None
    witness: Tuple[str, ...] = ()
    detail: str = ""
    seconds: float = 0.0
    shrunk: Optional[Dict[str, Any]] = None

    def to_dict(self, timings: bool = True) -> Dict[str, Any]:
        out: Dict[str, Any] = {"property": self.prop, "passed": self.passed}
        if self.residual is not None:
            out["residual"] = self.residual
        if not self.passed:
            out["witness"] = list(self.witness)
            out["detail"] = self.detail
            if self.shrunk is not None:
                out["shrunk"] = self.shrunk
        if timings:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class CaseResult:
    case_id: int
    seed: int
    description: str
    outcomes: List[Outcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def to_dict(self, timings: bool = True) -> Dict[str, Any]:
        return {"case": self.case_id, "seed": self.seed, "description": self.description,
                "passed": self.passed, "outcomes": [o.to_dict(timings) for o in self.outcomes]}


@dataclass
class VerificationReport:
    suite: str
    seed: int
    cases: List[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def failures(self) -> List[Tuple[CaseResult, Outcome]]:
        return [(c, o) for c in self.cases for o in c.outcomes if not o.passed]

    def property_totals(self) -> Dict[str, Dict[str, Any]]:
        totals: Dict[str, Dict[str, Any]] = {}
        for case in self.cases:
            for o in case.outcomes:
                entry = totals.setdefault(o.prop, {"runs": 0, "failures": 0, "max_residual": None,
                                                   "seconds": 0.0})
                entry["runs"] += 1
                entry["failures"] += 0 if o.passed else 1
                entry["seconds"] += o.seconds
                if o.residual is not None:
                    current = entry["max_residual"]
                    entry["max_residual"] = o.residual if current is None else max(current, o.residual)
        return dict(sorted(totals.items()))

    def to_dict(self, timings: bool = True) -> Dict[str, Any]:
        totals = self.property_totals()
        if not timings:
            for entry in totals.values():
                entry.pop("seconds")
        return {"suite": self.suite, "seed": self.seed, "passed": self.passed,
                "cases": [c.to_dict(timings) for c in sorted(self.cases, key=lambda c: c.case_id)],
                "properties": totals}

    def fingerprint(self) -> str:
        """SHA-256 of the report without timings; equal seeds give equal fingerprints"""
        text = json.dumps(self.to_dict(timings=False), sort_keys=True, ensure_ascii=True)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def render_text(self) -> str:
        lines = ["=" * 70, f"VERIFICATION REPORT: {self.suite} (seed {self.seed})", "=" * 70, ""]
        lines.append(f"{'Property':<40} {'Runs':>6} {'Fail':>6} {'Max residual':>14}")
        lines.append("-" * 70)
        for name, entry in self.property_totals().items():
            residual = "-" if entry["max_residual"] is None else f"{entry['max_residual']:.2e}"
            lines.append(f"{name:<40} {entry['runs']:>6} {entry['failures']:>6} {residual:>14}")
        lines.append("")
        for case, o in self.failures():
            lines.append(f"FAIL case {case.case_id} ({case.description}): {o.prop}")
            lines.append(f"  witness: {', '.join(o.witness) or '-'}")
            lines.append(f"  {o.detail}")
            if o.shrunk:
                lines.append(f"  shrunk: {json.dumps(o.shrunk, ensure_ascii=False)}")
        lines.append("=" * 70)
        lines.append(f"{'PASS' if self.passed else 'FAIL'}: {len(self.cases)} cases, "
                     f"{len(self.failures())} failures, fingerprint {self.fingerprint()[:16]}")
        return "\n".join(lines)


# ============================================================================
# RANDOM CASES
# ============================================================================

class Case:
    """A materialized random instance: groupoid, Haar system, measures,
    algebra elements, the constructor zoo and a composable chain"""

    def __init__(self, spec: gen.CaseSpec):
        self.spec = spec
        rng = random.Random(spec.seed ^ 0x5EED)
        self.groupoid = gen.build_groupoid(spec)
        self.haar = gen.random_haar(rng, self.groupoid)
        self.mu = gen.random_saturated_measure(rng, self.groupoid)
        self.mu_equivalent = gen.measure_on_support(rng, self.mu)
        self.broken_mu = gen.non_saturated_measure(rng, self.groupoid)
        self.zoo = gen.zoo(rng, self.haar)
        self.chain = gen.random_chain(rng, self.haar, length=3)
        self.hermitian = gen.random_hermitian(rng, rng.randint(1, 12))
        self.elements: Dict[str, AlgebraElement] = {
            "f": gen.random_element(rng, self.haar),
            "g": gen.random_element(rng, self.haar),
            "ξ1": gen.random_element(rng, self.chain[0].target_haar),
            "ξ2": gen.random_element(rng, self.chain[1].target_haar),
        }
        for h in self.zoo:
            self.elements[f"ξ@{h.name}"] = gen.random_element(rng, h.target_haar)
            self.elements[f"ζ@{h.name}"] = gen.random_element(rng, h.target_haar)

    def element(self, key: str) -> AlgebraElement:
        return self.elements[key]

    def with_coefficient(self, key: str, x: int, value: complex) -> "Case":
        other = object.__new__(Case)
        other.__dict__.update(self.__dict__)
        other.elements = dict(self.elements)
        coeffs = self.elements[key].coeffs.copy()
        coeffs[x] = value
        other.elements[key] = AlgebraElement(self.elements[key].haar, coeffs)
        return other


def _member(case: Case, name: str) -> Optional[ZakrzewskiMorphism]:
    return next((h for h in case.zoo if h.name == name), None)


PROPERTIES: Dict[str, Callable[[Case], Verdict]] = {}


def prop(name: str) -> Callable[[Callable[[Case], Verdict]], Callable[[Case], Verdict]]:
    def register(fn: Callable[[Case], Verdict]) -> Callable[[Case], Verdict]:
        PROPERTIES[name] = fn
        return fn
    return register


# groupoid-core

@prop("groupoid.table-roundtrip")
def _table_roundtrip(case: Case) -> Verdict:
    g = case.groupoid
    return _holds(validate_groupoid(g.to_raw(), g.name) == g, (g.name,), "to_raw does not rebuild the groupoid")


@prop("groupoid.orbits")
def _orbit_partition(case: Case) -> Verdict:
    g = case.groupoid
    parts = orbits(g)
    covered = sorted(u for block in parts.blocks for u in block)
    if covered != sorted(g.unit_labels):
        return _holds(False, (g.name,), "orbits do not partition the units")
    for u in g.units:
        for v in g.units:
            linked = bool(g.hom(u, v))
            if linked != parts.same_orbit(g.label(u), g.label(v)):
                return _holds(False, (g.label(u), g.label(v)), "Γ_v^u ≠ ∅ disagrees with the orbit partition")
    return _all(_holds(is_saturated(g, block) and is_transitive(restriction(g, block)), block,
                       "orbit is not a saturated transitive block") for block in parts.blocks)


@prop("groupoid.principal-quotient")
def _principal_quotient(case: Case) -> Verdict:
    g = case.groupoid
    quotient, qmap = principal_quotient(g)
    expected = sum(len(block) ** 2 for block in orbits(g).blocks)
    isotropy_orders = [len(isotropy(g, block[0])) for block in orbits(g).blocks]
    return _all([
        _holds(is_principal(quotient), (quotient.name,), "R is not principal"),
        _holds(len(quotient) == expected, (len(quotient), expected), "|R| ≠ Σ|orbit|²"),
        _holds(len(set(qmap.values())) == len(quotient), (g.name,), "(r, d) is not onto R"),
        _holds(is_principal(g) == all(n == 1 for n in isotropy_orders), (g.name,), "principal ⟺ trivial isotropy"),
    ])


# measure

@prop("haar.axioms")
def _haar_axioms(case: Case) -> Verdict:
    return _all([_from_report(check_haar(case.haar)),
                 _from_report(check_haar(canonical_counting_haar(case.groupoid)))])


@prop("haar.corruption-detected")
def _haar_corruption(case: Case) -> Verdict:
    g = case.haar.groupoid
    weights = list(case.haar.weights)
    weights[0] = Fraction(0)
    zeroed = check_haar(HaarSystem(g, weights))
    verdicts = [_holds(any(v.kind == "full-support" for v in zeroed.violations), (g.label(0),),
                       "zero weight not reported")]
    moving = next((x for x in range(len(g)) if not g.is_unit(x)), None)
    if moving is not None:
        weights = list(case.haar.weights)
        weights[moving] *= 2
        doubled = check_haar(HaarSystem(g, weights))
        verdicts.append(_holds(any(v.kind == "left-invariance" for v in doubled.violations),
                               (g.label(moving),), "broken invariance not reported"))
    return _all(verdicts)


@prop("haar.decomposition")
def _haar_decomposition(case: Case) -> Verdict:
    g = case.groupoid
    decomposition = decompose_haar(case.haar)
    rebuilt = haar_from_decomposition(g, UnitMeasure(g, decomposition.beta_tilde))
    verdicts = [
        _holds(decomposition.recompose() == case.haar.weights, (g.name,), "recomposition differs"),
        _holds(rebuilt == case.haar, (g.name,), "haar_from_decomposition does not invert decompose_haar"),
        _holds(dict(decomposition.beta_tilde) == haar_structure_weights(case.haar), (g.name,),
               "β̃ differs from the structure weights"),
        _holds(decomposition.delta.is_trivial(), (g.name,), "δ_G is not trivial"),
    ]
    for block in orbits(g).blocks:
        first = decomposition.orbit_measure(block[0])
        verdicts.append(_holds(all(decomposition.orbit_measure(t) == first for t in block), block,
                               "orbit measure depends on the base point"))
    return _all(verdicts)


@prop("measure.quasi-invariance")
def _quasi_invariance(case: Case) -> Verdict:
    verdicts = [_holds(check_quasi_invariance(case.haar, case.mu) and null_sets_agree(case.haar, case.mu),
                       case.mu.support_labels, "saturated measure rejected")]
    if case.broken_mu is not None:
        broken = case.broken_mu
        verdicts.append(_holds(not check_quasi_invariance(case.haar, broken)
                               and not null_sets_agree(case.haar, broken),
                               broken.support_labels, "non-saturated measure accepted"))
    return _all(verdicts)


@prop("measure.modular-cocycle")
def _modular(case: Case) -> Verdict:
    g = case.groupoid
    delta = modular_function(case.haar, case.mu)
    induced = induced_measure(case.haar, case.mu)
    inverse = inverse_measure(induced)
    verdicts = [_from_report(check_cocycle(delta)),
                _holds(inverse_measure(inverse) == induced, (g.name,), "inversion is not an involution")]
    for lab in delta.domain.labels:
        x = g.index(lab)
        verdicts.append(_holds(delta.value_of(lab) == induced.weights[x] / inverse.weights[x], (lab,),
                               "Δ differs from the induced/inverse ratio"))
    return _all(verdicts)


# morphism

@prop("morphism.zoo-axioms")
def _zoo_axioms(case: Case) -> Verdict:
    verdicts = []
    for h in case.zoo:
        verdicts.append(_from_report(check_algebraic_morphism(h.algebraic)))
        verdicts.append(_from_report(check_condition6(h.algebraic, h.source_haar, h.target_haar,
                                                      h.semidirect, h.delta)))
    return _all(verdicts)


@prop("morphism.identity-delta")
def _identity_delta(case: Case) -> Verdict:
    l = identity_morphism(case.haar)
    return _holds(l.delta.is_trivial(), (l.name,), "Δ_l is not ≡ 1")


@prop("morphism.delta-range-only")
def _delta_range_only(case: Case) -> Verdict:
    for h in case.zoo:
        for x, g in h.semidirect.pairs():
            if h.delta_at(x, g) != h.delta_at(h.target.r(x), g):
                return _holds(False, (h.name, h.target.label(x), h.source.label(g)), "Δ_h(x,γ) ≠ Δ_h(r(x),γ)")
    return Verdict(True)


@prop("morphism.delta-via-units")
def _delta_via_units(case: Case) -> Verdict:
    return _all(_holds(delta_from_unit_modular(h).values == h.delta.values, (h.name,),
                       "δ_G·Δ(β̃) differs from the ratio formula") for h in case.zoo)


@prop("morphism.unit-laws")
def _unit_laws(case: Case) -> Verdict:
    verdicts = []
    for h in case.zoo:
        if len(h.target) > gen.MAX_TARGET // 4:
            continue
        left = compose_morphisms(identity_morphism(h.source_haar), h)
        right = compose_morphisms(h, identity_morphism(h.target_haar))
        verdicts.append(_holds(morphisms_equal(left, h), (h.name,), "h∘l ≠ h"))
        verdicts.append(_holds(morphisms_equal(right, h), (h.name,), "l∘h ≠ h"))
    return _all(verdicts)


@prop("morphism.associativity")
def _associativity(case: Case) -> Verdict:
    h1, h2, h3 = case.chain
    first = compose_morphisms(compose_morphisms(h1, h2), h3)
    second = compose_morphisms(h1, compose_morphisms(h2, h3))
    return _holds(morphisms_equal(first, second), (h1.name, h2.name, h3.name), "(h₃h₂)h₁ ≠ h₃(h₂h₁)")


@prop("morphism.composite-delta")
def _composite_delta(case: Case) -> Verdict:
    h1, h2, _ = case.chain
    return _from_report(check_composite_delta(h1, h2, compose_morphisms(h1, h2)))


@prop("morphism.unit-action")
def _unit_action(case: Case) -> Verdict:
    verdicts = [_from_report(check_action(unit_action(h.algebraic))) for h in case.zoo]
    translation = _member(case, "translation")
    if translation is not None:
        g = case.groupoid
        induced = unit_action(translation.algebraic)
        base = left_translation_action(g)
        for (a, x) in base.domain():
            y = base.apply(a, x)
            got = induced.act_on(g.label(a), pair_label(g.label(x), g.label(x)))
            if got != pair_label(g.label(y), g.label(y)):
                verdicts.append(_holds(False, (g.label(a), g.label(x)), "γ·x ≠ r(γ·_h(x,x))"))
                break
    return _all(verdicts)


@prop("morphism.set-image-bundle")
def _set_image(case: Case) -> Verdict:
    h = _member(case, "set")
    if h is None:
        return Verdict(True)
    image = h.algebraic.image()
    return _holds(is_group_bundle(restriction(case.groupoid, image)), image, "Γ over the image is not a group bundle")


@prop("morphism.homomorphism-roundtrip")
def _homomorphism_roundtrip(case: Case) -> Verdict:
    g = case.groupoid
    reweight = _member(case, "reweight")
    quotient = _member(case, "quotient")
    _, qmap = principal_quotient(g)
    return _all([
        _holds(to_homomorphism(reweight) == {lab: lab for lab in g.labels}, (reweight.name,),
               "identity homomorphism not recovered"),
        _holds(to_homomorphism(quotient) == qmap, (quotient.name,), "(r, d) not recovered"),
    ])


# algebra

@prop("algebra.convolution")
def _convolution(case: Case) -> Verdict:
    f, g = case.element("f"), case.element("g")
    h = involution(f) + g
    e = approximate_identity(case.haar)
    return _all([
        _within(convolve(convolve(f, g), h).max_abs_diff(convolve(f, convolve(g, h))), RESIDUAL_TOL, ("f", "g", "h"),
                "(f∗g)∗h ≠ f∗(g∗h)"),
        _within(involution(convolve(f, g)).max_abs_diff(convolve(involution(g), involution(f))), RESIDUAL_TOL,
                ("f", "g"), "(f∗g)* ≠ g*∗f*"),
        _within(involution(involution(f)).max_abs_diff(f), 0.0, ("f",), "f** ≠ f"),
        _within(convolve(e, f).max_abs_diff(f), RESIDUAL_TOL, ("e", "f"), "e∗f ≠ f"),
        _within(convolve(f, e).max_abs_diff(f), RESIDUAL_TOL, ("f", "e"), "f∗e ≠ f"),
    ])


@prop("algebra.i-norm")
def _i_norm(case: Case) -> Verdict:
    f, g = case.element("f"), case.element("g")
    excess = i_norm(convolve(f, g)) - i_norm(f) * i_norm(g)
    return _within(max(excess, 0.0), RESIDUAL_TOL, ("f", "g"), "‖f∗g‖_I > ‖f‖_I‖g‖_I")


@prop("algebra.identity-is-convolution")
def _l_hat(case: Case) -> Verdict:
    f, g = case.element("f"), case.element("g")
    l = identity_morphism(case.haar)
    return _within(h_hat_apply(l, f, g).max_abs_diff(convolve(f, g)), RESIDUAL_TOL, ("f", "g"), "l̂(f)g ≠ f∗g")


@prop("algebra.hermitian")
def _hermitian(case: Case) -> Verdict:
    f = case.element("f")
    return _all(_within(check_hermitian_identity(h, f, case.element(f"ξ@{h.name}"), case.element(f"ζ@{h.name}")),
                        RESIDUAL_TOL, (h.name,)) for h in case.zoo)


@prop("algebra.intertwining")
def _intertwining(case: Case) -> Verdict:
    h1, h2, _ = case.chain
    residual = check_intertwining(h1, h2, case.element("f"), case.element("ξ1"), case.element("ξ2"))
    return _within(residual, RESIDUAL_TOL, (h1.name, h2.name))


@prop("algebra.h-hat-homomorphism")
def _h_hat_homomorphism(case: Case) -> Verdict:
    f, g = case.element("f"), case.element("g")
    return _all(_within(check_h_hat_homomorphism(h, f, g, case.element(f"ξ@{h.name}")), RESIDUAL_TOL, (h.name,))
                for h in case.zoo)


@prop("algebra.span")
def _span(case: Case) -> Verdict:
    return _all(_holds(span_check(h), (h.name,), "ĥ(δ_γ)δ_x do not span C_c(G)") for h in case.zoo)


# spectra

@prop("spectra.jacobi-oracle")
def _jacobi_oracle(case: Case) -> Verdict:
    jacobi = jacobi_eigenvalues(case.hermitian)
    oracle = bisection_eigenvalues(case.hermitian)
    return _within(float(np.max(np.abs(jacobi - oracle))), EIGEN_TOL, (case.hermitian.shape[0],),
                   "Jacobi and bisection eigenvalues disagree")


@prop("spectra.operator-norm")
def _operator_norm(case: Case) -> Verdict:
    m = case.hermitian
    n = m.shape[0]
    other = np.roll(m, 1, axis=0) * 1j
    norm_m = operator_norm(m)
    return _all([
        _within(abs(operator_norm(2.5 * m) - 2.5 * norm_m), RESIDUAL_TOL * max(1.0, norm_m), (n,),
                "operator norm not homogeneous"),
        _within(max(operator_norm(m + other) - norm_m - operator_norm(other), 0.0), RESIDUAL_TOL * max(1.0, norm_m),
                (n,), "triangle inequality fails"),
        _within(abs(operator_norm(m.conj().T @ m) - norm_m ** 2), EIGEN_TOL * max(1.0, norm_m ** 2), (n,),
                "‖M*M‖ ≠ ‖M‖²"),
    ])


@prop("spectra.representation")
def _representation(case: Case) -> Verdict:
    f, g = case.element("f"), case.element("g")
    verdicts = []
    for h in case.zoo:
        for t in h.target.units:
            residuals = check_rep_homomorphism(h, t, f, g)
            verdicts.append(_holds(residuals.passed, (h.name, h.target.label(t)),
                                   f"multiplicative {residuals.multiplicative:.2e}, adjoint {residuals.adjoint:.2e}, "
                                   f"bound excess {residuals.bound_excess:.2e}"))
    return _all(verdicts)


@prop("spectra.functoriality")
def _functoriality(case: Case) -> Verdict:
    h1, h2, _ = case.chain
    kh = compose_morphisms(h1, h2)
    f, xi1, xi2 = case.element("f"), case.element("ξ1"), case.element("ξ2")
    return _all(_within(check_functoriality(h1, h2, f, xi1, xi2, s, kh), RESIDUAL_TOL,
                        (h1.name, h2.name, h2.target.label(s))) for s in h2.target.units)


@prop("spectra.h-hat-restriction")
def _restriction(case: Case) -> Verdict:
    f = case.element("f")
    return _all(_within(check_h_hat_restriction(h, t, f, case.element(f"ξ@{h.name}")), RESIDUAL_TOL,
                        (h.name, h.target.label(t))) for h in case.zoo for t in h.target.units)


@prop("spectra.nondegenerate")
def _nondegenerate(case: Case) -> Verdict:
    return _all(_holds(check_nondegenerate(h, t), (h.name, h.target.label(t)), "π_{h,t} is degenerate")
                for h in case.zoo for t in h.target.units)


@prop("spectra.norm-sandwich")
def _sandwich(case: Case) -> Verdict:
    return _from_report(check_norm_sandwich(case.element("f"), case.zoo, [case.mu, case.mu_equivalent]))


@prop("spectra.h-mu-is-trivial-representation")
def _h_mu(case: Case) -> Verdict:
    f = case.element("f")
    h = next((m for m in case.zoo if m.name.startswith("h_")), None)
    if h is None:
        return Verdict(True)
    return _within(abs(norm_h(h, f) - trivial_norm(case.haar, case.mu, f)), NORM_TOL, (h.name,),
                   "‖f‖_{h_μ} ≠ ‖II_μ(f)‖")


@prop("spectra.equivalent-measures")
def _equivalent(case: Case) -> Verdict:
    f = case.element("f")
    return _within(abs(trivial_norm(case.haar, case.mu, f) - trivial_norm(case.haar, case.mu_equivalent, f)),
                   NORM_TOL, (case.mu.name, case.mu_equivalent.name), "equivalent measures give different II norms")


@prop("spectra.c-star-identity")
def _c_star(case: Case) -> Verdict:
    return _within(c_star_identity_residual(case.element("f")), NORM_TOL, ("f",), "‖f*∗f‖ ≠ ‖f‖²")


@prop("spectra.multiplier-bound")
def _multiplier(case: Case) -> Verdict:
    f = case.element("f")
    return _all(_within(check_multiplier_bound(h, f, case.element(f"ξ@{h.name}")), NORM_TOL, (h.name,),
                        "‖ĥ(f)ξ‖ > ‖f‖‖ξ‖") for h in case.zoo)


# cli

@prop("cli.roundtrip")
def _roundtrip(case: Case) -> Verdict:
    f = case.element("f")
    reweight = _member(case, "reweight")
    element = loads(dumps(NamedElement("f", f)))
    morphism = loads(dumps(reweight))
    return _all([
        _holds(loads(dumps(case.groupoid)) == case.groupoid, ("groupoid",), "groupoid changed"),
        _holds(loads(dumps(case.haar)) == case.haar, ("haar",), "Haar system changed"),
        _holds(loads(dumps(case.mu)) == case.mu, ("measure",), "measure changed"),
        _holds(bool(np.array_equal(element.element.coeffs, f.coeffs)), ("algebra-element",), "coefficients changed"),
        _holds(morphisms_equal(morphism, reweight), ("morphism",), "morphism changed"),
    ])


# ============================================================================
# RUNNING AND SHRINKING
# ============================================================================

def _evaluate(fn: Callable[[Case], Verdict], case: Case) -> Verdict:
    try:
        return fn(case)
    except GroupoidLabError as exc:
        return Verdict(False, witness=exc.witness, detail=f"{type(exc).__name__}: {exc}")
    except Exception as exc:
        return Verdict(False, detail=f"crashed with {type(exc).__name__}: {exc}")


def shrink(spec: gen.CaseSpec, name: str) -> Dict[str, Any]:
    """Greedy minimization of a failing case for one property"""
    fn = PROPERTIES[name]
    current = spec
    changed = True
    while changed and len(current.parts) > 1:
        changed = False
        for k in range(len(current.parts)):
            candidate = current.without_part(k)
            if not _evaluate(fn, Case(candidate)).passed:
                current, changed = candidate, True
                break
    case = Case(current)
    for key in list(case.elements):
        for x in np.flatnonzero(case.elements[key].coeffs):
            trial = case.with_coefficient(key, int(x), 0)
            if not _evaluate(fn, trial).passed:
                case = trial
    verdict = _evaluate(fn, case)
    logger.info("shrunk %s on case %d to %s", name, spec.case_id, gen.describe(current))
    return {
        "groupoid": gen.describe(current),
        "elements": {k: list(v.support()) for k, v in case.elements.items() if k in ("f", "g", "ξ1", "ξ2")},
        "witness": list(verdict.witness),
        "detail": verdict.detail,
    }


def run_case(spec: gen.CaseSpec, properties: Optional[List[str]] = None, minimize: bool = True) -> CaseResult:
    logger.info("case %d started: %s", spec.case_id, gen.describe(spec))
    result = CaseResult(spec.case_id, spec.seed, gen.describe(spec))
    start = time.perf_counter()
    try:
        case = Case(spec)
    except GroupoidLabError as exc:
        result.outcomes.append(Outcome("case.build", False, witness=exc.witness, detail=exc.describe(),
                                       seconds=time.perf_counter() - start))
        return result
    for name in properties or sorted(PROPERTIES):
        t0 = time.perf_counter()
        verdict = _evaluate(PROPERTIES[name], case)
        outcome = Outcome(name, verdict.passed, verdict.residual, verdict.witness, verdict.detail,
                          time.perf_counter() - t0)
        if not verdict.passed and minimize:
            outcome.shrunk = shrink(spec, name)
        result.outcomes.append(outcome)
    logger.info("case %d finished: %s", spec.case_id, "pass" if result.passed else "FAIL")
    return result


def case_specs(seed: int, cases: int) -> List[gen.CaseSpec]:
    rng = random.Random(seed)
    return [gen.random_case_spec(i, rng.getrandbits(32)) for i in range(cases)]


def run_random(seed: int, cases: int, threads: Optional[int] = None, suite: str = "random") -> VerificationReport:
    specs = case_specs(seed, cases)
    threads = worker_count() if threads is None else threads
    logger.info("running %d cases with %d workers", len(specs), threads)
    if threads <= 1 or len(specs) <= 1:
        results = [run_case(s) for s in specs]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_case, specs, chunksize=max(1, len(specs) // (threads * 4))))
    return VerificationReport(suite, seed, sorted(results, key=lambda r: r.case_id))


# ============================================================================
# FIXTURES
# ============================================================================

def _z2_swap_morphism() -> ZakrzewskiMorphism:
    z2 = cyclic_group(2)
    swap = GroupoidAction(z2, ["a", "b"], {"a": "0", "b": "0"},
                          {("0", "a"): "a", ("0", "b"): "b", ("1", "a"): "b", ("1", "b"): "a"}, name="swap")
    return action_to_pair_morphism(swap, {"a": Fraction(1, 3), "b": Fraction(2, 3)},
                                   canonical_counting_haar(z2), name="swap")


def _fixture_tables() -> Verdict:
    g = pair_groupoid(["1", "2"])
    z3_rows = [[str((a + b) % 3) for b in range(3)] for a in range(3)]
    z3_rows[1][2] = "1"
    return _all([
        _holds(len(g) == 4 and len(g.units) == 2, (g.name,), "pair groupoid on 2 points"),
        _holds(compose(g, "(1,2)", "(2,1)") == "(1,1)", ("(1,2)", "(2,1)"), "(1,2)(2,1) ≠ (1,1)"),
        _holds(compose(cyclic_group(3), "1", "2") == "0", ("1", "2"), "1+2 ≠ 0 in Z/3"),
        _raises(lambda: compose(g, "(1,2)", "(1,2)"), NotComposable),
        _raises(lambda: from_group(["0", "1", "2"], z3_rows), GroupoidLabError),
    ])


def _fixture_action_groupoid() -> Verdict:
    g = action_groupoid(cyclic_group(2), ["a", "b", "c"],
                        {("0", "a"): "a", ("0", "b"): "b", ("0", "c"): "c",
                         ("1", "a"): "b", ("1", "b"): "a", ("1", "c"): "c"})
    parts = orbits(g)
    quotient, _ = principal_quotient(g)
    return _all([
        _holds(len(g) == 6 and len(g.units) == 3, (g.name,), "6 elements, 3 units"),
        _holds(sorted(len(b) for b in parts.blocks) == [1, 2], parts.blocks, "orbits {a,b}, {c}"),
        _holds(len(isotropy(g, "0|c")) == 2, ("0|c",), "isotropy at c is Z/2"),
        _holds(len(quotient) == 5, (quotient.name,), "R has 5 elements"),
        _holds(len(isotropy(pair_groupoid(["1", "2", "3"]), "(1,1)")) == 1, ("(1,1)",), "pair isotropy trivial"),
    ])


def _fixture_haar() -> Verdict:
    p2 = pair_groupoid(["1", "2"])
    by_range = HaarSystem(p2, {"(1,1)": 1, "(1,2)": 1, "(2,1)": Fraction(1, 2), "(2,2)": Fraction(1, 2)})
    weighted = haar_from_unit_weights(p2, {"(1,1)": 1, "(2,2)": Fraction(1, 2)})
    return _all([
        _from_report(check_haar(canonical_counting_haar(pair_groupoid(["1", "2", "3"])))),
        _holds(not check_haar(by_range).passed, ("(1,2)",), "range-dependent weights accepted"),
        _holds(weighted.weight_of("(1,2)") == Fraction(1, 2) and weighted.weight_of("(2,1)") == 1,
               ("(1,2)",), "weight(x) ≠ c(d(x))"),
        _holds(haar_from_decomposition(p2, UnitMeasure(p2, {"(1,1)": 1, "(2,2)": Fraction(1, 2)})) == weighted,
               (p2.name,), "decomposition and unit weights disagree"),
    ])


def _fixture_modular() -> Verdict:
    p2 = pair_groupoid(["1", "2"])
    haar = canonical_counting_haar(p2)
    mu = UnitMeasure(p2, {"(1,1)": Fraction(1, 4), "(2,2)": Fraction(3, 4)}, name="μ")
    induced = induced_measure(haar, mu)
    x = p2.index("(1,2)")
    h_mu = h_mu_trivial_morphism(haar, mu)
    one_point = UnitMeasure(p2, {"(1,1)": 1})
    return _all([
        _holds(induced.weights[x] == Fraction(1, 4), ("(1,2)",), "λ^μ((1,2)) ≠ 1/4"),
        _holds(inverse_measure(induced).weights[x] == Fraction(3, 4), ("(1,2)",), "inverse weight ≠ 3/4"),
        _holds(modular_function(haar, mu).value_of("(1,2)") == Fraction(1, 3), ("(1,2)",), "Δ((1,2)) ≠ 1/3"),
        _holds(h_mu.delta_of(pair_label("(1,1)", "(1,1)"), "(1,2)") == Fraction(1, 3), (h_mu.name,),
               "Δ_{h_μ} ≠ Δ_μ"),
        _holds(not check_quasi_invariance(haar, one_point), ("(1,2)",), "μ = (1, 0) accepted"),
    ])


def _fixture_morphisms() -> Verdict:
    swap = _z2_swap_morphism()
    s3 = canonical_counting_haar(symmetric_group3())
    p3 = haar_from_unit_weights(pair_groupoid(["1", "2", "3"]), {"(1,1)": 1, "(2,2)": 2, "(3,3)": Fraction(1, 3)})
    z8, z4, z2 = (canonical_counting_haar(cyclic_group(n)) for n in (8, 4, 2))
    first = from_group_homomorphism(z8, z4, cyclic_quotient_map(8, 4))
    second = from_group_homomorphism(z4, z2, cyclic_quotient_map(4, 2))
    direct = from_group_homomorphism(z8, z2, cyclic_quotient_map(8, 2))
    p2 = canonical_counting_haar(pair_groupoid(["1", "2"]))
    return _all([
        _holds(swap.delta_of(pair_label("a", "a"), "1") == Fraction(1, 2), ("(a,a)", "1"), "Δ((a,·), swap) ≠ 1/2"),
        _holds(identity_morphism(s3).delta.is_trivial() and identity_morphism(p3).delta.is_trivial(),
               ("l",), "Δ_l ≢ 1"),
        _holds(morphisms_equal(compose_morphisms(first, second), direct), ("Z/8", "Z/4", "Z/2"),
               "quotient chain ≠ direct quotient"),
        _holds(len(second.algebraic.action_table()) == 8, ("Z/4→Z/2",), "Z/4 → Z/2 action has 8 pairs"),
        _raises(lambda: to_set_morphism(p2, ["x"], {"x": "(1,1)"}), GroupoidLabError),
    ])


def _fixture_algebra() -> Verdict:
    p2 = canonical_counting_haar(pair_groupoid(["1", "2"]))
    z2 = canonical_counting_haar(cyclic_group(2))
    a, b = 0.75, -2.0
    f = AlgebraElement.from_mapping(z2, {"0": a, "1": b})
    i_g = AlgebraElement.point_mass(z2, "1", 1j)
    product = convolve(AlgebraElement.point_mass(p2, "(1,2)"), AlgebraElement.point_mass(p2, "(2,1)"))
    return _all([
        _within(product.max_abs_diff(AlgebraElement.point_mass(p2, "(1,1)")), 0.0, ("(1,2)", "(2,1)"),
                "δ_(1,2)∗δ_(2,1) ≠ δ_(1,1)"),
        _within(abs(convolve(f, f).value("0") - (a * a + b * b)), RESIDUAL_TOL, ("0",), "(f∗f)(e) ≠ a²+b²"),
        _within(involution(AlgebraElement.point_mass(p2, "(1,2)")).max_abs_diff(
            AlgebraElement.point_mass(p2, "(2,1)")), 0.0, ("(1,2)",), "δ_(1,2)* ≠ δ_(2,1)"),
        _within(abs(involution(i_g).value("1") + 1j), 0.0, ("1",), "(iδ_g)* ≠ −iδ_g⁻¹"),
        _within(abs(i_norm(AlgebraElement.from_mapping(z2, {"0": 1, "1": 1})) - 2.0), RESIDUAL_TOL, ("δ_e+δ_g",), "‖δ_e+δ_g‖_I ≠ 2"),
    ])


def _fixture_norms() -> Verdict:
    z2 = canonical_counting_haar(cyclic_group(2))
    p2 = canonical_counting_haar(pair_groupoid(["1", "2"]))
    p3 = canonical_counting_haar(pair_groupoid(["1", "2", "3"]))
    plus = AlgebraElement.from_mapping(z2, {"0": 1, "1": 1})
    minus = AlgebraElement.from_mapping(z2, {"0": 1, "1": -1})
    ones = AlgebraElement(p2, np.ones(4))
    uniform = UnitMeasure(p2.groupoid, {"(1,1)": 1, "(2,2)": 1})
    l = identity_morphism(z2)
    group_mu = UnitMeasure(z2.groupoid, {"0": 1})
    return _all([
        _within(abs(reduced_norm(plus) - 2.0), RESIDUAL_TOL, ("δ_e+δ_g",), "‖δ_e+δ_g‖_red ≠ 2"),
        _within(abs(reduced_norm(minus) - 2.0), RESIDUAL_TOL, ("δ_e−δ_g",), "‖δ_e−δ_g‖_red ≠ 2"),
        _within(float(np.max(np.abs(pi_matrix(l, "0", plus) - np.ones((2, 2))))), RESIDUAL_TOL, ("π_l",),
                "π_l(δ_e+δ_g) is not all-ones"),
        _within(abs(reduced_norm(AlgebraElement.point_mass(p3, "(1,2)")) - 1.0), RESIDUAL_TOL, ("(1,2)",),
                "‖δ_(1,2)‖_red ≠ 1"),
        _within(abs(operator_norm(np.ones((2, 2))) - 2.0), RESIDUAL_TOL, ("ones",), "all-ones norm ≠ 2"),
        _within(abs(operator_norm(np.eye(3)) - 1.0), RESIDUAL_TOL, ("identity",), "identity norm ≠ 1"),
        _within(abs(operator_norm(np.diag([3.0, -4j])) - 4.0), RESIDUAL_TOL, ("diag",), "diag(3,−4i) norm ≠ 4"),
        _within(float(np.max(np.abs(trivial_representation_matrix(p2, uniform, ones) - np.ones((2, 2))))),
                RESIDUAL_TOL, ("II_μ",), "II_μ(1) is not all-ones"),
        _within(abs(ii_norm(p2, uniform, ones) - 2.0), RESIDUAL_TOL, ("II_μ",), "‖1‖_{II,μ} ≠ 2"),
        _from_report(check_norm_sandwich(plus, [l, principal_quotient_morphism(z2),
                                                h_mu_trivial_morphism(z2, group_mu)], [group_mu])),
        _within(abs(trivial_norm(p2, uniform, ones) - reduced_norm(ones)), NORM_TOL, ("f ≥ 0",),
                "‖II_μ(f)‖ ≠ ‖f‖_red for f ≥ 0"),
    ])


FIXTURES: Dict[str, Callable[[], Verdict]] = {
    "fixture.tables": _fixture_tables,
    "fixture.action-groupoid": _fixture_action_groupoid,
    "fixture.haar": _fixture_haar,
    "fixture.modular": _fixture_modular,
    "fixture.morphisms": _fixture_morphisms,
    "fixture.algebra": _fixture_algebra,
    "fixture.norms": _fixture_norms,
}


def _timed(name: str, fn: Callable[[], Verdict]) -> Outcome:
    start = time.perf_counter()
    try:
        verdict = fn()
    except GroupoidLabError as exc:
        verdict = Verdict(False, witness=exc.witness, detail=f"{type(exc).__name__}: {exc}")
    return Outcome(name, verdict.passed, verdict.residual, verdict.witness, verdict.detail,
                   time.perf_counter() - start)


def run_fixtures(fixtures: Optional[Dict[str, Callable[[], Verdict]]] = None) -> CaseResult:
    result = CaseResult(-1, 0, "fixtures")
    for name, fn in sorted((fixtures or FIXTURES).items()):
        result.outcomes.append(_timed(name, fn))
    return result


def paper_suite(seed: int, cases: int = PAPER_SUITE_CASES, threads: Optional[int] = None) -> VerificationReport:
    """The fixed fixtures plus a short random run"""
    report = run_random(seed, cases, threads, suite="paper-suite")
    report.cases.insert(0, run_fixtures())
    return report


# ============================================================================
# SCENARIO FILES
# ============================================================================

def _expect_error(check: Dict[str, Any], fn: Callable[[], Any]) -> Optional[Verdict]:
    expected = check.get("expect_error")
    if not expected:
        return None
    try:
        fn()
    except GroupoidLabError as exc:
        axiom = getattr(exc, "axiom", "")
        return _holds(expected in (type(exc).__name__, axiom), exc.witness,
                      f"raised {type(exc).__name__} ({axiom}), expected {expected}")
    return Verdict(False, detail=f"expected {expected}, nothing was raised")


def _scenario_check(check: Dict[str, Any], artifacts: Dict[str, Any]) -> Verdict:
    kind = check["check"]

    def get(key: str) -> Any:
        ref = check[key]
        if ref not in artifacts:
            raise GroupoidLabError(f"scenario check refers to unknown artifact {ref!r}", (ref,))
        value = artifacts[ref]
        if isinstance(value, MorphismDefinition):
            return value.build()
        return value.element if isinstance(value, NamedElement) else value

    if kind == "groupoid":
        g = get("groupoid")
        expect = check.get("expect", {})
        facts = {"elements": len(g), "units": len(g.units), "orbits": len(orbits(g)),
                 "transitive": is_transitive(g), "principal": is_principal(g)}
        wrong = [k for k, v in expect.items() if facts.get(k) != v]
        return _holds(not wrong, wrong, f"facts {facts}")
    if kind == "haar":
        report = check_haar(artifacts[check["haar"]])
        return _holds(report.passed == check.get("expect_pass", True),
                      report.violations[0].witness if report.violations else (), f"haar passed={report.passed}")
    if kind == "quasi-invariance":
        result = check_quasi_invariance(get("haar"), get("measure"))
        return _holds(result == check.get("expect", True), (check["measure"],), f"quasi-invariant={result}")
    if kind == "modular":
        delta = modular_function(get("haar"), get("measure"))
        wrong = [lab for lab, v in check.get("expect", {}).items() if delta.value_of(lab) != Fraction(v)]
        return _all([_from_report(check_cocycle(delta)), _holds(not wrong, wrong, "modular values differ")])
    if kind == "morphism":
        verdict = _expect_error(check, lambda: get("morphism"))
        if verdict is not None:
            return verdict
        h = get("morphism")
        wrong = []
        for key, value in check.get("expect_delta", {}).items():
            x, g = key.strip("<>").split(";")
            if h.delta_of(x, g) != Fraction(value):
                wrong.append(key)
        return _holds(not wrong, wrong, "Δ_h values differ")
    if kind == "compose":
        kh = compose_morphisms(get("first"), get("second"))
        if "equals" in check:
            return _holds(morphisms_equal(kh, get("equals")), (kh.name,), "composite differs")
        return Verdict(True)
    if kind == "norm":
        f = get("element")
        morphisms = [_built(artifacts, ref) for ref in check.get("morphisms", [])]
        measures = [artifacts[ref] for ref in check.get("measures", [])]
        verdicts = [_from_report(check_norm_sandwich(f, morphisms, measures))]
        if "expect_reduced" in check:
            verdicts.append(_within(abs(reduced_norm(f) - float(check["expect_reduced"])), RESIDUAL_TOL,
                                    (check["element"],), "reduced norm differs"))
        return _all(verdicts)
    raise GroupoidLabError(f"unknown scenario check {kind!r}", (kind,))


def _built(artifacts: Dict[str, Any], ref: str) -> ZakrzewskiMorphism:
    value = artifacts[ref]
    return value.build() if isinstance(value, MorphismDefinition) else value


def run_scenario(scenario: Scenario, seed: int = DEFAULT_SEED) -> VerificationReport:
    result = CaseResult(0, seed, f"scenario {scenario.name}")
    for k, check in enumerate(scenario.checks):
        name = check.get("name") or f"{k:03d}.{check['check']}"
        result.outcomes.append(_timed(name, lambda c=check: _scenario_check(c, scenario.artifacts)))
    return VerificationReport(scenario.name, seed, [result])
