"""
Operator norms, the C*-norms ‖·‖_h and ‖·‖_red, and the trivial
representations II_μ.

The norm over all morphisms is not computable; the reduced norm is the
exact C*-norm of a finite groupoid and every per-morphism norm is
audited against it.
"""

import logging
import weakref
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from algebra.convolution import i_norm
from algebra.element import AlgebraElement
from measure.haar import HaarSystem
from measure.measures import UnitMeasure
from measure.modular import modular_function
from morphism.composition import identity_morphism
from morphism.morphism import ZakrzewskiMorphism
from spectra.eigen import jacobi_eigenvalues
from spectra.hilbert import WeightedHilbertSpace
from spectra.representation import Representation

logger = logging.getLogger(__name__)

NORM_TOL = 1e-7
RESIDUAL_TOL = 1e-9
ADJOINT_TOL = 1e-10

_representations: "weakref.WeakKeyDictionary[ZakrzewskiMorphism, List[Representation]]" = \
    weakref.WeakKeyDictionary()


def operator_norm(m: np.ndarray, space: Optional[WeightedHilbertSpace] = None) -> float:
    """Largest singular value for the weighted inner product

    Orthonormalize, form the Gram matrix M̃^H M̃, and take the square
    root of its top Jacobi eigenvalue.
    """
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        return 0.0
    if space is not None:
        m = space.orthonormalize(m)
    gram = m.conj().T @ m
    top = float(jacobi_eigenvalues(gram)[-1])
    return float(np.sqrt(max(top, 0.0)))


def representations(h: ZakrzewskiMorphism) -> List[Representation]:
    """π_{h,t} for every target unit t, built once per morphism"""
    reps = _representations.get(h)
    if reps is None:
        reps = [Representation(h, t) for t in h.target.units]
        _representations[h] = reps
    return reps


def norm_h(h: ZakrzewskiMorphism, f: AlgebraElement) -> float:
    """‖f‖_h = max_t ‖π_{h,t}(f)‖"""
    return max((operator_norm(rep.matrix(f), rep.space) for rep in representations(h)), default=0.0)


def reduced_norm(f: AlgebraElement) -> float:
    """‖f‖_red = ‖f‖_l"""
    return norm_h(identity_morphism(f.haar), f)


def trivial_representation_space(mu: UnitMeasure) -> WeightedHilbertSpace:
    """ℓ²(supp μ, μ)"""
    return WeightedHilbertSpace(mu.support_labels, [mu.weight(u) for u in mu.support])


def trivial_representation_matrix(haar: HaarSystem, mu: UnitMeasure, f: AlgebraElement) -> np.ndarray:
    """II_μ(f)[u, v] = Σ_{γ ∈ Γ^u_v} f(γ) Δ_μ(γ)^{-1/2} λ(γ) on supp μ"""
    delta = modular_function(haar, mu)
    g = haar.groupoid
    support = mu.support
    position = {u: i for i, u in enumerate(support)}
    inv_sqrt = delta.inv_sqrt()
    w = haar.as_floats()
    m = np.zeros((len(support), len(support)), dtype=complex)
    for k, lab in enumerate(delta.domain.labels):
        x = g.index(lab)
        m[position[g.r(x)], position[g.d(x)]] += f.coeffs[x] * inv_sqrt[k] * w[x]
    return m


def trivial_norm(haar: HaarSystem, mu: UnitMeasure, f: AlgebraElement) -> float:
    """‖II_μ(f)‖"""
    return operator_norm(trivial_representation_matrix(haar, mu, f), trivial_representation_space(mu))


def ii_norm(haar: HaarSystem, mu: UnitMeasure, f: AlgebraElement) -> float:
    """‖f‖_{II,μ} = ‖II_μ(|f|)‖"""
    return trivial_norm(haar, mu, abs(f))


@dataclass
class NormReport:
    element: str
    reduced: float
    i_norm: float
    morphism_norms: Dict[str, float] = field(default_factory=dict)
    ii_norms: Dict[str, float] = field(default_factory=dict)
    trivial_norms: Dict[str, float] = field(default_factory=dict)
    tolerances: Dict[str, float] = field(default_factory=lambda: {
        "norm": NORM_TOL, "residual": RESIDUAL_TOL, "adjoint": ADJOINT_TOL})

    def violations(self) -> List[Tuple[str, str]]:
        """Sandwich failures as (kind, name)"""
        bad: List[Tuple[str, str]] = []
        for name, value in self.morphism_norms.items():
            if value > self.reduced + NORM_TOL:
                bad.append(("morphism-norm-exceeds-reduced", name))
        for name, value in self.trivial_norms.items():
            if value > self.reduced + NORM_TOL:
                bad.append(("trivial-norm-exceeds-reduced", name))
        if self.reduced > self.i_norm + RESIDUAL_TOL:
            bad.append(("reduced-exceeds-i-norm", self.element))
        return bad

    def to_dict(self) -> dict:
        return {
            "element": self.element,
            "reduced": self.reduced,
            "i_norm": self.i_norm,
            "morphism_norms": dict(self.morphism_norms),
            "ii_norms": dict(self.ii_norms),
            "trivial_norms": dict(self.trivial_norms),
            "tolerances": dict(self.tolerances),
            "violations": [list(v) for v in self.violations()],
        }


def build_norm_report(f: AlgebraElement, morphisms: Sequence[ZakrzewskiMorphism] = (),
                      measures: Iterable[UnitMeasure] = (), element: str = "f") -> NormReport:
    report = NormReport(element=element, reduced=reduced_norm(f), i_norm=i_norm(f))
    for h in morphisms:
        report.morphism_norms[h.name] = norm_h(h, f)
    for k, mu in enumerate(measures):
        name = mu.name or f"μ{k}"
        report.trivial_norms[name] = trivial_norm(f.haar, mu, f)
        report.ii_norms[name] = ii_norm(f.haar, mu, f)
    logger.debug("norm report for %s: reduced=%.6g", element, report.reduced)
    return report
