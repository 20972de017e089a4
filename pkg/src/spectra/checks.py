"""
Matrix-level checks of the representation and norm identities.
"""

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from algebra.convolution import convolve, i_norm, involution
from algebra.element import AlgebraElement
from algebra.h_hat import h_hat_apply
from groupoid_core.reports import CheckReport
from measure.measures import UnitMeasure
from morphism.composition import compose_morphisms, identity_morphism, require_chain
from morphism.morphism import ZakrzewskiMorphism
from spectra.norms import (
    ADJOINT_TOL,
    RESIDUAL_TOL,
    build_norm_report,
    norm_h,
    operator_norm,
    reduced_norm,
)
from spectra.representation import Representation


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


@dataclass(frozen=True)
class RepResiduals:
    multiplicative: float
    adjoint: float
    bound_excess: float

    @property
    def passed(self) -> bool:
        return (self.multiplicative <= RESIDUAL_TOL and self.adjoint <= ADJOINT_TOL
                and self.bound_excess <= RESIDUAL_TOL)


def check_rep_homomorphism(h: ZakrzewskiMorphism, t: int, f: AlgebraElement, g: AlgebraElement) -> RepResiduals:
    """π(f∗g) = π(f)π(g), π(f*) = π(f)*, ‖π(f)‖ ≤ ‖f‖_I"""
    rep = Representation(h, t)
    pf, pg = rep.matrix(f), rep.matrix(g)
    multiplicative = _max_abs(rep.matrix(convolve(f, g)) - pf @ pg)
    adjoint = _max_abs(rep.space.adjoint(pf) - rep.matrix(involution(f)))
    excess = operator_norm(pf, rep.space) - i_norm(f)
    return RepResiduals(multiplicative, adjoint, max(excess, 0.0))


def check_functoriality(h: ZakrzewskiMorphism, k: ZakrzewskiMorphism, f: AlgebraElement,
                        xi1: AlgebraElement, xi2: AlgebraElement, s: int,
                        kh: Optional[ZakrzewskiMorphism] = None) -> float:
    """|π_{k,s}(ĥ(f)ξ₁)ξ₂ − π_{kh,s}(f)π_{k,s}(ξ₁)ξ₂|, ξ₂ restricted to G₂_s"""
    require_chain(h, k)
    kh = kh or compose_morphisms(h, k)
    rep_k = Representation(k, s)
    rep_kh = Representation(kh, s)
    vector = rep_k.restrict(xi2)
    lhs = rep_k.apply(h_hat_apply(h, f, xi1), vector)
    rhs = rep_kh.apply(f, rep_k.apply(xi1, vector))
    return _max_abs(lhs - rhs)


def check_h_hat_restriction(h: ZakrzewskiMorphism, t: int, f: AlgebraElement, xi: AlgebraElement) -> float:
    """π_{h,t}(f)(ξ|_{G_t}) = (ĥ(f)ξ)|_{G_t}"""
    rep = Representation(h, t)
    return _max_abs(rep.apply(f, rep.restrict(xi)) - rep.restrict(h_hat_apply(h, f, xi)))


def check_nondegenerate(h: ZakrzewskiMorphism, t: int) -> bool:
    """The ranges of π_{h,t}(δ_γ) together span ℓ²(G_t)"""
    rep = Representation(h, t)
    n = rep.space.dim
    if n == 0:
        return True
    blocks = [rep.matrix(AlgebraElement.point_mass(h.source_haar, h.source.label(g)))
              for g in range(len(h.source))]
    stacked = np.hstack(blocks)
    return int(np.linalg.matrix_rank(stacked @ stacked.conj().T)) == n


def check_multiplier_bound(h: ZakrzewskiMorphism, f: AlgebraElement, xi: AlgebraElement) -> float:
    """‖ĥ(f)ξ‖_red − ‖f‖_red·‖ξ‖_red, clipped at 0"""
    excess = reduced_norm(h_hat_apply(h, f, xi)) - reduced_norm(f) * reduced_norm(xi)
    return max(excess, 0.0)


def c_star_identity_residual(f: AlgebraElement) -> float:
    """| ‖f*∗f‖_red − ‖f‖_red² | relative to max(1, ‖f‖_red²)"""
    square = reduced_norm(f) ** 2
    return abs(reduced_norm(convolve(involution(f), f)) - square) / max(1.0, square)


def check_norm_sandwich(f: AlgebraElement, morphisms: Sequence[ZakrzewskiMorphism],
                        measures: Iterable[UnitMeasure] = ()) -> CheckReport:
    """‖f‖_h ≤ ‖f‖_red + ε for each h, ‖f‖_l = ‖f‖_red, ‖II_μ(f)‖ ≤ ‖f‖_red + ε"""
    norms = build_norm_report(f, morphisms, measures)
    report = CheckReport(subject="norm-sandwich")
    for kind, name in norms.violations():
        report.add(kind, (name,), f"reduced norm {norms.reduced:.12g}")
    identity = norm_h(identity_morphism(f.haar), f)
    if abs(identity - norms.reduced) > RESIDUAL_TOL:
        report.add("identity-norm", ("l",), f"{identity} ≠ {norms.reduced}")
    return report
