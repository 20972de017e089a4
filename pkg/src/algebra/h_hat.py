"""
The operators ĥ(f) on C_c(G) induced by a morphism h: Γ ⊳ G

    ĥ(f)ξ(x) = Σ_γ f(γ) ξ(γ⁻¹·_h x) Δ_h(x,γ)^{-1/2} λ^{ρ_h(r(x))}(γ)

and the algebraic identities they satisfy.
"""

from typing import Optional

import numpy as np

from algebra.convolution import convolve, involution
from algebra.element import AlgebraElement
from groupoid_core.errors import MorphismMismatch
from morphism.composition import compose_morphisms, require_chain
from morphism.morphism import ZakrzewskiMorphism

RESIDUAL_TOL = 1e-9


def _same(a, b) -> bool:
    return a is b or a == b


def h_hat_apply(h: ZakrzewskiMorphism, f: AlgebraElement, xi: AlgebraElement) -> AlgebraElement:
    if not _same(f.haar, h.source_haar):
        raise MorphismMismatch(f"f does not live on the source of {h.name}", (h.name,))
    if not _same(xi.haar, h.target_haar):
        raise MorphismMismatch(f"ξ does not live on the target of {h.name}", (h.name,))
    xs, gs, back, factor = h.kernel()
    out = np.zeros(len(h.target), dtype=complex)
    np.add.at(out, xs, f.coeffs[gs] * xi.coeffs[back] * factor)
    return AlgebraElement(h.target_haar, out)


def check_hermitian_identity(h: ZakrzewskiMorphism, f: AlgebraElement,
                             xi1: AlgebraElement, xi2: AlgebraElement) -> float:
    """max |ξ₂*∗(ĥ(f)ξ₁) − (ĥ(f*)ξ₂)*∗ξ₁|"""
    lhs = convolve(involution(xi2), h_hat_apply(h, f, xi1))
    rhs = convolve(involution(h_hat_apply(h, involution(f), xi2)), xi1)
    return lhs.max_abs_diff(rhs)


def check_intertwining(h: ZakrzewskiMorphism, k: ZakrzewskiMorphism, f: AlgebraElement,
                       xi1: AlgebraElement, xi2: AlgebraElement,
                       kh: Optional[ZakrzewskiMorphism] = None) -> float:
    """max |k̂(ĥ(f)ξ₁)ξ₂ − (kh)^(f)(k̂(ξ₁)ξ₂)|"""
    require_chain(h, k)
    kh = kh or compose_morphisms(h, k)
    lhs = h_hat_apply(k, h_hat_apply(h, f, xi1), xi2)
    rhs = h_hat_apply(kh, f, h_hat_apply(k, xi1, xi2))
    return lhs.max_abs_diff(rhs)


def check_h_hat_homomorphism(h: ZakrzewskiMorphism, f: AlgebraElement, g: AlgebraElement,
                             xi: AlgebraElement) -> float:
    """max |ĥ(f∗g)ξ − ĥ(f)(ĥ(g)ξ)|"""
    lhs = h_hat_apply(h, convolve(f, g), xi)
    rhs = h_hat_apply(h, f, h_hat_apply(h, g, xi))
    return lhs.max_abs_diff(rhs)


def span_check(h: ZakrzewskiMorphism) -> bool:
    """The vectors ĥ(δ_γ)δ_x span C_c(G)

    ĥ(δ_γ)δ_x is a multiple of δ_{γ·x}, so the generators are the kernel
    pairs; the rank is read off their Gram matrix.
    """
    xs, _, _, factor = h.kernel()
    n = len(h.target)
    if n == 0:
        return True
    columns = np.zeros((n, len(xs)), dtype=complex)
    columns[xs, np.arange(len(xs))] = factor
    return int(np.linalg.matrix_rank(columns @ columns.conj().T)) == n
