"""
The representations π_{h,t} of C_c(Γ) on ℓ²(G_t, ν_t)

    π_{h,t}(f)ξ(x) = Σ_γ f(γ) ξ(γ⁻¹·_h x) Δ_h(x,γ)^{-1/2} λ(γ)
"""

from typing import Dict

import numpy as np

from algebra.element import AlgebraElement
from groupoid_core.errors import MorphismMismatch, UnitNotFound
from morphism.morphism import ZakrzewskiMorphism
from spectra.hilbert import WeightedHilbertSpace


def fiber_space(h: ZakrzewskiMorphism, t: int) -> WeightedHilbertSpace:
    """ℓ²(G_t) with ν_t({x}) = ν(x⁻¹)"""
    G = h.target
    basis = G.source_fiber(t)
    return WeightedHilbertSpace([G.label(x) for x in basis], [h.target_haar.weight(G.inv(x)) for x in basis])


class Representation:
    """π_{h,t} as matrices in the basis of G_t"""

    def __init__(self, morphism: ZakrzewskiMorphism, t: int):
        G = morphism.target
        if not G.is_unit(t):
            raise UnitNotFound(f"{G.label(t)} is not a unit of {G.name}", (G.label(t),))
        self.morphism = morphism
        self.unit = t
        self.space = fiber_space(morphism, t)
        self.positions: Dict[int, int] = {x: i for i, x in enumerate(G.source_fiber(t))}
        xs, gs, back, factor = morphism.kernel()
        mask = np.array([G.d(x) == t for x in xs], dtype=bool)
        self._rows = np.array([self.positions[x] for x in xs[mask]], dtype=np.intp)
        self._cols = np.array([self.positions[y] for y in back[mask]], dtype=np.intp)
        self._gammas = gs[mask]
        self._factor = factor[mask]

    def matrix(self, f: AlgebraElement) -> np.ndarray:
        h = self.morphism
        if f.haar is not h.source_haar and f.haar != h.source_haar:
            raise MorphismMismatch(f"f does not live on the source of {h.name}", (h.name,))
        n = self.space.dim
        m = np.zeros((n, n), dtype=complex)
        np.add.at(m, (self._rows, self._cols), f.coeffs[self._gammas] * self._factor)
        return m

    def restrict(self, xi: AlgebraElement) -> np.ndarray:
        """ξ|_{G_t} as a vector in this space"""
        return np.array([xi.coeffs[x] for x in self.positions], dtype=complex)

    def apply(self, f: AlgebraElement, vector: np.ndarray) -> np.ndarray:
        return self.matrix(f) @ vector


def representation(h: ZakrzewskiMorphism, t: str) -> Representation:
    G = h.target
    if t not in G:
        raise UnitNotFound(f"{t} is not a unit of {G.name}", (t,))
    return Representation(h, G.index(t))


def pi_matrix(h: ZakrzewskiMorphism, t: str, f: AlgebraElement) -> np.ndarray:
    return representation(h, t).matrix(f)
