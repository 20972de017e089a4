"""
Weighted finite-dimensional Hilbert spaces ℓ²(basis, weights).
"""

from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

from groupoid_core.errors import ValidationError


class WeightedHilbertSpace:
    """⟨ξ, ζ⟩ = Σ ξ(x) conj(ζ(x)) weight(x)"""

    def __init__(self, basis: Sequence[str], weights: Sequence[Fraction]):
        if len(basis) != len(weights):
            raise ValidationError("basis and weights differ in length", (len(basis), len(weights)),
                                  axiom="table-shape")
        for b, w in zip(basis, weights):
            if w <= 0:
                raise ValidationError(f"weight of {b} is not positive", (b,), axiom="positivity")
        self.basis: Tuple[str, ...] = tuple(basis)
        self.weights: Tuple[Fraction, ...] = tuple(Fraction(w) for w in weights)
        self._w = np.array([float(w) for w in self.weights], dtype=float)
        self._sqrt = np.sqrt(self._w)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def inner(self, xi: np.ndarray, zeta: np.ndarray) -> complex:
        return complex(np.sum(xi * np.conj(zeta) * self._w))

    def norm(self, xi: np.ndarray) -> float:
        return float(np.sqrt(max(self.inner(xi, xi).real, 0.0)))

    def adjoint(self, m: np.ndarray) -> np.ndarray:
        """D⁻¹ M^H D, the adjoint for the weighted inner product"""
        return (m.conj().T * self._w[None, :]) / self._w[:, None]

    def orthonormalize(self, m: np.ndarray) -> np.ndarray:
        """D^{1/2} M D^{-1/2}: the same operator in an orthonormal basis"""
        return (m * self._sqrt[:, None]) / self._sqrt[None, :]
