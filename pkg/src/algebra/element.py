"""
Elements of the convolution algebra C_c(Γ, λ).

Coefficients are a dense complex vector indexed like the groupoid's
elements; the Haar system is part of the element because the product
depends on it.
"""

from typing import Dict, Mapping, Union

import numpy as np

from groupoid_core.errors import AlgebraMismatch, ValidationError
from measure.haar import HaarSystem

Scalar = Union[complex, float, int]


class AlgebraElement:
    """f: Γ → ℂ together with the Haar system defining ∗"""

    __slots__ = ("haar", "coeffs")

    def __init__(self, haar: HaarSystem, coeffs: np.ndarray):
        values = np.asarray(coeffs, dtype=complex)
        if values.shape != (len(haar.groupoid),):
            raise ValidationError("coefficient vector does not match the element count",
                                  (values.shape, len(haar.groupoid)), axiom="table-shape")
        if not np.all(np.isfinite(values)):
            raise ValidationError("coefficients must be finite", (), axiom="finite")
        self.haar = haar
        self.coeffs = values

    @property
    def groupoid(self):
        return self.haar.groupoid

    @classmethod
    def zero(cls, haar: HaarSystem) -> "AlgebraElement":
        return cls(haar, np.zeros(len(haar.groupoid), dtype=complex))

    @classmethod
    def point_mass(cls, haar: HaarSystem, label: str, value: Scalar = 1) -> "AlgebraElement":
        f = np.zeros(len(haar.groupoid), dtype=complex)
        f[haar.groupoid.index(label)] = value
        return cls(haar, f)

    @classmethod
    def from_mapping(cls, haar: HaarSystem, values: Mapping[str, Scalar]) -> "AlgebraElement":
        f = np.zeros(len(haar.groupoid), dtype=complex)
        for label, v in values.items():
            f[haar.groupoid.index(label)] = complex(v)
        return cls(haar, f)

    def value(self, label: str) -> complex:
        return complex(self.coeffs[self.groupoid.index(label)])

    def to_mapping(self) -> Dict[str, complex]:
        return {lab: complex(v) for lab, v in zip(self.groupoid.labels, self.coeffs) if v != 0}

    def support(self) -> tuple:
        return tuple(self.groupoid.label(x) for x in np.flatnonzero(self.coeffs))

    def _check(self, other: "AlgebraElement") -> None:
        if other.haar is not self.haar and other.haar != self.haar:
            raise AlgebraMismatch("elements belong to different algebras",
                                  (self.groupoid.name, other.groupoid.name))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.haar, self.coeffs + other.coeffs)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.haar, self.coeffs - other.coeffs)

    def __mul__(self, scalar: Scalar) -> "AlgebraElement":
        return AlgebraElement(self.haar, self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.haar, -self.coeffs)

    def __abs__(self) -> "AlgebraElement":
        return AlgebraElement(self.haar, np.abs(self.coeffs).astype(complex))

    def max_abs_diff(self, other: "AlgebraElement") -> float:
        self._check(other)
        if len(self.coeffs) == 0:
            return 0.0
        return float(np.max(np.abs(self.coeffs - other.coeffs)))

    def __repr__(self) -> str:
        return f"AlgebraElement({self.groupoid.name}, support={list(self.support())})"


def approximate_identity(haar: HaarSystem) -> AlgebraElement:
    """e(u) = 1/λ(u) on units, 0 elsewhere; e∗f = f = f∗e"""
    g = haar.groupoid
    e = np.zeros(len(g), dtype=complex)
    for u in g.units:
        e[u] = 1.0 / float(haar.weight(u))
    return AlgebraElement(haar, e)

