"""
Convolution, involution and the I-norm on C_c(Γ, λ).
"""

import numpy as np

from algebra.element import AlgebraElement


def convolve(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """(f∗g)(x) = Σ_{y ∈ Γ^{r(x)}} f(y) g(y⁻¹x) λ(y) - O(#composable pairs)

    Every composable pair (y, z) contributes f(y) g(z) λ(y) at x = yz.
    """
    f._check(g)
    left, right, prod = f.groupoid.pair_arrays()
    out = np.zeros(len(f.coeffs), dtype=complex)
    np.add.at(out, prod, f.coeffs[left] * g.coeffs[right] * f.haar.as_floats()[left])
    return AlgebraElement(f.haar, out)


def involution(f: AlgebraElement) -> AlgebraElement:
    """f*(x) = conj(f(x⁻¹))"""
    g = f.groupoid
    inverse = np.array([g.inv(x) for x in range(len(g))], dtype=np.intp)
    return AlgebraElement(f.haar, np.conj(f.coeffs[inverse]))


def i_norm(f: AlgebraElement) -> float:
    """max over units t of Σ_{Γ^t} |f| λ and Σ_{Γ_t} |f(x)| λ(x⁻¹)"""
    g = f.groupoid
    w = f.haar.as_floats()
    a = np.abs(f.coeffs)
    best = 0.0
    for t in g.units:
        upper = sum(a[x] * w[x] for x in g.range_fiber(t))
        lower = sum(a[x] * w[g.inv(x)] for x in g.source_fiber(t))
        best = max(best, upper, lower)
    return float(best)
