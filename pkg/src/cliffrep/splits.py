"""Structural splits used by the representation recursion.

Two decompositions of the standard algebra, both over an even base count n:

* pseudoscalar split of an (n+1)-generator element: a = a0 + a1 * e_[n+1]
  with a0, a1 in the n-generator subalgebra and e_[n+1] central there;
* two-step split of an (n+2)-generator element: a = a0 + a1*u + a2*v + a3*mu
  with u = e_[n]e_{n+1}, v = e_[n]e_{n+2}, mu = u*v, all commuting with the
  n-generator subalgebra, u^2 = v^2 = r and mu^2 = -1.

The array-level functions act on the last axis of a coefficient tensor so
that matrix-valued variants can batch over entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import AlgebraSignature, Multivector, _index_range, _signs_right, blade_product


@lru_cache(maxsize=32)
def std_sig(n: int) -> AlgebraSignature:
    return AlgebraSignature.standard(n)


def step_square(n_base: int) -> complex:
    """Square r of e_[n+1] (equivalently of e_[n]e_{n+1} and e_[n]e_{n+2})."""
    m = n_base + 1
    return -1.0 + 0j if (m * (m + 1) // 2) & 1 else 1.0 + 0j


def principal_sqrt(r: complex) -> complex:
    """Square root on the branch used throughout: sqrt(1) = 1, sqrt(-1) = i."""
    if r == 1:
        return 1.0 + 0j
    if r == -1:
        return 1j
    return complex(np.sqrt(complex(r)))


def _require_standard(sig: AlgebraSignature, n_base: int, what: str) -> None:
    if not sig.is_standard:
        raise ValueError(f"{what} requires the standard all-(-1) signature")
    if n_base < 0 or n_base % 2:
        raise ValueError(f"{what} requires an even base generator count, got {n_base}")


def _mul_blade_from_right(coeffs: np.ndarray, src_masks: np.ndarray,
                          sig: AlgebraSignature, blade_mask: int,
                          blade_coeff: complex) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients and target masks of (sum_S c_S e_S) * (blade_coeff e_blade)."""
    signs = _signs_right(sig, blade_mask)[src_masks]
    return blade_coeff * signs * coeffs, np.bitwise_xor(src_masks, np.uint32(blade_mask))


# -- pseudoscalar split (odd step) -------------------------------------


def pseudo_split_arrays(coeffs: np.ndarray, sig: AlgebraSignature):
    """Split coefficients over n+1 generators into (a0, a1) over n generators."""
    m = sig.n
    _require_standard(sig, m - 1, "pseudoscalar split")
    h = sig.dim // 2
    full = sig.dim - 1
    r = step_square(m - 1)
    a0 = coeffs[..., :h].copy()
    top_masks = _index_range(sig.n)[h:]
    vals, targets = _mul_blade_from_right(coeffs[..., h:], top_masks, sig, full, 1.0 / r)
    a1 = np.zeros_like(a0)
    a1[..., targets & np.uint32(h - 1)] = vals
    return a0, a1, r, principal_sqrt(r)


def pseudo_recompose_arrays(a0: np.ndarray, a1: np.ndarray, sig: AlgebraSignature) -> np.ndarray:
    """Inverse of pseudo_split_arrays: a0 + a1 * e_[n+1] over n+1 generators."""
    h = sig.dim // 2
    full = sig.dim - 1
    out = np.zeros(a0.shape[:-1] + (sig.dim,), dtype=np.complex128)
    out[..., :h] = a0
    low_masks = _index_range(sig.n)[:h]
    vals, targets = _mul_blade_from_right(a1, low_masks, sig, full, 1.0)
    out[..., targets] += vals
    return out


@dataclass(frozen=True)
class PseudoscalarSplit:
    """a = a0 + a1 * e_[n+1]; components live one generator down."""

    a0: Multivector
    a1: Multivector
    r: complex
    sqrt_r: complex
    parent_signature: AlgebraSignature


def split_pseudoscalar(a: Multivector) -> PseudoscalarSplit:
    sig = a.signature
    if sig.n < 1:
        raise ValueError("pseudoscalar split needs at least one generator")
    a0c, a1c, r, sr = pseudo_split_arrays(a.coeffs, sig)
    sub = std_sig(sig.n - 1)
    return PseudoscalarSplit(Multivector(sub, a0c), Multivector(sub, a1c), r, sr, sig)


def recompose_pseudoscalar(split: PseudoscalarSplit) -> Multivector:
    sig = split.parent_signature
    return Multivector(sig, pseudo_recompose_arrays(split.a0.coeffs, split.a1.coeffs, sig))


def bar_conjugate(split: PseudoscalarSplit) -> Multivector:
    """The conjugate a0 - a1 * e_[n+1], an involution on the parent algebra."""
    sig = split.parent_signature
    return Multivector(sig, pseudo_recompose_arrays(split.a0.coeffs, -split.a1.coeffs, sig))


def bar(a: Multivector) -> Multivector:
    """bar_conjugate composed with the split, as a single map."""
    return bar_conjugate(split_pseudoscalar(a))


# -- two-step split (even step) -----------------------------------------


def _two_step_blades(sig: AlgebraSignature):
    """Masks of u, v and the signed blade mu = u*v for the top two generators."""
    q = sig.dim // 4
    u_mask = 2 * q - 1
    v_mask = (q - 1) | (2 * q)
    mu_mask = 3 * q
    # sign of e_u * e_v lands on the two-generator blade e_{n+1}e_{n+2}
    m, s = blade_product(sig, u_mask, v_mask)
    assert m == mu_mask
    return q, u_mask, v_mask, mu_mask, s


def two_step_split_arrays(coeffs: np.ndarray, sig: AlgebraSignature):
    """Split coefficients over n+2 generators into (a0..a3) over n generators."""
    m = sig.n
    _require_standard(sig, m - 2, "two-step split")
    q, u_mask, v_mask, mu_mask, mu_sign = _two_step_blades(sig)
    r = step_square(m - 2)
    view = coeffs.reshape(coeffs.shape[:-1] + (4, q))
    masks = _index_range(sig.n)
    a0 = view[..., 0, :].copy()

    def bucket(j: int, blade_mask: int, blade_coeff: complex) -> np.ndarray:
        src = masks[j * q:(j + 1) * q]
        vals, targets = _mul_blade_from_right(view[..., j, :], src, sig, blade_mask, blade_coeff)
        out = np.zeros_like(a0)
        out[..., targets & np.uint32(q - 1)] = vals
        return out

    a1 = bucket(1, u_mask, 1.0 / r)
    a2 = bucket(2, v_mask, 1.0 / r)
    a3 = bucket(3, mu_mask, -mu_sign)  # mu^{-1} = -mu since mu^2 = -1
    return a0, a1, a2, a3, r, principal_sqrt(r)


def two_step_recompose_arrays(a0, a1, a2, a3, sig: AlgebraSignature) -> np.ndarray:
    """Inverse of two_step_split_arrays: a0 + a1*u + a2*v + a3*mu."""
    q, u_mask, v_mask, mu_mask, mu_sign = _two_step_blades(sig)
    out = np.zeros(a0.shape[:-1] + (sig.dim,), dtype=np.complex128)
    out[..., :q] = a0
    low = _index_range(sig.n)[:q]
    for comp, blade_mask, blade_coeff in (
        (a1, u_mask, 1.0),
        (a2, v_mask, 1.0),
        (a3, mu_mask, mu_sign),
    ):
        vals, targets = _mul_blade_from_right(comp, low, sig, blade_mask, blade_coeff)
        out[..., targets] += vals
    return out


@dataclass(frozen=True)
class TwoStepSplit:
    """a = a0 + a1*u + a2*v + a3*mu; components live two generators down."""

    a0: Multivector
    a1: Multivector
    a2: Multivector
    a3: Multivector
    r: complex
    sqrt_r: complex
    parent_signature: AlgebraSignature


def split_two_step(a: Multivector) -> TwoStepSplit:
    sig = a.signature
    if sig.n < 2:
        raise ValueError("two-step split needs at least two generators")
    a0c, a1c, a2c, a3c, r, sr = two_step_split_arrays(a.coeffs, sig)
    sub = std_sig(sig.n - 2)
    return TwoStepSplit(
        Multivector(sub, a0c), Multivector(sub, a1c),
        Multivector(sub, a2c), Multivector(sub, a3c), r, sr, sig,
    )


def recompose_two_step(split: TwoStepSplit) -> Multivector:
    sig = split.parent_signature
    return Multivector(sig, two_step_recompose_arrays(
        split.a0.coeffs, split.a1.coeffs, split.a2.coeffs, split.a3.coeffs, sig))
