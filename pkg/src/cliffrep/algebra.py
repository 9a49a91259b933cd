"""Complex Clifford algebra core: signatures, blades, multivector arithmetic.

The algebra on n generators e_1..e_n is spanned by the 2^n blades e_A,
indexed by bitmasks (bit i set means e_{i+1} is a factor, so mask 0 is the
identity blade).  Generator squares default to -1 but may be any nonzero
complex number, which is what the one- and two-generator constructions
need.  Coefficients are dense complex128 arrays of length 2^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_GENERATORS = 16


class SignatureMismatchError(ValueError):
    """Raised when two multivectors from different algebras are combined."""


@dataclass(frozen=True)
class AlgebraSignature:
    """Generator count and the complex square of each generator."""

    n: int
    squares: tuple[complex, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_GENERATORS:
            raise ValueError(f"generator count must be in [0, {MAX_GENERATORS}], got {self.n}")
        if len(self.squares) != self.n:
            raise ValueError(f"expected {self.n} generator squares, got {len(self.squares)}")
        sq = tuple(complex(u) for u in self.squares)
        for i, u in enumerate(sq):
            if u == 0 or not (np.isfinite(u.real) and np.isfinite(u.imag)):
                raise ValueError(f"generator square u_{i + 1} must be finite and nonzero, got {u}")
        object.__setattr__(self, "squares", sq)

    @classmethod
    def standard(cls, n: int) -> "AlgebraSignature":
        """The complex Clifford signature: every generator squares to -1."""
        return cls(n, (-1 + 0j,) * n)

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def is_standard(self) -> bool:
        return all(u == -1 for u in self.squares)


def _popcount(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks)


@lru_cache(maxsize=64)
def _index_range(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.uint32)
    idx.flags.writeable = False
    return idx


# Sign-row caching pays off because Clifford-matrix products reuse a small
# set of blade masks; rows are dim-length arrays so cache only small n.
_SIGN_CACHE_MAX_N = 10
_sign_row_cache: dict = {}
_sign_col_cache: dict = {}


def _signs_left(sig: AlgebraSignature, a_mask: int) -> np.ndarray:
    """sign(A, B) for fixed blade A over every blade B, as a dim-vector."""
    key = (sig, a_mask)
    cached = _sign_row_cache.get(key)
    if cached is not None:
        return cached
    dim = sig.dim
    masks = _index_range(sig.n)
    swaps = np.zeros(dim, dtype=np.int64)
    squares = np.ones(dim, dtype=np.complex128)
    m = a_mask
    while m:
        i = (m & -m).bit_length() - 1
        swaps += _popcount(masks & np.uint32((1 << i) - 1))
        bit = np.uint32(1 << i)
        squares[(masks & bit) != 0] *= sig.squares[i]
        m &= m - 1
    out = np.where(swaps & 1, -1.0, 1.0) * squares
    if sig.n <= _SIGN_CACHE_MAX_N:
        out.flags.writeable = False
        _sign_row_cache[key] = out
    return out


def _signs_right(sig: AlgebraSignature, b_mask: int) -> np.ndarray:
    """sign(A, B) for fixed blade B over every blade A, as a dim-vector."""
    key = (sig, b_mask)
    cached = _sign_col_cache.get(key)
    if cached is not None:
        return cached
    dim = sig.dim
    full = dim - 1
    masks = _index_range(sig.n)
    swaps = np.zeros(dim, dtype=np.int64)
    squares = np.ones(dim, dtype=np.complex128)
    m = b_mask
    while m:
        j = (m & -m).bit_length() - 1
        high = full & ~((1 << (j + 1)) - 1)
        swaps += _popcount(masks & np.uint32(high))
        bit = np.uint32(1 << j)
        squares[(masks & bit) != 0] *= sig.squares[j]
        m &= m - 1
    out = np.where(swaps & 1, -1.0, 1.0) * squares
    if sig.n <= _SIGN_CACHE_MAX_N:
        out.flags.writeable = False
        _sign_col_cache[key] = out
    return out


def blade_product(sig: AlgebraSignature, a_mask: int, b_mask: int) -> tuple[int, complex]:
    """Product of two basis blades: e_A * e_B = s * e_(A xor B).

    The sign s counts the transpositions needed to interleave B's factors
    into A in canonical order, times the square u_i of every generator the
    two blades share.
    """
    dim = sig.dim
    if not 0 <= a_mask < dim or not 0 <= b_mask < dim:
        raise ValueError(f"blade mask out of range for n={sig.n}")
    swaps = 0
    m = a_mask
    while m:
        i = (m & -m).bit_length() - 1
        swaps += (b_mask & ((1 << i) - 1)).bit_count()
        m &= m - 1
    s = -1.0 + 0j if swaps & 1 else 1.0 + 0j
    m = a_mask & b_mask
    while m:
        i = (m & -m).bit_length() - 1
        s *= sig.squares[i]
        m &= m - 1
    return a_mask ^ b_mask, s


def _check_coeffs(coeffs: np.ndarray, sig: AlgebraSignature) -> np.ndarray:
    arr = np.asarray(coeffs, dtype=np.complex128)
    if arr.shape != (sig.dim,):
        raise ValueError(f"expected {sig.dim} coefficients for n={sig.n}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("multivector coefficients must be finite")
    return arr.copy()


class Multivector:
    """Element of the Clifford algebra over a fixed signature.

    Immutable by convention: every operation returns a new instance and the
    constructor copies its input.  Arithmetic requires matching signatures.
    """

    __slots__ = ("signature", "coeffs")

    def __init__(self, signature: AlgebraSignature, coeffs):
        self.signature = signature
        self.coeffs = _check_coeffs(coeffs, signature)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, sig: AlgebraSignature) -> "Multivector":
        return cls(sig, np.zeros(sig.dim, dtype=np.complex128))

    @classmethod
    def scalar(cls, sig: AlgebraSignature, value: complex) -> "Multivector":
        c = np.zeros(sig.dim, dtype=np.complex128)
        c[0] = value
        return cls(sig, c)

    @classmethod
    def one(cls, sig: AlgebraSignature) -> "Multivector":
        return cls.scalar(sig, 1.0)

    @classmethod
    def blade(cls, sig: AlgebraSignature, mask: int, coeff: complex = 1.0) -> "Multivector":
        if not 0 <= mask < sig.dim:
            raise ValueError(f"blade mask {mask} out of range for n={sig.n}")
        c = np.zeros(sig.dim, dtype=np.complex128)
        c[mask] = coeff
        return cls(sig, c)

    @classmethod
    def generator(cls, sig: AlgebraSignature, i: int) -> "Multivector":
        """The generator e_i, indexed from 1."""
        if not 1 <= i <= sig.n:
            raise ValueError(f"generator index {i} out of range for n={sig.n}")
        return cls.blade(sig, 1 << (i - 1))

    # -- helpers -------------------------------------------------------

    def _require_same_signature(self, other: "Multivector") -> None:
        if self.signature != other.signature:
            raise SignatureMismatchError(
                f"signature mismatch: {self.signature} vs {other.signature}"
            )

    @property
    def scalar_part(self) -> complex:
        return complex(self.coeffs[0])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def nonzero_masks(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs)

    def copy(self) -> "Multivector":
        return Multivector(self.signature, self.coeffs)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._require_same_signature(other)
            return Multivector(self.signature, self.coeffs + other.coeffs)
        if isinstance(other, (int, float, complex)):
            c = self.coeffs.copy()
            c[0] += other
            return Multivector(self.signature, c)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Multivector):
            self._require_same_signature(other)
            return Multivector(self.signature, self.coeffs - other.coeffs)
        if isinstance(other, (int, float, complex)):
            c = self.coeffs.copy()
            c[0] -= other
            return Multivector(self.signature, c)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float, complex)):
            c = -self.coeffs
            c[0] += other
            return Multivector(self.signature, c)
        return NotImplemented

    def __neg__(self):
        return Multivector(self.signature, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return mul(self, other)
        if isinstance(other, (int, float, complex)):
            return Multivector(self.signature, self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return Multivector(self.signature, other * self.coeffs)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex)):
            return Multivector(self.signature, self.coeffs / other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.signature == other.signature and bool(
            np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.signature, self.coeffs.tobytes()))

    def __repr__(self):
        nz = self.nonzero_masks()
        if nz.size == 0:
            body = "0"
        else:
            parts = [f"{self.coeffs[m]:.4g}*b{int(m):b}" for m in nz[:6]]
            if nz.size > 6:
                parts.append("...")
            body = " + ".join(parts)
        return f"<Multivector n={self.signature.n}: {body}>"


# Beyond this pair count the vectorized scatter path beats a Python loop.
_PAIR_LOOP_LIMIT = 2048


def mul(a: Multivector, b: Multivector) -> Multivector:
    """Geometric product, bilinear extension of blade_product.  Noncommutative."""
    a._require_same_signature(b)
    sig = a.signature
    nza = a.nonzero_masks()
    nzb = b.nonzero_masks()
    out = np.zeros(sig.dim, dtype=np.complex128)
    if nza.size == 0 or nzb.size == 0:
        return Multivector(sig, out)
    if nza.size * nzb.size <= _PAIR_LOOP_LIMIT:
        for am in nza:
            ca = a.coeffs[am]
            for bm in nzb:
                m, s = blade_product(sig, int(am), int(bm))
                out[m] += ca * s * b.coeffs[bm]
        return Multivector(sig, out)
    idx = _index_range(sig.n)
    if nza.size <= nzb.size:
        for am in nza:
            s = _signs_left(sig, int(am))
            out[np.bitwise_xor(idx, np.uint32(am))] += a.coeffs[am] * (s * b.coeffs)
    else:
        for bm in nzb:
            s = _signs_right(sig, int(bm))
            out[np.bitwise_xor(idx, np.uint32(bm))] += b.coeffs[bm] * (s * a.coeffs)
    return Multivector(sig, out)


def add(a: Multivector, b: Multivector) -> Multivector:
    return a + b


def scale(lam: complex, a: Multivector) -> Multivector:
    return Multivector(a.signature, complex(lam) * a.coeffs)


def volume_element(sig: AlgebraSignature) -> Multivector:
    """The full-grade blade e_1 e_2 ... e_n with coefficient 1."""
    if sig.n < 1:
        raise ValueError("volume element needs at least one generator")
    return Multivector.blade(sig, sig.dim - 1)


def volume_square(sig: AlgebraSignature) -> complex:
    """Closed form for the square of the volume element."""
    if sig.n < 1:
        raise ValueError("volume element needs at least one generator")
    n = sig.n
    s = -1.0 + 0j if (n * (n - 1) // 2) & 1 else 1.0 + 0j
    for u in sig.squares:
        s *= u
    return s


DEFAULT_TOL = 1e-10


def approx_eq(a: Multivector, b: Multivector, tol: float = DEFAULT_TOL) -> bool:
    """Coefficientwise comparison, relative to the larger coefficient scale."""
    a._require_same_signature(b)
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    diff = float(np.max(np.abs(a.coeffs - b.coeffs)))
    scale_ = max(a.max_abs(), b.max_abs())
    return diff <= tol * (1.0 + scale_)


def random_multivector(sig: AlgebraSignature, rng: np.random.Generator, scale: float = 1.0) -> Multivector:
    """Dense random element with independent normal real/imag parts."""
    c = rng.standard_normal(sig.dim) + 1j * rng.standard_normal(sig.dim)
    return Multivector(sig, scale * c)
