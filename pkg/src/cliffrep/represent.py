"""Faithful complex matrix representation of the standard algebra.

phi maps an n-generator element to one full 2^(n/2) x 2^(n/2) complex
matrix when n is even, and to an ordered pair of 2^((n-1)/2) blocks (the
two diagonal blocks of the double matrix algebra) when n is odd.  The map
is built recursively: a two-step split assembles a 2x2 block matrix, a
final pseudoscalar split produces the block pair.  The recursion runs on
coefficient tensors with leading batch axes so the matrix-valued extension
can reuse it unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraSignature, Multivector
from .linalg import SingularMatrixError, inverse, row_echelon_rank
from .splits import (
    pseudo_recompose_arrays,
    pseudo_split_arrays,
    principal_sqrt,
    std_sig,
    step_square,
    two_step_recompose_arrays,
    two_step_split_arrays,
)


class NotInvertibleError(ArithmeticError):
    """The element (or matrix) has no inverse: its representation is singular."""


def _rep_tensor(t: np.ndarray, n: int):
    """Representation of a (m, p, 2^n) coefficient tensor.

    Returns one complex matrix for even n, a (plus, minus) pair for odd n.
    """
    if n == 0:
        return t[..., 0]
    sig = std_sig(n)
    if n % 2:
        a0, a1, _, sr = pseudo_split_arrays(t, sig)
        m0 = _rep_tensor(a0, n - 1)
        m1 = _rep_tensor(a1, n - 1)
        return m0 + sr * m1, m0 - sr * m1
    a0, a1, a2, a3, r, sr = two_step_split_arrays(t, sig)
    m0 = _rep_tensor(a0, n - 2)
    m1 = _rep_tensor(a1, n - 2)
    m2 = _rep_tensor(a2, n - 2)
    m3 = _rep_tensor(a3, n - 2)
    return np.block([[m0 + sr * m1, r * (m2 + sr * m3)], [m2 - sr * m3, m0 - sr * m1]])


def _unrep_tensor(blocks, n: int, m: int, p: int) -> np.ndarray:
    """Inverse of _rep_tensor, unwinding one recursion level at a time."""
    if n == 0:
        mat = np.asarray(blocks, dtype=np.complex128)
        out = np.zeros((m, p, 1), dtype=np.complex128)
        out[..., 0] = mat
        return out
    sig = std_sig(n)
    if n % 2:
        plus, minus = blocks
        sr = principal_sqrt(step_square(n - 1))
        a0 = _unrep_tensor((plus + minus) / 2.0, n - 1, m, p)
        a1 = _unrep_tensor((plus - minus) / (2.0 * sr), n - 1, m, p)
        return pseudo_recompose_arrays(a0, a1, sig)
    mat = np.asarray(blocks, dtype=np.complex128)
    h, w = mat.shape[0] // 2, mat.shape[1] // 2
    b11, b12 = mat[:h, :w], mat[:h, w:]
    b21, b22 = mat[h:, :w], mat[h:, w:]
    r = step_square(n - 2)
    sr = principal_sqrt(r)
    a0 = _unrep_tensor((b11 + b22) / 2.0, n - 2, m, p)
    a1 = _unrep_tensor((b11 - b22) / (2.0 * sr), n - 2, m, p)
    a2 = _unrep_tensor((b12 / r + b21) / 2.0, n - 2, m, p)
    a3 = _unrep_tensor((b12 / r - b21) / (2.0 * sr), n - 2, m, p)
    return two_step_recompose_arrays(a0, a1, a2, a3, sig)


def rep_block_size(n: int) -> int:
    """Edge length of the representation blocks for n generators."""
    return 1 << ((n - 1) // 2) if n % 2 else 1 << (n // 2)


@dataclass(frozen=True)
class RepMatrix:
    """Image of an element: one matrix (even n) or a diagonal block pair (odd n)."""

    n: int
    blocks: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        s = rep_block_size(self.n)
        want = 1 if self.n % 2 == 0 else 2
        if len(self.blocks) != want:
            raise ValueError(f"expected {want} block(s) for n={self.n}")
        blocks = tuple(np.asarray(b, dtype=np.complex128) for b in self.blocks)
        for b in blocks:
            if b.shape != (s, s):
                raise ValueError(f"block shape {b.shape} does not match n={self.n} (need {s}x{s})")
        object.__setattr__(self, "blocks", blocks)

    @property
    def parity(self) -> str:
        return "odd" if self.n % 2 else "even"

    @property
    def full(self) -> np.ndarray:
        if self.n % 2:
            raise ValueError("odd-parity representation stores a block pair")
        return self.blocks[0]

    @property
    def plus(self) -> np.ndarray:
        return self.blocks[0]

    @property
    def minus(self) -> np.ndarray:
        if self.n % 2 == 0:
            raise ValueError("even-parity representation has a single block")
        return self.blocks[1]

    def dense(self) -> np.ndarray:
        """Materialize the block-diagonal matrix (identity operation when even)."""
        if self.n % 2 == 0:
            return self.blocks[0].copy()
        s = self.blocks[0].shape[0]
        out = np.zeros((2 * s, 2 * s), dtype=np.complex128)
        out[:s, :s] = self.blocks[0]
        out[s:, s:] = self.blocks[1]
        return out

    def conjugate_transpose(self) -> "RepMatrix":
        return RepMatrix(self.n, tuple(b.conj().T for b in self.blocks))

    def map_blocks(self, f) -> "RepMatrix":
        return RepMatrix(self.n, tuple(f(b) for b in self.blocks))

    def distance(self, other: "RepMatrix") -> float:
        if self.n != other.n:
            raise ValueError("representation size mismatch")
        return max(float(np.max(np.abs(a - b))) for a, b in zip(self.blocks, other.blocks))


def phi(a: Multivector) -> RepMatrix:
    """Matrix representation of an element of the standard algebra."""
    sig = a.signature
    if not sig.is_standard:
        raise ValueError("the representation is defined over the standard signature")
    rep = _rep_tensor(a.coeffs[None, None, :], sig.n)
    if sig.n % 2:
        return RepMatrix(sig.n, (rep[0], rep[1]))
    return RepMatrix(sig.n, (rep,))


def phi_inverse(rep: RepMatrix, n: int | None = None) -> Multivector:
    """Element whose representation is the given matrix (or block pair)."""
    if n is not None and n != rep.n:
        raise ValueError(f"representation carries n={rep.n}, caller requested n={n}")
    n = rep.n
    blocks = rep.blocks if n % 2 else rep.blocks[0]
    t = _unrep_tensor(blocks, n, 1, 1)
    return Multivector(std_sig(n), t[0, 0])


def rep_det(rep: RepMatrix) -> complex:
    """Determinant of the (block-diagonal) representation."""
    from .linalg import det

    out = 1.0 + 0j
    for b in rep.blocks:
        out *= det(b)
    return complex(out)


def mv_inverse(a: Multivector) -> Multivector:
    """Inverse through the representation: invert phi(a) and map back."""
    rep = phi(a)
    try:
        inv_rep = rep.map_blocks(inverse)
    except SingularMatrixError as exc:
        raise NotInvertibleError("element is not invertible") from exc
    return phi_inverse(inv_rep)


# -- explicit one- and two-generator maps --------------------------------


def one_generator_rep(u: complex, a0: complex, a1: complex) -> np.ndarray:
    """Diagonal representation of a0 + a1*e over the algebra with e^2 = u."""
    u = complex(u)
    if u == 0:
        raise ValueError("generator square must be nonzero")
    su = complex(np.sqrt(u))
    return np.array([[a0 + su * a1, 0.0], [0.0, a0 - su * a1]], dtype=np.complex128)


def two_generator_rep(u: complex, v: complex, a0: complex, a1: complex,
                      a2: complex, a3: complex) -> np.ndarray:
    """2x2 representation of a0 + a1*e1 + a2*e2 + a3*e12 with e1^2=u, e2^2=v."""
    u, v = complex(u), complex(v)
    if u == 0 or v == 0:
        raise ValueError("generator squares must be nonzero")
    su = complex(np.sqrt(u))
    return np.array(
        [
            [a0 + su * a1, v * (a2 + su * a3)],
            [a2 - su * a3, a0 - su * a1],
        ],
        dtype=np.complex128,
    )


def two_generator_alt_printed_map(u: complex, v: complex, a0: complex, a1: complex,
                                  a2: complex, a3: complex) -> np.ndarray:
    """The swapped-generator 2x2 map in its originally printed form.

    Kept verbatim so the report below can measure it against the map the
    conjugation actually produces; nothing here is corrected by hand.
    """
    u, v = complex(u), complex(v)
    sv = complex(np.sqrt(v))
    return np.array(
        [
            [a0 + sv * a1, u * (a1 - sv * a3)],
            [a1 + sv * a3, a0 - sv * a1],
        ],
        dtype=np.complex128,
    )


def matrix_unit_basis(u: complex, v: complex):
    """Four elements of the two-generator algebra acting as 2x2 matrix units.

    Returns (t11, t12, t21, t22) with t_pq * t_st = t_pt when q == s and 0
    otherwise, and t11 + t22 = 1.
    """
    u, v = complex(u), complex(v)
    if u == 0 or v == 0:
        raise ValueError("generator squares must be nonzero")
    sig = AlgebraSignature(2, (u, v))
    su = complex(np.sqrt(u))
    one = Multivector.one(sig)
    e1 = Multivector.generator(sig, 1)
    e2 = Multivector.generator(sig, 2)
    e12 = Multivector.blade(sig, 0b11)
    t11 = 0.5 * (one + e1 / su)
    t12 = (e2 + e12 / su) / (2.0 * v)
    t21 = 0.5 * (e2 - e12 / su)
    t22 = 0.5 * (one - e1 / su)
    return t11, t12, t21, t22


def _conjugate_diag_2x2(t: list, tinv: list, a: Multivector) -> list:
    """T * diag(a, a) * Tinv with 2x2 multivector matrices, written order."""
    return [
        [t[i][0] * a * tinv[0][j] + t[i][1] * a * tinv[1][j] for j in range(2)]
        for i in range(2)
    ]


@dataclass(frozen=True)
class AltMapReport:
    """Verdict on the printed swapped-generator map.

    corrected_coeffs[i][j][k] is the complex weight of input coefficient
    a_k (k indexes 1, e1, e2, e12) in entry (i, j) of the map the basis
    conjugation actually yields; printed_coeffs holds the printed weights.
    """

    u: complex
    v: complex
    trials: int
    max_multiplicative_residual: float
    is_multiplicative: bool
    entry_residuals: list
    matches_printed_equation: bool
    max_residual: float
    corrected_coeffs: list
    printed_coeffs: list
    max_offscalar: float

    def to_json_dict(self) -> dict:
        def c2d(z: complex) -> dict:
            return {"re": z.real, "im": z.imag}

        return {
            "u": c2d(self.u),
            "v": c2d(self.v),
            "trials": self.trials,
            "max_multiplicative_residual": self.max_multiplicative_residual,
            "is_multiplicative": self.is_multiplicative,
            "entry_residuals": self.entry_residuals,
            "matches_printed_equation": self.matches_printed_equation,
            "max_residual": self.max_residual,
            "corrected_coeffs": [[[c2d(c) for c in cell] for cell in row]
                                 for row in self.corrected_coeffs],
            "printed_coeffs": [[[c2d(c) for c in cell] for cell in row]
                               for row in self.printed_coeffs],
            "max_offscalar": self.max_offscalar,
        }


def two_generator_alt_report(u: complex, v: complex, trials: int = 100,
                             seed: int = 0, tol: float = 1e-9) -> AltMapReport:
    """Check the printed swapped-generator map and derive the actual one.

    Multiplicativity of the printed map is sampled on random pairs; the
    reference map is discovered by conjugating each basis element with the
    swapped-basis universal matrix, entirely in multivector arithmetic.
    """
    u, v = complex(u), complex(v)
    if u == 0 or v == 0:
        raise ValueError("generator squares must be nonzero")
    sig = AlgebraSignature(2, (u, v))
    sv = complex(np.sqrt(v))
    one = Multivector.one(sig)
    e1 = Multivector.generator(sig, 1)
    e2 = Multivector.generator(sig, 2)
    e12 = Multivector.blade(sig, 0b11)
    t = [
        [0.5 * (one + e2 / sv), 0.5 * (e1 + e12 / sv)],
        [0.5 * (e1 - e12 / sv) / u, 0.5 * (one - e2 / sv)],
    ]

    basis = [one, e1, e2, e12]
    corrected = [[[0j] * 4 for _ in range(2)] for _ in range(2)]
    max_offscalar = 0.0
    for k, b in enumerate(basis):
        conj = _conjugate_diag_2x2(t, t, b)
        for i in range(2):
            for j in range(2):
                entry = conj[i][j]
                off = entry.coeffs.copy()
                off[0] = 0.0
                max_offscalar = max(max_offscalar, float(np.max(np.abs(off))))
                corrected[i][j][k] = entry.scalar_part

    printed = [[[0j] * 4 for _ in range(2)] for _ in range(2)]
    for k in range(4):
        coeffs = [0j] * 4
        coeffs[k] = 1.0
        pm = two_generator_alt_printed_map(u, v, *coeffs)
        for i in range(2):
            for j in range(2):
                printed[i][j][k] = complex(pm[i, j])

    entry_residuals = [
        [max(abs(corrected[i][j][k] - printed[i][j][k]) for k in range(4)) for j in range(2)]
        for i in range(2)
    ]
    max_residual = max(max(row) for row in entry_residuals)
    scale = max(abs(u), abs(v), 1.0)
    matches = max_residual <= tol * scale

    rng = np.random.default_rng(seed)
    max_mul = 0.0
    for _ in range(trials):
        ca = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        cb = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        a = Multivector(sig, ca)
        b = Multivector(sig, cb)
        ab = a * b
        lhs = two_generator_alt_printed_map(u, v, *ab.coeffs)
        rhs = two_generator_alt_printed_map(u, v, *ca) @ two_generator_alt_printed_map(u, v, *cb)
        max_mul = max(max_mul, float(np.max(np.abs(lhs - rhs))))
    is_mult = max_mul <= tol * scale * scale

    return AltMapReport(
        u=u, v=v, trials=trials,
        max_multiplicative_residual=max_mul,
        is_multiplicative=is_mult,
        entry_residuals=entry_residuals,
        matches_printed_equation=matches,
        max_residual=max_residual,
        corrected_coeffs=corrected,
        printed_coeffs=printed,
        max_offscalar=max_offscalar,
    )


# -- isomorphism rank check ----------------------------------------------


@dataclass(frozen=True)
class RankReport:
    n: int
    rank: int
    expected: int

    @property
    def full_rank(self) -> bool:
        return self.rank == self.expected

    def to_json_dict(self) -> dict:
        return {"n": self.n, "rank": self.rank, "expected": self.expected,
                "pass": self.full_rank}


def check_isomorphism(n: int) -> RankReport:
    """Rank of the span of all basis-blade images; full rank means faithful
    and onto the matrix algebra (or the block-diagonal pair algebra)."""
    if not 0 <= n <= 12:
        raise ValueError("rank check supported for 0 <= n <= 12")
    sig = std_sig(n)
    rows = []
    for mask in range(sig.dim):
        rep = phi(Multivector.blade(sig, mask))
        rows.append(np.concatenate([b.ravel() for b in rep.blocks]))
    rank = row_echelon_rank(np.vstack(rows))
    return RankReport(n=n, rank=rank, expected=sig.dim)


# -- sharp conjugation ----------------------------------------------------


def sharp(a: Multivector) -> Multivector:
    """Explicit coefficient form for n <= 2: conjugate every coefficient and
    negate the non-scalar blade terms."""
    sig = a.signature
    if sig.n > 2:
        raise ValueError("explicit sharp formula only covers n <= 2")
    if not sig.is_standard:
        raise ValueError("sharp is defined over the standard signature")
    c = np.conj(a.coeffs)
    c[1:] = -c[1:]
    return Multivector(sig, c)


def sharp_general(a: Multivector) -> Multivector:
    """Element whose representation is the conjugate transpose of phi(a)."""
    return phi_inverse(phi(a).conjugate_transpose())
