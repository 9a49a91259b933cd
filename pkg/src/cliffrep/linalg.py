"""Dense complex matrix kernel: LU solves, determinants, characteristic
polynomials, matrix exponentials and matrix-argument polynomial evaluation.

Matrices are plain complex128 numpy arrays.  Polynomials are 1-D complex
arrays in ascending degree order.  Everything here is desk-scale and
deliberately dependency-light: no eigendecompositions, no SVD.
"""

from __future__ import annotations

import math

import numpy as np

# A pivot below PIVOT_RTOL times the initial column magnitude marks the
# matrix as singular; this is what signals a non-invertible Clifford element.
PIVOT_RTOL = 1e-12


class SingularMatrixError(ArithmeticError):
    """Matrix is singular to working tolerance."""


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    return m


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"extent mismatch: {a.shape} @ {b.shape}")
    return a @ b


def mat_add(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"extent mismatch: {a.shape} + {b.shape}")
    return a + b


def mat_scale(lam: complex, a) -> np.ndarray:
    return complex(lam) * as_matrix(a)


def conjugate_transpose(a) -> np.ndarray:
    return as_matrix(a).conj().T.copy()


def _lu(a: np.ndarray):
    """Partial-pivoted in-place LU.  Returns (lu, perm, parity, singular)."""
    lu = as_matrix(a).copy()
    s = lu.shape[0]
    if lu.shape[1] != s:
        raise ValueError("LU factorization needs a square matrix")
    col_scale = np.max(np.abs(lu), axis=0)
    perm = np.arange(s)
    parity = 1
    singular = False
    for k in range(s):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) <= PIVOT_RTOL * col_scale[k] or col_scale[k] == 0.0:
            singular = True
            continue
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            parity = -parity
        fac = lu[k + 1:, k] / lu[k, k]
        lu[k + 1:, k] = fac
        lu[k + 1:, k + 1:] -= np.outer(fac, lu[k, k + 1:])
    return lu, perm, parity, singular


def lu_solve(a, b) -> np.ndarray:
    """Solve A X = B by forward/back substitution on the pivoted factors."""
    b = np.asarray(b, dtype=np.complex128)
    vector_input = b.ndim == 1
    if vector_input:
        b = b[:, None]
    lu, perm, _, singular = _lu(a)
    if singular:
        raise SingularMatrixError("matrix is singular to working tolerance")
    s = lu.shape[0]
    if b.shape[0] != s:
        raise ValueError(f"extent mismatch: {lu.shape} vs rhs {b.shape}")
    x = b[perm].copy()
    for k in range(1, s):
        x[k] -= lu[k, :k] @ x[:k]
    for k in range(s - 1, -1, -1):
        x[k] -= lu[k, k + 1:] @ x[k + 1:]
        x[k] /= lu[k, k]
    return x[:, 0] if vector_input else x


def inverse(a) -> np.ndarray:
    a = as_matrix(a)
    return lu_solve(a, np.eye(a.shape[0], dtype=np.complex128))


def det(a) -> complex:
    lu, _, parity, singular = _lu(a)
    if singular:
        return 0j
    return complex(parity * np.prod(np.diagonal(lu)))


def charpoly(a) -> np.ndarray:
    """Monic characteristic polynomial, ascending coefficients.

    Uses the trace recurrence (no eigenvalues needed): with M_0 = 0 and
    c_s = 1, iterate M_k = A M_{k-1} + c_{s-k+1} I and
    c_{s-k} = -tr(A M_k) / k.
    """
    a = as_matrix(a)
    s = a.shape[0]
    if a.shape[1] != s:
        raise ValueError("characteristic polynomial needs a square matrix")
    c = np.zeros(s + 1, dtype=np.complex128)
    c[s] = 1.0
    m = np.zeros_like(a)
    eye = np.eye(s, dtype=np.complex128)
    for k in range(1, s + 1):
        m = a @ m + c[s - k + 1] * eye
        c[s - k] = -np.trace(a @ m) / k
    return c


def polyval_matrix(p, a) -> np.ndarray:
    """Evaluate a polynomial at a matrix argument by Horner's rule."""
    a = as_matrix(a)
    p = np.atleast_1d(np.asarray(p, dtype=np.complex128))
    s = a.shape[0]
    if a.shape[1] != s:
        raise ValueError("polynomial evaluation needs a square matrix")
    eye = np.eye(s, dtype=np.complex128)
    out = p[-1] * eye
    for c in p[-2::-1]:
        out = out @ a + c * eye
    return out


_EXP_SERIES_DEGREE = 18
_EXP_SCALE_TARGET = 0.5


def matexp(a) -> np.ndarray:
    """Matrix exponential by scaling and squaring.

    The argument is halved until its inf-norm is at most 0.5, a degree-18
    truncated series is evaluated by Horner, and the result is squared back
    up.  At that scaled norm the series truncation error is far below
    double-precision roundoff.
    """
    a = as_matrix(a)
    s = a.shape[0]
    if a.shape[1] != s:
        raise ValueError("matrix exponential needs a square matrix")
    eye = np.eye(s, dtype=np.complex128)
    norm = float(np.max(np.sum(np.abs(a), axis=1))) if s else 0.0
    k = max(0, math.ceil(math.log2(norm / _EXP_SCALE_TARGET))) if norm > _EXP_SCALE_TARGET else 0
    b = a / (2 ** k)
    out = eye / math.factorial(_EXP_SERIES_DEGREE)
    for j in range(_EXP_SERIES_DEGREE - 1, -1, -1):
        out = b @ out + eye / math.factorial(j)
    for _ in range(k):
        out = out @ out
    return out


def row_echelon_rank(a, rtol: float = PIVOT_RTOL) -> int:
    """Rank by Gaussian elimination with partial pivoting on a rectangle."""
    m = as_matrix(a).copy()
    rows, cols = m.shape
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    if scale == 0.0:
        return 0
    rank = 0
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        p = row + int(np.argmax(np.abs(m[row:, col])))
        if abs(m[p, col]) <= rtol * scale:
            continue
        if p != row:
            m[[row, p]] = m[[p, row]]
        m[row + 1:, col:] -= np.outer(m[row + 1:, col] / m[row, col], m[row, col:])
        rank += 1
        row += 1
    return rank


def nullspace(a, rtol: float = 1e-10) -> np.ndarray:
    """Basis for the right nullspace, as columns.  Empty (s, 0) if trivial.

    Reduced row echelon with partial pivoting; free columns generate the
    basis vectors.  Fine for the moderate, well-scaled systems used here.
    """
    m = as_matrix(a).copy()
    rows, cols = m.shape
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        p = row + int(np.argmax(np.abs(m[row:, col])))
        if scale == 0.0 or abs(m[p, col]) <= rtol * scale:
            continue
        if p != row:
            m[[row, p]] = m[[p, row]]
        m[row] = m[row] / m[row, col]
        others = np.concatenate([np.arange(row), np.arange(row + 1, rows)])
        m[others] -= np.outer(m[others, col], m[row])
        pivots.append(col)
        row += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.complex128)
    for j, fc in enumerate(free):
        basis[fc, j] = 1.0
        for i, pc in enumerate(pivots):
            basis[pc, j] = -m[i, fc]
    return basis
