"""Dense matrices over GF(p^m) with exact Gaussian elimination.

Matrices are immutable values wrapping an ``int64`` numpy array of element
indices.  Row operations are vectorized over whole rows; the batched rank
routine eliminates many small column-subset matrices at once, which is what
the column-condition scans in :mod:`grlcodes.code` need.

The text exchange format is::

    GFMAT v1
    <p> <m> <c0,c1,...,cm> <rows> <cols>
    <row of element indices>
    ...
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .field import FieldSpec, QuadraticExtension, make_field

__all__ = [
    "Matrix",
    "mat_mul",
    "rank",
    "det",
    "rref",
    "right_kernel",
    "conj_transpose",
    "transpose",
    "subset_ranks",
    "solve_left",
    "row_space_equal",
    "hermitian_factor",
    "to_gfmat",
    "from_gfmat",
]


class Matrix:
    """A rows x cols matrix of elements of ``spec``."""

    __slots__ = ("spec", "data")

    def __init__(self, spec: FieldSpec, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= spec.q):
            raise ValueError(f"entries out of range for GF({spec.q})")
        arr.setflags(write=False)
        self.spec = spec
        self.data = arr

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> Matrix:
        return cls(spec, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> Matrix:
        return cls(spec, np.zeros((rows, cols), dtype=np.int64))

    def __getitem__(self, key):
        out = self.data[key]
        if isinstance(out, np.ndarray):
            return out.copy()
        return int(out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.spec == other.spec
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.spec, self.shape, self.data.tobytes()))

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    @property
    def T(self) -> Matrix:
        return transpose(self)

    def is_zero(self) -> bool:
        return not np.any(self.data)

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __repr__(self) -> str:
        return f"Matrix(GF({self.spec.q}), {self.data.tolist()})"


def _check_same(A: Matrix, B: Matrix) -> None:
    if A.spec != B.spec:
        raise ValueError("matrices over different fields")


def _matmul_arrays(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    out = np.empty((a.shape[0], b.shape[1]), dtype=np.int64)
    step = max(1, 2_000_000 // max(1, a.shape[1] * b.shape[1]))
    for lo in range(0, a.shape[0], step):
        prods = F.mul(a[lo : lo + step, :, None], b[None, :, :])
        out[lo : lo + step] = F.sum(prods, axis=1)
    return out


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    """Matrix product ``A @ B``.

    Raises:
        ValueError: On a field or shape mismatch.
    """
    _check_same(A, B)
    if A.cols != B.rows:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    return Matrix(A.spec, _matmul_arrays(A.spec, A.data, B.data))


def transpose(A: Matrix) -> Matrix:
    return Matrix(A.spec, A.data.T)


def conj_transpose(A: Matrix, ext: QuadraticExtension) -> Matrix:
    """Entrywise Frobenius conjugate of the transpose (``A-bar`` transposed)."""
    if A.spec != ext.ext:
        raise ValueError("matrix is not over the extension field of ext")
    return Matrix(A.spec, ext.conj(A.data.T))


def _eliminate(F: FieldSpec, data: np.ndarray, reduce_up: bool = True):
    """Row-reduce a copy of ``data``; return (matrix, pivot columns, swaps, pivots)."""
    M = np.array(data, dtype=np.int64, copy=True)
    rows, cols = M.shape
    pivots: list[int] = []
    pivot_vals: list[int] = []
    swaps = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
            swaps += 1
        pv = int(M[r, c])
        pivot_vals.append(pv)
        M[r] = F.mul(F.inv(pv), M[r])
        targets = np.arange(rows) if reduce_up else np.arange(r + 1, rows)
        targets = targets[(targets != r) & (M[targets, c] != 0)]
        if targets.size:
            factors = M[targets, c]
            M[targets] = F.sub(M[targets], F.mul(factors[:, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    return M, pivots, swaps, pivot_vals


def rref(A: Matrix) -> Matrix:
    """Reduced row echelon form, same shape; zero rows sink to the bottom."""
    M, _, _, _ = _eliminate(A.spec, A.data)
    return Matrix(A.spec, M)


def rank(A: Matrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    _, piv, _, _ = _eliminate(A.spec, A.data, reduce_up=False)
    return len(piv)


def det(A: Matrix) -> int:
    """Determinant as an element index.

    Raises:
        ValueError: If ``A`` is not square.
    """
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    F = A.spec
    if A.rows == 0:
        return 1
    _, piv, swaps, vals = _eliminate(F, A.data, reduce_up=False)
    if len(piv) < A.rows:
        return 0
    d = 1
    for v in vals:
        d = F.mul(d, v)
    return F.neg(d) if swaps % 2 else d


def right_kernel(A: Matrix) -> Matrix:
    """Basis (as rows) of ``{x : A x = 0}``; shape ``(cols - rank, cols)``."""
    F = A.spec
    M, piv, _, _ = _eliminate(F, A.data)
    free = [c for c in range(A.cols) if c not in set(piv)]
    K = np.zeros((len(free), A.cols), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for r, c in enumerate(piv):
            K[t, c] = F.neg(int(M[r, f]))
    return Matrix(F, K)


def solve_left(A: Matrix, b: Sequence[int]) -> np.ndarray | None:
    """A vector ``x`` with ``x @ A = b`` or ``None`` when ``b`` is outside the row space."""
    F = A.spec
    aug = np.concatenate([A.data.T, np.asarray(b, dtype=np.int64)[:, None]], axis=1)
    M, piv, _, _ = _eliminate(F, aug)
    if A.rows in piv:
        return None
    x = np.zeros(A.rows, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = M[r, A.rows]
    return x


def row_space_equal(A: Matrix, B: Matrix) -> bool:
    _check_same(A, B)
    if A.cols != B.cols:
        return False
    ra = rank(A)
    return ra == rank(B) and rank(Matrix(A.spec, np.concatenate([A.data, B.data]))) == ra


def subset_ranks(F: FieldSpec, blocks: np.ndarray) -> np.ndarray:
    """Ranks of a batch of matrices with shape ``(B, r, c)``.

    Each batch member is eliminated independently, but every step is a
    single vectorized operation across the batch.
    """
    M = np.array(blocks, dtype=np.int64, copy=True)
    B, r, c = M.shape
    rk = np.zeros(B, dtype=np.int64)
    rows_idx = np.arange(r)
    bidx = np.arange(B)
    for j in range(c):
        col = M[:, :, j]
        cand = (col != 0) & (rows_idx[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = bidx[has]
        piv = np.argmax(cand[has], axis=1)
        tgt = rk[has]
        prow = M[b, piv].copy()
        M[b, piv] = M[b, tgt]
        M[b, tgt] = prow
        pv = prow[:, j]
        prow = F.mul(F.inv(pv)[:, None], prow)
        M[b, tgt] = prow
        # clear column j below the pivot row
        sub = M[b]
        factors = sub[:, :, j].copy()
        below = rows_idx[None, :] > tgt[:, None]
        factors = np.where(below, factors, 0)
        M[b] = F.sub(sub, F.mul(factors[:, :, None], prow[:, None, :]))
        rk[has] += 1
    return rk


def hermitian_factor(M: Matrix, ext: QuadraticExtension) -> Matrix:
    """Nonsingular ``P`` with ``P @ conj_transpose(P) == M`` for Hermitian nonsingular ``M``.

    Works like a Cholesky factorization; a zero diagonal is repaired by a
    shear ``I + c E_ij`` with trace-nonzero ``c``, which every nonsingular
    Hermitian matrix over a finite field admits.

    Raises:
        ValueError: If ``M`` is not square, not Hermitian, or singular.
    """
    E = ext.ext
    if M.rows != M.cols:
        raise ValueError("matrix must be square")
    if M != conj_transpose(M, ext):
        raise ValueError("matrix is not Hermitian")
    if rank(M) < M.rows:
        raise ValueError("matrix is singular")
    return Matrix(E, _herm_factor(M.data, ext))


def _herm_factor(M: np.ndarray, ext: QuadraticExtension) -> np.ndarray:
    E = ext.ext
    n = M.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    diag = np.diagonal(M)
    if not np.any(diag):
        i, j = (int(t) for t in np.argwhere(M != 0)[0])
        for c in range(1, E.q):
            t = E.mul(ext.conj(c), int(M[i, j]))
            if E.add(t, ext.conj(t)) != 0:
                break
        S = np.eye(n, dtype=np.int64)
        S[i, j] = c
        Mp = _matmul_arrays(E, _matmul_arrays(E, S, M), ext.conj(S.T))
        P = _herm_factor(Mp, ext)
        Sinv = np.eye(n, dtype=np.int64)
        Sinv[i, j] = E.neg(c)
        return _matmul_arrays(E, Sinv, P)
    i = int(np.nonzero(diag)[0][0])
    perm = [i] + [t for t in range(n) if t != i]
    Mp = M[np.ix_(perm, perm)]
    a = int(Mp[0, 0])
    s = ext.solve_norm_equation(a, in_ext=True)
    b = Mp[1:, 0]
    ainv = E.inv(a)
    schur = E.sub(Mp[1:, 1:], E.mul(ainv, E.mul(b[:, None], ext.conj(b)[None, :])))
    Q = _herm_factor(schur, ext)
    P = np.zeros((n, n), dtype=np.int64)
    P[0, 0] = s
    P[1:, 0] = E.mul(E.mul(b, ainv), s)
    P[1:, 1:] = Q
    out = np.zeros_like(P)
    out[perm] = P
    return out


def to_gfmat(A: Matrix) -> str:
    """Serialize to the ``GFMAT v1`` text format."""
    F = A.spec
    lines = [
        "GFMAT v1",
        f"{F.p} {F.m} {','.join(map(str, F.modulus))} {A.rows} {A.cols}",
    ]
    lines += [" ".join(str(int(v)) for v in row) for row in A.data]
    return "\n".join(lines) + "\n"


def from_gfmat(text: str | Iterable[str]) -> Matrix:
    """Parse ``GFMAT v1`` text.

    Raises:
        ValueError: On a malformed header, wrong row count or bad entries.
    """
    lines = text.splitlines() if isinstance(text, str) else list(text)
    lines = [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0] != "GFMAT v1":
        raise ValueError("missing 'GFMAT v1' magic line")
    head = lines[1].split()
    if len(head) != 5:
        raise ValueError("header must be 'p m modulus rows cols'")
    p, m = int(head[0]), int(head[1])
    modulus = [int(c) for c in head[2].split(",")]
    rows, cols = int(head[3]), int(head[4])
    body = lines[2:]
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows, found {len(body)}")
    data = [[int(v) for v in ln.split()] for ln in body]
    if any(len(r) != cols for r in data):
        raise ValueError(f"every row must have {cols} entries")
    F = make_field(p, m, modulus)
    return Matrix(F, np.array(data, dtype=np.int64).reshape(rows, cols))
