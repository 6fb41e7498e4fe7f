"""Generalized Roth-Lempel (GRL) codes and their criteria.

A GRL code is given by distinct evaluation points ``alpha``, nonzero column
multipliers ``v``, a nonsingular ``s x s`` block ``A`` and a dimension ``k``.
Its generator is the ``k x n`` GRS matrix (rows ``v_i * alpha_i**r``)
followed by ``s`` extra columns that are zero except for ``A`` in the last
``s`` rows.

This module decides NMDS status for ``s = 2`` (subset sums of ``k - 1``
points) and ``s = 3`` (elementary symmetric data of point subsets), and
Hermitian self-orthogonality through the weighted power sums
``S_t = sum N(v_i) alpha_i**t``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .code import InfeasibleError, LinearCode
from .field import FieldSpec, QuadraticExtension, extension_of, make_field
from .linalg import Matrix, conj_transpose, det, mat_mul, rank

__all__ = [
    "GrlSpec",
    "CriterionResult",
    "SymmetricPair",
    "HermitianSums",
    "build_grs_generator",
    "build_grl_generator",
    "grl_parity_check_s3",
    "lagrange_weights",
    "power_sum",
    "gamma_values",
    "subset_sum_reachable",
    "subset_sum_witness",
    "subset_sum_reachable_all",
    "subset_sum_count",
    "subset_sum_counts_all",
    "delta_membership",
    "symmetric_pair",
    "omega_set",
    "gamma_set",
    "nmds_criterion_s2",
    "nmds_criterion_s3",
    "hermitian_sums",
    "so_criterion_s2",
    "so_criterion_s3",
    "weighted_exponent_sums",
    "weighted_exponent_matrix",
]

SUBSET_BUDGET = 10**7


@dataclass(frozen=True)
class GrlSpec:
    """Recipe ``(alpha, v, A, k)`` for one GRL code over ``spec``."""

    spec: FieldSpec
    alpha: tuple[int, ...]
    v: tuple[int, ...]
    A: Matrix
    k: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))
        if not isinstance(self.A, Matrix):
            object.__setattr__(self, "A", Matrix(self.spec, self.A))
        object.__setattr__(self, "k", int(self.k))

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def s(self) -> int:
        return self.A.rows

    @property
    def length(self) -> int:
        return self.n + self.s

    def validate(self) -> GrlSpec:
        """Check the defining invariants; raise ``ValueError`` naming the first violation."""
        F = self.spec
        if self.A.spec != F:
            raise ValueError("A is over a different field")
        if len(self.v) != self.n:
            raise ValueError(f"v has length {len(self.v)}, expected {self.n}")
        if any(not 0 <= a < F.q for a in self.alpha + self.v):
            raise ValueError("alpha/v entries out of range")
        if len(set(self.alpha)) != self.n:
            raise ValueError("alpha entries must be pairwise distinct")
        if any(x == 0 for x in self.v):
            raise ValueError("every v_i must be nonzero")
        if self.A.rows != self.A.cols or self.s not in (1, 2, 3):
            raise ValueError("A must be square of size 1, 2 or 3")
        if det(self.A) == 0:
            raise ValueError("A must be nonsingular")
        if not (self.s <= self.k <= self.n <= F.q):
            raise ValueError(
                f"need s <= k <= n <= q, got s={self.s}, k={self.k}, n={self.n}, q={F.q}"
            )
        return self

    def to_dict(self) -> dict:
        return {
            "field": self.spec.to_dict(),
            "alpha": list(self.alpha),
            "v": list(self.v),
            "A": self.A.tolist(),
            "k": self.k,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_dict(d: dict) -> GrlSpec:
        F = FieldSpec.from_dict(d["field"])
        return GrlSpec(F, tuple(d["alpha"]), tuple(d["v"]), Matrix(F, d["A"]), d["k"])

    @staticmethod
    def from_json(text: str) -> GrlSpec:
        return GrlSpec.from_dict(json.loads(text))


@dataclass
class CriterionResult:
    """Outcome of a criterion with the data that decided it."""

    holds: bool
    witness: dict = field(default_factory=dict)
    failed: str | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {"holds": self.holds, "failed": self.failed, "witness": self.witness}


# ----------------------------------------------------------------------
# generators


def build_grs_generator(F: FieldSpec, alpha: Sequence[int], v: Sequence[int], k: int) -> Matrix:
    """``k x n`` matrix with entry ``v_i * alpha_i**r`` in row ``r``.

    Raises:
        ValueError: On repeated points, a zero multiplier or bad ``k``.
    """
    alpha = np.asarray(alpha, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if len(set(alpha.tolist())) != alpha.size:
        raise ValueError("alpha entries must be pairwise distinct")
    if np.any(v == 0):
        raise ValueError("every v_i must be nonzero")
    if alpha.size != v.size:
        raise ValueError("alpha and v differ in length")
    if not 1 <= k <= alpha.size:
        raise ValueError(f"k={k} outside 1..{alpha.size}")
    rows = [F.mul(v, F.pow(alpha, r)) for r in range(k)]
    return Matrix(F, np.stack(rows))


def _grl_matrix(spec: GrlSpec) -> Matrix:
    F, k, s = spec.spec, spec.k, spec.s
    G = build_grs_generator(F, spec.alpha, spec.v, k).data
    tail = np.zeros((k, s), dtype=np.int64)
    tail[k - s :] = spec.A.data
    return Matrix(F, np.concatenate([G, tail], axis=1))


def build_grl_generator(spec: GrlSpec) -> LinearCode:
    """The ``[n + s, k]`` GRL code of a validated spec."""
    spec.validate()
    return LinearCode(_grl_matrix(spec))


def lagrange_weights(F: FieldSpec, alpha: Sequence[int]) -> np.ndarray:
    """``w_i = prod_{j != i} 1 / (alpha_i - alpha_j)``."""
    alpha = np.asarray(alpha, dtype=np.int64)
    diffs = F.sub(alpha[:, None], alpha[None, :])
    np.fill_diagonal(diffs, 1)
    w = np.ones(alpha.size, dtype=np.int64)
    for j in range(alpha.size):
        w = F.mul(w, diffs[:, j])
    return F.inv(w)


def power_sum(F: FieldSpec, alpha: Sequence[int], weights: Sequence[int], t: int) -> int:
    """``sum_i w_i * alpha_i**(n - 1 + t)``.

    Negative total exponents need every point to be nonzero.
    """
    alpha = np.asarray(alpha, dtype=np.int64)
    e = alpha.size - 1 + int(t)
    if e < 0 and np.any(alpha == 0):
        raise ValueError("negative exponent with a zero evaluation point")
    return F.sum(F.mul(np.asarray(weights, dtype=np.int64), F.pow(alpha, e)))


def gamma_values(F: FieldSpec, alpha: Sequence[int]) -> tuple[int, int]:
    """Closed forms of the power sums at ``t = 1`` and ``t = 2``.

    These are ``sum alpha_i`` and ``sum alpha_i**2 + sum_{i<j} alpha_i alpha_j``.
    """
    alpha = np.asarray(alpha, dtype=np.int64)
    g1 = F.sum(alpha)
    sq = F.sum(F.mul(alpha, alpha))
    e2 = symmetric_pair(F, alpha).e2
    return g1, F.add(sq, e2)


def grl_parity_check_s3(spec: GrlSpec) -> Matrix:
    """Parity-check matrix of an ``s = 3`` GRL code.

    Shape ``(n + 3 - k) x (n + 3)``: the first ``n`` columns carry
    ``u_i * alpha_i**j`` for ``j = 0 .. n + 2 - k`` with ``u_i = w_i / v_i``;
    the last three columns are zero except for ``-T (A^{-1})^T`` in the
    bottom three rows, where ``T`` is the Hankel matrix of the power sums
    ``0, 0, 1, gamma_1, gamma_2``.
    """
    spec.validate()
    if spec.s != 3:
        raise ValueError("parity check formula needs s = 3")
    F, n, k = spec.spec, spec.n, spec.k
    alpha = np.asarray(spec.alpha, dtype=np.int64)
    u = F.div(lagrange_weights(F, alpha), np.asarray(spec.v, dtype=np.int64))
    r = n + 3 - k
    H = np.zeros((r, n + 3), dtype=np.int64)
    for j in range(r):
        H[j, :n] = F.mul(u, F.pow(alpha, j))
    g1, g2 = gamma_values(F, alpha)
    T = Matrix(F, [[0, 0, 1], [0, 1, g1], [1, g1, g2]])
    Ainv = _inverse(spec.A)
    X = mat_mul(T, Ainv.T).data
    H[r - 3 :, n:] = F.neg(X)
    return Matrix(F, H)


def _inverse(A: Matrix) -> Matrix:
    from .linalg import _eliminate

    F = A.spec
    n = A.rows
    aug = np.concatenate([A.data, np.eye(n, dtype=np.int64)], axis=1)
    M, piv, _, _ = _eliminate(F, aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix(F, M[:, n:])


# ----------------------------------------------------------------------
# subset sums


def _shift_perms(F: FieldSpec, S: np.ndarray) -> np.ndarray:
    return F.add(np.arange(F.q, dtype=np.int64)[None, :], S[:, None])


def _dp_table(F: FieldSpec, S: Sequence[int], t: int) -> np.ndarray:
    S = np.asarray(S, dtype=np.int64)
    if not 1 <= t <= S.size:
        raise ValueError(f"subset size {t} outside 1..{S.size}")
    perms = _shift_perms(F, S)
    table = np.zeros((S.size + 1, t + 1, F.q), dtype=bool)
    table[0, 0, 0] = True
    for i in range(S.size):
        cur = table[i]
        nxt = cur.copy()
        # choose S[i]: sum x moves to x + S[i]
        nxt[1:, perms[i]] |= cur[:-1]
        table[i + 1] = nxt
    return table


def subset_sum_reachable_all(F: FieldSpec, S: Sequence[int], t: int) -> np.ndarray:
    """Boolean vector over the field: which sums some ``t``-subset of ``S`` attains."""
    return _dp_table(F, S, t)[-1, t].copy()


def subset_sum_reachable(F: FieldSpec, S: Sequence[int], t: int, delta: int) -> bool:
    """Whether some ``t``-subset of the distinct elements ``S`` sums to ``delta``.

    A dynamic program over (prefix, chosen count, partial sum), exact and
    ``O(|S| t q)``.
    """
    return bool(subset_sum_reachable_all(F, S, t)[int(delta)])


def subset_sum_witness(F: FieldSpec, S: Sequence[int], t: int, delta: int) -> list[int] | None:
    """Positions (into ``S``) of a ``t``-subset summing to ``delta``, or ``None``."""
    table = _dp_table(F, S, t)
    delta = int(delta)
    if not table[-1, t, delta]:
        return None
    S = np.asarray(S, dtype=np.int64)
    chosen = []
    c, x = t, delta
    for i in range(S.size, 0, -1):
        if table[i - 1, c, x]:
            continue
        prev = F.sub(x, int(S[i - 1]))
        chosen.append(i - 1)
        c, x = c - 1, prev
    if c != 0 or x != 0:
        raise AssertionError("subset-sum backtrack failed")  # pragma: no cover
    return sorted(chosen)


def _combo_blocks(n: int, t: int, size: int = 50000):
    it = combinations(range(n), t)
    while True:
        flat = []
        for _ in range(size):
            try:
                flat.extend(next(it))
            except StopIteration:
                break
        if not flat:
            return
        yield np.asarray(flat, dtype=np.int64).reshape(-1, t)


def subset_sum_counts_all(
    F: FieldSpec, S: Sequence[int], t: int, limit: int = SUBSET_BUDGET
) -> np.ndarray:
    """Exhaustive ``N(t, delta, S)`` for every ``delta`` at once.

    Raises:
        InfeasibleError: If ``C(|S|, t)`` exceeds ``limit``.
    """
    S = np.asarray(S, dtype=np.int64)
    if not 1 <= t <= S.size:
        raise ValueError(f"subset size {t} outside 1..{S.size}")
    total = math.comb(S.size, t)
    if total > limit:
        raise InfeasibleError(f"C({S.size},{t}) = {total} subsets exceed {limit}")
    counts = np.zeros(F.q, dtype=np.int64)
    for block in _combo_blocks(S.size, t):
        sums = F.sum(S[block], axis=1)
        counts += np.bincount(sums, minlength=F.q)
    return counts


def subset_sum_count(
    F: FieldSpec, S: Sequence[int], t: int, delta: int, limit: int = SUBSET_BUDGET
) -> int:
    """``N(t, delta, S)`` by enumeration; see :func:`subset_sum_counts_all`."""
    return int(subset_sum_counts_all(F, S, t, limit)[int(delta)])


def delta_membership(F: FieldSpec, alpha: Sequence[int], k: int, target: int) -> bool:
    """Whether ``target`` is the sum of some ``k - 1`` of the points."""
    return subset_sum_reachable(F, alpha, k - 1, target)


# ----------------------------------------------------------------------
# s = 2 criterion


def nmds_criterion_s2(spec: GrlSpec) -> CriterionResult:
    """NMDS test for ``s = 2`` with ``A = [[a, b], [c, d]]``.

    The code is NMDS exactly when ``c = a * sigma`` or ``d = b * sigma`` for
    some sum ``sigma`` of ``k - 1`` points.  With ``a = 0`` the first
    alternative would force ``c = 0``, impossible for nonsingular ``A``;
    likewise for ``b = 0``.  The witness names the alternative that fired,
    ``sigma`` and the chosen points.
    """
    spec.validate()
    if spec.s != 2:
        raise ValueError("criterion needs s = 2")
    F = spec.spec
    (a, b), (c, d) = spec.A.tolist()
    alpha = list(spec.alpha)
    tried = []
    for name, top, bottom in (("c=a*sigma", a, c), ("d=b*sigma", b, d)):
        if top == 0:
            continue
        sigma = F.div(bottom, top)
        tried.append({"disjunct": name, "sigma": sigma})
        pos = subset_sum_witness(F, alpha, spec.k - 1, sigma)
        if pos is not None:
            return CriterionResult(
                True,
                {"disjunct": name, "sigma": sigma, "subset": [alpha[i] for i in pos]},
            )
    return CriterionResult(False, {"tried": tried}, failed="no sigma in the subset-sum set")


# ----------------------------------------------------------------------
# s = 3 criterion


@dataclass(frozen=True)
class SymmetricPair:
    """``sigma1 = -sum(I)`` and ``e2 = sum_{i<l} a_i a_l`` of a point subset."""

    sigma1: int
    e2: int

    @property
    def sigma2(self) -> int:
        return self.e2


def _sym_arrays(F: FieldSpec, vals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise running sum and second elementary symmetric function."""
    s = np.zeros(vals.shape[0], dtype=np.int64)
    e2 = np.zeros(vals.shape[0], dtype=np.int64)
    for j in range(vals.shape[1]):
        e2 = F.add(e2, F.mul(s, vals[:, j]))
        s = F.add(s, vals[:, j])
    return s, e2


def symmetric_pair(F: FieldSpec, subset: Sequence[int]) -> SymmetricPair:
    vals = np.asarray(subset, dtype=np.int64)[None, :]
    s, e2 = _sym_arrays(F, vals)
    return SymmetricPair(F.neg(int(s[0])), int(e2[0]))


def _subset_vectors(F: FieldSpec, alpha: Sequence[int], t: int, kind: str,
                    limit: int, with_subsets: bool = False):
    alpha = np.asarray(alpha, dtype=np.int64)
    if not 1 <= t <= alpha.size:
        raise ValueError(f"subset size {t} outside 1..{alpha.size}")
    total = math.comb(alpha.size, t)
    if total > limit:
        raise InfeasibleError(f"C({alpha.size},{t}) = {total} subsets exceed {limit}")
    vecs, subs = [], []
    for block in _combo_blocks(alpha.size, t):
        s, e2 = _sym_arrays(F, alpha[block])
        if kind == "omega":
            third = F.sub(F.mul(s, s), e2)
            v = np.stack([np.ones_like(s), s, third], axis=1)
        else:
            v = np.stack([e2, F.neg(s), np.ones_like(s)], axis=1)
        vecs.append(v)
        if with_subsets:
            subs.append(block)
    vecs = np.concatenate(vecs)
    if with_subsets:
        return vecs, np.concatenate(subs)
    return vecs


def omega_set(F: FieldSpec, alpha: Sequence[int], t: int, *, unique: bool = True,
              limit: int = SUBSET_BUDGET) -> np.ndarray:
    """Vectors ``(1, -sigma1, sigma1**2 - sigma2)`` over all ``t``-subsets.

    Rows follow lexicographic subset order; ``unique`` drops repeats while
    keeping first occurrences in that order.
    """
    vecs = _subset_vectors(F, alpha, t, "omega", limit)
    return _dedupe(vecs) if unique else vecs


def gamma_set(F: FieldSpec, alpha: Sequence[int], t: int, *, unique: bool = True,
              limit: int = SUBSET_BUDGET) -> np.ndarray:
    """Vectors ``(sigma2, sigma1, 1)`` over all ``t``-subsets (see :func:`omega_set`)."""
    vecs = _subset_vectors(F, alpha, t, "gamma", limit)
    return _dedupe(vecs) if unique else vecs


def _dedupe(vecs: np.ndarray) -> np.ndarray:
    _, first = np.unique(vecs, axis=0, return_index=True)
    return vecs[np.sort(first)]


def _dot3(F: FieldSpec, a: np.ndarray, B: np.ndarray) -> np.ndarray:
    return F.sum(F.mul(a[None, :], B), axis=1)


def _cross(F: FieldSpec, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    ia, ib = [1, 2, 0], [2, 0, 1]
    return F.sub(F.mul(a[..., ia], b[..., ib]), F.mul(a[..., ib], b[..., ia]))


def nmds_criterion_s3(spec: GrlSpec, limit: int = SUBSET_BUDGET) -> CriterionResult:
    """NMDS test for ``s = 3`` from the columns ``a_1, a_2, a_3`` of ``A``.

    With ``Omega`` built from ``(k-2)``-subsets and ``Gamma`` from
    ``(k-1)``-subsets, the code is NMDS iff

    1. some ``det(a_i, a_j, b) = 0`` with ``b`` in ``Omega`` (``i != j``), or some
       ``a_i . b = 0`` with ``b`` in ``Gamma``;
    2. no ``b`` in ``Gamma`` is orthogonal to two of the columns;
    3. no column is a multiple of a vector of ``Omega``.

    Raises:
        InfeasibleError: If the subset enumeration exceeds ``limit``.
    """
    spec.validate()
    if spec.s != 3:
        raise ValueError("criterion needs s = 3")
    F, k = spec.spec, spec.k
    alpha = np.asarray(spec.alpha, dtype=np.int64)
    cols = spec.A.data.T  # cols[i] = a_{i+1}
    omega, om_sub = _subset_vectors(F, alpha, k - 2, "omega", limit, True)
    gamma, ga_sub = _subset_vectors(F, alpha, k - 1, "gamma", limit, True)

    def subset_of(idx_row):
        return [int(alpha[i]) for i in idx_row]

    # condition 3
    for j in range(3):
        cr = _cross(F, cols[j][None, :], omega)
        hit = np.nonzero(~np.any(cr != 0, axis=1))[0]
        if hit.size:
            r = int(hit[0])
            return CriterionResult(
                False,
                {"column": j + 1, "omega_vector": omega[r].tolist(), "subset": subset_of(om_sub[r])},
                failed="condition 3: a column lies in the span of an Omega vector",
            )
    # condition 2
    dots = np.stack([_dot3(F, cols[i], gamma) for i in range(3)], axis=1)
    zero_count = np.count_nonzero(dots == 0, axis=1)
    bad = np.nonzero(zero_count >= 2)[0]
    if bad.size:
        r = int(bad[0])
        return CriterionResult(
            False,
            {
                "gamma_vector": gamma[r].tolist(),
                "subset": subset_of(ga_sub[r]),
                "orthogonal_columns": [int(i) + 1 for i in np.nonzero(dots[r] == 0)[0]],
            },
            failed="condition 2: a Gamma vector is orthogonal to two columns",
        )
    # condition 1
    for i, j in ((0, 1), (0, 2), (1, 2)):
        cr = _cross(F, cols[i], cols[j])
        d = _dot3(F, cr, omega)
        hit = np.nonzero(d == 0)[0]
        if hit.size:
            r = int(hit[0])
            return CriterionResult(
                True,
                {
                    "condition": "1a",
                    "columns": [i + 1, j + 1],
                    "omega_vector": omega[r].tolist(),
                    "subset": subset_of(om_sub[r]),
                },
            )
    hit = np.argwhere(dots == 0)
    if hit.size:
        r, i = (int(t) for t in hit[0])
        return CriterionResult(
            True,
            {
                "condition": "1b",
                "column": i + 1,
                "gamma_vector": gamma[r].tolist(),
                "subset": subset_of(ga_sub[r]),
            },
        )
    return CriterionResult(False, {}, failed="condition 1: no dependent k-subset of columns")


# ----------------------------------------------------------------------
# Hermitian sums and self-orthogonality criteria


class HermitianSums:
    """Table of ``S_t = sum_i N(v_i) alpha_i**t`` for requested exponents."""

    def __init__(self, ext: QuadraticExtension, alpha, v, exponents: Iterable[int]):
        E = ext.ext
        self.ext = ext
        self._alpha = np.asarray(alpha, dtype=np.int64)
        self._nv = ext.norm_ext(np.asarray(v, dtype=np.int64))
        self.table: dict[int, int] = {}
        for t in exponents:
            self[t]

    def __getitem__(self, t: int) -> int:
        t = int(t)
        if t < 0:
            raise ValueError("exponents must be nonnegative")
        if t not in self.table:
            E = self.ext.ext
            self.table[t] = E.sum(E.mul(self._nv, E.pow(self._alpha, t)))
        return self.table[t]

    def __repr__(self) -> str:
        return f"HermitianSums({self.table})"


def hermitian_sums(ext: QuadraticExtension, alpha, v, exponents: Iterable[int]) -> HermitianSums:
    return HermitianSums(ext, alpha, v, exponents)


def _so_common(spec: GrlSpec, s: int, ext: QuadraticExtension | None):
    spec.validate()
    if spec.s != s:
        raise ValueError(f"criterion needs s = {s}")
    ext = ext or extension_of(spec.spec)
    if ext.ext != spec.spec:
        raise ValueError("spec is not over the extension field")
    return ext, HermitianSums(ext, spec.alpha, spec.v, [])


def _so_check(spec, ext, S, s, targets) -> CriterionResult:
    E = ext.ext
    q, k = ext.q, spec.k
    for r in range(0, k - s):
        for t in range(0, k):
            val = S[r + q * t]
            if val:
                return CriterionResult(
                    False,
                    {"r": r, "s": t, "exponent": r + q * t, "value": val},
                    failed="vanishing condition: a power sum is nonzero",
                )
    target = Matrix(E, E.neg(np.asarray(targets, dtype=np.int64)))
    gram = mat_mul(spec.A, conj_transpose(spec.A, ext))
    witness = {"A_Abar_T": gram.tolist(), "target": target.tolist()}
    if gram != target:
        return CriterionResult(False, witness, failed="matrix condition: A conj(A)^T mismatch")
    return CriterionResult(True, witness)


def so_criterion_s2(spec: GrlSpec, ext: QuadraticExtension | None = None) -> CriterionResult:
    """Hermitian self-orthogonality of an ``s = 2`` GRL code from power sums.

    Requires ``S_{r + q s} = 0`` for ``r <= k - 3``, ``s <= k - 1`` and
    ``A conj(A)^T = -[[S_a, S_b], [conj(S_b), S_c]]`` with
    ``a = (k-2)(q+1)``, ``b = k-2 + q(k-1)``, ``c = (k-1)(q+1)``.
    """
    ext, S = _so_common(spec, 2, ext)
    q, k = ext.q, spec.k
    sb = S[k - 2 + q * (k - 1)]
    targets = [
        [S[(k - 2) * (q + 1)], sb],
        [ext.conj(sb), S[(k - 1) * (q + 1)]],
    ]
    return _so_check(spec, ext, S, 2, targets)


def so_criterion_s3(spec: GrlSpec, ext: QuadraticExtension | None = None) -> CriterionResult:
    """``s = 3`` analogue of :func:`so_criterion_s2` with a 3 x 3 matrix of sums."""
    ext, S = _so_common(spec, 3, ext)
    q, k = ext.q, spec.k
    base = (k - 3) * (q + 1)
    s01 = S[base + q]
    s02 = S[base + 2 * q]
    s12 = S[(k - 2) * (q + 1) + q]
    targets = [
        [S[base], s01, s02],
        [ext.conj(s01), S[(k - 2) * (q + 1)], s12],
        [ext.conj(s02), ext.conj(s12), S[(k - 1) * (q + 1)]],
    ]
    return _so_check(spec, ext, S, 3, targets)


def weighted_exponent_sums(ext: QuadraticExtension, alpha: Sequence[int], k: int) -> tuple[int, int, int]:
    """Lagrange-weighted sums at exponents ``(k-2)(q+1)``, ``k-2+q(k-1)``, ``(k-1)(q+1)``."""
    E, q = ext.ext, ext.q
    alpha = np.asarray(alpha, dtype=np.int64)
    w = lagrange_weights(E, alpha)

    def mu(e):
        return E.sum(E.mul(w, E.pow(alpha, e)))

    return mu((k - 2) * (q + 1)), mu(k - 2 + q * (k - 1)), mu((k - 1) * (q + 1))


def weighted_exponent_matrix(ext: QuadraticExtension, alpha: Sequence[int], k: int) -> Matrix:
    """3 x 3 matrix ``mu[j][l] = sum w_i alpha_i**((k-3+j) + q(k-3+l))``."""
    E, q = ext.ext, ext.q
    alpha = np.asarray(alpha, dtype=np.int64)
    w = lagrange_weights(E, alpha)
    M = np.zeros((3, 3), dtype=np.int64)
    for j in range(3):
        for l in range(3):
            M[j, l] = E.sum(E.mul(w, E.pow(alpha, (k - 3 + j) + q * (k - 3 + l))))
    return Matrix(E, M)
