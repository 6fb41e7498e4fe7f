"""Linear codes: duals, exact distances, Singleton defects and classification.

The minimum distance is found by enumerating messages.  Scaling a message by
a nonzero constant does not change the weight, so only projectively
normalized messages of the first ``k - 1`` rows are formed explicitly; for
each of those the best multiple of the last generator row is read off from a
histogram of the ratios ``-P_j / g_j``.  The result is the exact minimum over
all ``q^k - 1`` nonzero messages, and the budget check is made against that
count.

The dual distance comes either from enumerating the dual or, usually much
cheaper, from the smallest linearly dependent set of generator columns.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import numpy as np

from .field import FieldSpec, QuadraticExtension, extension_of
from .linalg import Matrix, conj_transpose, mat_mul, rank, right_kernel, subset_ranks

__all__ = [
    "InfeasibleError",
    "LinearCode",
    "Classification",
    "default_budget",
    "dual",
    "hermitian_dual",
    "min_distance_exact",
    "dual_distance",
    "classify",
    "hermitian_gram",
    "is_hermitian_self_orthogonal",
    "column_conditions",
    "sample_subset_ranks",
    "min_weight_outside",
    "code_report",
]

DEFAULT_BUDGET = 10**8
LABELS = ("MDS", "AMDS", "NMDS", "OTHER", "UNKNOWN")


class InfeasibleError(RuntimeError):
    """Raised when an exact computation would exceed its budget."""


def default_budget() -> int:
    """Enumeration budget, overridable through ``GRL_BUDGET``."""
    raw = os.environ.get("GRL_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(float(raw))
    except ValueError as exc:
        raise ValueError(f"GRL_BUDGET must be a number, got {raw!r}") from exc


class LinearCode:
    """Row space of a full-rank generator matrix.

    A generator with zero rows describes the zero code, whose minimum
    distance is taken to be ``n + 1``.

    Raises:
        ValueError: If the generator does not have full row rank.
    """

    def __init__(self, gen: Matrix):
        if gen.rows and rank(gen) != gen.rows:
            raise ValueError("generator matrix must have full row rank")
        self.gen = gen
        self.spec: FieldSpec = gen.spec
        self.n = gen.cols
        self.k = gen.rows

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}] over GF({self.spec.q}))"

    def contains(self, words) -> bool:
        """Whether every row of ``words`` lies in the code."""
        W = np.atleast_2d(np.asarray(words.data if isinstance(words, Matrix) else words))
        if self.k == self.n:
            return True
        H = right_kernel(self.gen).data
        syn = mat_mul(Matrix(self.spec, W), Matrix(self.spec, H.T))
        return syn.is_zero()

    def encode(self, messages) -> np.ndarray:
        msg = np.atleast_2d(np.asarray(messages, dtype=np.int64))
        return mat_mul(Matrix(self.spec, msg), self.gen).data


def dual(C: LinearCode) -> LinearCode:
    """Euclidean dual, generated by the right kernel of the generator."""
    return LinearCode(right_kernel(C.gen))


def hermitian_dual(C: LinearCode, ext: QuadraticExtension | None = None) -> LinearCode:
    """Hermitian dual: the Euclidean dual raised entrywise to the q-th power."""
    ext = ext or extension_of(C.spec)
    if ext.ext != C.spec:
        raise ValueError("code is not over the extension field")
    D = right_kernel(C.gen)
    return LinearCode(Matrix(C.spec, ext.conj(D.data)))


def _weights(words: np.ndarray) -> np.ndarray:
    return np.count_nonzero(words, axis=-1)


def _mixed_radix(idx: np.ndarray, base: int, width: int) -> np.ndarray:
    out = np.empty((idx.size, width), dtype=np.int64)
    rem = idx.copy()
    for j in range(width - 1, -1, -1):
        out[:, j] = rem % base
        rem //= base
    return out


def _parent_ranges(k: int, q: int, chunk: int) -> Iterator[tuple[int, int, int]]:
    for lead in range(k - 1):
        total = q ** (k - 2 - lead)
        for lo in range(0, total, chunk):
            yield lead, lo, min(total, lo + chunk)


def _chunk_min(F: FieldSpec, G: np.ndarray, lead: int, lo: int, hi: int) -> int:
    k, n = G.shape
    q = F.q
    g = G[k - 1]
    nz = g != 0
    nnz = int(nz.sum())
    neg_inv = F.neg(F.inv(g[nz])) if nnz else np.zeros(0, dtype=np.int64)
    free = k - 2 - lead
    coeffs = _mixed_radix(np.arange(lo, hi, dtype=np.int64), q, free)
    P = np.broadcast_to(G[lead], (hi - lo, n)).copy()
    for j in range(free):
        P = F.add(P, F.mul(coeffs[:, j, None], G[lead + 1 + j][None, :]))
    w_zero = np.count_nonzero(P[:, ~nz], axis=1)
    if nnz == 0:
        return int(w_zero.min())
    ratios = F.mul(P[:, nz], neg_inv[None, :])
    rows = np.arange(hi - lo, dtype=np.int64)[:, None]
    counts = np.bincount((rows * q + ratios).ravel(), minlength=(hi - lo) * q)
    best_hits = counts.reshape(hi - lo, q).max(axis=1)
    return int((w_zero + nnz - best_hits).min())


def min_distance_exact(
    C: LinearCode, budget: int | None = None, workers: int = 1
) -> int:
    """Exact minimum distance by message enumeration.

    Args:
        C: The code.
        budget: Maximum number of nonzero messages ``q^k - 1``; defaults to
            :func:`default_budget`.
        workers: Thread count for the chunked scan.  The result does not
            depend on it.

    Raises:
        InfeasibleError: If ``q^k - 1`` exceeds the budget.
    """
    budget = default_budget() if budget is None else budget
    F, k, n = C.spec, C.k, C.n
    if k == 0:
        return n + 1
    if F.q**k - 1 > budget:
        raise InfeasibleError(
            f"{F.q}^{k} - 1 messages exceed the enumeration budget {budget}"
        )
    G = C.gen.data
    best = int(np.count_nonzero(G[k - 1]))
    if k == 1:
        return best
    chunk = max(1, 1_000_000 // max(1, n * 4))
    tasks = list(_parent_ranges(k, F.q, chunk))
    if workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda t: _chunk_min(F, G, *t), tasks))
    else:
        results = [_chunk_min(F, G, *t) for t in tasks]
    return min([best] + results)


def _comb_chunks(n: int, t: int, size: int) -> Iterator[np.ndarray]:
    it = combinations(range(n), t)
    while True:
        block = np.fromiter(
            (c for combo in _take(it, size) for c in combo), dtype=np.int64
        )
        if block.size == 0:
            return
        yield block.reshape(-1, t)


def _take(it, size):
    for _ in range(size):
        try:
            yield next(it)
        except StopIteration:
            return


def _first_dependent(G: np.ndarray, F: FieldSpec, t: int) -> np.ndarray | None:
    """Some t-subset of columns with rank < t, or None."""
    n = G.shape[1]
    for block in _comb_chunks(n, t, 20000):
        ranks = subset_ranks(F, G[:, block].transpose(1, 0, 2))
        bad = np.nonzero(ranks < t)[0]
        if bad.size:
            return block[bad[0]]
    return None


def dual_distance(C: LinearCode, budget: int | None = None) -> int:
    """Minimum distance of the Euclidean dual (same as the Hermitian dual).

    Uses the cheaper of: enumerating the dual, or scanning column subsets
    of the generator for the smallest dependent set.

    Raises:
        InfeasibleError: If both routes exceed the budget.
    """
    budget = default_budget() if budget is None else budget
    F, k, n = C.spec, C.k, C.n
    if k == n:
        return n + 1
    scan_cost = sum(math.comb(n, t) for t in range(1, min(k + 1, n) + 1))
    enum_cost = F.q ** (n - k) - 1
    if scan_cost <= budget and (scan_cost <= enum_cost or enum_cost > budget):
        G = C.gen.data
        for t in range(1, min(k + 1, n) + 1):
            if _first_dependent(G, F, t) is not None:
                return t
        return n + 1
    if enum_cost <= budget:
        return min_distance_exact(dual(C), budget)
    raise InfeasibleError(
        f"dual distance of [{n},{k}]_{F.q}: subset scan {scan_cost} and "
        f"enumeration {enum_cost} both exceed budget {budget}"
    )


@dataclass(frozen=True)
class Classification:
    """Distances, Singleton defects and the resulting label.

    ``d_dual`` is ``None`` when it could not be established; the evidence
    fields record how each distance was obtained (``exact``,
    ``certified-by-criterion`` or ``unknown``).
    """

    n: int
    k: int
    d: int
    d_dual: int | None
    s: int
    s_dual: int | None
    label: str
    d_evidence: str = "exact"
    d_dual_evidence: str = "exact"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "d_dual": self.d_dual,
            "s": self.s,
            "s_dual": self.s_dual,
            "label": self.label,
            "d_evidence": self.d_evidence,
            "d_dual_evidence": self.d_dual_evidence,
        }


def _label(s: int, s_dual: int | None) -> str:
    if s == 0:
        return "MDS"
    if s == 1:
        if s_dual is None:
            return "UNKNOWN"
        return "NMDS" if s_dual == 1 else "AMDS"
    return "OTHER"


def classify(
    C: LinearCode,
    budget: int | None = None,
    *,
    d: int | None = None,
    d_dual: int | None = None,
    evidence: str = "certified-by-criterion",
) -> Classification:
    """Classify ``C`` as MDS, AMDS, NMDS or OTHER from its distances.

    Distances not supplied are computed exactly.  A supplied value is
    tagged with ``evidence``.  If the dual distance is out of budget the
    result is partial: ``d_dual`` is ``None`` and an ``s = 1`` code gets
    the label ``UNKNOWN``.

    Raises:
        InfeasibleError: If ``d`` itself is out of budget.
    """
    n, k = C.n, C.k
    d_ev = "exact"
    if d is None:
        d = min_distance_exact(C, budget)
    else:
        d_ev = evidence
    dd_ev = "exact"
    if d_dual is None:
        try:
            d_dual = dual_distance(C, budget)
        except InfeasibleError:
            d_dual, dd_ev = None, "unknown"
    else:
        dd_ev = evidence
    s = n - k + 1 - d
    s_dual = None if d_dual is None else n - (n - k) + 1 - d_dual
    return Classification(n, k, d, d_dual, s, s_dual, _label(s, s_dual), d_ev, dd_ev)


def hermitian_gram(C: LinearCode, ext: QuadraticExtension | None = None) -> Matrix:
    """``G @ conj(G)^T``; zero exactly when the code is Hermitian self-orthogonal."""
    ext = ext or extension_of(C.spec)
    return mat_mul(C.gen, conj_transpose(C.gen, ext))


def is_hermitian_self_orthogonal(C: LinearCode, ext: QuadraticExtension | None = None) -> bool:
    return hermitian_gram(C, ext).is_zero()


def column_conditions(C: LinearCode, budget: int | None = None) -> tuple[bool, bool, bool]:
    """The three column conditions that characterize NMDS codes.

    Returns ``(i, ii, iii)``: every ``k-1`` columns independent, some ``k``
    columns dependent, every ``k+1`` columns of rank ``k``.
    """
    budget = default_budget() if budget is None else budget
    F, k, n = C.spec, C.k, C.n
    cost = sum(math.comb(n, t) for t in (k - 1, k, k + 1) if 0 <= t <= n)
    if cost > budget:
        raise InfeasibleError(f"{cost} column subsets exceed budget {budget}")
    G = C.gen.data
    cond1 = k - 1 < 1 or _first_dependent(G, F, k - 1) is None
    cond2 = k <= n and _first_dependent(G, F, k) is not None
    cond3 = True
    if k + 1 <= n:
        for block in _comb_chunks(n, k + 1, 20000):
            if np.any(subset_ranks(F, G[:, block].transpose(1, 0, 2)) < k):
                cond3 = False
                break
    return cond1, cond2, cond3


def sample_subset_ranks(
    C: LinearCode, t: int, count: int, rng: np.random.Generator, batch: int = 10000
) -> np.ndarray:
    """Ranks of ``count`` uniformly random ``t``-column subsets."""
    G = C.gen.data
    out = []
    done = 0
    while done < count:
        b = min(batch, count - done)
        keys = rng.random((b, C.n))
        cols = np.argsort(keys, axis=1)[:, :t]
        out.append(subset_ranks(C.spec, G[:, cols].transpose(1, 0, 2)))
        done += b
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)


def min_weight_outside(D: LinearCode, C: LinearCode, budget: int | None = None) -> int | None:
    """Minimum weight of codewords of ``D`` that are not in ``C``.

    Returns ``None`` when ``D`` is contained in ``C``.

    Raises:
        InfeasibleError: If enumerating ``D`` exceeds the budget.
    """
    budget = default_budget() if budget is None else budget
    F = D.spec
    if F.q**D.k - 1 > budget:
        raise InfeasibleError(f"{F.q}^{D.k} words of D exceed budget {budget}")
    H = right_kernel(C.gen).data.T if C.k < C.n else np.zeros((C.n, 0), dtype=np.int64)
    best = None
    total = F.q**D.k
    step = max(1, 200_000 // max(1, D.n))
    for lo in range(1, total, step):
        msgs = _mixed_radix(np.arange(lo, min(total, lo + step)), F.q, D.k)
        words = D.encode(msgs)
        if H.shape[1]:
            syn = mat_mul(Matrix(F, words), Matrix(F, H)).data
            outside = np.any(syn != 0, axis=1)
        else:
            outside = np.zeros(len(words), dtype=bool)
        if outside.any():
            w = int(_weights(words[outside]).min())
            best = w if best is None else min(best, w)
    return best


def code_report(
    C: LinearCode,
    cls: Classification,
    hermitian_self_orthogonal: bool | None = None,
) -> dict:
    """JSON-ready code report."""
    out = {
        "n": C.n,
        "k": C.k,
        "d": cls.d,
        "d_dual": cls.d_dual,
        "s": cls.s,
        "s_dual": cls.s_dual,
        "label": cls.label,
        "hermitian_self_orthogonal": hermitian_self_orthogonal,
    }
    if cls.d_evidence != "exact" or cls.d_dual_evidence != "exact":
        out["evidence"] = {"d": cls.d_evidence, "d_dual": cls.d_dual_evidence}
    return out
