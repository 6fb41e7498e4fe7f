"""Four deterministic families of Hermitian self-orthogonal GRL codes over GF(q^2).

Families 1 and 3 take evaluation points from cosets of the norm-one subgroup
``U_{q+1}``; families 2 and 4 use cosets of ``GF(q)*``.  Families 1 and 2 add
two extra columns and are NMDS; families 3 and 4 add three extra columns
and have distance at least ``n - k + 2``.

Wherever several choices are valid, a constructor takes the one with the
smallest element index, so repeated runs produce identical codes.  Every
intermediate scalar ends up in a :class:`ConstructionTrace`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .field import FieldSpec, QuadraticExtension, quadratic_extension
from .grl import GrlSpec, symmetric_pair
from .linalg import Matrix

__all__ = [
    "ConstructionError",
    "FamilyParams",
    "ConstructionTrace",
    "find_nonzero_sum_subset",
    "find_sigma12_subset",
    "construct_family1",
    "construct_family2",
    "construct_family3",
    "construct_family4",
    "construct",
    "family_ranges",
    "iter_params",
    "design_parameters",
    "KNOWN_NMDS_SO_CONSTRUCTIONS",
]


class ConstructionError(RuntimeError):
    """A deterministic search inside a constructor found no valid choice."""


def _floor_half(x: int) -> int:
    return x // 2


def family_ranges(family: int, q: int) -> tuple[range, Callable[[int], range]]:
    """``(m range, k range as a function of m)`` for a family and base order ``q``."""
    if family == 1:
        return range(2, q - 1), lambda m: range(3, m + 2)
    if family == 2:
        return range(2, q + 2), lambda m: range(3, _floor_half(q + 1) + 1)
    if family == 3:
        return range(2, q - 2), lambda m: range(4, m + 3)
    if family == 4:
        return range(2, q + 2), lambda m: range(4, _floor_half(q + 1) + 1)
    raise ValueError(f"unknown family {family}")


_MIN_Q = {1: 4, 2: 5, 3: 5, 4: 5}


@dataclass(frozen=True)
class FamilyParams:
    """Parameters ``(family, q, m, k)`` of one family member.

    Raises:
        ValueError: If the triple lies outside the family's range.
    """

    family: int
    q: int
    m: int
    k: int

    def __post_init__(self):
        if self.family not in (1, 2, 3, 4):
            raise ValueError(f"family must be 1..4, got {self.family}")
        if self.q < _MIN_Q[self.family]:
            raise ValueError(f"family {self.family} needs q >= {_MIN_Q[self.family]}")
        ms, ks = family_ranges(self.family, self.q)
        if self.m not in ms:
            raise ValueError(f"family {self.family}, q={self.q}: m={self.m} outside {ms.start}..{ms.stop - 1}")
        kr = ks(self.m)
        if self.k not in kr:
            raise ValueError(
                f"family {self.family}, q={self.q}, m={self.m}: k={self.k} outside {kr.start}..{kr.stop - 1}"
            )

    @property
    def s(self) -> int:
        return 2 if self.family in (1, 2) else 3

    @property
    def n(self) -> int:
        """Number of evaluation points."""
        return self.m * (self.q + 1 if self.family in (1, 3) else self.q - 1)

    @property
    def length(self) -> int:
        return self.n + self.s


def iter_params(family: int, q: int) -> Iterator[FamilyParams]:
    """Every in-range parameter set of a family for one ``q`` (possibly none)."""
    if q < _MIN_Q[family]:
        return
    ms, ks = family_ranges(family, q)
    for m in ms:
        for k in ks(m):
            yield FamilyParams(family, q, m, k)


def design_parameters(p: FamilyParams) -> tuple[int, int, int, bool]:
    """Classical ``(length, k, distance, is_lower_bound)`` promised for a family member."""
    length = p.length
    if p.family in (1, 2):
        return length, p.k, length - p.k, False
    return length, p.k, p.n - p.k + 2, True


@dataclass
class ConstructionTrace:
    """Intermediate scalars of a construction.

    All scalars are stored as indices in the extension field ``ext.ext``;
    base-field quantities are embedded first.
    """

    params: FamilyParams
    ext: QuadraticExtension
    values: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]

    def to_dict(self) -> dict:
        def conv(x):
            if isinstance(x, Matrix):
                return x.tolist()
            if isinstance(x, (list, tuple)):
                return [conv(y) for y in x]
            if isinstance(x, np.integer):
                return int(x)
            if isinstance(x, np.ndarray):
                return x.tolist()
            return x

        return {
            "field": self.ext.ext.to_dict(),
            "base_field": self.ext.base.to_dict(),
            "values": {k: conv(v) for k, v in self.values.items()},
        }


# ----------------------------------------------------------------------
# subset searches in GF(q)*


def find_nonzero_sum_subset(F: FieldSpec, m: int) -> list[int]:
    """``m`` distinct nonzero elements with nonzero sum.

    Takes the ``m`` smallest nonzero indices; if they sum to zero the last
    one is replaced by the next index, which changes the sum by a nonzero
    amount.
    """
    if not 2 <= m <= F.q - 2:
        raise ValueError(f"m={m} outside 2..{F.q - 2}")
    chosen = list(range(1, m + 1))
    if F.sum(np.asarray(chosen)) == 0:
        chosen[-1] = m + 1
    return chosen


def find_sigma12_subset(F: FieldSpec, m: int) -> list[int]:
    """``m`` distinct nonzero elements whose ``sigma1`` and ``sigma2`` are both nonzero.

    Starts from ``{z, z^2}`` for the field's primitive element ``z`` and adds
    one element at a time.  Adding ``x`` turns ``(sigma1, sigma2)`` into
    ``(sigma1 - x, sigma2 - x sigma1)``, so at most two values are excluded
    per step; the smallest admissible index is taken.
    """
    if F.q < 5 or not 2 <= m <= F.q - 3:
        raise ValueError(f"need q >= 5 and 2 <= m <= q - 3, got q={F.q}, m={m}")
    z = F.primitive
    chosen = [z, F.mul(z, z)]
    pair = symmetric_pair(F, chosen)
    s1, s2 = pair.sigma1, pair.sigma2
    while len(chosen) < m:
        for x in range(1, F.q):
            if x in chosen:
                continue
            n1 = F.sub(s1, x)
            n2 = F.sub(s2, F.mul(x, s1))
            if n1 and n2:
                chosen.append(x)
                s1, s2 = n1, n2
                break
        else:  # pragma: no cover - excluded by the counting argument
            raise ConstructionError("no admissible extension of the subset")
    return chosen


def _diff_products(F: FieldSpec, cs: list[int]) -> list[int]:
    out = []
    for j, c in enumerate(cs):
        d = 1
        for l, e in enumerate(cs):
            if l != j:
                d = F.mul(d, F.sub(c, e))
        out.append(d)
    return out


def _ext_for(q: int, ext: QuadraticExtension | None) -> QuadraticExtension:
    ext = ext or quadratic_extension(q)
    if ext.q != q:
        raise ValueError(f"extension has base order {ext.q}, expected {q}")
    return ext


def _lex_units(F: FieldSpec, m: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(1, F.q), repeat=m)


# ----------------------------------------------------------------------
# s = 2 families


def construct_family1(params: FamilyParams, ext: QuadraticExtension | None = None):
    """Points on ``m`` norm cosets ``beta_j U_{q+1}``; length ``m(q+1) + 2``.

    Returns:
        ``(GrlSpec, ConstructionTrace)``.

    Raises:
        ConstructionError: If no index ``j0`` with ``sigma + N(theta_j0) != 0``
            exists.
    """
    if params.family != 1:
        raise ValueError("params are not for family 1")
    q, m, k = params.q, params.m, params.k
    ext = _ext_for(q, ext)
    F, E = ext.base, ext.ext
    cs = find_nonzero_sum_subset(F, m)
    sigma = F.sum(np.asarray(cs))
    D = _diff_products(F, cs)
    betas = [ext.solve_norm_equation(c) for c in cs]
    U = np.asarray(ext.unity_subgroup(), dtype=np.int64)
    alpha, v = [], []
    for c, Dj, b in zip(cs, D, betas):
        alpha.extend(E.mul(b, U).tolist())
        nv = F.div(F.pow(c, m - k + 1), Dj)
        v.extend([ext.solve_norm_equation(nv)] * len(U))
    xi = ext.xi
    geo = E.sum(np.asarray([E.pow(xi, i) for i in range(k - 1)]))  # 1 + xi + ... + xi^(k-2)
    thetas = [E.mul(b, geo) for b in betas]
    j0 = None
    for j, t in enumerate(thetas):
        if F.add(sigma, ext.norm(t)) != 0:
            j0 = j
            break
    if j0 is None:
        raise ConstructionError(f"no j0 with sigma + N(theta_j) != 0 for {params}")
    theta = thetas[j0]
    denom = F.add(sigma, ext.norm(theta))
    rho = F.neg(F.div(sigma, denom))
    d_norm = F.neg(F.div(F.mul(sigma, sigma), denom))
    a = ext.solve_norm_equation(rho)
    d = ext.solve_norm_equation(d_norm)
    rho_e = int(ext.embed(rho))
    top_right = E.neg(E.mul(rho_e, ext.conj(E.div(theta, d))))
    A = Matrix(E, [[a, top_right], [E.mul(theta, a), d]])
    spec = GrlSpec(E, alpha, v, A, k).validate()
    emb = lambda x: int(ext.embed(x))  # noqa: E731
    trace = ConstructionTrace(params, ext, {
        "c": [emb(c) for c in cs],
        "D": [emb(x) for x in D],
        "sigma": emb(sigma),
        "beta": betas,
        "xi": xi,
        "theta": thetas,
        "j0": j0 + 1,
        "theta_j0": theta,
        "rho": rho_e,
        "d_norm": emb(d_norm),
        "a": a,
        "d": d,
        "A": A,
    })
    return spec, trace


def _coset_points(ext: QuadraticExtension, m: int):
    E = ext.ext
    reps = ext.coset_representatives()[:m]
    units = np.asarray(ext.base_units(), dtype=np.int64)
    return reps, units


def _f_map(ext: QuadraticExtension, mu: int, y: int) -> int:
    E = ext.ext
    t = E.mul(mu, y)
    return E.add(t, ext.conj(t))


def _family2_block(ext: QuadraticExtension, mu: int, reps: list[int]):
    """The 2 x 2 block with ``A conj(A)^T = [[0, mu], [conj(mu), 0]]``."""
    E = ext.ext
    j0 = None
    for j, w in enumerate(reps):
        if _f_map(ext, mu, w) != 0:
            j0 = j
            break
    if j0 is None:
        raise ConstructionError("f vanishes on every coset representative")
    theta = reps[j0]
    tau = _f_map(ext, mu, theta)
    rho = E.div(ext.norm_ext(mu), tau)
    a = ext.solve_norm_equation(rho, in_ext=True)
    d = ext.solve_norm_equation(E.neg(E.mul(rho, ext.norm_ext(theta))), in_ext=True)
    off = E.div(E.sub(mu, E.mul(rho, ext.conj(theta))), ext.conj(d))
    return j0, theta, tau, rho, a, d, off


def construct_family2(params: FamilyParams, ext: QuadraticExtension | None = None):
    """Points on ``m`` cosets ``omega_j GF(q)*``; length ``m(q-1) + 2``.

    Returns:
        ``(GrlSpec, ConstructionTrace)``.
    """
    if params.family != 2:
        raise ValueError("params are not for family 2")
    q, m, k = params.q, params.m, params.k
    ext = _ext_for(q, ext)
    F, E = ext.base, ext.ext
    reps, units = _coset_points(ext, m)
    e_mu = k - 2 + q * (k - 1)
    wpow = E.pow(np.asarray(reps, dtype=np.int64), e_mu)
    for u in _lex_units(F, m):
        mu = E.sum(E.mul(ext.embed(np.asarray(u)), wpow))
        if mu:
            break
    else:  # pragma: no cover - all-ones or a single change always works
        raise ConstructionError("no u with mu != 0")
    Ex = q - 2 * k + 2
    lo, hi = Ex, (k - 3) + (k - 1) + Ex
    if not (1 <= lo and hi <= q - 2):
        raise ConstructionError(f"exponent range {lo}..{hi} leaves 1..{q - 2}")
    alpha, v = [], []
    for w, uj in zip(reps, u):
        for x in range(1, q):
            alpha.append(E.mul(w, int(ext.embed(x))))
            v.append(ext.solve_norm_equation(F.mul(uj, F.pow(x, Ex))))
    j0, theta, tau, rho, a, d, off = _family2_block(ext, mu, reps)
    A = Matrix(E, [[a, off], [E.mul(theta, a), d]])
    spec = GrlSpec(E, alpha, v, A, k).validate()
    trace = ConstructionTrace(params, ext, {
        "omega": reps,
        "u": [int(ext.embed(x)) for x in u],
        "mu": mu,
        "E": Ex,
        "j0": j0 + 1,
        "theta": theta,
        "tau": tau,
        "rho": rho,
        "a": a,
        "d": d,
        "A": A,
    })
    return spec, trace


# ----------------------------------------------------------------------
# s = 3 families


def construct_family3(params: FamilyParams, ext: QuadraticExtension | None = None):
    """Norm cosets with a diagonal 3 x 3 block; length ``m(q+1) + 3``.

    The norm values ``c_j`` form the complement in GF(q)* of a subset from
    :func:`find_sigma12_subset`, which makes ``Sigma`` and ``Lambda`` nonzero.

    Returns:
        ``(GrlSpec, ConstructionTrace)``.
    """
    if params.family != 3:
        raise ValueError("params are not for family 3")
    q, m, k = params.q, params.m, params.k
    ext = _ext_for(q, ext)
    F, E = ext.base, ext.ext
    comp = find_sigma12_subset(F, q - 1 - m)
    cs = [x for x in range(1, q) if x not in set(comp)]
    D = _diff_products(F, cs)
    Sigma = F.sum(np.asarray(cs))
    Lam = 0
    for c, Dj in zip(cs, D):
        Lam = F.add(Lam, F.div(F.pow(c, m + 1), Dj))
    pair = symmetric_pair(F, cs)
    Lam_sym = F.sub(F.mul(pair.sigma1, pair.sigma1), pair.sigma2)
    if Lam != Lam_sym:
        raise ConstructionError("Lambda disagrees with sigma1^2 - sigma2")  # pragma: no cover
    if Sigma == 0 or Lam == 0:
        raise ConstructionError("Sigma or Lambda vanishes")  # pragma: no cover
    betas = [ext.solve_norm_equation(c) for c in cs]
    U = np.asarray(ext.unity_subgroup(), dtype=np.int64)
    alpha, v = [], []
    for c, Dj, b in zip(cs, D, betas):
        alpha.extend(E.mul(b, U).tolist())
        v.extend([ext.solve_norm_equation(F.div(F.pow(c, m - k + 2), Dj))] * len(U))
    a = ext.solve_norm_equation(F.neg(1))
    b = ext.solve_norm_equation(F.neg(Sigma))
    c = ext.solve_norm_equation(F.neg(Lam))
    A = Matrix(E, [[a, 0, 0], [0, b, 0], [0, 0, c]])
    spec = GrlSpec(E, alpha, v, A, k).validate()
    emb = lambda x: int(ext.embed(x))  # noqa: E731
    trace = ConstructionTrace(params, ext, {
        "complement": [emb(x) for x in comp],
        "c": [emb(x) for x in cs],
        "D": [emb(x) for x in D],
        "Sigma": emb(Sigma),
        "Lambda": emb(Lam),
        "beta": betas,
        "a": a,
        "b": b,
        "c_entry": c,
        "A": A,
    })
    return spec, trace


def construct_family4(params: FamilyParams, ext: QuadraticExtension | None = None):
    """Cosets of GF(q)* with a 3 x 3 block; length ``m(q-1) + 3``.

    The target Gram matrix of the block is
    ``[[0, 0, mu], [0, varpi, 0], [conj(mu), 0, 0]]``.  An anti-diagonal
    block only produces diagonal Gram matrices, so the block couples the
    first and last coordinates like the family-2 block and puts ``b`` with
    ``N(b) = varpi`` in the middle.

    Returns:
        ``(GrlSpec, ConstructionTrace)``.

    Raises:
        ConstructionError: If no ``u`` makes both ``mu`` and ``varpi`` nonzero.
    """
    if params.family != 4:
        raise ValueError("params are not for family 4")
    q, m, k = params.q, params.m, params.k
    ext = _ext_for(q, ext)
    F, E = ext.base, ext.ext
    reps, _ = _coset_points(ext, m)
    rr = np.asarray(reps, dtype=np.int64)
    p_mu = E.pow(rr, k - 3 + q * (k - 1))
    p_varpi = E.pow(rr, (k - 2) * (q + 1))
    for u in _lex_units(F, m):
        ue = ext.embed(np.asarray(u))
        mu = E.sum(E.mul(ue, p_mu))
        varpi = E.sum(E.mul(ue, p_varpi))
        if mu and varpi:
            break
    else:
        raise ConstructionError(f"no u with mu != 0 and varpi != 0 for {params}")
    Ex = q - 2 * k + 3
    lo, hi = Ex, (k - 4) + (k - 1) + Ex
    if not (1 <= lo and hi <= q - 2):
        raise ConstructionError(f"exponent range {lo}..{hi} leaves 1..{q - 2}")
    alpha, v = [], []
    for w, uj in zip(reps, u):
        for x in range(1, q):
            alpha.append(E.mul(w, int(ext.embed(x))))
            v.append(ext.solve_norm_equation(F.mul(uj, F.pow(x, Ex))))
    j0, theta, tau, rho, a, d, off = _family2_block(ext, mu, reps)
    b = ext.solve_norm_equation(varpi, in_ext=True)
    A = Matrix(E, [[a, 0, off], [0, b, 0], [E.mul(theta, a), 0, d]])
    spec = GrlSpec(E, alpha, v, A, k).validate()
    trace = ConstructionTrace(params, ext, {
        "omega": reps,
        "u": [int(ext.embed(x)) for x in u],
        "mu": mu,
        "varpi": varpi,
        "E": Ex,
        "j0": j0 + 1,
        "theta": theta,
        "tau": tau,
        "rho": rho,
        "a": a,
        "b": b,
        "d": d,
        "A": A,
    })
    return spec, trace


_CONSTRUCTORS = {
    1: construct_family1,
    2: construct_family2,
    3: construct_family3,
    4: construct_family4,
}


def construct(params: FamilyParams, ext: QuadraticExtension | None = None):
    """Dispatch to the constructor of ``params.family``."""
    return _CONSTRUCTORS[params.family](params, ext)


# Earlier Hermitian self-orthogonal NMDS constructions, listed for comparison.
KNOWN_NMDS_SO_CONSTRUCTIONS = [
    {"field": "F_9", "parameters": ["[10,5,5]", "[12,6,6]"], "method": "computer search"},
    {"field": "F_25", "parameters": ["[10,5,5]", "[12,6,6]", "[14,7,7]"], "method": "computer search"},
    {"field": "F_121", "parameters": ["[6,3,3]", "[8,4,4]", "[10,5,5]"], "method": "computer search"},
    {"field": "F_{q^2}", "parameters": ["[2k,k,k]"], "method": "(+)-GTRS codes, 2 <= 2k <= q"},
    {"field": "F_{q^2}", "parameters": ["[2k,k,k]"], "method": "(+)-TGRS and (*)-TGRS codes, 2 <= 2k <= q"},
    {"field": "F_{q^2}", "parameters": ["[m(q+1)+2,k,m(q+1)+2-k]"],
     "method": "family 1: q >= 4, 2 <= m <= q-2, 3 <= k <= m+1"},
    {"field": "F_{q^2}", "parameters": ["[m(q-1)+2,k,m(q-1)+2-k]"],
     "method": "family 2: q >= 5, 2 <= m <= q+1, 3 <= k <= (q+1)/2"},
]
