"""Six reference GRL instances with their expected properties.

Each instance fixes the field presentation, the evaluation points, the
column multipliers and the extra block exactly as published, so results
can be compared element by element.  :func:`check_example` recomputes
every stated property and reports one result per check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .code import (
    InfeasibleError,
    LinearCode,
    classify,
    hermitian_gram,
    is_hermitian_self_orthogonal,
    min_distance_exact,
    sample_subset_ranks,
)
from .families import FamilyParams, construct_family1
from .field import (
    QuadraticExtension,
    make_field,
    minimal_polynomial,
    quadratic_extension,
)
from .grl import (
    GrlSpec,
    build_grl_generator,
    gamma_set,
    hermitian_sums,
    nmds_criterion_s2,
    nmds_criterion_s3,
    omega_set,
    so_criterion_s2,
    so_criterion_s3,
)
from .linalg import Matrix, conj_transpose, mat_mul
from .quantum import css_from_hermitian_so, singleton_defect_q

__all__ = [
    "WorkedExample",
    "CheckResult",
    "example",
    "all_examples",
    "check_example",
    "tower_gf81",
    "certified_nmds_classification",
]


@dataclass
class WorkedExample:
    number: int
    spec: GrlSpec
    ext: QuadraticExtension
    expected: dict = field(default_factory=dict)

    @property
    def code(self) -> LinearCode:
        return build_grl_generator(self.spec)

    def summary(self) -> str:
        e = self.expected
        return f"[{e['n']},{e['k']},{e['d']}]_{self.spec.spec.q}"


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _e(ext: QuadraticExtension, a: int, b: int) -> int:
    """The element ``a + b*w`` of a degree-2 extension of a prime field."""
    return ext.ext.from_coeffs([a % ext.ext.p, b % ext.ext.p])


# ----------------------------------------------------------------------
# the degree-4 tower used by the sixth instance


@lru_cache(maxsize=None)
def tower_gf81() -> tuple[QuadraticExtension, int, int, int]:
    """GF(81) presented so that ``g = a + w`` is the polynomial variable.

    Here ``a^2 = -1`` generates GF(9) and ``w^2 = a + 1``.  The minimal
    polynomial of ``g`` over GF(3) does not depend on which square roots
    are picked, since all choices are Galois conjugate.

    Returns:
        ``(ext, g, a, w)`` with ``ext`` the GF(81)/GF(9) pair whose
        embedding sends the GF(9) generator to ``a``.
    """
    F0 = make_field(3, 4)
    a0 = next(z for z in range(F0.q) if F0.add(F0.mul(z, z), 1) == 0)
    w0 = next(z for z in range(F0.q) if F0.mul(z, z) == F0.add(a0, 1))
    P = minimal_polynomial(F0, F0.add(a0, w0))
    if len(P) != 5:
        raise RuntimeError("a + w does not generate GF(81)")
    F = make_field(3, 4, P)
    g = F.from_coeffs([0, 1])
    a = next(
        z for z in range(F.q)
        if F.add(F.mul(z, z), 1) == 0
        and F.mul(F.sub(g, z), F.sub(g, z)) == F.add(z, 1)
    )
    w = F.sub(g, a)
    ext = quadratic_extension(9, ext_modulus=P, embed_image=a)
    return ext, g, a, w


# ----------------------------------------------------------------------
# instances


def _example1() -> WorkedExample:
    ext = quadratic_extension(3)  # GF(9) = GF(3)(w), w^2 = -1
    E = ext.ext
    e = lambda a, b: _e(ext, a, b)  # noqa: E731
    w = e(0, 1)
    alpha = [w, e(0, 2), e(1, 0), e(2, 1), e(2, 2)]
    A = Matrix(E, [[1, 1], [w, 2]])
    spec = GrlSpec(E, alpha, [1] * 5, A, 2)
    return WorkedExample(1, spec, ext, {"n": 7, "k": 2, "d": 5, "label": "NMDS", "sigma": w})


def _example2() -> WorkedExample:
    ext = quadratic_extension(3)
    E = ext.ext
    e = lambda a, b: _e(ext, a, b)  # noqa: E731
    w = e(0, 1)
    alpha = [w, e(0, 2), e(1, 0), e(2, 1), e(2, 2)]
    v = [1, 1, e(1, 1), 1, 1]
    A = Matrix(E, [[0, w], [e(1, 1), e(0, 2)]])
    spec = GrlSpec(E, alpha, v, A, 3)
    return WorkedExample(2, spec, ext, {
        "n": 7, "k": 3, "d": 4, "label": "NMDS", "hso": True,
        "gram_A": [[1, 2], [2, 0]],
        "sums": {0: 0, 3: 0, 6: 0, 4: 2, 7: 1, 8: 0},
        "norm_v": [1, 1, 2, 1, 1],
    })


def _example3() -> WorkedExample:
    ext = quadratic_extension(3)
    E = ext.ext
    e = lambda a, b: _e(ext, a, b)  # noqa: E731
    alpha = [e(0, 1), e(1, 2), e(2, 0)]
    v = [1, e(1, 1), e(0, 1)]
    A = Matrix(E, [
        [e(2, 1), e(1, 1), 1],
        [e(2, 2), e(1, 2), e(2, 1)],
        [e(0, 2), 0, 1],
    ])
    spec = GrlSpec(E, alpha, v, A, 3)
    return WorkedExample(3, spec, ext, {
        "n": 6, "k": 3, "d": 3, "label": "NMDS", "hso": True,
        "gram_A": [
            [2, e(2, 2), e(0, 2)],
            [e(2, 1), 0, 0],
            [e(0, 1), 0, 2],
        ],
        "sums": {0: 1, 3: e(1, 1), 6: e(0, 1), 4: 0, 7: 0, 8: 1},
        "omega1": [[1, e(0, 1), 2], [1, e(1, 2), e(0, 1)], [1, 2, 1]],
        "gamma2": [[e(1, 1), 2, 1], [e(0, 2), e(1, 2), 1], [e(2, 1), e(0, 1), 1]],
    })


def _example4() -> WorkedExample:
    ext = quadratic_extension(5)  # GF(25) = GF(5)(w), w^2 + 2 = 0
    E = ext.ext
    e = lambda a, b: _e(ext, a, b)  # noqa: E731
    pts = [
        (1, 0), (2, 1), (2, -1), (3, 1), (3, -1), (4, 0),
        (0, 1), (3, 2), (2, 2), (3, 3), (2, 3), (0, 4),
        (0, 2), (1, -1), (4, -1), (1, 1), (4, 1), (0, 3),
    ]
    alpha = [e(a, b) for a, b in pts]
    v = [e(0, 2)] * 6 + [e(1, 2)] * 6 + [e(0, 2)] * 6
    A = Matrix(E, [[1, e(4, 1)], [e(1, 1), 1]])
    spec = GrlSpec(E, alpha, v, A, 4)
    unity = {e(1, 0), e(2, 1), e(2, -1), e(3, 1), e(3, -1), e(4, 0)}
    return WorkedExample(4, spec, ext, {
        "n": 20, "k": 4, "d": 16, "label": "NMDS", "hso": True,
        "unity_subgroup": unity,
        "cosets": [1, e(0, 1), e(0, 2)],
    })


def _example5() -> WorkedExample:
    ext = quadratic_extension(5)  # z^2 + 2 = 0
    E = ext.ext
    e = lambda a, b: _e(ext, a, b)  # noqa: E731
    z = e(0, 1)
    alpha = [1, 2, 3, 4, z, e(0, 2), e(0, 3), e(0, 4)]
    v = [1, z, e(1, 1), 2, 1, z, e(1, 1), 2]
    A = Matrix(E, [[z, e(1, 4)], [z, e(1, 1)]])
    spec = GrlSpec(E, alpha, v, A, 3)
    return WorkedExample(5, spec, ext, {
        "n": 10, "k": 3, "d": 7, "label": "NMDS", "hso": True,
        "mu": e(1, 3),
    })


def _example6() -> WorkedExample:
    ext, g, a, _ = tower_gf81()
    E, B = ext.ext, ext.base
    gp = lambda t: E.pow(g, t)  # noqa: E731
    xi = gp(8)
    U = np.asarray([E.pow(xi, i) for i in range(10)], dtype=np.int64)
    betas = [gp(j) for j in range(6)]
    alpha = np.concatenate([E.mul(b, U) for b in betas]).tolist()
    u = [gp(4), gp(2), gp(7), gp(2), gp(3), gp(3)]
    v = [x for x in u for _ in range(10)]
    A = Matrix(E, [[gp(5), gp(30)], [gp(31), gp(6)]])
    spec = GrlSpec(E, alpha, v, A, 6)
    # c_j in GF(9) = GF(3)(a): 1, 1+2a, a, 1+a, 2, 2+a
    c_base = [B.from_coeffs(cf) for cf in ([1, 0], [1, 2], [0, 1], [1, 1], [2, 0], [2, 1])]
    return WorkedExample(6, spec, ext, {
        "n": 62, "k": 6, "d": 56, "d_dual": 6, "label": "NMDS", "hso": True,
        "c": [int(ext.embed(c)) for c in c_base],
        "quantum": (62, 50, 6),
        "quantum_defect": 1,
        "g": g,
    })


_BUILDERS: dict[int, Callable[[], WorkedExample]] = {
    1: _example1, 2: _example2, 3: _example3, 4: _example4, 5: _example5, 6: _example6,
}


def example(number: int) -> WorkedExample:
    """The reference instance with the given number (1..6)."""
    try:
        return _BUILDERS[number]()
    except KeyError:
        raise ValueError(f"no worked example {number}") from None


def all_examples() -> list[WorkedExample]:
    return [example(i) for i in sorted(_BUILDERS)]


# ----------------------------------------------------------------------
# checks


def certified_nmds_classification(spec: GrlSpec):
    """Classification implied by a positive NMDS criterion, or ``None``.

    A GRL code of length ``N`` that passes the criterion is NMDS, so
    ``d = N - k`` and the dual distance is ``k``.
    """
    crit = nmds_criterion_s2 if spec.s == 2 else nmds_criterion_s3
    res = crit(spec)
    if not res.holds:
        return None, res
    C = build_grl_generator(spec)
    return classify(C, d=C.n - C.k, d_dual=C.k), res


def _chk(out, name, ok, detail=""):
    out.append(CheckResult(name, bool(ok), detail))


def check_example(ex: WorkedExample, *, budget: int | None = None,
                  samples: int = 100_000, seed: int = 0) -> list[CheckResult]:
    """Recompute every stated property of ``ex``."""
    out: list[CheckResult] = []
    spec, ext, exp = ex.spec, ex.ext, ex.expected
    C = build_grl_generator(spec)
    _chk(out, "shape", (C.n, C.k) == (exp["n"], exp["k"]), f"[{C.n},{C.k}]")
    if exp.get("hso"):
        _chk(out, "hermitian_so", is_hermitian_self_orthogonal(C, ext))
        so = (so_criterion_s2 if spec.s == 2 else so_criterion_s3)(spec, ext)
        _chk(out, "so_criterion", so.holds)
    if "gram_A" in exp:
        got = mat_mul(spec.A, conj_transpose(spec.A, ext)).tolist()
        _chk(out, "A_conjA_T", got == exp["gram_A"], str(got))
    if "sums" in exp:
        S = hermitian_sums(ext, spec.alpha, spec.v, exp["sums"])
        _chk(out, "power_sums", S.table == exp["sums"], str(S.table))
    if "norm_v" in exp:
        got = [int(x) for x in ext.norm(np.asarray(spec.v))]
        _chk(out, "norm_v", got == exp["norm_v"], str(got))
    if "omega1" in exp:
        om = sorted(map(list, np.asarray(omega_set(spec.spec, spec.alpha, 1)).tolist()))
        ga = sorted(map(list, np.asarray(gamma_set(spec.spec, spec.alpha, 2)).tolist()))
        _chk(out, "omega_set", om == sorted(exp["omega1"]), str(om))
        _chk(out, "gamma_set", ga == sorted(exp["gamma2"]), str(ga))
    if "unity_subgroup" in exp:
        _chk(out, "unity_subgroup", set(ext.unity_subgroup()) == exp["unity_subgroup"])
        E = ext.ext
        U = np.asarray(ext.unity_subgroup())
        union = set()
        for c in exp["cosets"]:
            union |= set(E.mul(c, U).tolist())
        _chk(out, "coset_union", union == set(spec.alpha))
    if "c" in exp:
        E = ext.ext
        U = np.asarray(ext.unity_subgroup())
        got = [int(ext.norm_ext(spec.alpha[10 * j])) for j in range(6)]
        _chk(out, "coset_norms", got == exp["c"], str(got))
        g = exp["g"]
        _chk(out, "primitive_g", E.order(g) == E.q - 1)
        c = exp["c"]
        ok = True
        for j in range(6):
            D = 1
            for l in range(6):
                if l != j:
                    D = E.mul(D, E.sub(c[j], c[l]))
            ok &= E.pow(spec.v[10 * j], 10) == E.div(c[j], D)
        _chk(out, "multiplier_norms", ok)
        Sigma = 0
        for cj in c:
            Sigma = E.add(Sigma, cj)
        _chk(out, "coset_norm_sum", Sigma == E.pow(g, 10))
        xi = E.pow(g, 8)
        theta = E.div(E.sub(1, E.pow(xi, 5)), E.sub(1, xi))
        _chk(out, "theta", theta == E.pow(g, 26))
        rho = E.neg(E.div(Sigma, E.add(Sigma, E.pow(theta, 10))))
        _chk(out, "rho", rho == E.pow(g, 50))
    crit = nmds_criterion_s2 if spec.s == 2 else nmds_criterion_s3
    res = crit(spec)
    if "label" in exp:
        _chk(out, "nmds_criterion", res.holds == (exp["label"] == "NMDS"), str(res.witness))
    if "sigma" in exp:
        _chk(out, "criterion_witness", res.witness.get("sigma") == exp["sigma"])
    if ex.number == 6:
        cls, _ = certified_nmds_classification(spec)
        _chk(out, "certified_distance", cls is not None and (cls.d, cls.d_dual) == (exp["d"], exp["d_dual"]))
        rng = np.random.default_rng(seed)
        ranks = sample_subset_ranks(C, C.k - 1, samples, rng)
        _chk(out, "sampled_k-1_subsets_full_rank", bool(np.all(ranks == C.k - 1)),
             f"{ranks.size} subsets")
        gram = hermitian_gram(C, ext)
        _chk(out, "gram_entries_zero", gram.shape == (6, 6) and gram.is_zero())
        Q = css_from_hermitian_so(C, d_dual=cls.d_dual if cls else None,
                                  d_dual_evidence="certified", d=cls.d if cls else None, ext=ext)
        _chk(out, "quantum", (Q.n, Q.kq, Q.d) == exp["quantum"], str(Q))
        _chk(out, "quantum_defect", singleton_defect_q(Q).defect == exp["quantum_defect"])
        sp, tr = construct_family1(FamilyParams(1, 9, 6, 6))
        C2 = build_grl_generator(sp)
        cls2, res2 = certified_nmds_classification(sp)
        _chk(out, "family1_9_6_6", is_hermitian_self_orthogonal(C2) and cls2 is not None
             and (C2.n, C2.k, cls2.d, cls2.d_dual) == (62, 6, 56, 6))
        return out
    try:
        cls = classify(C, budget)
        _chk(out, "distance", cls.d == exp["d"], f"d={cls.d}")
        if "label" in exp:
            _chk(out, "label", cls.label == exp["label"], cls.label)
    except InfeasibleError as exc:
        _chk(out, "distance", False, f"infeasible: {exc}")
    if "mu" in exp:
        E = ext.ext
        q = ext.base.q
        k = spec.k
        # mu = w1^(q(k-1)+k-2) + w2^(...) with w1 = 1, w2 = z
        t = q * (k - 1) + k - 2
        mu = E.add(E.pow(1, t), E.pow(_e(ext, 0, 1), t))
        _chk(out, "mu", mu == exp["mu"], str(mu))
    if "quantum" in exp:
        Q = css_from_hermitian_so(C, ext=ext, budget=budget)
        _chk(out, "quantum", (Q.n, Q.kq, Q.d) == exp["quantum"], str(Q))
    return out
