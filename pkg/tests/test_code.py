from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grlcodes.code import (
    InfeasibleError,
    LinearCode,
    classify,
    code_report,
    column_conditions,
    default_budget,
    dual,
    dual_distance,
    hermitian_dual,
    hermitian_gram,
    is_hermitian_self_orthogonal,
    min_distance_exact,
    min_weight_outside,
    sample_subset_ranks,
)
from grlcodes.field import make_field, quadratic_extension
from grlcodes.grl import build_grs_generator
from grlcodes.linalg import Matrix, conj_transpose, mat_mul, rank, row_space_equal
from grlcodes.worked_examples import example

from oracles import (
    PolyField,
    naive_codewords,
    naive_dual_distance,
    naive_hermitian_gram,
    naive_min_distance,
)


@st.composite
def codes(draw, fields=((2, 1), (3, 1), (5, 1), (2, 2), (3, 2)), max_n=7, max_k=3):
    p, m = draw(st.sampled_from(fields))
    F = make_field(p, m)
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, min(n, max_k)))
    for _ in range(50):
        data = draw(st.lists(st.integers(0, F.q - 1), min_size=k * n, max_size=k * n))
        G = Matrix(F, np.array(data).reshape(k, n))
        if rank(G) == k:
            return LinearCode(G)
    return LinearCode(Matrix(F, np.eye(k, n, dtype=np.int64)))


def poly(F):
    return PolyField(F.p, F.modulus)


def grs(q, alpha, k):
    F = make_field(q, 1)
    return LinearCode(build_grs_generator(F, alpha, [1] * len(alpha), k))


# ----------------------------------------------------------------------
# construction and duals


def test_rank_deficient_generator_rejected():
    F = make_field(3, 1)
    with pytest.raises(ValueError):
        LinearCode(Matrix(F, [[1, 2], [2, 1]]))


@given(codes())
def test_double_dual_is_original(C):
    D = dual(C)
    assert D.k == C.n - C.k
    if D.k:
        assert mat_mul(C.gen, D.gen.T).is_zero()
        assert row_space_equal(dual(D).gen, C.gen)


def test_example1_dual():
    C = example(1).code
    D = dual(C)
    assert (D.n, D.k) == (7, 5)
    F = C.spec
    assert naive_dual_distance(poly(F), C.gen.tolist()) == 2
    assert min_distance_exact(D) == 2 == dual_distance(C)


def test_grs_dual_is_mds():
    C = grs(7, [1, 2, 3, 4, 5], 2)
    D = dual(C)
    assert (D.n, D.k) == (5, 3)
    assert naive_min_distance(poly(D.spec), D.gen.tolist()) == 3
    assert classify(D).label == "MDS"


def test_hermitian_dual_definition():
    X = quadratic_extension(3)
    E = X.ext
    rng = np.random.default_rng(11)
    for _ in range(20):
        G = Matrix(E, rng.integers(0, 9, (2, 5)))
        if rank(G) < 2:
            continue
        C = LinearCode(G)
        H = hermitian_dual(C, X)
        assert H.k == 3
        assert mat_mul(C.gen, conj_transpose(H.gen, X)).is_zero()
        assert min_distance_exact(H) == min_distance_exact(dual(C))


def test_hermitian_dual_of_full_space_is_zero_code():
    E = make_field(3, 2)
    H = hermitian_dual(LinearCode(Matrix.identity(E, 4)))
    assert H.k == 0 and H.n == 4


def test_hermitian_dual_requires_extension_field():
    with pytest.raises(ValueError):
        hermitian_dual(grs(7, [1, 2, 3], 2), quadratic_extension(3))


def test_example3_hermitian_and_euclidean_dual_distances_agree():
    C = example(3).code
    E = C.spec
    dh = naive_min_distance(poly(E), hermitian_dual(C).gen.tolist())
    de = naive_min_distance(poly(E), dual(C).gen.tolist())
    assert dh == de == 3


# ----------------------------------------------------------------------
# distances


def test_example_distances():
    assert min_distance_exact(example(1).code) == 5
    assert min_distance_exact(example(4).code) == 16


@pytest.mark.parametrize("n", [1, 3, 6])
def test_repetition_code(n):
    F = make_field(5, 1)
    assert min_distance_exact(LinearCode(Matrix(F, [[1] * n]))) == n


@given(codes())
def test_min_distance_matches_reverse_order_oracle(C):
    assert min_distance_exact(C) == naive_min_distance(poly(C.spec), C.gen.tolist())


@given(codes())
def test_dual_distance_matches_column_oracle(C):
    assert dual_distance(C) == naive_dual_distance(poly(C.spec), C.gen.tolist())


@given(codes(fields=((3, 2), (2, 2)), max_n=6, max_k=3))
def test_hermitian_dual_same_distance_as_dual(C):
    if C.k == C.n or C.n - C.k > 3:
        return
    O = poly(C.spec)
    assert naive_min_distance(O, hermitian_dual(C).gen.tolist()) == naive_min_distance(O, dual(C).gen.tolist())


def test_distance_independent_of_worker_count():
    C = example(4).code
    assert min_distance_exact(C, workers=1) == min_distance_exact(C, workers=3) == 16


def test_budget_exceeded_is_explicit():
    C = example(4).code
    with pytest.raises(InfeasibleError):
        min_distance_exact(C, budget=1000)


def test_budget_environment_override(monkeypatch):
    monkeypatch.setenv("GRL_BUDGET", "1e3")
    assert default_budget() == 1000
    with pytest.raises(InfeasibleError):
        min_distance_exact(example(4).code)
    monkeypatch.setenv("GRL_BUDGET", "many")
    with pytest.raises(ValueError):
        default_budget()


def test_dual_distance_of_full_space():
    F = make_field(3, 1)
    assert dual_distance(LinearCode(Matrix.identity(F, 3))) == 4


# ----------------------------------------------------------------------
# classification


def test_classify_examples():
    c1 = classify(example(1).code)
    assert (c1.n, c1.k, c1.d, c1.d_dual, c1.label) == (7, 2, 5, 2, "NMDS")
    c3 = classify(example(3).code)
    assert (c3.d, c3.s, c3.s_dual, c3.label) == (3, 1, 1, "NMDS")
    assert classify(grs(7, [1, 2, 3, 4, 5], 3)).label == "MDS"


def test_classify_labels_follow_defects():
    F = make_field(2, 1)
    # [3,1,3] repetition code is MDS; its dual [3,2,2] too
    assert classify(LinearCode(Matrix(F, [[1, 1, 1]]))).label == "MDS"
    # [4,2,2] with dual [4,2,2]: s = s_dual = 1
    assert classify(LinearCode(Matrix(F, [[1, 1, 0, 0], [0, 0, 1, 1]]))).label == "NMDS"
    # [5,2,2] with dual distance 2: s = 2
    assert classify(LinearCode(Matrix(F, [[1, 1, 0, 0, 0], [0, 0, 1, 1, 1]]))).label == "OTHER"
    # ternary [5,2,3] with a zero column: s = 1 but the dual has distance 1, s_dual = 2
    G3 = make_field(3, 1)
    c = classify(LinearCode(Matrix(G3, [[0, 1, 0, 2, 2], [0, 2, 2, 0, 2]])))
    assert (c.d, c.d_dual, c.s, c.s_dual, c.label) == (3, 1, 1, 2, "AMDS")
    assert naive_min_distance(poly(G3), [[0, 1, 0, 2, 2], [0, 2, 2, 0, 2]]) == 3


@given(codes())
def test_classification_invariants(C):
    c = classify(C)
    assert c.s >= 0 and c.s_dual >= 0
    assert c.s == C.n - C.k + 1 - c.d
    assert (c.label == "MDS") == (c.s == 0)
    assert (c.label == "NMDS") == (c.s == 1 and c.s_dual == 1)


def test_classify_with_supplied_distances_is_tagged():
    C = example(6).code
    c = classify(C, d=56, d_dual=6)
    assert c.label == "NMDS"
    assert c.d_evidence == c.d_dual_evidence == "certified-by-criterion"
    rep = code_report(C, c, True)
    assert rep["evidence"] == {"d": "certified-by-criterion", "d_dual": "certified-by-criterion"}


def test_classify_partial_when_dual_infeasible():
    C = example(6).code
    c = classify(C, budget=10, d=56)
    assert c.d_dual is None and c.label == "UNKNOWN" and c.d_dual_evidence == "unknown"


def test_code_report_keys():
    C = example(2).code
    rep = code_report(C, classify(C), True)
    assert rep == {"n": 7, "k": 3, "d": 4, "d_dual": 3, "s": 1, "s_dual": 1,
                   "label": "NMDS", "hermitian_self_orthogonal": True}


# ----------------------------------------------------------------------
# Hermitian self-orthogonality


def test_example2_is_hermitian_self_orthogonal():
    assert is_hermitian_self_orthogonal(example(2).code, example(2).ext)


def test_single_row_self_orthogonal_via_norm_two():
    X = quadratic_extension(3)
    E = X.ext
    a = next(z for z in range(9) if X.norm(z) == 2)
    C = LinearCode(Matrix(E, [[1, a]]))
    assert hermitian_gram(C, X).tolist() == [[0]]
    assert is_hermitian_self_orthogonal(C, X)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_identity_code_not_self_orthogonal(n):
    E = make_field(5, 2)
    assert not is_hermitian_self_orthogonal(LinearCode(Matrix.identity(E, n)))


@given(codes(fields=((3, 2), (2, 2), (5, 2)), max_n=6, max_k=3))
def test_gram_matches_pairwise_products_and_containment(C):
    X = quadratic_extension(C.spec.p ** (C.spec.m // 2))
    O = poly(C.spec)
    assert hermitian_gram(C, X).tolist() == naive_hermitian_gram(O, X.q, C.gen.tolist())
    contained = C.k == C.n or hermitian_dual(C, X).contains(C.gen) if C.k < C.n else False
    assert is_hermitian_self_orthogonal(C, X) == contained


def test_gram_containment_on_self_orthogonal_examples():
    for i in (2, 3, 4, 5):
        ex = example(i)
        assert hermitian_dual(ex.code, ex.ext).contains(ex.code.gen)


# ----------------------------------------------------------------------
# column conditions and sampling


def test_column_conditions_nmds_examples():
    assert column_conditions(example(1).code) == (True, True, True)
    assert column_conditions(example(3).code) == (True, True, True)
    # an MDS code has no dependent k-set
    assert column_conditions(grs(7, [1, 2, 3, 4, 5], 3)) == (True, False, True)


@given(codes(max_n=6, max_k=3))
def test_column_conditions_characterize_nmds(C):
    c = classify(C)
    assert all(column_conditions(C)) == (c.label == "NMDS")


def test_sample_subset_ranks():
    C = example(4).code
    r = sample_subset_ranks(C, 3, 2500, np.random.default_rng(0), batch=1000)
    assert r.shape == (2500,) and np.all(r == 3)


def test_min_weight_outside_matches_naive():
    ex = example(2)
    C = ex.code
    H = hermitian_dual(C, ex.ext)
    O = poly(C.spec)
    best = None
    inside = {tuple(w) for _, w in naive_codewords(O, C.gen.tolist())}
    for _, w in naive_codewords(O, H.gen.tolist()):
        if tuple(w) not in inside:
            wt = sum(1 for x in w if x)
            best = wt if best is None else min(best, wt)
    assert min_weight_outside(H, C) == best
    assert min_weight_outside(C, C) is None
