import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ultracoalg import SpaceMismatch
from ultracoalg.linalg import (
    Op,
    TruncatedSpace,
    Vec,
    compactness_margin,
    compose,
    dual_op,
    echelon,
    flip,
    image,
    in_span,
    kernel_subspace,
    permute_op,
    rank,
    restrict_op,
    scalar_space,
    tensor_margin,
    tensor_op,
    tensor_space,
    tensor_spaces,
)
from ultracoalg.linalg import backend

P = 5
entries = st.sampled_from([0, 1, -1, 2, 5, -5, 25, 7, 125, 13])


def space(n, exps=None):
    return TruncatedSpace(P, range(n), exps)


def op(A, prec=30):
    return Op.from_matrix(space(len(A[0])), space(len(A)), A, prec)


@settings(max_examples=150)
@given(st.integers(1, 6).flatmap(lambda c: st.lists(st.lists(entries, min_size=c, max_size=c),
                                                     min_size=1, max_size=6)))
def test_kernel_matches_rational_oracle(A):
    K = kernel_subspace(op(A), 20)
    want = oracles.rational_kernel(A)
    assert K.dim == len(want)
    for v in want:
        w = Vec.from_ints(K.space, {i: x for i, x in enumerate(oracles.primitive(v, P)) if x}, 40)
        assert K.contains(w, 20)


def test_kernel_is_canonical():
    A = [[1, 5, 0, 2], [0, 0, 5, 10]]
    a = kernel_subspace(op(A), 20)
    b = kernel_subspace(op([[2, 10, 0, 4], [1, 5, 5, 12]]), 20)
    assert a.leads == b.leads
    assert all(x.agrees(y, 20) for x, y in zip(a.basis, b.basis))


def test_rank_nullity():
    A = [[1, 2, 3], [2, 4, 6], [0, 5, 25]]
    T = op(A)
    assert rank(T) + kernel_subspace(T).dim == 3
    assert image(T).dim == rank(T)


def test_tensor_labels_and_unit():
    V, W = space(2), space(3)
    VW = tensor_space(V, W)
    assert VW.rank == 6 and VW.arity == 2
    K = scalar_space(P)
    assert tensor_space(K, V) == V and tensor_space(V, K) == V
    assert tensor_spaces(V, W, V).arity == 3


def test_dual_negates_weights_and_transposes():
    V = space(3, [0, 1, 2])
    assert V.weight(2) == 25 and V.dual().weight(2) == Fraction(1, 25)
    T = Op.from_matrix(V, V, [[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    assert dual_op(dual_op(T)) == T
    assert dual_op(T).entry(0, 1) == T.entry(1, 0)


def test_compose_and_tensor_interchange():
    A, B = op([[1, 2], [3, 4]]), op([[0, 1], [1, 5]])
    lhs = tensor_op(compose(A, B), compose(B, A))
    rhs = compose(tensor_op(A, B), tensor_op(B, A))
    assert (lhs - rhs).norm() == 0


def test_flip_is_involution():
    V, W = space(2), space(3)
    t = compose(flip(W, V), flip(V, W))
    assert (t - Op.identity(tensor_space(V, W))).norm() == 0
    perm = permute_op([V, W, V], [2, 0, 1])
    assert perm.codomain == tensor_spaces(V, V, W)


def test_space_mismatch():
    with pytest.raises(SpaceMismatch):
        compose(op([[1, 2]]), op([[1, 2]]))


def test_echelon_span_queries():
    V = space(3)
    a = Vec.from_ints(V, {0: 1, 1: 5})
    b = Vec.from_ints(V, {2: 1})
    assert in_span(Vec.from_ints(V, {0: 2, 1: 10, 2: 3}), [a, b])
    assert not in_span(Vec.from_ints(V, {1: 1}), [a, b])
    S = echelon([a, b, a + b])
    assert S.dim == 2 and S.quotient_space().rank == 1


def test_restrict_op_reports_leak():
    V = space(2)
    U = echelon([Vec.basis(V, 0)], space=V)
    T = Op.from_matrix(V, V, [[1, 0], [1, 1]])
    _, leak = restrict_op(T, U, U)
    assert leak == 1
    _, leak = restrict_op(Op.identity(V), U, U)
    assert leak == 0


def test_compactness_margin_weighted_shift():
    # identity from weights p^-k onto weights p^-2k shrinks in the ratio
    V, W = space(4, [0, -1, -2, -3]), space(4, [0, -2, -4, -6])
    m = compactness_margin(Op(V, W, {k: Vec.basis(W, k) for k in range(4)}))
    assert m.compact_at_truncation and m.decay_index == 1
    iso = compactness_margin(Op.identity(V))
    assert not iso.compact_at_truncation and iso.decay_index is None


def test_tensor_margin_agrees_with_direct_computation():
    V, W = space(3, [0, -1, -2]), space(3, [0, -2, -4])
    T = Op(V, W, {k: Vec.basis(W, k) for k in range(3)})
    m = compactness_margin(T)
    mm = tensor_margin(m, m)
    direct = compactness_margin(tensor_op(T, T))
    assert mm.compact_at_truncation
    assert sorted(mm.ratios) == sorted(direct.ratios)
    # every label at or past the certified index is below the threshold
    lex = tensor_op(T, T).column_ratios()
    assert all(r <= mm.threshold for r in lex[mm.decay_index:])


@pytest.mark.skipif(backend._compiled is None, reason="compiled kernel not built")
def test_backends_agree():
    rng = random.Random(3)
    for _ in range(30):
        r, c = rng.randint(6, 12), rng.randint(6, 12)
        A = [[rng.choice([0, 1, 5, 25, rng.randint(-50, 50)]) for _ in range(c)] for _ in range(r)]
        T = op(A)
        a = kernel_subspace(T, 10, engine="python")
        b = kernel_subspace(T, 10, engine="cython")
        assert a.leads == b.leads
        assert all(x.agrees(y, 10) for x, y in zip(a.basis, b.basis))


def test_backend_selection():
    assert backend.BACKEND in ("cython", "python")
    assert backend.fits_word(5, 20) and not backend.fits_word(5, 40)
