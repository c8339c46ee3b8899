from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ultracoalg import ConfigInvalid, NotACoalgebraMorphism, NotACoideal
from ultracoalg.coalg import (
    check_algebra,
    check_coalgebra,
    check_hopf,
    coalgebra_by_name,
    coalgebra_morphism_report,
    convolve,
    corrupt_antipode,
    corrupt_comult,
    direct_sum_coalgebra,
    dual_algebra,
    dual_coalgebra_membership,
    evaluate,
    evaluation_functional,
    group_algebra,
    mahler_coalgebra,
    mahler_coefficients,
    mahler_expand,
    mahler_hopf,
    mahler_reconstruct,
    matrix_coalgebra,
    quotient_by_coideal,
    require_coalgebra_morphism,
    subcoalgebra_generated,
    summand_inclusion,
    summand_projection,
    tensor_coalgebra,
)
from ultracoalg.linalg import Vec
from ultracoalg.residual import FAIL, PASS

P = 5


def test_mahler_expansion_of_product():
    coeffs = mahler_coefficients([oracles.gen_binom(x, 2) * x for x in range(5)])
    assert coeffs == [0, 0, 2, 3, 0]
    assert all(mahler_reconstruct(coeffs, x) == oracles.gen_binom(x, 2) * x for x in range(5))


@given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=10))
def test_mahler_coefficients_match_finite_differences(values):
    assert mahler_coefficients(values) == oracles.finite_differences(values)
    assert [mahler_reconstruct(mahler_coefficients(values), x) for x in range(len(values))] == values


@pytest.mark.parametrize("C", [matrix_coalgebra(2), matrix_coalgebra(4), group_algebra(3),
                               mahler_coalgebra(6), tensor_coalgebra(matrix_coalgebra(2), group_algebra(2))],
                         ids=lambda C: C.name)
def test_catalog_coalgebras_are_exact(C):
    rep = check_coalgebra(C)
    assert rep.passed
    assert all(r.value == 0 for r in rep.residuals.values())


def test_corrupted_comult_fails_with_witness():
    rep = check_coalgebra(corrupt_comult(matrix_coalgebra(2)))
    assert not rep.passed
    bad = [r for r in rep.residuals.values() if r.status == FAIL]
    assert bad and bad[0].witness is not None


def test_corrupted_antipode_fails():
    rep = check_hopf(corrupt_antipode(group_algebra(2)))
    assert rep.residuals["antipode_left"].status == FAIL


def test_mahler_hopf_tails_only_above_rank():
    rep = check_hopf(mahler_hopf(6))
    for r in rep.residuals.values():
        assert r.exact_value == 0 and r.status != FAIL


def test_dual_algebra_is_associative_and_shifts():
    C = mahler_coalgebra(6)
    A = dual_algebra(C)
    assert check_algebra(A).passed
    Cd = C.space.dual()
    e = [Vec.basis(Cd, n) for n in range(6)]
    assert (convolve(C, e[2], e[3]) - e[5]).is_zero()


@settings(max_examples=30)
@given(st.integers(-30, 30), st.integers(-30, 30))
def test_evaluations_are_grouplike_under_convolution(a, b):
    # ev_a ⋆ ev_b = ev_(a+b): Vandermonde, checked at rank 6
    C = mahler_coalgebra(6)
    lhs = convolve(C, evaluation_functional(a, 6), evaluation_functional(b, 6))
    assert (lhs - evaluation_functional(a + b, 6)).is_zero()


def test_evaluation_of_expansion():
    v = mahler_expand([x * x for x in range(6)])
    assert evaluate(evaluation_functional(4, 6), v).residue(20) == 16


def test_quotient_by_coideal():
    C = matrix_coalgebra(2)
    off = Vec.basis(C.space, C.space.labels[1])
    QC, pi, rep = quotient_by_coideal(C, [off])
    assert QC.rank == 3 and rep.passed
    with pytest.raises(NotACoideal):
        quotient_by_coideal(C, [Vec.basis(C.space, C.space.labels[0])])


def test_subcoalgebra_generated_by_top_mahler_vector():
    C = mahler_coalgebra(5)
    U = subcoalgebra_generated(C, [Vec.basis(C.space, 3)])
    assert U.dim == 4


def test_summand_maps_are_morphisms():
    mc = matrix_coalgebra(2)
    S = direct_sum_coalgebra([mc, mc], ["1", "2"])
    assert check_coalgebra(S).passed
    assert coalgebra_morphism_report(summand_inclusion([mc, mc], 1, ["1", "2"]), mc, S).passed
    proj = summand_projection([mc, mc], 0, ["1", "2"])
    with pytest.raises(NotACoalgebraMorphism):
        require_coalgebra_morphism(proj, S, mc)


def test_membership_certificate_for_evaluation():
    H = group_algebra(3)
    f = Vec.basis(H.space.dual(), H.space.labels[1])
    cert = dual_coalgebra_membership(H.algebra(), f)
    assert cert.residual == 0 and cert.length >= 1


def test_by_name():
    assert coalgebra_by_name("mahler", 4).rank == 4
    with pytest.raises(ConfigInvalid):
        coalgebra_by_name("nope")


def test_report_serializes():
    d = check_coalgebra(mahler_coalgebra(4)).to_dict()
    assert d["status"] == PASS
    assert all(Fraction(r["value"]) == 0 for r in d["residuals"].values())
