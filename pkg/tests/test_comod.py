import random

import pytest

from ultracoalg import NotACoalgebraMorphism, NotAComoduleMorphism, NotAModuleAction
from ultracoalg.coalg import (
    direct_sum_coalgebra,
    grouplike_line,
    group_algebra,
    mahler_coalgebra,
    matrix_coalgebra,
    summand_inclusion,
    summand_projection,
)
from ultracoalg.comod import (
    action_op,
    check_comodule,
    cofree,
    column,
    comodule_by_name,
    comodule_catalog,
    comodule_morphism_report,
    cotensor,
    counit_projection_report,
    dual_action,
    dual_compatibility,
    frobenius,
    hom_space,
    induce,
    left_regular,
    maximal_subcomodule,
    random_combination,
    rationality,
    regular,
    require_comodule_morphism,
    restrict,
    row,
    simplicity_certificate,
    trivial,
)
from ultracoalg.linalg import Op, TruncatedSpace, Vec

P = 5


@pytest.mark.parametrize("M", comodule_catalog(6), ids=lambda M: M.name)
def test_catalog_comodules_satisfy_axioms(M):
    rep = check_comodule(M)
    assert rep.passed and all(r.value == 0 for r in rep.residuals.values())


def test_cotensor_of_row_and_column():
    mc = matrix_coalgebra(2)
    prod = cotensor(row(2, over=mc), column(2, over=mc))
    assert prod.dim == 1


def test_cotensor_over_disjoint_blocks_vanishes():
    mc = matrix_coalgebra(2)
    S = direct_sum_coalgebra([mc, mc], ["1", "2"])
    a = row(2, over=S, tag="1")
    b = column(2, over=S, tag="2")
    assert cotensor(a, b).dim == 0


def test_induction_along_inclusion_and_restriction():
    mc = matrix_coalgebra(2)
    S = direct_sum_coalgebra([mc, mc], ["1", "2"])
    inc = summand_inclusion([mc, mc], 0, ["1", "2"])
    ind = induce(row(2, over=S, tag="1"), inc, mc)
    assert ind.comodule.dim == 2 and check_comodule(ind.comodule).passed
    assert ind.product.report.details["stability_leak"] == 0
    back = restrict(ind.comodule, inc, S)
    assert back.over is S and check_comodule(back).passed


def test_induction_rejects_non_morphism():
    mc = matrix_coalgebra(2)
    S = direct_sum_coalgebra([mc, mc], ["1", "2"])
    with pytest.raises(NotACoalgebraMorphism):
        induce(regular(mc), summand_projection([mc, mc], 0, ["1", "2"]), S)


def test_counit_projection_and_maximal_subcomodule():
    mc = matrix_coalgebra(2)
    g = grouplike_line()
    S = direct_sum_coalgebra([mc, g], ["M", "g"])
    inc_g = summand_inclusion([mc, g], 1, ["M", "g"])
    ind = induce(regular(S), inc_g, g)
    rep = counit_projection_report(ind)
    assert rep.passed and rep.details["image_dim"] == 1
    U = maximal_subcomodule(regular(S), inc_g, g)
    assert U.dim == 1 and U.leads == ["g:g"]


def test_hom_space_dimensions():
    mc = matrix_coalgebra(2)
    assert len(hom_space(row(2, over=mc), row(2, over=mc))) == 1
    assert len(hom_space(regular(mc), regular(mc))) == 4
    z2 = group_algebra(2)
    assert len(hom_space(regular(z2), regular(z2))) == 2


def test_frobenius_with_random_morphisms():
    rng = random.Random(7)
    mc = matrix_coalgebra(2)
    M, N = regular(mc), row(2, over=mc)
    ind = induce(M, mc.identity(), mc)
    f = random_combination(hom_space(N, M), rng)
    res = frobenius(N, M, mc.identity(), f=f, ind=ind)
    assert res.report.passed
    assert all(r.value == 0 for r in res.report.residuals.values())


def test_morphism_checks():
    mc = matrix_coalgebra(2)
    R = row(2, over=mc)
    assert comodule_morphism_report(R.identity(), R, R).passed
    swap = Op.from_matrix(R.space, R.space, [[0, 1], [1, 0]])
    with pytest.raises(NotAComoduleMorphism):
        require_comodule_morphism(swap, R, R)


def test_simplicity_certificates():
    mc3 = matrix_coalgebra(3)
    assert simplicity_certificate(row(3, over=mc3)).verdict == "simple-evidence"
    cert = simplicity_certificate(regular(mahler_coalgebra(4)))
    assert cert.verdict == "proper-subcomodule-found" and 0 < cert.witness.dim < 4


def test_dual_and_induced_actions():
    C = mahler_coalgebra(4)
    M = regular(C)
    Cd = C.space.dual()
    # e_1' acts on the regular comodule as the backward difference shift
    A = action_op(M, Vec.basis(Cd, 1))
    assert (A(Vec.basis(C.space, 3)) - Vec.basis(C.space, 2)).is_zero()
    out = dual_action(M, Vec.basis(Cd, 1), Vec.basis(Cd, 2))
    assert (out - Vec.basis(out.space, 3)).is_zero()


def test_rationality_rebuilds_coaction():
    C = matrix_coalgebra(2)
    M = row(2, over=C)
    Cd = C.space.dual()
    table = {c: action_op(M, Vec.basis(Cd, c)) for c in C.space.labels}
    res = rationality(C, M.space, table)
    assert res.is_rational_at_truncation
    assert (res.comodule.coaction - M.coaction).norm() == 0


def test_rationality_rejects_non_action():
    C = matrix_coalgebra(2)
    V = TruncatedSpace(P, ["a", "b"])
    bad = {c: Op.identity(V) for c in C.space.labels}
    with pytest.raises(NotAModuleAction):
        rationality(C, V, bad)


def test_dual_compatibility_ranks():
    mc = matrix_coalgebra(2)
    d = dual_compatibility(row(2, over=mc), column(2, over=mc))
    assert d["rank_identity"] and d["annihilation_residual"] == 0 and d["cotensor_dim"] == 1


def test_cofree_and_trivial():
    C = group_algebra(2)
    V = TruncatedSpace(P, ["x", "y"])
    assert cofree(V, C).dim == 4
    assert check_comodule(trivial(V, C)).passed
    assert check_comodule(left_regular(C)).passed
    assert comodule_by_name(comodule_catalog(4)[0].name, 4).name == comodule_catalog(4)[0].name
