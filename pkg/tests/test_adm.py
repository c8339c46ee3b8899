import pytest

from ultracoalg import ConfigInvalid, SourceCheckFailed, SpaceMismatch
from ultracoalg.adm import (
    Module,
    admissible_roundtrip,
    base_change,
    check_admissible,
    check_coadmissible,
    check_module,
    coadmissible_roundtrip,
    corrupted,
    dualize_admissible,
    dualize_coadmissible,
    enlarge_level,
    free_module,
    induction_preserves_admissibility,
    module_morphism_report,
    power_admissible,
    regular_admissible,
    restrict_scalars,
    window_stability,
    with_grouplike_line,
)
from ultracoalg.coalg import group_algebra, mahler_coalgebra
from ultracoalg.limits import mahler_ct
from ultracoalg.linalg import Op, TruncatedSpace

P, PREC, TOL = 5, 30, 20


@pytest.fixture(scope="module")
def system():
    return mahler_ct(6, None, P, PREC, 4)


def test_free_module_axioms():
    A = mahler_coalgebra(4).dual_algebra()
    M = free_module(A, TruncatedSpace(P, ["x0", "x1"]))
    assert M.dim == 8 and check_module(M).passed
    assert module_morphism_report(M.identity(), M, M).passed


def test_module_rejects_bad_shape():
    A = group_algebra(2).algebra()
    V = TruncatedSpace(P, ["a"])
    with pytest.raises(SpaceMismatch):
        Module(V, A, Op.identity(V))


def test_base_change_along_identity_keeps_dimension():
    A = group_algebra(2).algebra()
    M = free_module(A, TruncatedSpace(P, ["x0"]))
    bc = base_change(M, A.identity(), A)
    assert bc.dim == M.dim
    assert check_module(restrict_scalars(M, A.identity(), A)).passed


@pytest.mark.parametrize("k", [1, 2, 3])
def test_powers_are_admissible_and_dualize(system, k):
    S = power_admissible(system, k)
    rep = check_admissible(S, TOL)
    assert rep.passed
    assert [d for _, d in rep.verdicts()] == [V.dim for V in S.levels]
    co = dualize_admissible(S, TOL)
    assert check_coadmissible(co, TOL).passed
    assert admissible_roundtrip(S, TOL).passed
    assert coadmissible_roundtrip(co, TOL).passed
    assert dualize_coadmissible(co, TOL).depth == S.depth


def test_enlarged_level_fails_with_witness(system):
    bad = enlarge_level(regular_admissible(system), 2)
    rep = check_admissible(bad, TOL)
    assert not rep.passed
    failing = rep.failing()
    assert [r.details.get("k") for r in failing] == [2]
    msg = failing[0].failures[0]
    assert msg["message"].startswith("dimension mismatch") and msg["level_dim"] == msg["cotensor_dim"] + 1
    with pytest.raises(SourceCheckFailed) as e:
        dualize_admissible(bad, TOL)
    assert e.value.report is not None


def test_corrupted_level_fails(system):
    assert not check_admissible(corrupted(regular_admissible(system), 1), TOL).passed


def test_window_stability(system):
    S = power_admissible(system, 2)
    assert window_stability(S, 3, TOL).passed
    with pytest.raises(ConfigInvalid):
        window_stability(S, 4, TOL)


def test_truncate_bounds(system):
    S = regular_admissible(system)
    assert S.truncate(2).depth == 2
    with pytest.raises(ConfigInvalid):
        S.truncate(9)


def test_induction_preserves_admissibility(system):
    S = system.truncate(3)
    B, incs = with_grouplike_line(S)
    W = regular_admissible(B)
    rep = induction_preserves_admissibility(incs, S, W, TOL)
    assert rep.passed
    assert [r.details["induced_dim"] for r in rep.levels] == [C.rank for C in S.levels]


def test_induction_rejects_non_morphism(system):
    S = system.truncate(2)
    B, incs = with_grouplike_line(S)
    bad = [Op(i.domain, i.codomain, {lab: i.column(lab).scale(2) for lab in i.domain.labels}) for i in incs]
    rep = induction_preserves_admissibility(bad, S, regular_admissible(B), TOL)
    assert not rep.passed
    assert rep.extra[0].failures[0]["error"] == "NotACoalgebraMorphism"
