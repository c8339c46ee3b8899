from fractions import Fraction

import pytest

from ultracoalg import ConfigInvalid, NotAnInterleaving
from ultracoalg.coalg import corrupt_comult, mahler_coalgebra
from ultracoalg.limits import (
    CTSystem,
    check_ct,
    check_nf,
    constant_ct,
    ct_by_name,
    ct_catalog,
    ct_equivalence,
    ct_roundtrip,
    dualize_ct,
    dualize_nf,
    identity_map,
    mahler_ct,
    matrix_ct,
    pairing_report,
    tensor_ct,
)
from ultracoalg.suites import halved_equivalence

P, PREC, TOL = 5, 30, 20


@pytest.fixture(scope="module")
def mahler():
    return mahler_ct(6, None, P, PREC, 4)


def test_weights_decrease_along_the_system(mahler):
    # level n carries weights p^-ceil(k a_n) with a_n = n + 1
    for n, C in enumerate(mahler.levels):
        assert [C.space.weight_exp(k) for k in range(3)] == [0, -(n + 1), -2 * (n + 1)]


def test_mahler_system_certifies(mahler):
    rep = check_ct(mahler, TOL)
    assert rep.passed and rep.status != "fail"
    kinds = sorted({r.check.rsplit(":", 1)[-1] for r in rep.transitions})
    assert kinds == ["compact", "injective", "morphism"]
    assert all(m.compact_at_truncation for m in rep.margins)


@pytest.mark.parametrize("S", [constant_ct(mahler_coalgebra(6), 3), matrix_ct(2, P, PREC, 3)],
                         ids=lambda S: S.name)
def test_isometric_systems_fail_only_compactness(S):
    rep = check_ct(S, TOL)
    failing = {r.check.rsplit(":", 1)[-1] for r in rep.failing()}
    assert failing == {"compact"}


def test_transition_composites(mahler):
    T = mahler.transition(0, 3)
    assert T.domain == mahler.levels[0].space and T.codomain == mahler.levels[3].space
    assert mahler.truncate(2).depth == 2 and mahler.truncate(2).name.endswith("[:2]")


def test_dualization_produces_nf_system(mahler):
    nf = dualize_ct(mahler)
    assert check_nf(nf, TOL).passed
    back = dualize_nf(nf)
    assert back.name == mahler.name


@pytest.mark.parametrize("S", ct_catalog(6, P, PREC, 3), ids=lambda S: S.name)
def test_roundtrip_all_catalog_systems(S):
    rep = ct_roundtrip(S, TOL)
    assert rep.passed and all(r.value == 0 for r in rep.residuals.values())


def test_pairing_of_level_duals(mahler):
    C = mahler.levels[2]
    assert pairing_report(C, C.dual_algebra(), TOL).passed


def test_halved_exponents_give_equivalent_structure():
    rep = halved_equivalence(6, P, PREC, 3, TOL)
    assert rep.passed and any(k.startswith("gf") for k in rep.residuals)


def test_broken_interleaving_raises(mahler):
    S = mahler.truncate(2)
    bad = CTSystem([corrupt_comult(C) for C in S.levels], S.transitions, "broken")
    fw = {n: (n, identity_map(S.levels[n].space, bad.levels[n].space, PREC)) for n in range(2)}
    with pytest.raises(NotAnInterleaving) as e:
        ct_equivalence(S, bad, fw, {}, TOL)
    assert e.value.square == "f0:comult"


def test_tensor_system_margins(mahler):
    S = mahler.truncate(3)
    TT, margins = tensor_ct(S, S, TOL)
    assert all(m.compact_at_truncation for m in margins)
    assert check_ct(TT, TOL).passed
    with pytest.raises(ConfigInvalid):
        tensor_ct(S, mahler, TOL)


def test_catalog_names_resolve():
    assert ct_by_name("mahler_ct", 4, P, PREC, 2).name == mahler_ct(4, None, P, PREC, 2).name
    assert ct_by_name("matrix_ct", 4, P, PREC, 2).depth == 2
    with pytest.raises(ConfigInvalid):
        ct_by_name("nope")


def test_to_dict(mahler):
    d = mahler.to_dict()
    assert d["name"] == mahler.name and len(d["levels"]) == 4
    assert Fraction(check_ct(mahler, TOL).to_dict()["levels"][0]["residuals"]["coassociativity"]["value"]) == 0
