"""Acceptance criteria 1-12 at the default configuration (p=5, precision 30, rank 8, window 4).

Each criterion records a one-line verdict; conftest prints them after the run.
``python3 tests/test_acceptance.py`` prints the same lines without pytest.
"""

from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from ultracoalg import PadicScalar, eq_to_precision  # noqa: E402
from ultracoalg.adm import (  # noqa: E402
    admissible_roundtrip,
    check_admissible,
    check_coadmissible,
    dualize_admissible,
    enlarge_level,
    power_admissible,
    regular_admissible,
    window_stability,
)
from ultracoalg.coalg import (  # noqa: E402
    check_coalgebra,
    check_hopf,
    convolve,
    group_algebra,
    mahler_coalgebra,
    mahler_hopf,
    matrix_coalgebra,
)
from ultracoalg.comod import (  # noqa: E402
    comodule_catalog,
    cotensor_unit,
    regular,
    tensor_identity,
    trivial,
)
from ultracoalg.coalg import ground_coalgebra  # noqa: E402
from ultracoalg.errors import InsufficientPrecision, SourceCheckFailed  # noqa: E402
from ultracoalg.limits import check_ct, constant_ct, ct_catalog, ct_roundtrip, mahler_ct  # noqa: E402
from ultracoalg.linalg import Op, TruncatedSpace, Vec, kernel_subspace, scalar_space  # noqa: E402
from ultracoalg.residual import FAIL, PASS, TAIL  # noqa: E402
from ultracoalg.suites import frobenius_sweep  # noqa: E402

P, PREC, TOL, RANK, WINDOW, SEED = 5, 30, 20, 8, 4, 1

RESULTS: dict = {}


def record(n: int, ok: bool, detail: str):
    RESULTS[n] = (ok, detail)
    assert ok, f"criterion {n}: {detail}"


# -- 1 -----------------------------------------------------------------------------


def criterion_1():
    rng = random.Random(SEED)
    padic_ops = {"+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b,
                 "/": lambda a, b: a / b}
    done = mismatch = undecided = 0
    while done < 1000:
        tree = oracles.random_expression(rng)
        try:
            q = oracles.eval_tree(tree, Fraction, oracles.FRACTION_OPS)
        except ZeroDivisionError:
            continue
        x = oracles.eval_tree(tree, lambda n: PadicScalar.from_int(n, P, PREC), padic_ops)
        done += 1
        want = PadicScalar.from_rational(q, P, 80) if q else PadicScalar.zero(P)
        try:
            if not eq_to_precision(x, want, 20):
                mismatch += 1
        except InsufficientPrecision:
            undecided += 1
    return mismatch == 0 and undecided == 0, f"{done} expressions, {mismatch} mismatches, {undecided} undecided"


# -- 2 -----------------------------------------------------------------------------


def criterion_2():
    rng = random.Random(SEED)
    bad = 0
    for _ in range(200):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        # entries with frequent p-divisibility so valuations vary
        A = [[rng.choice([0, 1, -1, P, -P, P * P, rng.randint(-30, 30)]) for _ in range(c)] for _ in range(r)]
        dom, cod = TruncatedSpace(P, range(c)), TruncatedSpace(P, range(r))
        T = Op.from_matrix(dom, cod, A, PREC)
        got = kernel_subspace(T, 20)
        want = [oracles.primitive(v, P) for v in oracles.rational_kernel(A)]
        ok = got.dim == len(want)
        for v in want:
            w = Vec.from_ints(dom, {i: x for i, x in enumerate(v) if x}, 40)
            ok = ok and got.contains(w, 20)
        for b in got.basis:
            ok = ok and all(x.valuation >= 20 for x in T(b).coeffs.values())
        # canonical form: identity at the leads and integral entries
        for lab, b in zip(got.leads, got.basis):
            ok = ok and b[lab].residue(20) == 1 and all(x.valuation >= 0 for x in b.coeffs.values())
            ok = ok and all(b[m].is_zero for m in got.leads if m != lab)
        bad += not ok
    return bad == 0, f"200 matrices, {bad} disagreements with the rational kernel mod p^20"


# -- 3 -----------------------------------------------------------------------------


def criterion_3():
    cs = [matrix_coalgebra(2, P, PREC), matrix_coalgebra(3, P, PREC)] + \
         [mahler_coalgebra(r, P, prec=PREC) for r in (4, 8, 16)]
    worst = {}
    for C in cs:
        rep = check_coalgebra(C, TOL)
        worst[C.name] = max(r.value for r in rep.residuals.values())
    ok = all(v == 0 for v in worst.values())
    return ok, "max residuals " + ", ".join(f"{k}={v}" for k, v in worst.items())


# -- 4 -----------------------------------------------------------------------------


def criterion_4():
    H = mahler_hopf(RANK, P, PREC)
    rep = check_hopf(H, TOL)
    low_ok = True
    statuses = {}
    for name, r in rep.residuals.items():
        statuses[name] = r.status
        # every nonzero column is a declared-tail column of total degree >= rank
        for lab in r.per_column:
            deg = sum(lab) if isinstance(lab, tuple) else lab
            if deg <= RANK // 2:
                low_ok = False
        if r.exact_value != 0 or r.status == FAIL:
            low_ok = False
    # structure constants against the finite-difference oracle
    for i in range(RANK):
        want = oracles.finite_differences([oracles.gen_binom(-x, i) for x in range(RANK)])
        low_ok = low_ok and all(H.antipode.entry(k, i).residue(20) == w % P ** 20 for k, w in enumerate(want))
        for j in range(RANK - i):
            want = oracles.finite_differences([oracles.gen_binom(x, i) * oracles.gen_binom(x, j) for x in range(RANK)])
            low_ok = low_ok and all(H.mult.entry(k, (i, j)).residue(20) == w % P ** 20
                                    for k, w in enumerate(want))
    z2 = check_hopf(group_algebra(2, P, PREC), TOL)
    z2_ok = all(r.value == 0 and r.status == PASS for r in z2.residuals.values())
    tail = sorted(k for k, s in statuses.items() if s == TAIL)
    return low_ok and z2_ok, f"Mahler: exact residual 0, tail-dominated only in {tail}; K[Z/2]: all 0 = {z2_ok}"


# -- 5 -----------------------------------------------------------------------------


def criterion_5():
    C = mahler_coalgebra(RANK, P, prec=PREC)
    Cd = C.space.dual()
    law_bad = 0
    for n in range(RANK):
        for m in range(RANK - n):
            got = convolve(C, Vec.basis(Cd, n, PREC), Vec.basis(Cd, m, PREC))
            law_bad += not (got - Vec.basis(Cd, n + m, PREC)).is_zero()
    rng = random.Random(SEED)
    worst = Fraction(0)
    for _ in range(100):
        a, b, c = (Vec.from_ints(Cd, {k: rng.randint(-99, 99) for k in Cd.labels}, PREC) for _ in range(3))
        d = convolve(C, convolve(C, a, b), c) - convolve(C, a, convolve(C, b, c))
        worst = max(worst, d.norm())
    return law_bad == 0 and worst == 0, f"{law_bad} failures of e_n'*e_m' = e'_(n+m); associativity residual {worst}"


# -- 6 -----------------------------------------------------------------------------


def criterion_6():
    bad = []
    cat = comodule_catalog(RANK, P, PREC)
    for M in cat:
        rep = cotensor_unit(M, TOL)
        if not (rep.passed and rep.details["dim_cotensor"] == M.dim):
            bad.append(M.name)
    return not bad, f"{len(cat)} catalog comodules, failures: {bad or 'none'}"


# -- 7 -----------------------------------------------------------------------------


def criterion_7():
    reps = frobenius_sweep(P, PREC, TOL, SEED, 20)
    worst = max((r.value for rep in reps for r in rep.residuals.values()), default=Fraction(0))
    legs = sum(1 for rep in reps for k in rep.residuals if k.startswith("roundtrip"))
    ok = len(reps) >= 20 and worst == 0 and all(rep.passed for rep in reps)
    return ok, f"{len(reps)} triples, {legs} roundtrips, max residual {worst}"


# -- 8 -----------------------------------------------------------------------------


def criterion_8():
    K = ground_coalgebra(P, PREC)
    Kc = trivial(scalar_space(P), K, ())
    H = group_algebra(2, P, PREC)
    z2 = tensor_identity(regular(H), Kc, H.counit, H, K, TOL).report
    z2_ok = all(r.value == 0 for r in z2.residuals.values()) and z2.passed
    M = mahler_hopf(4, P, PREC)
    mr = tensor_identity(regular(M), Kc, M.counit, M, K, TOL).report
    m_ok = all(r.status in (PASS, TAIL) and r.exact_value == 0 for r in mr.residuals.values())
    rt = [mr.residuals[k].status for k in ("phi_psi", "psi_phi")]
    return z2_ok and m_ok, f"K[Z/2] residual 0 = {z2_ok}; Mahler rank 4 roundtrips {rt}, morphism checks " \
                           f"{mr.residuals['phi_morphism'].status}"


# -- 9 -----------------------------------------------------------------------------


def criterion_9():
    S = check_ct(mahler_ct(RANK, None, P, PREC, WINDOW), TOL)
    per = [(r.check.rsplit(":", 1)[-1], r.passed) for r in S.transitions]
    good = S.passed and len(per) == 3 * (WINDOW - 1)
    neg = check_ct(constant_ct(mahler_coalgebra(RANK, P, prec=PREC), WINDOW), TOL)
    comp_fail = all(not r.passed for r in neg.transitions if r.check.endswith(":compact"))
    others = all(r.passed for r in neg.transitions if not r.check.endswith(":compact"))
    return good and comp_fail and others, f"Mahler CT: {sum(ok for _, ok in per)}/{len(per)} transition " \
                                          f"certificates; constant system fails compactness = {comp_fail}"


# -- 10 ----------------------------------------------------------------------------


def criterion_10():
    out = {}
    for S in ct_catalog(RANK, P, PREC, WINDOW):
        rep = ct_roundtrip(S, TOL)
        out[S.name] = (rep.passed and max((r.value for r in rep.residuals.values()), default=0) == 0)
    return all(out.values()), f"{sum(out.values())}/{len(out)} catalog systems return level-wise, residual 0"


# -- 11 ----------------------------------------------------------------------------


def criterion_11():
    S = mahler_ct(RANK, None, P, PREC, WINDOW)
    rows = []
    ok = True
    for k in (1, 2, 3):
        A = power_admissible(S, k)
        co = check_coadmissible(dualize_admissible(A, TOL), TOL)
        rt = admissible_roundtrip(A, TOL)
        zero = max(r.value for r in rt.residuals.values()) == 0
        ok = ok and co.passed and rt.passed and zero
        rows.append(f"k={k}:{'ok' if co.passed and zero else 'FAIL'}")
    bad = enlarge_level(regular_admissible(S), 2)
    witness = None
    try:
        dualize_admissible(bad, TOL)
    except SourceCheckFailed as e:
        witness = e.report.failing()[0].failures[0] if e.report.failing() else None
    ok = ok and witness is not None and "level_dim" in witness
    return ok, f"{' '.join(rows)}; injected defect rejected with witness = {witness is not None}"


# -- 12 ----------------------------------------------------------------------------


def criterion_12():
    S = mahler_ct(RANK, None, P, PREC, WINDOW + 1)
    verdicts = []
    ok = True
    for A in (power_admissible(S, 1), power_admissible(S, 2), power_admissible(S, 3),
              enlarge_level(power_admissible(S, 1), 2)):
        rep = window_stability(A, WINDOW, TOL)
        ok = ok and rep.passed
        verdicts.append(rep.passed)
    small = check_admissible(power_admissible(S, 1).truncate(WINDOW), TOL)
    return ok, f"{sum(verdicts)}/{len(verdicts)} structures unchanged from window {WINDOW} to {WINDOW + 1} " \
               f"(regular verdict {small.status})"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 13)}
NAMES = {
    1: "scalar oracle equivalence",
    2: "kernel oracle equivalence",
    3: "coalgebra axioms",
    4: "Hopf axioms",
    5: "dual algebra law",
    6: "cotensor unit",
    7: "Frobenius reciprocity",
    8: "tensor identity",
    9: "CT certificates",
    10: "CT-NF duality",
    11: "admissibility duality",
    12: "window stability",
}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail = CRITERIA[n]()
    record(n, ok, detail)


def summary_lines(results: dict) -> list:
    out = []
    for n in sorted(NAMES):
        if n in results:
            ok, detail = results[n]
            out.append(f"criterion {n:2d} [{'PASS' if ok else 'FAIL'}] {NAMES[n]}: {detail}")
        else:
            out.append(f"criterion {n:2d} [FAIL] {NAMES[n]}: did not complete")
    return out


if __name__ == "__main__":
    results = {}
    for n, fn in sorted(CRITERIA.items()):
        try:
            results[n] = fn()
        except Exception as e:  # report, keep going
            results[n] = (False, f"error {type(e).__name__}: {e}")
    print("\n".join(summary_lines(results)))
    sys.exit(0 if all(ok for ok, _ in results.values()) else 1)
