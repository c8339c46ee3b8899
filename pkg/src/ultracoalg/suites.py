"""Verification suites run by the command line, one record per check."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .adm import (
    admissible_roundtrip,
    check_admissible,
    check_coadmissible,
    corrupted,
    dualize_admissible,
    enlarge_level,
    induction_preserves_admissibility,
    power_admissible,
    regular_admissible,
    window_stability,
    with_grouplike_line,
)
from .coalg import (
    check_coalgebra,
    check_hopf,
    convolve,
    corrupt_antipode,
    corrupt_comult,
    direct_sum_coalgebra,
    ground_coalgebra,
    group_algebra,
    mahler_coalgebra,
    mahler_hopf,
    matrix_coalgebra,
    quotient_by_coideal,
    summand_inclusion,
)
from .comod import (
    check_comodule,
    column,
    comodule_catalog,
    cotensor,
    cotensor_unit,
    frobenius,
    hom_space,
    induce,
    random_combination,
    regular,
    restrict,
    row,
    simplicity_certificate,
    tensor_identity,
    trivial,
)
from .errors import ConfigInvalid, SourceCheckFailed
from .limits import (
    check_ct,
    ct_catalog,
    ct_equivalence,
    ct_roundtrip,
    dualize_ct,
    identity_map,
    mahler_ct,
    pairing_report,
    tensor_ct,
)
from .linalg import Vec, scalar_space
from .residual import FAIL, PASS, CheckReport

SUITES = ("coalg", "comod", "limits", "adm")


@dataclass(frozen=True)
class RunConfig:
    prime: int = 5
    precision: int = 30
    tol: int = 20
    rank: int = 8
    window: int = 4
    seed: int = 1
    suites: tuple = SUITES
    inject: str = "none"

    def validate(self) -> "RunConfig":
        if self.prime < 2 or any(self.prime % d == 0 for d in range(2, int(self.prime ** 0.5) + 1)):
            raise ConfigInvalid(f"{self.prime} is not a prime")
        if not self.tol < self.precision:
            raise ConfigInvalid("tolerance exponent must be below the working precision")
        if self.tol < 1:
            raise ConfigInvalid("tolerance exponent must be positive")
        if self.rank < 2:
            raise ConfigInvalid("truncation rank must be at least 2")
        if self.window < 2:
            raise ConfigInvalid("window depth must be at least 2")
        if not self.suites:
            raise ConfigInvalid("empty suite selection")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigInvalid(f"unknown suite(s): {', '.join(bad)}")
        parse_inject(self.inject, self.window)
        return self

    def to_dict(self) -> dict:
        return {"prime": self.prime, "precision": self.precision, "tol": self.tol, "rank": self.rank,
                "window": self.window, "seed": self.seed, "suites": list(self.suites), "inject": self.inject}


INJECTIONS = ("none", "enlarge-level", "corrupt-level", "corrupt-comult", "corrupt-antipode")


def parse_inject(text: str, window: int) -> tuple:
    """``none``, ``corrupt-comult``, ``corrupt-antipode``, ``enlarge-level:N`` or ``corrupt-level:N``."""
    kind, _, arg = text.partition(":")
    if kind not in INJECTIONS:
        raise ConfigInvalid(f"unknown injection {text!r}")
    if kind in ("enlarge-level", "corrupt-level"):
        try:
            level = int(arg)
        except ValueError:
            raise ConfigInvalid(f"{kind} needs a level index, e.g. {kind}:2") from None
        if not 0 <= level < window:
            raise ConfigInvalid(f"level {level} outside the window 0..{window - 1}")
        return kind, level
    if arg:
        raise ConfigInvalid(f"{kind} takes no argument")
    return kind, None


@dataclass
class Record:
    id: str
    anchor: str
    status: str
    expected: str = PASS
    injected: bool = False
    residuals: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    timing: float = 0.0

    @property
    def ok(self) -> bool:
        return (self.status == FAIL) == (self.expected == FAIL)

    def to_dict(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "status": self.status, "expected": self.expected,
                "ok": self.ok, "injected": self.injected, "residuals": self.residuals, "details": self.details,
                "failures": self.failures, "timing_s": round(self.timing, 6)}


def _record(rid: str, rep, t0: float, expected: str = PASS, injected: bool = False) -> Record:
    d = rep.to_dict()
    if "residuals" not in d:
        # structure reports nest level reports; flatten their residuals and failures
        residuals, failures = {}, []
        for sub in d.get("levels", []) + d.get("transitions", []) + d.get("extra", []):
            for k, r in sub.get("residuals", {}).items():
                residuals[f"{sub['check']}/{k}"] = r
            for f in sub.get("failures", []):
                failures.append({"check": sub["check"], **f})
        d = {"anchor": d["anchor"], "details": {}, "residuals": residuals, "failures": failures}
    return Record(rid, d["anchor"], rep.status, expected, injected, d["residuals"], d["details"], d["failures"],
                  time.perf_counter() - t0)


class Runner:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.records: list = []
        self.kind, self.level = parse_inject(cfg.inject, cfg.window)

    def add(self, rid: str, fn, expected: str = PASS, injected: bool = False):
        t0 = time.perf_counter()
        rep = fn()
        self.records.append(_record(rid, rep, t0, expected, injected))

    # -- suites --------------------------------------------------------------

    def coalg(self):
        c = self.cfg
        p, P, tol, R = c.prime, c.precision, c.tol, c.rank
        for C in (matrix_coalgebra(2, p, P), matrix_coalgebra(3, p, P), mahler_coalgebra(R, p, prec=P)):
            self.add(f"coalg/axioms/{C.name}", lambda C=C: check_coalgebra(C, tol))
        for H in (mahler_hopf(R, p, P), group_algebra(2, p, P)):
            self.add(f"coalg/hopf/{H.name}", lambda H=H: check_hopf(H, tol))
        self.add(f"coalg/dual_law/mahler{R}", lambda: dual_law(R, p, P, tol))
        self.add(f"coalg/convolution_assoc/mahler{R}", lambda: convolution_associativity(R, p, P, tol, c.seed))
        mah = mahler_coalgebra(R, p, prec=P)
        aug = [Vec.basis(mah.space, k, P) for k in range(1, R)]
        self.add(f"coalg/coideal/mahler{R}_augmentation", lambda: quotient_by_coideal(mah, aug, tol)[2])
        if self.kind == "corrupt-comult":
            bad = corrupt_comult(matrix_coalgebra(2, p, P))
            self.add(f"coalg/axioms/{bad.name}", lambda: check_coalgebra(bad, tol), injected=True)
        if self.kind == "corrupt-antipode":
            bad = corrupt_antipode(group_algebra(2, p, P))
            self.add(f"coalg/hopf/{bad.name}", lambda: check_hopf(bad, tol), injected=True)

    def comod(self):
        c = self.cfg
        p, P, tol, R = c.prime, c.precision, c.tol, c.rank
        for M in comodule_catalog(R, p, P):
            self.add(f"comod/axioms/{M.name}", lambda M=M: check_comodule(M, tol))
            self.add(f"comod/cotensor_unit/{M.name}", lambda M=M: cotensor_unit(M, tol))
        mc2 = matrix_coalgebra(2, p, P)
        blocks = direct_sum_coalgebra([mc2, mc2], ["1", "2"], name="Mc2+Mc2")
        self.add("comod/cotensor/block_orthogonality", lambda: block_orthogonality(blocks, tol))
        for rep in frobenius_sweep(p, P, tol, c.seed, 20):
            self.add(f"comod/{rep.check}", lambda rep=rep: rep)
        K = ground_coalgebra(p, P)
        Kc = trivial(scalar_space(p), K, ())
        for H in (group_algebra(2, p, P), mahler_hopf(4, p, P)):
            self.add(f"comod/tensor_identity/{H.name}",
                     lambda H=H: tensor_identity(regular(H), Kc, H.counit, H, K, tol).report)
        self.add("comod/simplicity/row(Mc3)", lambda: simplicity_report(row(3, p=p, prec=P), c.seed, tol, True))
        self.add(f"comod/simplicity/regular(mahler{R})",
                 lambda: simplicity_report(regular(mahler_coalgebra(R, p, prec=P)), c.seed, tol, False))

    def limits(self):
        c = self.cfg
        p, P, tol, R, w = c.prime, c.precision, c.tol, c.rank, c.window
        for S in ct_catalog(R, p, P, w):
            exp = FAIL if S.name.startswith(("constant_ct", "matrix_ct")) else PASS
            self.add(f"limits/ct/{S.name}", lambda S=S: check_ct(S, tol), expected=exp)
            self.add(f"limits/roundtrip/{S.name}", lambda S=S: ct_roundtrip(S, tol))
        S = mahler_ct(R, None, p, P, w)
        nf = dualize_ct(S)
        self.add(f"limits/pairing/{S.name}",
                 lambda: combined("pairing", "convolution transposes the comultiplication",
                                  [pairing_report(C, A, tol) for C, A in zip(S.levels, nf.levels)]))
        self.add(f"limits/equivalence/{S.name}", lambda: halved_equivalence(R, p, P, w, tol))
        self.add(f"limits/tensor/{S.name}", lambda: tensor_certificate(min(R, 4), p, P, min(w, 3), tol))

    def adm(self):
        c = self.cfg
        p, P, tol, R, w = c.prime, c.precision, c.tol, c.rank, c.window
        S5 = mahler_ct(R, None, p, P, w + 1)
        S = S5.truncate(w)
        for k in (1, 2, 3):
            A = power_admissible(S, k)
            self.add(f"adm/admissible/{A.name}", lambda A=A: check_admissible(A, tol))
            self.add(f"adm/coadmissible/{A.name}'", lambda A=A: check_coadmissible(dualize_admissible(A, tol), tol))
            self.add(f"adm/roundtrip/{A.name}", lambda A=A: admissible_roundtrip(A, tol))
            big = power_admissible(S5, k)
            self.add(f"adm/window_stability/{A.name}", lambda big=big: window_stability(big, w, tol))
        B, incs = with_grouplike_line(S)
        W = regular_admissible(B)
        self.add(f"adm/induction/{W.name}", lambda: induction_preserves_admissibility(incs, S, W, tol))
        if self.kind in ("enlarge-level", "corrupt-level"):
            base = regular_admissible(S)
            bad = enlarge_level(base, self.level) if self.kind == "enlarge-level" else corrupted(base, self.level)
            self.add(f"adm/admissible/{bad.name}", lambda: check_admissible(bad, tol), injected=True)
            self.add(f"adm/dualize/{bad.name}", lambda: guarded_dualize(bad, tol), injected=True)

    def run(self) -> list:
        for s in SUITES:
            if s in self.cfg.suites:
                getattr(self, s)()
        return sorted(self.records, key=lambda r: r.id)


# -- individual checks used above --------------------------------------------------


def dual_law(R: int, p: int, P: int, tol: int) -> CheckReport:
    """``e_n'⋆e_m' = e'_{n+m}`` for ``n+m < R`` and ``0`` otherwise."""
    C = mahler_coalgebra(R, p, prec=P)
    Cd = C.space.dual()
    rep = CheckReport(f"dual_law:mahler{R}", "convolution product of the dual algebra")
    worst = Fraction(0)
    for n in range(R):
        for m in range(R):
            got = convolve(C, Vec.basis(Cd, n, P), Vec.basis(Cd, m, P))
            want = Vec.basis(Cd, n + m, P) if n + m < R else Vec(Cd)
            d = (got - want).norm()
            if d > Fraction(1, p ** tol) and not rep.failures:
                rep.fail("product differs from the shifted basis vector", pair=[n, m], got=got)
            worst = max(worst, d)
    rep.details["max_residual"] = worst
    return rep


def convolution_associativity(R: int, p: int, P: int, tol: int, seed: int, trials: int = 100) -> CheckReport:
    C = mahler_coalgebra(R, p, prec=P)
    Cd = C.space.dual()
    rng = random.Random(seed)
    rep = CheckReport(f"convolution_assoc:mahler{R}", "associativity of the convolution product")
    worst = Fraction(0)
    for _ in range(trials):
        a, b, e = (Vec.from_ints(Cd, {k: rng.randint(-50, 50) for k in Cd.labels}, P) for _ in range(3))
        d = (convolve(C, convolve(C, a, b), e) - convolve(C, a, convolve(C, b, e))).norm()
        worst = max(worst, d)
    rep.details.update(trials=trials, max_residual=worst)
    if worst > Fraction(1, p ** tol):
        rep.fail("convolution is not associative on a sampled triple", residual=worst)
    return rep


def block_orthogonality(B, tol: int) -> CheckReport:
    rep = CheckReport("cotensor_blocks", "cotensor product")
    prod = cotensor(row(2, over=B, tag="1"), column(2, over=B, tag="2"), tol)
    rep.details["dim"] = prod.dim
    if prod.dim:
        rep.fail("cotensor of different blocks is not zero", basis=prod.subspace)
    return rep


def frobenius_sweep(p: int, P: int, tol: int, seed: int, count: int) -> list:
    """Seeded morphisms pushed through the reciprocity bijection in both directions."""
    rng = random.Random(seed)
    mc2 = matrix_coalgebra(2, p, P)
    z2 = group_algebra(2, p, P)
    mah = mahler_coalgebra(4, p, prec=P)
    blocks = direct_sum_coalgebra([mc2, mc2], ["1", "2"], name="Mc2+Mc2")
    inc = summand_inclusion([mc2, mc2], 0, ["1", "2"])
    cases = [
        (row(2, over=mc2), row(2, over=blocks, tag="1"), inc, mc2),
        (regular(mc2), row(2, over=blocks, tag="1"), inc, mc2),
        (regular(mc2), regular(mc2), mc2.identity(), mc2),
        (regular(z2), regular(z2), z2.identity(), z2),
        (regular(mah), regular(mah), mah.identity(), mah),
    ]
    out = []
    i = 0
    while len(out) < count:
        N, M, phi, C = cases[i % len(cases)]
        B = M.over
        ind = induce(M, phi, C, tol)
        hb = hom_space(restrict(N, phi, B, tol, check=False), M, tol)
        hc = hom_space(N, ind.comodule, tol)
        f = random_combination(hb, rng) if hb else None
        g = random_combination(hc, rng) if hc else None
        rep = frobenius(N, M, phi, f=f, g=g, precision=tol, ind=ind).report
        rep.check = f"frobenius/{i:02d}:{N.name},{M.name}"
        rep.details.update(hom_B_dim=len(hb), hom_C_dim=len(hc))
        if len(hb) != len(hc):
            rep.fail("Hom spaces have different dimensions", hom_B=len(hb), hom_C=len(hc))
        out.append(rep)
        i += 1
    return out


def simplicity_report(M, seed: int, tol: int, expect_simple: bool) -> CheckReport:
    cert = simplicity_certificate(M, seed, precision=tol)
    rep = CheckReport(f"simplicity:{M.name}", "simple comodules")
    rep.details["certificate"] = cert.to_dict()
    if (cert.verdict == "simple-evidence") != expect_simple:
        rep.fail("unexpected simplicity verdict", verdict=cert.verdict)
    return rep


def combined(check: str, anchor: str, reports: list) -> CheckReport:
    rep = CheckReport(check, anchor)
    for n, r in enumerate(reports):
        for k, res in r.residuals.items():
            res.name = f"level{n}:{k}"
            rep.add(res)
        rep.failures += r.failures
    return rep


def halved_equivalence(R: int, p: int, P: int, w: int, tol: int) -> CheckReport:
    """Mahler systems with exponents ``n`` and ``n/2``, interleaved by identity maps."""
    S = mahler_ct(R, None, p, P, w)
    T = mahler_ct(R, [Fraction(k, 2) for k in range(1, 2 * w + 1)], p, P, 2 * w)
    fw = {n: (2 * n + 1, identity_map(S.levels[n].space, T.levels[2 * n + 1].space, P)) for n in range(w)}
    bw = {m: (m // 2, identity_map(T.levels[m].space, S.levels[m // 2].space, P)) for m in range(2 * w)}
    return ct_equivalence(S, T, fw, bw, tol)


def tensor_certificate(R: int, p: int, P: int, w: int, tol: int) -> CheckReport:
    S = mahler_ct(R, None, p, P, w)
    TT, margins = tensor_ct(S, S, tol)
    direct = check_ct(TT, tol)
    rep = combined("tensor_ct", "tensor products of compact type systems", direct.reports)
    rep.details["factor_certificates"] = [m.compact_at_truncation for m in margins]
    if not all(m.compact_at_truncation for m in margins):
        rep.fail("factor margins do not certify the tensor transitions")
    return rep


def guarded_dualize(S, tol: int) -> CheckReport:
    rep = CheckReport(f"dualize:{S.name}", "admissible to coadmissible duality")
    try:
        dualize_admissible(S, tol)
    except SourceCheckFailed as e:
        rep.fail(str(e), source_failures=[{"check": r.check, "failures": r.failures}
                                          for r in e.report.failing()])
    return rep


def run(cfg: RunConfig) -> list:
    return Runner(cfg.validate()).run()

