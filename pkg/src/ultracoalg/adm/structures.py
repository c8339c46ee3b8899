"""Admissible comodules over CT systems, coadmissible modules over NF systems, and their duality."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..coalg.catalog import direct_sum_coalgebra, grouplike_line, perturbed, summand_inclusion
from ..coalg.structures import DEFAULT_TOL, coalgebra_morphism_report
from ..comod import (
    RIGHT,
    Comodule,
    check_comodule,
    cofree,
    comodule_morphism_report,
    cotensor,
    cotensor_map,
    find_grouplike,
    pushed_left,
    regular,
    restrict,
)
from ..errors import ConfigInvalid, SourceCheckFailed
from ..limits import CTSystem, NFSystem, dualize_ct, dualize_nf
from ..linalg import (
    Op,
    TruncatedSpace,
    Vec,
    compose,
    compose_all,
    direct_sum_op,
    dual_op,
    echelon,
    join_labels,
    kernel_subspace,
    restrict_op,
    tensor_op,
    tensor_space,
)
from ..residual import FAIL, CheckReport, combine_status, measure
from ..scalar import PadicScalar
from .modules import (
    Module,
    base_change,
    check_module,
    cokernel_dim,
    free_module,
    module_morphism_report,
    tensor_relations,
)


def _generators(p: int, k: int, dual: bool = False) -> TruncatedSpace:
    X = TruncatedSpace(p, [f"x{i}" for i in range(k)])
    return X.dual() if dual else X


def _reshape(T: Op, dom: TruncatedSpace, cod: TruncatedSpace) -> Op:
    return Op(dom, cod, T.columns, T.col_tails)


@dataclass
class AdmissibleStructure:
    """Comodules ``V_n`` over the levels ``C_n`` with transitions and cogeneration witnesses.

    ``witnesses[n]`` embeds ``V_n`` into ``X_n⊗C_n`` (``k_n`` copies of ``C_n``)
    where ``X_n`` has ``ranks[n]`` basis vectors.
    """

    system: CTSystem
    levels: list
    transitions: list
    witnesses: list
    ranks: list
    name: str = "V"

    @property
    def depth(self) -> int:
        return len(self.levels)

    def transition(self, n: int, m: int) -> Op:
        T = self.levels[n].identity()
        for k in range(n, m):
            T = compose(self.transitions[k], T)
        return T

    def truncate(self, depth: int) -> "AdmissibleStructure":
        if depth < 1 or depth > self.depth:
            raise ConfigInvalid(f"cannot truncate a depth-{self.depth} structure to {depth}")
        return AdmissibleStructure(self.system.truncate(depth), self.levels[:depth], self.transitions[:depth - 1],
                                   self.witnesses[:depth], self.ranks[:depth], self.name)

    def cofree_target(self, n: int) -> Comodule:
        return cofree(_generators(self.system.prime, self.ranks[n]), self.system.levels[n])


@dataclass
class CoadmissibleStructure:
    """Modules ``M_n`` over the levels ``A_n``; ``transitions[n]: M_{n+1} -> M_n``; ``witnesses[n]: X_n'⊗A_n -> M_n``."""

    system: NFSystem
    levels: list
    transitions: list
    witnesses: list
    ranks: list
    name: str = "M"

    @property
    def depth(self) -> int:
        return len(self.levels)

    def transition(self, m: int, n: int) -> Op:
        T = self.levels[m].identity()
        for k in range(m - 1, n - 1, -1):
            T = compose(self.transitions[k], T)
        return T

    def free_source(self, n: int) -> Module:
        return free_module(self.system.levels[n], _generators(self.system.prime, self.ranks[n], dual=True))


@dataclass
class StructureReport:
    """Per-level reports plus the verdict that window-stability compares."""

    check: str
    anchor: str
    levels: list = field(default_factory=list)
    extra: list = field(default_factory=list)

    @property
    def reports(self) -> list:
        return self.levels + self.extra

    @property
    def status(self) -> str:
        return combine_status(r.status for r in self.reports)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def verdicts(self) -> list:
        return [(r.passed, r.details.get("identified_dim")) for r in self.levels]

    def failing(self) -> list:
        return [r for r in self.reports if not r.passed]

    def to_dict(self) -> dict:
        return {"check": self.check, "anchor": self.anchor, "status": self.status,
                "levels": [r.to_dict() for r in self.levels], "extra": [r.to_dict() for r in self.extra]}


def _absorb(rep: CheckReport, sub: CheckReport, prefix: str):
    for k, r in sub.residuals.items():
        r.name = f"{prefix}:{k}"
        rep.add(r)
    for f in sub.failures:
        rep.failures.append({**f, "message": f"{prefix}: {f['message']}"})


def _tol_leak(leak: Fraction, p: int, tol: int) -> bool:
    return leak <= Fraction(1, p ** tol)


# -- admissible side -------------------------------------------------------------


def check_admissible(S: AdmissibleStructure, tol: int = DEFAULT_TOL) -> StructureReport:
    """Per level: comodule axioms, cogeneration witness, transition, and ``V□_C C_n ≅ V_n``.

    ``V`` is represented by the top window level; ``C_n`` is a left comodule
    over the top coalgebra via ``(φ_n⊗id)∘Δ_n``.  The identification is
    exhibited by ``ι_n = (t_n⊗id)∘ρ_n`` into the cotensor product.
    """
    C = S.system
    top = S.depth - 1
    Vtop, Ctop = S.levels[top], C.levels[top]
    p = C.prime
    out = StructureReport(f"admissible:{S.name}", "admissible comodule")
    for n, V in enumerate(S.levels):
        Cn = C.levels[n]
        rep = CheckReport(f"admissible:{S.name}:level{n}", "admissible comodule")
        _absorb(rep, check_comodule(V, tol), "comodule")
        # finite cogeneration
        target = S.cofree_target(n)
        w = S.witnesses[n]
        _absorb(rep, comodule_morphism_report(w, V, target, tol), "witness")
        kdim = kernel_subspace(w, tol).dim
        if kdim:
            rep.fail("cogeneration witness is not injective", kernel_dim=kdim)
        rep.details["k"] = S.ranks[n]
        # transition to the next level is a comodule map along φ_n
        if n < top:
            pushed = restrict(V, C.transitions[n], C.levels[n + 1], tol, check=False)
            _absorb(rep, comodule_morphism_report(S.transitions[n], pushed, S.levels[n + 1], tol), "transition")
        # cotensor identification
        phi = C.transition(n, top)
        prod = cotensor(Vtop, pushed_left(Cn, phi, Ctop), tol, regular(Cn))
        U = prod.subspace
        iota_amb = compose(tensor_op(S.transition(n, top), Cn.identity()), V.coaction)
        iota_amb = _reshape(iota_amb, V.space, U.space)
        Us = U.as_space()
        cols, leak = {}, Fraction(0)
        for lab in V.space.labels:
            img = iota_amb.column(lab)
            leak = max(leak, U.residual(img).norm())
            cols[lab] = Vec(Us, {m: img[m] for m in U.leads if not img[m].is_exact_zero}, check=False)
        iota = Op(V.space, Us, cols)
        rep.details.update(level_dim=V.dim, identified_dim=U.dim, ambient_dim=U.space.rank,
                           stability_leak=prod.report.details.get("stability_leak"))
        rel = echelon(list(dual_op(cotensor_map(Vtop, pushed_left(Cn, phi, Ctop))).columns.values()), tol,
                      space=U.space.dual())
        rep.details["relations_dim"] = rel.dim
        rep.details["rank_identity"] = U.dim + rel.dim == U.space.rank
        if not _tol_leak(leak, p, tol):
            rep.fail("ι_n leaves the cotensor product", leak=leak)
        if U.dim != V.dim:
            rep.fail("dimension mismatch between V_n and V□C_n", level_dim=V.dim, cotensor_dim=U.dim,
                     cotensor_basis=U)
        elif kernel_subspace(iota, tol).dim:
            rep.fail("ι_n is not injective", kernel=kernel_subspace(iota, tol).basis[0])
        _absorb(rep, comodule_morphism_report(iota, V, prod.comodule, tol), "identification")
        for f in prod.report.failures:
            rep.failures.append(f)
        out.levels.append(rep)
    return out


def window_stability(S: AdmissibleStructure, window: int, tol: int = DEFAULT_TOL) -> CheckReport:
    """Level verdicts inside a window of ``window`` levels, versus the window grown by one."""
    if S.depth < window + 1:
        raise ConfigInvalid(f"window stability at {window} needs {window + 1} levels, have {S.depth}")
    small = check_admissible(S.truncate(window), tol)
    big = check_admissible(S.truncate(window + 1), tol)
    a, b = small.verdicts(), big.verdicts()[:window]
    rep = CheckReport(f"window_stability:{S.name}:{window}", "window stability of admissibility verdicts")
    rep.details.update(window=window, small=a, grown=b, small_status=small.status, grown_status=big.status)
    for n, (x, y) in enumerate(zip(a, b)):
        if x != y:
            rep.fail("verdict changes when the window grows", level=n, small=list(x), grown=list(y))
    return rep


# -- coadmissible side -------------------------------------------------------------


def check_coadmissible(S: CoadmissibleStructure, tol: int = DEFAULT_TOL) -> StructureReport:
    """Per level: module axioms, generation witness, transition, and ``M⊗_A A_n ≅ M_n``.

    ``M`` is the top window level; the map ``m⊗x ↦ τ_n(m)·x`` must kill the
    relations, be surjective, and the quotient must have the dimension of ``M_n``.
    """
    A = S.system
    top = S.depth - 1
    Mtop = S.levels[top]
    out = StructureReport(f"coadmissible:{S.name}", "coadmissible module")
    for n, M in enumerate(S.levels):
        An = A.levels[n]
        rep = CheckReport(f"coadmissible:{S.name}:level{n}", "coadmissible module")
        _absorb(rep, check_module(M, tol), "module")
        src = S.free_source(n)
        w = S.witnesses[n]
        _absorb(rep, module_morphism_report(w, src, M, tol), "witness")
        cok = cokernel_dim(w, tol)
        if cok:
            rep.fail("generation witness is not surjective", cokernel_dim=cok)
        rep.details["k"] = S.ranks[n]
        if n < top:
            tau = S.transitions[n]
            psi = A.transitions[n]
            D = compose(tau, S.levels[n + 1].action) - compose(M.action, tensor_op(tau, psi))
            rep.add(measure(D, tol, "transition:intertwining"))
        psi = A.transition(top, n)
        bc = base_change(Mtop, psi, An, tol)
        mu = compose(M.action, tensor_op(S.transition(top, n), An.identity()))
        mu = _reshape(mu, bc.ambient, M.space)
        rep.add(measure(compose(mu, tensor_relations(Mtop, psi, An)), tol, "relations_killed"))
        img = cokernel_dim(mu, tol)
        rep.details.update(level_dim=M.dim, identified_dim=bc.dim, ambient_dim=bc.ambient.rank,
                           relations_dim=bc.relations.dim)
        if bc.dim != M.dim:
            rep.fail("dimension mismatch between M_n and M⊗_A A_n", level_dim=M.dim, base_change_dim=bc.dim)
        elif img:
            rep.fail("natural map onto M_n is not surjective", cokernel_dim=img)
        out.levels.append(rep)
    return out


# -- duality -------------------------------------------------------------------------


def dualize_admissible(S: AdmissibleStructure, tol: int = DEFAULT_TOL) -> CoadmissibleStructure:
    """Level duals ``V_n'`` as right modules over the convolution algebras ``C_n'``."""
    rep = check_admissible(S, tol)
    if not rep.passed:
        raise SourceCheckFailed(f"{S.name} is not admissible at this window", rep)
    A = dualize_ct(S.system)
    mods = []
    for V, An in zip(S.levels, A.levels):
        Vd = V.space.dual()
        mods.append(Module(Vd, An, _reshape(dual_op(V.coaction), tensor_space(Vd, An.space), Vd), f"{V.name}'"))
    trans = [dual_op(t) for t in S.transitions]
    wits = []
    for n, w in enumerate(S.witnesses):
        src = free_module(A.levels[n], _generators(A.prime, S.ranks[n], dual=True))
        wits.append(_reshape(dual_op(w), src.space, mods[n].space))
    return CoadmissibleStructure(A, mods, trans, wits, list(S.ranks), f"{S.name}'")


def dualize_coadmissible(S: CoadmissibleStructure, tol: int = DEFAULT_TOL) -> AdmissibleStructure:
    """Level duals ``M_n'`` as right comodules over the coalgebras ``A_n'``."""
    rep = check_coadmissible(S, tol)
    if not rep.passed:
        raise SourceCheckFailed(f"{S.name} is not coadmissible at this window", rep)
    C = dualize_nf(S.system)
    comods = []
    for M, Cn in zip(S.levels, C.levels):
        Md = M.space.dual()
        comods.append(Comodule(Md, Cn, _reshape(dual_op(M.action), Md, tensor_space(Md, Cn.space)), RIGHT,
                               M.name[:-1] if M.name.endswith("'") else f"{M.name}'"))
    trans = [dual_op(t) for t in S.transitions]
    wits = []
    for n, w in enumerate(S.witnesses):
        target = cofree(_generators(C.prime, S.ranks[n]), C.levels[n])
        wits.append(_reshape(dual_op(w), comods[n].space, target.space))
    name = S.name[:-1] if S.name.endswith("'") else f"{S.name}'"
    return AdmissibleStructure(C, comods, trans, wits, list(S.ranks), name)


def admissible_roundtrip(S: AdmissibleStructure, tol: int = DEFAULT_TOL) -> CheckReport:
    """``dualize_coadmissible(dualize_admissible(S))`` against ``S`` level by level."""
    back = dualize_coadmissible(dualize_admissible(S, tol), tol)
    rep = CheckReport(f"admissible_roundtrip:{S.name}", "antiequivalence of admissible and coadmissible objects")
    rep.details["target_status"] = check_admissible(back, tol).status
    for n, (V, W) in enumerate(zip(S.levels, back.levels)):
        if V.space != W.space:
            rep.fail("level spaces differ after the roundtrip", level=n)
            continue
        rep.add(measure(W.coaction - _reshape(V.coaction, W.coaction.domain, W.coaction.codomain), tol,
                        f"level{n}:coaction"))
        rep.add(measure(back.witnesses[n] - S.witnesses[n], tol, f"level{n}:witness"))
    for n, (t, u) in enumerate(zip(S.transitions, back.transitions)):
        rep.add(measure(u - t, tol, f"transition{n}"))
    return rep


def coadmissible_roundtrip(S: CoadmissibleStructure, tol: int = DEFAULT_TOL) -> CheckReport:
    back = dualize_admissible(dualize_coadmissible(S, tol), tol)
    rep = CheckReport(f"coadmissible_roundtrip:{S.name}", "antiequivalence of admissible and coadmissible objects")
    for n, (M, N) in enumerate(zip(S.levels, back.levels)):
        rep.add(measure(N.action - _reshape(M.action, N.action.domain, N.action.codomain), tol,
                        f"level{n}:action"))
        rep.add(measure(back.witnesses[n] - S.witnesses[n], tol, f"level{n}:witness"))
    for n, (t, u) in enumerate(zip(S.transitions, back.transitions)):
        rep.add(measure(u - t, tol, f"transition{n}"))
    return rep


# -- induction -------------------------------------------------------------------------


def induction_preserves_admissibility(phis: Sequence[Op], A: CTSystem, W: AdmissibleStructure,
                                      tol: int = DEFAULT_TOL) -> StructureReport:
    """Induce ``W`` level-wise along ``φ_n: A_n -> B_n`` and check the result is admissible over ``A``."""
    B = W.system
    out = StructureReport(f"induction:{W.name}", "induction preserves admissibility")
    pre = CheckReport(f"induction:{W.name}:morphisms", "coalgebra morphism")
    for n, phi in enumerate(phis):
        _absorb(pre, coalgebra_morphism_report(phi, A.levels[n], B.levels[n], tol), f"phi{n}")
        if n < len(phis) - 1:
            sq = compose(B.transitions[n], phi) - compose(phis[n + 1], A.transitions[n])
            pre.add(measure(sq, tol, f"square{n}"))
    out.extra.append(pre)
    if not pre.passed:
        bad = [k for k, r in pre.residuals.items() if not r.passed]
        pre.fail("induction data is not a morphism of systems", error="NotACoalgebraMorphism", residuals=bad)
        return out
    prods = [cotensor(Wn, pushed_left(An, phi, Bn), tol, regular(An))
             for Wn, An, Bn, phi in zip(W.levels, A.levels, B.levels, phis)]
    levels = [pr.comodule for pr in prods]
    trans = []
    for n in range(len(prods) - 1):
        T = tensor_op(W.transitions[n], A.transitions[n])
        T = _reshape(T, prods[n].subspace.space, prods[n + 1].subspace.space)
        R, leak = restrict_op(T, prods[n].subspace, prods[n + 1].subspace, tol)
        pre.details[f"transition{n}_leak"] = leak
        if not _tol_leak(leak, A.prime, tol):
            pre.fail("induced transition leaves the cotensor product", level=n, leak=leak)
        trans.append(R)
    wits = []
    for n, (pr, Wn, Bn, An) in enumerate(zip(prods, W.levels, B.levels, A.levels)):
        X = _generators(A.prime, W.ranks[n])
        squash = tensor_op(tensor_op(Op.identity(X, An.precision), Bn.counit), An.identity())
        amb = compose_all(squash, tensor_op(W.witnesses[n], An.identity()), pr.subspace.inclusion())
        wits.append(_reshape(amb, pr.space, tensor_space(X, An.space)))
    induced = AdmissibleStructure(A, levels, trans, wits, list(W.ranks), f"{W.name}^φ")
    res = check_admissible(induced, tol)
    for r in res.levels:
        r.check = r.check.replace("admissible:", "induction:", 1)
    out.levels = res.levels
    for n, pr in enumerate(prods):
        out.levels[n].details["induced_dim"] = pr.dim
    return out


# -- catalog ---------------------------------------------------------------------------


def power_admissible(system: CTSystem, k: int = 1, name: str | None = None) -> AdmissibleStructure:
    """``V = C^k`` realised level-wise as ``X⊗C_n`` with ``ρ = id⊗Δ``."""
    if k < 1:
        raise ConfigInvalid("power must be at least 1")
    p = system.prime
    X = _generators(p, k)
    IX = Op.identity(X, system.levels[0].precision)
    levels = [cofree(X, C, f"C^{k}[{n}]") for n, C in enumerate(system.levels)]
    trans = [_reshape(tensor_op(IX, t), levels[n].space, levels[n + 1].space)
             for n, t in enumerate(system.transitions)]
    wits = [V.identity() for V in levels]
    return AdmissibleStructure(system, levels, trans, wits, [k] * len(levels),
                               name or (f"regular({system.name})" if k == 1 else f"power{k}({system.name})"))


def regular_admissible(system: CTSystem) -> AdmissibleStructure:
    return power_admissible(system, 1)


def enlarge_level(S: AdmissibleStructure, level: int) -> AdmissibleStructure:
    """Add a vector ``e`` with ``ρe = e⊗g`` (``g`` grouplike) at one level; it maps to zero upstream."""
    if not 0 <= level < S.depth:
        raise ConfigInvalid(f"level {level} outside a window of depth {S.depth}")
    V = S.levels[level]
    C = S.system.levels[level]
    g = find_grouplike(C)
    if g is None:
        raise ConfigInvalid(f"{C.name} has no grouplike vector to enlarge with")
    p = C.prime
    one = PadicScalar.one(p, C.precision)
    extra = ("x*", "e") if V.space.arity == 2 else "e*"
    Vs = TruncatedSpace(p, list(V.space.labels) + [extra], list(V.space.weight_exps) + [C.space.weight_exp(g)],
                        V.space.arity)
    VC = tensor_space(Vs, C.space)
    cols = {lab: Vec(VC, V.coaction.column(lab).coeffs, check=False) for lab in V.space.labels}
    cols[extra] = Vec(VC, {join_labels(extra, Vs.arity, g, C.space.arity): one}, check=False)
    bigV = Comodule(Vs, C, Op(Vs, VC, cols), RIGHT, f"{V.name}+e")
    k = S.ranks[level] + 1
    target = cofree(_generators(p, k), C)
    wcols = {lab: Vec(target.space, S.witnesses[level].column(lab).coeffs, check=False) for lab in V.space.labels}
    wcols[extra] = Vec(target.space, {join_labels(f"x{k - 1}", 1, g, C.space.arity): one}, check=False)
    levels = list(S.levels)
    levels[level] = bigV
    trans = list(S.transitions)
    if level > 0:
        t = trans[level - 1]
        trans[level - 1] = Op(t.domain, Vs, {lab: Vec(Vs, v.coeffs, check=False) for lab, v in t.columns.items()},
                              t.col_tails)
    if level < S.depth - 1:
        t = trans[level]
        trans[level] = Op(Vs, t.codomain, dict(t.columns), t.col_tails)
    wits = list(S.witnesses)
    wits[level] = Op(Vs, target.space, wcols)
    ranks = list(S.ranks)
    ranks[level] = k
    return AdmissibleStructure(S.system, levels, trans, wits, ranks, f"{S.name}~enlarged{level}")


def corrupted(S: AdmissibleStructure, level: int) -> AdmissibleStructure:
    """Perturb the coaction of one level by a norm-1 entry."""
    if not 0 <= level < S.depth:
        raise ConfigInvalid(f"level {level} outside a window of depth {S.depth}")
    V = S.levels[level]
    lab = V.space.labels[-1]
    bad = perturbed(V.coaction, lab, V.coaction.codomain.labels[0])
    levels = list(S.levels)
    levels[level] = Comodule(V.space, V.over, bad, V.side, f"{V.name}~")
    return AdmissibleStructure(S.system, levels, list(S.transitions), list(S.witnesses), list(S.ranks),
                               f"{S.name}~corrupted{level}")


def with_grouplike_line(system: CTSystem) -> tuple:
    """``B_n = A_n ⊕ K·g`` with the summand inclusions ``A_n -> B_n``."""
    g = grouplike_line(system.prime, system.levels[0].precision)
    levels = [direct_sum_coalgebra([C, g], ["A", "g"], name=f"{C.name}+Kg") for C in system.levels]
    trans = [direct_sum_op([t, g.identity()], ["A", "g"], ["A", "g"]) for t in system.transitions]
    B = CTSystem(levels, trans, f"{system.name}+Kg")
    incs = [summand_inclusion([C, g], 0, ["A", "g"]) for C in system.levels]
    return B, incs
