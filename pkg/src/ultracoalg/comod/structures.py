"""Comodules, comodule morphisms, module actions and rationality."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from ..coalg.structures import DEFAULT_TOL, Coalgebra, convolve
from ..errors import NotAComoduleMorphism, NotAModuleAction, SpaceMismatch
from ..linalg import (
    Op,
    TruncatedSpace,
    Vec,
    compose,
    dual_op,
    join_labels,
    split_label,
    tensor_op,
    tensor_space,
)
from ..residual import CheckReport, measure

RIGHT = "right"
LEFT = "left"


@dataclass
class Comodule:
    """``ρ: V -> V⊗C`` (right) or ``ρ: V -> C⊗V`` (left)."""

    space: TruncatedSpace
    over: Coalgebra
    coaction: Op
    side: str = RIGHT
    name: str = "V"

    def __post_init__(self):
        V, C = self.space, self.over.space
        want = tensor_space(V, C) if self.side == RIGHT else tensor_space(C, V)
        if self.side not in (RIGHT, LEFT):
            raise ValueError("side must be 'left' or 'right'")
        if self.coaction.domain != V or self.coaction.codomain != want:
            raise SpaceMismatch(f"coaction of {self.name} has the wrong shape")

    @property
    def prime(self) -> int:
        return self.space.prime

    @property
    def dim(self) -> int:
        return self.space.rank

    def identity(self) -> Op:
        return Op.identity(self.space, self.over.precision)

    def components(self, v: Vec) -> dict:
        """``ρ(v)`` grouped by coalgebra label: ``c -> (id⊗e_c')ρ(v)``."""
        V, C = self.space, self.over.space
        ar = [V.arity, C.arity] if self.side == RIGHT else [C.arity, V.arity]
        groups: dict = {}
        for lab, x in self.coaction(v).coeffs.items():
            a, b = split_label(lab, ar)
            vl, cl = (a, b) if self.side == RIGHT else (b, a)
            groups.setdefault(cl, {})[vl] = x
        return {c: Vec(V, g, check=False) for c, g in groups.items()}

    def to_dict(self) -> dict:
        return {"name": self.name, "side": self.side, "over": self.over.name,
                "space": self.space.to_dict(), "coaction": self.coaction.to_dict()}


def check_comodule(M: Comodule, tol: int = DEFAULT_TOL) -> CheckReport:
    """Counit and coassociativity residuals of the coaction."""
    C = M.over
    I, IC = M.identity(), C.identity()
    rho = M.coaction
    if M.side == RIGHT:
        counit = compose(tensor_op(I, C.counit), rho) - I
        coassoc = compose(tensor_op(rho, IC), rho) - compose(tensor_op(I, C.comult), rho)
    else:
        counit = compose(tensor_op(C.counit, I), rho) - I
        coassoc = compose(tensor_op(IC, rho), rho) - compose(tensor_op(C.comult, I), rho)
    rep = CheckReport(f"comodule:{M.name}", "comodule axioms")
    rep.add(measure(counit, tol, "counit"))
    rep.add(measure(coassoc, tol, "coassociativity"))
    rep.details.update(dim=M.dim, side=M.side, over=C.name)
    return rep


@dataclass
class ComoduleMorphism:
    map: Op
    source: Comodule
    target: Comodule

    def defect(self) -> Op:
        return comodule_morphism_defect(self.map, self.source, self.target)


def comodule_morphism_defect(f: Op, M: Comodule, N: Comodule) -> Op:
    """``(f⊗id)ρ_M - ρ_N f`` (or the left-handed analogue)."""
    if f.domain != M.space or f.codomain != N.space:
        raise SpaceMismatch("map does not go between the comodule spaces")
    IC = M.over.identity()
    if M.side == RIGHT:
        return compose(tensor_op(f, IC), M.coaction) - compose(N.coaction, f)
    return compose(tensor_op(IC, f), M.coaction) - compose(N.coaction, f)


def comodule_morphism_report(f: Op, M: Comodule, N: Comodule, tol: int = DEFAULT_TOL) -> CheckReport:
    rep = CheckReport(f"comodule_morphism:{M.name}->{N.name}", "comodule morphism")
    rep.add(measure(comodule_morphism_defect(f, M, N), tol, "intertwining"))
    return rep


def require_comodule_morphism(f: Op, M: Comodule, N: Comodule, tol: int = DEFAULT_TOL) -> CheckReport:
    rep = comodule_morphism_report(f, M, N, tol)
    if not rep.passed:
        raise NotAComoduleMorphism(f"map {M.name} -> {N.name} does not intertwine the coactions",
                                   rep.residuals["intertwining"].value)
    return rep


# -- actions ------------------------------------------------------------------


def dual_action(M: Comodule, vd: Vec, cd: Vec) -> Vec:
    """``v'·c' = (v'⊗c')∘ρ``: the right ``C'``-action on ``V'`` (right comodules)."""
    Vd, Cd = M.space.dual(), M.over.space.dual()
    a = Vec(Vd, vd.coeffs, check=False)
    b = Vec(Cd, cd.coeffs, check=False)
    t = a.tensor(b) if M.side == RIGHT else b.tensor(a)
    return dual_op(M.coaction)(t)


def induced_action(M: Comodule, lam: Vec, v: Vec) -> Vec:
    """``λ·v = (id⊗λ)ρ(v)``: the left ``C'``-module structure on ``V``."""
    acc = Vec(M.space)
    for c, comp in M.components(v).items():
        x = lam.coeffs.get(c)
        if x is not None:
            acc = acc + comp.scale(x)
    return acc


def action_op(M: Comodule, lam: Vec) -> Op:
    """The operator ``v ↦ λ·v``."""
    return Op.from_function(M.space, M.space, lambda lab: induced_action(M, lam, Vec.basis(M.space, lab)))


def module_action_report(C: Coalgebra, V: TruncatedSpace, act: Mapping, tol: int = DEFAULT_TOL) -> CheckReport:
    """Left ``C'``-module axioms for an action table ``c -> (e_c' acting on V)``."""
    Cd = C.space.dual()
    p = C.prime
    rep = CheckReport("module_action", "module over the convolution algebra")

    def op_of(f: Vec) -> Op:
        out = Op.zero(V, V)
        for c, x in f.coeffs.items():
            A = act.get(c)
            if A is not None:
                out = out + A.scale(x)
        return out

    eps = dual_op(C.counit).column(())
    unit_def = op_of(Vec(Cd, eps.coeffs, check=False)) - Op.identity(V, C.precision)
    rep.add(measure(unit_def, tol, "unit"))
    worst = None
    worst_val = Fraction(0)
    for a in Cd.labels:
        ea = Vec.basis(Cd, a, C.precision)
        for b in Cd.labels:
            eb = Vec.basis(Cd, b, C.precision)
            prod = op_of(convolve(C, ea, eb))
            A, B = act.get(a), act.get(b)
            comp = compose(A, B) if A is not None and B is not None else Op.zero(V, V)
            d = (prod - comp).norm()
            if d > worst_val:
                worst_val, worst = d, (a, b)
    thr = Fraction(1, p ** tol)
    rep.details["associativity_residual"] = worst_val
    if worst_val > thr:
        rep.fail("action does not respect the convolution product", pair=list(worst))
    rep.details["counterexample"] = list(worst) if worst else None
    return rep


@dataclass
class RationalityResult:
    is_rational_at_truncation: bool
    comodule: Comodule | None
    report: CheckReport

    def to_dict(self) -> dict:
        return {"is_rational_at_truncation": self.is_rational_at_truncation, "report": self.report.to_dict()}


def rationality(C: Coalgebra, V: TruncatedSpace, act: Mapping | Callable, tol: int = DEFAULT_TOL,
                name: str = "V") -> RationalityResult:
    """Rebuild ``ρ(m) = Σ_c (e_c'·m) ⊗ e_c`` from a left ``C'``-action and verify it.

    ``act`` maps coalgebra labels to operators on ``V`` (absent labels act by
    zero), or is a callable with the same meaning.
    """
    if callable(act):
        act = {c: act(c) for c in C.space.labels}
    act = {c: A for c, A in act.items() if A is not None}
    mod = module_action_report(C, V, act, tol)
    if not mod.passed:
        a, b = mod.failures[0]["pair"]
        raise NotAModuleAction("table is not a module action of the convolution algebra", (a, b),
                               mod.details["associativity_residual"])
    VC = tensor_space(V, C.space)
    cols = {}
    for lab in V.labels:
        acc = {}
        for c, A in act.items():
            col = A.column(lab)
            for m, x in col.coeffs.items():
                acc[join_labels(m, V.arity, c, C.space.arity)] = x
        cols[lab] = Vec(VC, acc, check=False)
    M = Comodule(V, C, Op(V, VC, cols), RIGHT, name)
    rep = check_comodule(M, tol)
    rep.check = f"rationality:{name}"
    rep.anchor = "rational module from a coaction"
    for k, r in mod.residuals.items():
        rep.residuals[f"module_{k}"] = r
    return RationalityResult(rep.passed, M, rep)
