"""Coalgebras, algebras and Hopf algebras given by structure operators."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import NotACoalgebraMorphism, NotACoideal, SpaceMismatch
from ..linalg import (
    Op,
    Subspace,
    TruncatedSpace,
    Vec,
    compose,
    compose_all,
    dual_op,
    echelon,
    pair,
    permute_op,
    scalar_space,
    split_label,
    tensor_op,
    tensor_space,
)
from ..residual import CheckReport, measure
from ..scalar import DEFAULT_PRECISION, PadicScalar

DEFAULT_TOL = 20


@dataclass
class Coalgebra:
    """``(C, Δ, ε)`` with ``Δ: C -> C⊗C`` and ``ε: C -> K``."""

    space: TruncatedSpace
    comult: Op
    counit: Op
    name: str = "C"
    precision: int = DEFAULT_PRECISION
    _dual: Op | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        C = self.space
        if self.comult.domain != C or self.comult.codomain != tensor_space(C, C):
            raise SpaceMismatch("comultiplication must map C to C⊗C")
        if self.counit.domain != C or self.counit.codomain.arity != 0:
            raise SpaceMismatch("counit must map C to K")

    @property
    def prime(self) -> int:
        return self.space.prime

    @property
    def rank(self) -> int:
        return self.space.rank

    def identity(self) -> Op:
        return Op.identity(self.space, self.precision)

    def dual_product(self) -> Op:
        """Convolution product ``C'⊗C' -> C'``, the transpose of Δ."""
        if self._dual is None:
            self._dual = dual_op(self.comult)
        return self._dual

    def dual_algebra(self) -> "Algebra":
        return Algebra(self.space.dual(), self.dual_product(), dual_op(self.counit),
                       name=f"{self.name}'", precision=self.precision)

    def left_factors(self, v: Vec) -> list:
        """The vectors ``(id ⊗ e_b')Δv`` for every label ``b``."""
        return _factor_components(self.comult(v), self.space, left=True)

    def right_factors(self, v: Vec) -> list:
        return _factor_components(self.comult(v), self.space, left=False)

    def to_dict(self) -> dict:
        return {"name": self.name, "space": self.space.to_dict(), "comult": self.comult.to_dict(),
                "counit": self.counit.to_dict()}


def _factor_components(t: Vec, C: TruncatedSpace, left: bool) -> list:
    groups: dict = {}
    ar = C.arity
    for lab, x in t.coeffs.items():
        a, b = split_label(lab, [ar, ar])
        key, keep = (b, a) if left else (a, b)
        groups.setdefault(key, {})[keep] = x
    return [Vec(C, groups[k], check=False) for k in sorted(groups, key=C.index)]


@dataclass
class Algebra:
    """Banach algebra ``(A, m, u)``."""

    space: TruncatedSpace
    mult: Op
    unit: Op
    name: str = "A"
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        A = self.space
        if self.mult.domain != tensor_space(A, A) or self.mult.codomain != A:
            raise SpaceMismatch("multiplication must map A⊗A to A")
        if self.unit.codomain != A or self.unit.domain.arity != 0:
            raise SpaceMismatch("unit must map K to A")

    @property
    def prime(self) -> int:
        return self.space.prime

    def product(self, a: Vec, b: Vec) -> Vec:
        return self.mult(a.tensor(b))

    def one(self) -> Vec:
        return self.unit.column(())

    def identity(self) -> Op:
        return Op.identity(self.space, self.precision)

    def dual_coalgebra(self) -> Coalgebra:
        """At finite rank the transpose of ``m`` is a comultiplication on ``A'``."""
        return Coalgebra(self.space.dual(), dual_op(self.mult), dual_op(self.unit),
                         name=f"{self.name}'", precision=self.precision)

    def to_dict(self) -> dict:
        return {"name": self.name, "space": self.space.to_dict(), "mult": self.mult.to_dict(),
                "unit": self.unit.to_dict()}


@dataclass
class HopfAlgebra(Coalgebra):
    mult: Op | None = None
    unit: Op | None = None
    antipode: Op | None = None

    def algebra(self) -> Algebra:
        return Algebra(self.space, self.mult, self.unit, name=self.name, precision=self.precision)

    def coalgebra(self) -> Coalgebra:
        return Coalgebra(self.space, self.comult, self.counit, name=self.name, precision=self.precision)

    def to_dict(self) -> dict:
        d = super().to_dict()
        d.update(mult=self.mult.to_dict(), unit=self.unit.to_dict(), antipode=self.antipode.to_dict())
        return d


# -- axiom checks -------------------------------------------------------------


def coalgebra_residuals(C: Coalgebra, tol: int) -> list:
    I = C.identity()
    D = C.comult
    coassoc = compose(tensor_op(D, I), D) - compose(tensor_op(I, D), D)
    left = compose(tensor_op(C.counit, I), D) - I
    right = compose(tensor_op(I, C.counit), D) - I
    return [measure(coassoc, tol, "coassociativity"), measure(left, tol, "counit_left"),
            measure(right, tol, "counit_right")]


def check_coalgebra(C: Coalgebra, tol: int = DEFAULT_TOL) -> CheckReport:
    """Residual norms of coassociativity and both counit laws."""
    rep = CheckReport(f"coalgebra:{C.name}", "coalgebra object axioms")
    for r in coalgebra_residuals(C, tol):
        rep.add(r)
    rep.details["rank"] = C.rank
    return rep


def algebra_residuals(A: Algebra, tol: int) -> list:
    I = A.identity()
    m, u = A.mult, A.unit
    assoc = compose(m, tensor_op(m, I)) - compose(m, tensor_op(I, m))
    left = compose(m, tensor_op(u, I)) - I
    right = compose(m, tensor_op(I, u)) - I
    return [measure(assoc, tol, "associativity"), measure(left, tol, "unit_left"),
            measure(right, tol, "unit_right")]


def check_algebra(A: Algebra, tol: int = DEFAULT_TOL) -> CheckReport:
    rep = CheckReport(f"algebra:{A.name}", "algebra object axioms")
    for r in algebra_residuals(A, tol):
        rep.add(r)
    return rep


def convolve_endo(H: HopfAlgebra, f: Op, g: Op) -> Op:
    """``f ⋆ g = m ∘ (f⊗g) ∘ Δ`` on endomorphisms."""
    return compose_all(H.mult, tensor_op(f, g), H.comult)


def check_hopf(H: HopfAlgebra, tol: int = DEFAULT_TOL) -> CheckReport:
    """All bialgebra and antipode identities as residual norms."""
    rep = CheckReport(f"hopf:{H.name}", "Hopf algebra antipode axioms")
    for r in algebra_residuals(H.algebra(), tol):
        rep.add(r)
    for r in coalgebra_residuals(H, tol):
        rep.add(r)
    C = H.space
    I = H.identity()
    K = scalar_space(H.prime)
    m, u, D, e, S = H.mult, H.unit, H.comult, H.counit, H.antipode
    middle = permute_op([C, C, C, C], [0, 2, 1, 3], H.precision)
    lhs = compose(D, m)
    rhs = compose_all(tensor_op(m, m), middle, tensor_op(D, D))
    rep.add(measure(lhs - rhs, tol, "bialgebra"))
    rep.add(measure(compose(e, m) - tensor_op(e, e), tol, "counit_multiplicative"))
    rep.add(measure(compose(D, u) - tensor_op(u, u), tol, "unit_grouplike"))
    rep.add(measure(compose(e, u) - Op.identity(K, H.precision), tol, "counit_unit"))
    ue = compose(u, e)
    rep.add(measure(convolve_endo(H, S, I) - ue, tol, "antipode_left"))
    rep.add(measure(convolve_endo(H, I, S) - ue, tol, "antipode_right"))
    rep.details["rank"] = H.rank
    return rep


# -- morphisms ----------------------------------------------------------------


def coalgebra_morphism_report(phi: Op, C: Coalgebra, B: Coalgebra, tol: int = DEFAULT_TOL) -> CheckReport:
    """Residuals of ``Δ_B φ = (φ⊗φ) Δ_C`` and ``ε_B φ = ε_C``."""
    if phi.domain != C.space or phi.codomain != B.space:
        raise SpaceMismatch("morphism does not map C to B")
    rep = CheckReport(f"coalgebra_morphism:{C.name}->{B.name}", "coalgebra morphism")
    rep.add(measure(compose(B.comult, phi) - compose(tensor_op(phi, phi), C.comult), tol, "comult"))
    rep.add(measure(compose(B.counit, phi) - C.counit, tol, "counit"))
    return rep


def require_coalgebra_morphism(phi: Op, C: Coalgebra, B: Coalgebra, tol: int = DEFAULT_TOL) -> CheckReport:
    rep = coalgebra_morphism_report(phi, C, B, tol)
    if not rep.passed:
        raise NotACoalgebraMorphism(f"map {C.name} -> {B.name} is not a coalgebra morphism",
                                    {k: r.value for k, r in rep.residuals.items()})
    return rep


def algebra_morphism_report(psi: Op, A: Algebra, B: Algebra, tol: int = DEFAULT_TOL) -> CheckReport:
    rep = CheckReport(f"algebra_morphism:{A.name}->{B.name}", "algebra morphism")
    rep.add(measure(compose(psi, A.mult) - compose(B.mult, tensor_op(psi, psi)), tol, "mult"))
    rep.add(measure(compose(psi, A.unit) - B.unit, tol, "unit"))
    return rep


# -- convolution ----------------------------------------------------------------


def convolve(C: Coalgebra, alpha: Vec, beta: Vec) -> Vec:
    """``α ⋆ β = (α⊗β) ∘ Δ`` as a functional on C."""
    Cd = C.space.dual()
    if alpha.space.labels != Cd.labels or beta.space.labels != Cd.labels:
        raise SpaceMismatch("functionals must live on the dual of the coalgebra")
    a = Vec(Cd, alpha.coeffs, check=False)
    b = Vec(Cd, beta.coeffs, check=False)
    return C.dual_product()(a.tensor(b))


def evaluate(functional: Vec, v: Vec) -> PadicScalar:
    return pair(functional, v)


# -- coideals and subcoalgebras -------------------------------------------------


def quotient_by_coideal(C: Coalgebra, I: Sequence[Vec], tol: int = DEFAULT_TOL, name: str | None = None):
    """Quotient coalgebra ``C/I`` on the complement labels, the projection, and a report.

    Membership of ``Δ(v)`` in ``I⊗C + C⊗I`` is decided as ``(π⊗π)Δ(v) = 0``
    where ``π`` is the echelon projection killing ``I``.
    """
    U = echelon(list(I), tol, space=C.space) if I else Subspace(C.space, [], [], tol)
    pi = U.quotient_map()
    Q = pi.codomain
    pipi = tensor_op(pi, pi)
    thr = Fraction(1, C.prime ** tol)
    for b in U.basis:
        bv = Vec(C.space, b.coeffs, check=False)
        eps = C.counit(bv).norm()
        if eps > thr:
            raise NotACoideal("counit does not vanish on the generator", bv, eps)
        defect = pipi(C.comult(bv)).norm()
        if defect > thr * max(bv.norm(), 1):
            raise NotACoideal("comultiplication leaves I⊗C + C⊗I", bv, defect)
    sigma = Op(Q, C.space, {lab: Vec.basis(C.space, lab, C.precision) for lab in Q.labels})
    comult = compose_all(pipi, C.comult, sigma)
    counit = compose(C.counit, sigma)
    QC = Coalgebra(Q, comult, counit, name=name or f"{C.name}/I", precision=C.precision)
    rep = check_coalgebra(QC, tol)
    rep.check = f"quotient:{QC.name}"
    rep.anchor = "quotient by a coideal"
    rep.add(measure(compose(comult, pi) - compose(pipi, C.comult), tol, "projection_comult"))
    rep.add(measure(compose(counit, pi) - C.counit, tol, "projection_counit"))
    rep.details.update(quotient_rank=Q.rank, coideal_dim=U.dim)
    return QC, pi, rep


def subcoalgebra_generated(C: Coalgebra, S: Sequence[Vec], tol: int = DEFAULT_TOL) -> Subspace:
    """Smallest iterate-closed ``U ⊇ S`` with ``Δ(U) ⊆ U⊗U``."""
    if not S:
        return Subspace(C.space, [], [], tol)
    U = echelon(list(S), tol, space=C.space)
    while True:
        gens = list(U.basis)
        for b in U.basis:
            bv = Vec(C.space, b.coeffs, check=False)
            gens.extend(C.left_factors(bv))
            gens.extend(C.right_factors(bv))
        V = echelon(gens, tol, space=C.space)
        if V.dim == U.dim:
            return V
        U = V


def is_closed_subcoalgebra(C: Coalgebra, U: Subspace, tol: int = DEFAULT_TOL) -> bool:
    for b in U.basis:
        bv = Vec(C.space, b.coeffs, check=False)
        for f in C.left_factors(bv) + C.right_factors(bv):
            if not U.contains(f, tol):
                return False
    return True


# -- dual coalgebra membership --------------------------------------------------


@dataclass
class MembershipCertificate:
    """``f ∘ m = Σ g_i ⊗ h_i`` with the factors, their norm and a reconstruction residual."""

    length: int
    left: list
    right: list
    norm: Fraction
    residual: Fraction

    def to_dict(self) -> dict:
        return {"length": self.length, "norm": str(self.norm), "residual": str(self.residual),
                "left": [g.to_dict() for g in self.left], "right": [h.to_dict() for h in self.right]}


def dual_coalgebra_membership(A: Algebra, f: Vec, tol: int = DEFAULT_TOL) -> MembershipCertificate:
    """Finite decomposition of ``m'(f)`` in ``A'⊗A'`` by a rank factorisation."""
    As = A.space
    Ad = As.dual()
    if f.space.labels != As.labels:
        raise SpaceMismatch("functional must live on the dual of the algebra")
    fd = Vec(Ad, f.coeffs, check=False)
    mf = dual_op(A.mult)(fd)
    rows = {}
    ar = As.arity
    for lab, x in mf.coeffs.items():
        a, b = split_label(lab, [ar, ar])
        rows.setdefault(a, {})[b] = x
    row_vecs = [Vec(Ad, rows[a], check=False) for a in As.labels if a in rows]
    if not row_vecs:
        return MembershipCertificate(0, [], [], Fraction(0), Fraction(0))
    R = echelon(row_vecs, tol, space=Ad)
    left, right = [], []
    for lead, h in zip(R.leads, R.basis):
        g = Vec(Ad, {a: rows[a][lead] for a in rows if lead in rows[a]}, check=False)
        left.append(g)
        right.append(Vec(Ad, h.coeffs, check=False))
    recon = Vec(tensor_space(Ad, Ad))
    for g, h in zip(left, right):
        recon = recon + g.tensor(h)
    resid = (recon - mf).norm()
    nrm = max((g.norm() * h.norm() for g, h in zip(left, right)), default=Fraction(0))
    return MembershipCertificate(len(left), left, right, nrm, resid)
