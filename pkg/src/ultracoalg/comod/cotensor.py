"""Cotensor products, induction and restriction, Frobenius reciprocity, tensor identities."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..coalg.structures import (
    DEFAULT_TOL,
    Coalgebra,
    HopfAlgebra,
    require_coalgebra_morphism,
)
from ..errors import SpaceMismatch
from ..linalg import (
    Op,
    Subspace,
    TruncatedSpace,
    Vec,
    compose,
    compose_all,
    dual_op,
    echelon,
    join_labels,
    kernel_subspace,
    permute_op,
    same_span,
    split_label,
    tensor_op,
    tensor_space,
)
from ..residual import CheckReport, measure
from ..scalar import PadicScalar
from .catalog import left_regular, regular
from .structures import (
    LEFT,
    RIGHT,
    Comodule,
    comodule_morphism_report,
    require_comodule_morphism,
)


def restrict_to_tensor(U: Subspace, T: Op, B: TruncatedSpace, tol: int = DEFAULT_TOL):
    """Restrict ``T: X -> X⊗B`` to ``U -> U⊗B`` in lead coordinates.

    Returns the restricted operator and the largest norm of a component of
    ``T(U)`` outside ``U⊗B`` (zero when ``U`` is stable).
    """
    Us = U.as_space()
    UB = tensor_space(Us, B)
    X = U.space
    cols = {}
    worst = Fraction(0)
    for lead, b in zip(U.leads, U.basis):
        img = T(Vec(X, b.coeffs, check=False))
        groups: dict = {}
        for lab, x in img.coeffs.items():
            xl, bl = split_label(lab, [X.arity, B.arity])
            groups.setdefault(bl, {})[xl] = x
        coords = {}
        for bl, g in groups.items():
            v = Vec(X, g, check=False)
            r = U.residual(v).norm()
            if r > worst:
                worst = r
            for m in U.leads:
                x = g.get(m)
                if x is not None:
                    coords[join_labels(m, Us.arity, bl, B.arity)] = x
        cols[lead] = Vec(UB, coords, check=False)
    return Op(Us, UB, cols), worst


@dataclass
class CotensorProduct:
    """``M□_C N`` as a subspace of ``M⊗N``, optionally with an induced right coaction."""

    subspace: Subspace
    left: Comodule
    right: Comodule
    comodule: Comodule | None = None
    report: CheckReport = field(default_factory=lambda: CheckReport("cotensor", "cotensor product"))

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def space(self) -> TruncatedSpace:
        return self.subspace.as_space()

    def inclusion(self) -> Op:
        return self.subspace.inclusion()


def cotensor_map(M: Comodule, N: Comodule) -> Op:
    """``ρ_M⊗id_N - id_M⊗ρ_N : M⊗N -> M⊗C⊗N``."""
    if M.side != RIGHT or N.side != LEFT:
        raise SpaceMismatch("cotensor needs a right comodule and a left comodule")
    if M.over.space != N.over.space:
        raise SpaceMismatch("comodules over different coalgebras")
    return tensor_op(M.coaction, N.identity()) - tensor_op(M.identity(), N.coaction)


def cotensor(M: Comodule, N: Comodule, precision: int = DEFAULT_TOL, right_coaction: Comodule | None = None,
             name: str | None = None) -> CotensorProduct:
    """Kernel of ``ρ_M⊗id - id⊗ρ_N``.

    ``right_coaction`` is a right comodule on the same space as ``N`` (making
    ``N`` a bicomodule); when given, ``id_M⊗ρ`` is restricted to the kernel and
    its stability is reported as a residual.
    """
    U = kernel_subspace(cotensor_map(M, N), precision)
    name = name or f"{M.name}□{N.name}"
    out = CotensorProduct(U, M, N)
    out.report = CheckReport(f"cotensor:{name}", "cotensor product")
    out.report.details.update(dim=U.dim, ambient=M.dim * N.dim)
    if right_coaction is not None:
        if right_coaction.space != N.space or right_coaction.side != RIGHT:
            raise SpaceMismatch("right coaction must live on the left comodule's space")
        B = right_coaction.over
        T = tensor_op(M.identity(), right_coaction.coaction)
        rho, leak = restrict_to_tensor(U, T, B.space, precision)
        out.comodule = Comodule(U.as_space(), B, rho, RIGHT, name)
        out.report.details["stability_leak"] = leak
        if leak > Fraction(1, M.prime ** precision):
            out.report.fail("induced coaction leaves the cotensor product", leak=leak)
    return out


# -- bicomodules built from coalgebras ------------------------------------------


def pushed_left(C: Coalgebra, phi: Op, B: Coalgebra) -> Comodule:
    """``_φC``: ``C`` as a left ``B``-comodule via ``(φ⊗id)∘Δ_C``."""
    rho = compose(tensor_op(phi, C.identity()), C.comult)
    return Comodule(C.space, B, rho, LEFT, f"_φ{C.name}")


def pushed_right(C: Coalgebra, phi: Op, B: Coalgebra) -> Comodule:
    rho = compose(tensor_op(C.identity(), phi), C.comult)
    return Comodule(C.space, B, rho, RIGHT, f"{C.name}_φ")


# -- induction and restriction ------------------------------------------------


@dataclass
class Induced:
    """``M^φ = M□_B(_φC)`` with its right ``C``-coaction."""

    product: CotensorProduct
    comodule: Comodule
    phi: Op
    source: Comodule

    @property
    def subspace(self) -> Subspace:
        return self.product.subspace


def induce(M: Comodule, phi: Op, C: Coalgebra, precision: int = DEFAULT_TOL, check: bool = True) -> Induced:
    B = M.over
    if check:
        require_coalgebra_morphism(phi, C, B, precision)
    prod = cotensor(M, pushed_left(C, phi, B), precision, regular(C), name=f"{M.name}^φ")
    return Induced(prod, prod.comodule, phi, M)


def restrict(N: Comodule, phi: Op, B: Coalgebra, precision: int = DEFAULT_TOL, check: bool = True) -> Comodule:
    """``N_φ``: coaction ``(id⊗φ)∘ρ_N``."""
    C = N.over
    if check:
        require_coalgebra_morphism(phi, C, B, precision)
    if N.side == RIGHT:
        rho = compose(tensor_op(N.identity(), phi), N.coaction)
    else:
        rho = compose(tensor_op(phi, N.identity()), N.coaction)
    return Comodule(N.space, B, rho, N.side, f"{N.name}_φ")


def counit_projection(ind: Induced) -> Op:
    """``id_M⊗ε_C`` on ``M□_B(_φC)``, as an operator from the induced space to ``M``."""
    M = ind.source
    C = ind.comodule.over
    proj = tensor_op(M.identity(), C.counit)
    return compose(proj, ind.subspace.inclusion())


def counit_projection_report(ind: Induced, precision: int = DEFAULT_TOL) -> CheckReport:
    """The projection as a ``B``-comodule morphism ``(M^φ)_φ -> M`` and its image."""
    M = ind.source
    B = M.over
    proj = counit_projection(ind)
    res = restrict(ind.comodule, ind.phi, B, precision, check=False)
    rep = comodule_morphism_report(proj, res, M, precision)
    rep.check = f"counit_projection:{M.name}"
    rep.anchor = "counit projection onto the maximal subcomodule"
    img = echelon(list(proj.columns.values()), precision, space=M.space)
    rep.details["image_dim"] = img.dim
    rep.details["image"] = img
    return rep


def maximal_subcomodule(M: Comodule, phi: Op, C: Coalgebra, precision: int = DEFAULT_TOL) -> Subspace:
    """``{m : ρ_M(m) ∈ M⊗φ(C)}``, the largest subspace coacting through ``φ(C)``."""
    B = M.over
    img = echelon(list(phi.columns.values()), precision, space=B.space)
    q = img.quotient_map()
    T = compose(tensor_op(M.identity(), q), M.coaction)
    return kernel_subspace(T, precision)


# -- Hom spaces and Frobenius reciprocity ---------------------------------------


def _hom_space(M: TruncatedSpace, N: TruncatedSpace) -> TruncatedSpace:
    labels = [(i, j) for i in range(N.rank) for j in range(M.rank)]
    exps = [N.weight_exps[i] - M.weight_exps[j] for i, j in labels]
    return TruncatedSpace(M.prime, labels, exps, arity=2)


def op_from_hom_vector(v: Vec, M: TruncatedSpace, N: TruncatedSpace) -> Op:
    cols: dict = {}
    for (i, j), x in v.coeffs.items():
        cols.setdefault(M.labels[j], {})[N.labels[i]] = x
    return Op(M, N, {m: Vec(N, c, check=False) for m, c in cols.items()})


def hom_space(M: Comodule, N: Comodule, precision: int = DEFAULT_TOL) -> list:
    """Basis of comodule morphisms ``M -> N``: kernel of ``T ↦ (T⊗id)ρ_M - ρ_N T``."""
    if M.side != N.side or M.over.space != N.over.space:
        raise SpaceMismatch("Hom needs comodules on the same side of the same coalgebra")
    Ms, Ns, Cs = M.space, N.space, M.over.space
    H = _hom_space(Ms, Ns)
    NC = N.coaction.codomain
    out_labels = [(a, j) for a in range(NC.rank) for j in range(Ms.rank)]
    out_exps = [NC.weight_exps[a] - Ms.weight_exps[j] for a, j in out_labels]
    Out = TruncatedSpace(M.prime, out_labels, out_exps, arity=2)
    nc_index = NC.index
    split_ar = [Ms.arity, Cs.arity] if M.side == RIGHT else [Cs.arity, Ms.arity]
    rhoM = {m: M.coaction.column(m) for m in Ms.labels}
    cols = {(i, j): {} for i in range(Ns.rank) for j in range(Ms.rank)}
    for jp, mp in enumerate(Ms.labels):
        for lab, x in rhoM[mp].coeffs.items():
            a, b = split_label(lab, split_ar)
            m_lab, c_lab = (a, b) if M.side == RIGHT else (b, a)
            j = Ms.index(m_lab)
            for i, n_lab in enumerate(Ns.labels):
                tgt = join_labels(n_lab, Ns.arity, c_lab, Cs.arity) if M.side == RIGHT else \
                    join_labels(c_lab, Cs.arity, n_lab, Ns.arity)
                key = (nc_index(tgt), jp)
                d = cols[(i, j)]
                d[key] = d[key] + x if key in d else x
    for i, n_lab in enumerate(Ns.labels):
        img = N.coaction.column(n_lab)
        for j in range(Ms.rank):
            d = cols[(i, j)]
            for lab, x in img.coeffs.items():
                key = (nc_index(lab), j)
                d[key] = d[key] - x if key in d else -x
    T = Op(H, Out, {k: Vec(Out, d, check=False) for k, d in cols.items()})
    K = kernel_subspace(T, precision)
    return [op_from_hom_vector(b, Ms, Ns) for b in K.basis]


def random_combination(basis: Sequence[Op], rng: random.Random, lo: int = -4, hi: int = 4) -> Op:
    if not basis:
        raise ValueError("empty Hom space")
    out = None
    for b in basis:
        c = rng.randint(lo, hi)
        term = b.scale(PadicScalar.from_int(c, b.domain.prime)) if c else Op.zero(b.domain, b.codomain)
        out = term if out is None else out + term
    return out


@dataclass
class FrobeniusResult:
    forward: Op | None
    backward: Op | None
    report: CheckReport


def frobenius_forward(f: Op, N: Comodule, ind: Induced) -> tuple:
    """``Hom_B(N_φ, M) -> Hom_C(N, M^φ)``: ``f ↦ (f⊗id_C)∘ρ_N`` in induced coordinates."""
    C = N.over
    amb = compose(tensor_op(f, C.identity()), N.coaction)
    U = ind.subspace
    Us = U.as_space()
    cols = {}
    worst = Fraction(0)
    for lab in N.space.labels:
        img = amb.column(lab)
        r = U.residual(img).norm()
        if r > worst:
            worst = r
        cols[lab] = Vec(Us, {m: img[m] for m in U.leads if not img[m].is_exact_zero}, check=False)
    return Op(N.space, Us, cols), worst


def frobenius_backward(g: Op, ind: Induced) -> Op:
    """``Hom_C(N, M^φ) -> Hom_B(N_φ, M)``: ``g ↦ (id_M⊗ε_C)∘g``."""
    return compose(counit_projection(ind), g)


def frobenius(N: Comodule, M: Comodule, phi: Op, f: Op | None = None, g: Op | None = None,
              precision: int = DEFAULT_TOL, ind: Induced | None = None) -> FrobeniusResult:
    """Push a morphism through the reciprocity bijection and back, reporting both legs."""
    C, B = N.over, M.over
    ind = ind or induce(M, phi, C, precision)
    Nphi = restrict(N, phi, B, precision, check=False)
    rep = CheckReport(f"frobenius:{N.name},{M.name}", "Frobenius reciprocity")
    fw = bw = None
    if f is not None:
        require_comodule_morphism(f, Nphi, M, precision)
        fw, leak = frobenius_forward(f, N, ind)
        rep.details["forward_leak"] = leak
        rep.add(_named(comodule_morphism_report(fw, N, ind.comodule, precision), "forward_morphism"))
        back = frobenius_backward(fw, ind)
        rep.add(measure(back - f, precision, "roundtrip_from_B"))
    if g is not None:
        require_comodule_morphism(g, N, ind.comodule, precision)
        bw = frobenius_backward(g, ind)
        rep.add(_named(comodule_morphism_report(bw, Nphi, M, precision), "backward_morphism"))
        again, leak = frobenius_forward(bw, N, ind)
        rep.details["backward_leak"] = leak
        rep.add(measure(again - g, precision, "roundtrip_from_C"))
    return FrobeniusResult(fw, bw, rep)


def _named(rep: CheckReport, name: str):
    r = rep.residuals["intertwining"]
    r.name = name
    return r


# -- tensor identities ----------------------------------------------------------


def tensor_comodule(V: Comodule, W: Comodule, B: HopfAlgebra, name: str | None = None) -> Comodule:
    """Diagonal coaction ``v⊗w ↦ v_0⊗w_0⊗v_1w_1`` of right ``B``-comodules."""
    Vs, Ws, Bs = V.space, W.space, B.space
    rho = compose_all(
        tensor_op(tensor_op(V.identity(), W.identity()), B.mult),
        permute_op([Vs, Bs, Ws, Bs], [0, 2, 1, 3], B.precision),
        tensor_op(V.coaction, W.coaction),
    )
    VW = tensor_space(Vs, Ws)
    return Comodule(VW, B, Op(VW, tensor_space(VW, Bs), rho.columns, rho.col_tails), RIGHT,
                    name or f"{V.name}⊗{W.name}")


@dataclass
class TensorIdentityResult:
    phi: Op
    psi: Op
    report: CheckReport


def tensor_identity(V: Comodule, W: Comodule, pi: Op, H: HopfAlgebra, B: HopfAlgebra,
                    precision: int = DEFAULT_TOL) -> TensorIdentityResult:
    """``V⊗(W□_B(_πH)) ≅ (V_π⊗W)□_B(_πH)`` via ``v⊗w⊗h ↦ v_0⊗w⊗v_1h`` and its inverse through ``S``."""
    Vs, Ws, Hs = V.space, W.space, H.space
    IV, IW, IH = V.identity(), W.identity(), H.identity()
    spread = compose(permute_op([Vs, Hs, Ws, Hs], [0, 2, 1, 3], H.precision),
                     tensor_op(tensor_op(V.coaction, IW), IH))
    mult = tensor_op(tensor_op(IV, IW), H.mult)
    phi = compose(mult, spread)
    psi = compose_all(mult, tensor_op(tensor_op(tensor_op(IV, IW), H.antipode), IH), spread)
    amb = phi.domain
    I = Op.identity(amb, H.precision)
    rep = CheckReport(f"tensor_identity:{V.name},{W.name}", "tensor identity")
    rep.add(measure(compose(phi, psi) - I, precision, "phi_psi"))
    rep.add(measure(compose(psi, phi) - I, precision, "psi_phi"))
    # H-coactions: diagonal on the left side, through the H factor on the right side
    VH = amb
    rho_right = tensor_op(tensor_op(IV, IW), H.comult)
    diag = compose_all(
        tensor_op(tensor_op(IV, IW), tensor_op(IH, H.mult)),
        permute_op([Vs, Hs, Ws, Hs, Hs], [0, 2, 3, 1, 4], H.precision),
        tensor_op(tensor_op(V.coaction, IW), H.comult),
    )
    rep.add(measure(compose(tensor_op(phi, IH), diag) - compose(rho_right, phi), precision, "phi_morphism"))
    rep.add(measure(compose(tensor_op(psi, IH), rho_right) - compose(diag, psi), precision, "psi_morphism"))
    # the two cotensor subspaces correspond under phi
    HB = pushed_left(H, pi, B)
    lhs_inner = cotensor(W, HB, precision)
    Vpi = restrict(V, pi, B, precision, check=False)
    VW = tensor_comodule(Vpi, W, B)
    rhs = cotensor(VW, HB, precision)
    lhs_vecs = []
    for v in Vs.labels:
        ev = Vec.basis(Vs, v, H.precision)
        for u in lhs_inner.subspace.basis:
            lhs_vecs.append(Vec(VH, ev.tensor(Vec(u.space, u.coeffs, check=False)).coeffs, check=False))
    lhs = echelon(lhs_vecs, precision, space=VH) if lhs_vecs else Subspace(VH, [], [], precision)
    mapped = [phi(b) for b in lhs.basis]
    rhs_sub = Subspace(VH, [Vec(VH, b.coeffs, check=False) for b in rhs.subspace.basis], rhs.subspace.leads,
                       rhs.subspace.precision)
    ok = same_span(mapped, rhs_sub.basis, precision, space=VH) if mapped or rhs_sub.basis else True
    rep.details.update(lhs_dim=lhs.dim, rhs_dim=rhs.dim, subspaces_match=ok)
    if not ok:
        rep.fail("phi does not carry V⊗(W□H) onto (V⊗W)□H")
    return TensorIdentityResult(phi, psi, rep)


# -- simplicity -------------------------------------------------------------------


@dataclass
class SimplicityCertificate:
    verdict: str
    witness: Subspace | None
    tried: int

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict, "tried": self.tried}
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        return d


def cyclic_subcomodule(M: Comodule, x: Vec, precision: int = DEFAULT_TOL) -> Subspace:
    """``C'·x``: the span of ``(id⊗e_c')ρ(x)`` over all ``c``."""
    comps = list(M.components(x).values())
    if not comps:
        return Subspace(M.space, [], [], precision)
    return echelon(comps, precision, space=M.space)


def simplicity_certificate(M: Comodule, seed: int = 1, samples: int = 8,
                           precision: int = DEFAULT_TOL) -> SimplicityCertificate:
    """A proper cyclic subcomodule disproves simplicity; none found is evidence only."""
    rng = random.Random(seed)
    cands = [Vec.basis(M.space, lab) for lab in M.space.labels]
    for _ in range(samples):
        cands.append(Vec.from_ints(M.space, {lab: rng.randint(-9, 9) for lab in M.space.labels}))
    tried = 0
    for x in cands:
        if x.is_zero():
            continue
        tried += 1
        U = cyclic_subcomodule(M, x, precision)
        if 0 < U.dim < M.dim:
            return SimplicityCertificate("proper-subcomodule-found", U, tried)
    return SimplicityCertificate("simple-evidence", None, tried)


def cotensor_unit(M: Comodule, precision: int = DEFAULT_TOL) -> CheckReport:
    """``M□_C C ≅ M``: dimensions and the mutually inverse maps ``ρ_M`` and ``id⊗ε``."""
    C = M.over
    prod = cotensor(M, left_regular(C), precision, regular(C), name=f"{M.name}□{C.name}")
    U = prod.subspace
    rep = CheckReport(f"cotensor_unit:{M.name}", "cotensor unit")
    rep.details.update(dim_cotensor=U.dim, dim_module=M.dim)
    if U.dim != M.dim:
        rep.fail("dimension mismatch", dim_cotensor=U.dim, dim_module=M.dim)
        return rep
    Us = U.as_space()
    to_u = Op(M.space, Us, {lab: Vec(Us, {m: M.coaction.column(lab)[m] for m in U.leads
                                          if not M.coaction.column(lab)[m].is_exact_zero}, check=False)
                            for lab in M.space.labels})
    leak = max((U.residual(M.coaction.column(lab)).norm() for lab in M.space.labels), default=Fraction(0))
    rep.details["image_leak"] = leak
    back = compose(tensor_op(M.identity(), C.counit), U.inclusion())
    rep.add(measure(compose(back, to_u) - M.identity(), precision, "eps_after_rho"))
    rep.add(measure(compose(to_u, back) - Op.identity(Us, C.precision), precision, "rho_after_eps"))
    rep.add(_named(comodule_morphism_report(to_u, M, prod.comodule, precision), "rho_is_morphism"))
    if leak > Fraction(1, M.prime ** precision):
        rep.fail("coaction image leaves the cotensor product", leak=leak)
    return rep


def dual_compatibility(M: Comodule, N: Comodule, precision: int = DEFAULT_TOL) -> dict:
    """Span of ``{v'c'⊗n' - v'⊗c'n'}`` versus the cotensor product: annihilation and ranks."""
    T = cotensor_map(M, N)
    prod = kernel_subspace(T, precision)
    Td = dual_op(T)
    img = echelon(list(Td.columns.values()), precision, space=Td.codomain) if Td.columns else None
    img_dim = img.dim if img else 0
    worst = Fraction(0)
    for f in (img.basis if img else []):
        for u in prod.basis:
            s = sum((f.coeffs[k] * u.coeffs[k] for k in f.coeffs if k in u.coeffs), PadicScalar.zero(M.prime))
            if s.norm() > worst and not s.is_zero:
                worst = s.norm()
    return {"cotensor_dim": prod.dim, "relations_dim": img_dim, "ambient_dim": M.dim * N.dim,
            "annihilation_residual": worst,
            "rank_identity": prod.dim + img_dim == M.dim * N.dim}
