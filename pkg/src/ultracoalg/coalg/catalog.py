"""Named coalgebras and Hopf algebras addressable from the command line."""

from __future__ import annotations

from typing import Sequence

from ..errors import ConfigInvalid
from ..linalg import (
    Op,
    TruncatedSpace,
    Vec,
    compose,
    direct_sum_space,
    permute_op,
    scalar_space,
    tensor_op,
    tensor_space,
    tensor_spaces,
)
from ..scalar import DEFAULT_PRECISION, DEFAULT_PRIME, PadicScalar
from .mahler import mahler_coalgebra, mahler_hopf
from .structures import Algebra, Coalgebra, HopfAlgebra


def matrix_label(i: int, j: int, n: int) -> str:
    return f"e{i}{j}" if n < 10 else f"e{i}_{j}"


def matrix_coalgebra(n: int, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION) -> Coalgebra:
    """``M^c_n``: ``Δ e_ij = Σ_k e_ik ⊗ e_kj``, ``ε(e_ij) = δ_ij``."""
    labs = [matrix_label(i, j, n) for i in range(1, n + 1) for j in range(1, n + 1)]
    C = TruncatedSpace(p, labs)
    CC = tensor_space(C, C)
    K = scalar_space(p)
    one = PadicScalar.one(p, prec)
    cols, eps = {}, {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            cols[matrix_label(i, j, n)] = Vec(CC, {(matrix_label(i, k, n), matrix_label(k, j, n)): one
                                                   for k in range(1, n + 1)}, check=False)
        eps[matrix_label(i, i, n)] = Vec(K, {(): one}, check=False)
    return Coalgebra(C, Op(C, CC, cols), Op(C, K, eps), name=f"Mc{n}", precision=prec)


def group_algebra(m: int, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION) -> HopfAlgebra:
    """``K[Z/m]`` with grouplike basis ``g0..g(m-1)``."""
    labs = [f"g{k}" for k in range(m)]
    C = TruncatedSpace(p, labs)
    CC = tensor_space(C, C)
    K = scalar_space(p)
    one = PadicScalar.one(p, prec)
    comult = Op(C, CC, {g: Vec(CC, {(g, g): one}, check=False) for g in labs})
    counit = Op(C, K, {g: Vec(K, {(): one}, check=False) for g in labs})
    mult = Op(CC, C, {(f"g{a}", f"g{b}"): Vec.basis(C, f"g{(a + b) % m}", prec)
                      for a in range(m) for b in range(m)})
    unit = Op(K, C, {(): Vec.basis(C, "g0", prec)})
    anti = Op(C, C, {f"g{a}": Vec.basis(C, f"g{(-a) % m}", prec) for a in range(m)})
    return HopfAlgebra(C, comult, counit, name=f"K[Z/{m}]", precision=prec, mult=mult, unit=unit,
                       antipode=anti)


def ground_coalgebra(p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION) -> HopfAlgebra:
    """``K`` itself: ``Δ(1) = 1⊗1``, ``ε = id``; also a Hopf algebra."""
    K = scalar_space(p)
    I = Op.identity(K, prec)
    return HopfAlgebra(K, I, I, name="K", precision=prec, mult=I, unit=I, antipode=I)


def grouplike_line(p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION, label: str = "g") -> Coalgebra:
    """``K·g`` with ``g`` grouplike, as a base space (so it can enter direct sums)."""
    C = TruncatedSpace(p, [label])
    CC = tensor_space(C, C)
    K = scalar_space(p)
    one = PadicScalar.one(p, prec)
    return Coalgebra(C, Op(C, CC, {label: Vec(CC, {(label, label): one}, check=False)}),
                     Op(C, K, {label: Vec(K, {(): one}, check=False)}), name=f"K{label}", precision=prec)


def direct_sum_coalgebra(parts: Sequence[Coalgebra], tags: Sequence[str] | None = None,
                         name: str | None = None) -> Coalgebra:
    """``⊕ C_i`` with ``Δ`` and ``ε`` acting blockwise."""
    tags = list(tags or [str(i) for i in range(len(parts))])
    S = direct_sum_space([c.space for c in parts], tags)
    SS = tensor_space(S, S)
    K = scalar_space(S.prime)
    cols, eps = {}, {}
    for tag, c in zip(tags, parts):
        for lab in c.space.labels:
            img = c.comult.column(lab)
            cols[f"{tag}:{lab}"] = Vec(SS, {(f"{tag}:{a}", f"{tag}:{b}"): x for (a, b), x in img.coeffs.items()},
                                       check=False)
            e = c.counit.column(lab)
            if e.coeffs:
                eps[f"{tag}:{lab}"] = Vec(K, e.coeffs, check=False)
    return Coalgebra(S, Op(S, SS, cols), Op(S, K, eps), name=name or "+".join(c.name for c in parts),
                     precision=min(c.precision for c in parts))


def summand_inclusion(parts: Sequence[Coalgebra], i: int, tags: Sequence[str] | None = None) -> Op:
    tags = list(tags or [str(k) for k in range(len(parts))])
    S = direct_sum_space([c.space for c in parts], tags)
    c = parts[i]
    return Op(c.space, S, {lab: Vec.basis(S, f"{tags[i]}:{lab}", c.precision) for lab in c.space.labels})


def summand_projection(parts: Sequence[Coalgebra], i: int, tags: Sequence[str] | None = None) -> Op:
    tags = list(tags or [str(k) for k in range(len(parts))])
    S = direct_sum_space([c.space for c in parts], tags)
    c = parts[i]
    return Op(S, c.space, {f"{tags[i]}:{lab}": Vec.basis(c.space, lab, c.precision) for lab in c.space.labels})


def tensor_coalgebra(C: Coalgebra, D: Coalgebra) -> Coalgebra:
    """``C⊗D`` with ``Δ = (id⊗τ⊗id)(Δ_C⊗Δ_D)`` and ``ε = ε_C⊗ε_D``."""
    T = tensor_space(C.space, D.space)
    mid = permute_op([C.space, C.space, D.space, D.space], [0, 2, 1, 3], C.precision)
    comult = compose(mid, tensor_op(C.comult, D.comult))
    comult = Op(T, tensor_spaces(T, T), comult.columns, comult.col_tails)
    counit = tensor_op(C.counit, D.counit)
    return Coalgebra(T, comult, Op(T, scalar_space(T.prime), counit.columns, counit.col_tails),
                     name=f"{C.name}⊗{D.name}", precision=min(C.precision, D.precision))


def dual_algebra(C: Coalgebra) -> Algebra:
    return C.dual_algebra()


def perturbed(op: Op, in_label, out_label, delta: int = 1) -> Op:
    """Copy of ``op`` with ``delta`` added to one matrix entry (defect injection)."""
    p = op.domain.prime
    col = op.column(in_label)
    bump = Vec(op.codomain, {out_label: PadicScalar.from_int(delta, p)}, check=False)
    cols = dict(op.columns)
    cols[in_label] = col + bump
    return Op(op.domain, op.codomain, cols, op.col_tails)


def corrupt_comult(C: Coalgebra) -> Coalgebra:
    """Add a norm-1 defect to ``Δ`` on the last basis vector."""
    lab = C.space.labels[-1]
    out = C.comult.codomain.labels[0]
    return Coalgebra(C.space, perturbed(C.comult, lab, out), C.counit, name=f"{C.name}~", precision=C.precision)


def corrupt_antipode(H: HopfAlgebra) -> HopfAlgebra:
    lab = H.space.labels[-1]
    return HopfAlgebra(H.space, H.comult, H.counit, name=f"{H.name}~", precision=H.precision, mult=H.mult,
                       unit=H.unit, antipode=perturbed(H.antipode, lab, H.space.labels[0]))


def coalgebra_by_name(name: str, rank: int = 8, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION):
    """Resolve ``mahler``, ``mahler_hopf``, ``matrix_coalgebra``, ``group_algebra`` or ``ground``."""
    if name == "mahler":
        return mahler_coalgebra(rank, p, prec=prec)
    if name == "mahler_hopf":
        return mahler_hopf(rank, p, prec)
    if name == "matrix_coalgebra":
        return matrix_coalgebra(rank, p, prec)
    if name == "group_algebra":
        return group_algebra(rank, p, prec)
    if name == "ground":
        return ground_coalgebra(p, prec)
    raise ConfigInvalid(f"unknown coalgebra catalog name {name!r}")
