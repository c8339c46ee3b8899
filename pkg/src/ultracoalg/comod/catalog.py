"""Named comodules: regular, row and column, cofree, trivial, direct sums."""

from __future__ import annotations

from typing import Sequence

from ..coalg.catalog import (
    direct_sum_coalgebra,
    ground_coalgebra,
    group_algebra,
    grouplike_line,
    matrix_coalgebra,
    matrix_label,
)
from ..coalg.mahler import mahler_coalgebra
from ..coalg.structures import Coalgebra
from ..errors import ConfigInvalid, SpaceMismatch
from ..linalg import (
    Op,
    TruncatedSpace,
    Vec,
    direct_sum_space,
    join_labels,
    permute_op,
    tensor_op,
    tensor_space,
)
from ..scalar import DEFAULT_PRECISION, DEFAULT_PRIME, PadicScalar
from .structures import LEFT, RIGHT, Comodule


def regular(C: Coalgebra, name: str | None = None) -> Comodule:
    """``C`` coacting on itself from the right by ``Δ``."""
    return Comodule(C.space, C, C.comult, RIGHT, name or f"regular({C.name})")


def left_regular(C: Coalgebra, name: str | None = None) -> Comodule:
    return Comodule(C.space, C, C.comult, LEFT, name or f"left_regular({C.name})")


def _tagged(tag: str | None, lab: str) -> str:
    return f"{tag}:{lab}" if tag else lab


def row(n: int, over: Coalgebra | None = None, tag: str | None = None, p: int = DEFAULT_PRIME,
        prec: int = DEFAULT_PRECISION) -> Comodule:
    """``ρ f_i = Σ_k f_k ⊗ e_ki`` over ``M^c_n`` (or over the block ``tag`` of a direct sum)."""
    C = over or matrix_coalgebra(n, p, prec)
    V = TruncatedSpace(C.prime, [f"f{i}" for i in range(1, n + 1)])
    VC = tensor_space(V, C.space)
    one = PadicScalar.one(C.prime, C.precision)
    cols = {f"f{i}": Vec(VC, {(f"f{k}", _tagged(tag, matrix_label(k, i, n))): one for k in range(1, n + 1)},
                         check=False) for i in range(1, n + 1)}
    return Comodule(V, C, Op(V, VC, cols), RIGHT, f"row({C.name}{'/' + tag if tag else ''})")


def column(n: int, over: Coalgebra | None = None, tag: str | None = None, p: int = DEFAULT_PRIME,
           prec: int = DEFAULT_PRECISION) -> Comodule:
    """Left comodule ``ρ f_j = Σ_k e_jk ⊗ f_k`` over ``M^c_n``."""
    C = over or matrix_coalgebra(n, p, prec)
    V = TruncatedSpace(C.prime, [f"f{i}" for i in range(1, n + 1)])
    CV = tensor_space(C.space, V)
    one = PadicScalar.one(C.prime, C.precision)
    cols = {f"f{j}": Vec(CV, {(_tagged(tag, matrix_label(j, k, n)), f"f{k}"): one for k in range(1, n + 1)},
                         check=False) for j in range(1, n + 1)}
    return Comodule(V, C, Op(V, CV, cols), LEFT, f"column({C.name}{'/' + tag if tag else ''})")


def cofree(V: TruncatedSpace, C: Coalgebra, name: str | None = None) -> Comodule:
    """``V⊗C`` with ``ρ = id_V⊗Δ``."""
    VC = tensor_space(V, C.space)
    rho = tensor_op(Op.identity(V, C.precision), C.comult)
    out = tensor_space(VC, C.space)
    return Comodule(VC, C, Op(VC, out, rho.columns, rho.col_tails), RIGHT, name or f"cofree({V.rank},{C.name})")


def find_grouplike(C: Coalgebra, tol: int | None = None):
    """First basis label ``g`` with ``Δg = g⊗g`` and ``ε(g) = 1``, or None."""
    tol = C.precision if tol is None else tol
    one = PadicScalar.one(C.prime, C.precision)
    for g in C.space.labels:
        want = Vec(C.comult.codomain, {join_labels(g, C.space.arity, g, C.space.arity): one}, check=False)
        if (C.comult.column(g) - want).is_zero() and C.counit.column(g).agrees(
                Vec(C.counit.codomain, {(): one}, check=False), tol):
            return g
    return None


def trivial(V: TruncatedSpace, C: Coalgebra, g=None, name: str | None = None) -> Comodule:
    """``ρ v = v⊗g`` for a grouplike ``g`` (found automatically when omitted)."""
    g = find_grouplike(C) if g is None else g
    if g is None:
        raise ConfigInvalid(f"{C.name} has no grouplike basis vector")
    VC = tensor_space(V, C.space)
    one = PadicScalar.one(C.prime, C.precision)
    cols = {v: Vec(VC, {join_labels(v, V.arity, g, C.space.arity): one}, check=False) for v in V.labels}
    return Comodule(V, C, Op(V, VC, cols), RIGHT, name or f"trivial({V.rank},{C.name})")


def direct_sum(mods: Sequence[Comodule], tags: Sequence[str] | None = None, name: str | None = None) -> Comodule:
    """``⊕ M_i`` with the blockwise coaction (summand spaces must have plain labels)."""
    if not mods:
        raise ConfigInvalid("direct sum of no comodules")
    C, side = mods[0].over, mods[0].side
    if any(m.over.space != C.space or m.side != side for m in mods):
        raise SpaceMismatch("direct sum needs comodules on the same side of one coalgebra")
    tags = list(tags or [str(i) for i in range(len(mods))])
    S = direct_sum_space([m.space for m in mods], tags)
    SC = tensor_space(S, C.space) if side == RIGHT else tensor_space(C.space, S)
    cols = {}
    for tag, m in zip(tags, mods):
        for lab in m.space.labels:
            acc = {}
            for out, x in m.coaction.column(lab).coeffs.items():
                if side == RIGHT:
                    acc[(f"{tag}:{out[0]}",) + tuple(out[1:])] = x
                else:
                    acc[tuple(out[:-1]) + (f"{tag}:{out[-1]}",)] = x
            cols[f"{tag}:{lab}"] = Vec(SC, acc, check=False)
    return Comodule(S, C, Op(S, SC, cols), side, name or "+".join(m.name for m in mods))


def flip_side(M: Comodule) -> Comodule:
    """A right comodule over a cocommutative ``C`` read as a left one (``τ∘ρ``)."""
    tau = permute_op([M.space, M.over.space], [1, 0], M.over.precision)
    rho = tau @ M.coaction
    return Comodule(M.space, M.over, rho, LEFT if M.side == RIGHT else RIGHT, f"{M.name}^op")


def comodule_catalog(rank: int = 8, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION) -> list:
    """Fixed list of right comodules used by the sweeps, in deterministic order."""
    mah = mahler_coalgebra(rank, p, prec=prec)
    mc2 = matrix_coalgebra(2, p, prec)
    mc3 = matrix_coalgebra(3, p, prec)
    z2 = group_algebra(2, p, prec)
    K = ground_coalgebra(p, prec)
    blocks = direct_sum_coalgebra([mc2, grouplike_line(p, prec)], ["M", "g"], name="Mc2+Kg")
    V2 = TruncatedSpace(p, ["v1", "v2"])
    return [
        regular(mah),
        regular(mc2),
        regular(z2),
        regular(K),
        regular(blocks),
        row(2, p=p, prec=prec),
        row(3, over=mc3),
        row(2, over=blocks, tag="M"),
        cofree(V2, mc2),
        cofree(V2, z2),
        trivial(V2, mah),
        trivial(V2, z2),
        direct_sum([row(2, over=mc2), row(2, over=mc2)], ["a", "b"]),
        direct_sum([trivial(TruncatedSpace(p, ["v"]), blocks, "g:g"), row(2, over=blocks, tag="M")], ["t", "r"]),
    ]


def comodule_by_name(name: str, rank: int = 8, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION) -> Comodule:
    for m in comodule_catalog(rank, p, prec):
        if m.name == name:
            return m
    raise ConfigInvalid(f"unknown comodule catalog name {name!r}")
