"""Inductive systems of coalgebras (CT) and projective systems of algebras (NF) at a finite window."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..coalg.catalog import matrix_coalgebra, matrix_label, tensor_coalgebra
from ..coalg.mahler import mahler_coalgebra
from ..coalg.structures import (
    DEFAULT_TOL,
    Algebra,
    Coalgebra,
    algebra_morphism_report,
    check_algebra,
    check_coalgebra,
    coalgebra_morphism_report,
)
from ..errors import ConfigInvalid, NotAnInterleaving, SpaceMismatch
from ..linalg import (
    Op,
    TruncatedSpace,
    Vec,
    compactness_margin,
    compose,
    dual_op,
    kernel_subspace,
    scalar_space,
    tensor_margin,
    tensor_op,
    tensor_space,
)
from ..residual import CheckReport, combine_status, measure
from ..scalar import DEFAULT_PRECISION, DEFAULT_PRIME, PadicScalar

DEFAULT_WINDOW = 4


@dataclass
class CTSystem:
    """Coalgebras ``C_1 -> C_2 -> ... -> C_N`` with transitions ``φ_{n,n+1}``."""

    levels: list
    transitions: list
    name: str = "CT"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.transitions) != len(self.levels) - 1:
            raise ConfigInvalid("a system with N levels needs N-1 transitions")
        for n, T in enumerate(self.transitions):
            if T.domain != self.levels[n].space or T.codomain != self.levels[n + 1].space:
                raise SpaceMismatch(f"transition {n} does not map level {n} to level {n + 1}")

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def prime(self) -> int:
        return self.levels[0].prime

    def transition(self, n: int, m: int) -> Op:
        """Composite ``φ_{n,m}: C_n -> C_m`` for ``n <= m`` (0-based levels)."""
        if not 0 <= n <= m < self.depth:
            raise IndexError(f"no transition from level {n} to level {m}")
        T = self.levels[n].identity()
        for k in range(n, m):
            T = compose(self.transitions[k], T)
        return T

    def truncate(self, depth: int) -> "CTSystem":
        name = self.name if depth == self.depth else f"{self.name}[:{depth}]"
        return CTSystem(self.levels[:depth], self.transitions[:depth - 1], name, dict(self.metadata))

    def to_dict(self) -> dict:
        return {"kind": "CT", "name": self.name, "metadata": {k: str(v) for k, v in self.metadata.items()},
                "levels": [c.to_dict() for c in self.levels],
                "transitions": [t.to_dict() for t in self.transitions]}


@dataclass
class NFSystem:
    """Algebras ``A_1 <- A_2 <- ... <- A_N``; ``transitions[n]`` maps ``A_{n+1}`` to ``A_n``."""

    levels: list
    transitions: list
    name: str = "NF"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.transitions) != len(self.levels) - 1:
            raise ConfigInvalid("a system with N levels needs N-1 transitions")
        for n, T in enumerate(self.transitions):
            if T.domain != self.levels[n + 1].space or T.codomain != self.levels[n].space:
                raise SpaceMismatch(f"transition {n} does not map level {n + 1} to level {n}")

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def prime(self) -> int:
        return self.levels[0].prime

    def transition(self, m: int, n: int) -> Op:
        """Composite ``A_m -> A_n`` for ``m >= n``."""
        if not 0 <= n <= m < self.depth:
            raise IndexError(f"no transition from level {m} to level {n}")
        T = Op.identity(self.levels[m].space, self.levels[m].precision)
        for k in range(m - 1, n - 1, -1):
            T = compose(self.transitions[k], T)
        return T

    def to_dict(self) -> dict:
        return {"kind": "NF", "name": self.name, "metadata": {k: str(v) for k, v in self.metadata.items()},
                "levels": [a.to_dict() for a in self.levels],
                "transitions": [t.to_dict() for t in self.transitions]}


@dataclass
class SystemReport:
    """Level and transition reports of one system."""

    check: str
    anchor: str
    levels: list = field(default_factory=list)
    transitions: list = field(default_factory=list)
    margins: list = field(default_factory=list)

    @property
    def reports(self) -> list:
        return self.levels + self.transitions

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def status(self) -> str:
        return combine_status(r.status for r in self.reports)

    def failing(self) -> list:
        return [r for r in self.reports if not r.passed]

    def to_dict(self) -> dict:
        return {"check": self.check, "anchor": self.anchor, "status": self.status,
                "levels": [r.to_dict() for r in self.levels],
                "transitions": [r.to_dict() for r in self.transitions]}


# -- catalog ---------------------------------------------------------------------


def _ceil_exps(rank: int, a) -> list:
    a = Fraction(a)
    return [-math.ceil(k * a) for k in range(rank)]


def identity_map(S: TruncatedSpace, T: TruncatedSpace, prec: int) -> Op:
    """Same coefficients, different weights."""
    if S.labels != T.labels:
        raise SpaceMismatch("identity map needs matching labels")
    return Op(S, T, {lab: Vec.basis(T, lab, prec) for lab in S.labels})


def mahler_ct(rank: int = 8, a: Sequence | None = None, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION,
              depth: int = DEFAULT_WINDOW) -> CTSystem:
    """Mahler truncations with weights ``w_n(k) = p^(-ceil(k·a_n))`` and identity transitions.

    ``a`` must increase strictly; then each transition has column ratios
    ``p^(-(ceil(k a_{n+1}) - ceil(k a_n)))`` which decay in ``k``.
    """
    a = [Fraction(x) for x in (a if a is not None else range(1, depth + 1))]
    if any(x < 0 for x in a) or any(y <= x for x, y in zip(a, a[1:])):
        raise ConfigInvalid("Mahler CT exponents must be non-negative and strictly increasing")
    levels = [mahler_coalgebra(rank, p, _ceil_exps(rank, x), prec, name=f"mahler{rank}[a={x}]") for x in a]
    trans = [identity_map(levels[n].space, levels[n + 1].space, prec) for n in range(len(a) - 1)]
    return CTSystem(levels, trans, f"mahler_ct({rank};a={','.join(str(x) for x in a)})", {"a": [str(x) for x in a], "rank": rank})


def constant_ct(C: Coalgebra, depth: int = DEFAULT_WINDOW) -> CTSystem:
    """All levels equal to ``C`` with identity transitions (never compact)."""
    return CTSystem([C] * depth, [C.identity() for _ in range(depth - 1)], f"constant_ct({C.name})")


def matrix_ct(n: int = 2, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION,
              depth: int = DEFAULT_WINDOW) -> CTSystem:
    """``M^c_n`` at every level, weights ``p^(t(j-i))`` at level ``t``, transitions ``e_ij -> p^(j-i) e_ij``.

    The transitions are isometric coalgebra isomorphisms, so the system is not
    compact; it exercises transposition of non-identity transitions.
    """
    base = matrix_coalgebra(n, p, prec)
    idx = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    levels = []
    for t in range(depth):
        sp = TruncatedSpace(p, base.space.labels, [t * (j - i) for i, j in idx])
        levels.append(_reweighted(base, sp, f"Mc{n}[t={t}]"))
    trans = []
    for t in range(depth - 1):
        S, T = levels[t].space, levels[t + 1].space
        trans.append(Op(S, T, {matrix_label(i, j, n): Vec(T, {matrix_label(i, j, n): PadicScalar.from_rational(
            Fraction(p) ** (j - i), p, prec)}, check=False) for i, j in idx}))
    return CTSystem(levels, trans, f"matrix_ct({n})")


def _reweighted(C: Coalgebra, space: TruncatedSpace, name: str) -> Coalgebra:
    CC = tensor_space(space, space)
    K = scalar_space(space.prime)
    comult = Op(space, CC, {lab: Vec(CC, v.coeffs, check=False) for lab, v in C.comult.columns.items()})
    counit = Op(space, K, {lab: Vec(K, v.coeffs, check=False) for lab, v in C.counit.columns.items()})
    return Coalgebra(space, comult, counit, name=name, precision=C.precision)


def ct_by_name(name: str, rank: int = 8, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION,
               depth: int = DEFAULT_WINDOW) -> CTSystem:
    if name == "mahler_ct":
        return mahler_ct(rank, None, p, prec, depth)
    if name == "constant_ct":
        return constant_ct(mahler_coalgebra(rank, p, prec=prec), depth)
    if name == "matrix_ct":
        return matrix_ct(2, p, prec, depth)
    raise ConfigInvalid(f"unknown system catalog name {name!r}")


def ct_catalog(rank: int = 8, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION,
               depth: int = DEFAULT_WINDOW) -> list:
    return [
        mahler_ct(rank, None, p, prec, depth),
        mahler_ct(rank, [Fraction(k, 2) for k in range(1, depth + 1)], p, prec, depth),
        constant_ct(mahler_coalgebra(rank, p, prec=prec), depth),
        matrix_ct(2, p, prec, depth),
    ]


# -- checks ------------------------------------------------------------------------


def _injectivity(T: Op, tol: int, name: str) -> CheckReport:
    rep = CheckReport(name, "injective transition")
    K = kernel_subspace(T, tol)
    rep.details["kernel_dim"] = K.dim
    if K.dim:
        rep.fail("transition has a kernel", kernel=K.basis[0])
    return rep


def _compactness(T: Op, name: str) -> tuple:
    rep = CheckReport(name, "compact transition")
    m = compactness_margin(T)
    rep.details["margin"] = m
    if not m.compact_at_truncation:
        rep.fail("column ratios do not decay below 1/p", ratios=[str(r) for r in m.ratios])
    return rep, m


def check_ct(S: CTSystem, tol: int = DEFAULT_TOL) -> SystemReport:
    """Coalgebra axioms per level; morphism, injectivity and compactness per transition."""
    out = SystemReport(f"ct:{S.name}", "compact type structure")
    for n, C in enumerate(S.levels):
        r = check_coalgebra(C, tol)
        r.check = f"ct:{S.name}:level{n}"
        out.levels.append(r)
    for n, T in enumerate(S.transitions):
        tag = f"ct:{S.name}:transition{n}"
        mor = coalgebra_morphism_report(T, S.levels[n], S.levels[n + 1], tol)
        mor.check = f"{tag}:morphism"
        inj = _injectivity(T, tol, f"{tag}:injective")
        comp, m = _compactness(T, f"{tag}:compact")
        out.transitions += [mor, inj, comp]
        out.margins.append(m)
    return out


def check_nf(S: NFSystem, tol: int = DEFAULT_TOL) -> SystemReport:
    """Algebra axioms per level; morphism and compactness per transition."""
    out = SystemReport(f"nf:{S.name}", "nuclear Fréchet structure")
    for n, A in enumerate(S.levels):
        r = check_algebra(A, tol)
        r.check = f"nf:{S.name}:level{n}"
        out.levels.append(r)
    for n, T in enumerate(S.transitions):
        tag = f"nf:{S.name}:transition{n}"
        mor = algebra_morphism_report(T, S.levels[n + 1], S.levels[n], tol)
        mor.check = f"{tag}:morphism"
        comp, m = _compactness(T, f"{tag}:compact")
        out.transitions += [mor, comp]
        out.margins.append(m)
    return out


# -- duality -----------------------------------------------------------------------


def dualize_ct(S: CTSystem) -> NFSystem:
    """Convolution algebras ``C_n'`` with transposed transitions ``C_{n+1}' -> C_n'``."""
    levels = [C.dual_algebra() for C in S.levels]
    trans = [dual_op(T) for T in S.transitions]
    return NFSystem(levels, trans, f"{S.name}'", dict(S.metadata))


def dualize_nf(S: NFSystem) -> CTSystem:
    """Dual coalgebras ``A_n'`` with transposed transitions ``A_n' -> A_{n+1}'``."""
    levels = [A.dual_coalgebra() for A in S.levels]
    trans = [dual_op(T) for T in S.transitions]
    name = S.name[:-1] if S.name.endswith("'") else f"{S.name}'"
    return CTSystem(levels, trans, name, dict(S.metadata))


def levelwise_isomorphism(S: CTSystem, T: CTSystem, maps: Sequence[Op] | None = None,
                          tol: int = DEFAULT_TOL) -> CheckReport:
    """Residuals of level maps ``S_n -> T_n`` being coalgebra morphisms commuting with transitions.

    Without ``maps`` the identity on coefficients is used (same labels required).
    Isometry is checked via the column ratios of each map and its inverse.
    """
    rep = CheckReport(f"levelwise_iso:{S.name}->{T.name}", "level-wise isomorphism of systems")
    if S.depth != T.depth:
        rep.fail("systems have different depths", depths=[S.depth, T.depth])
        return rep
    if maps is None:
        maps = [identity_map(a.space, b.space, a.precision) for a, b in zip(S.levels, T.levels)]
    worst = Fraction(0)
    for n, (f, A, B) in enumerate(zip(maps, S.levels, T.levels)):
        mor = coalgebra_morphism_report(f, A, B, tol)
        for k, r in mor.residuals.items():
            r.name = f"level{n}:{k}"
            rep.add(r)
        for lab in f.domain.labels:
            ratio = f.column_ratios()[f.domain.index(lab)]
            if ratio != 1:
                worst = max(worst, abs(ratio - 1))
    for n in range(S.depth - 1):
        sq = compose(T.transitions[n], maps[n]) - compose(maps[n + 1], S.transitions[n])
        rep.add(measure(sq, tol, f"square{n}"))
    rep.details["isometry_defect"] = worst
    if worst:
        rep.fail("level maps are not isometric on the basis", defect=worst)
    return rep


def ct_roundtrip(S: CTSystem, tol: int = DEFAULT_TOL) -> CheckReport:
    """``dualize_nf(dualize_ct(S)) ≅ S`` level-wise."""
    back = dualize_nf(dualize_ct(S))
    rep = levelwise_isomorphism(back, S, tol=tol)
    rep.check = f"ct_roundtrip:{S.name}"
    rep.anchor = "reflexivity of compact type spaces"
    for n, (f, g) in enumerate(zip(back.transitions, S.transitions)):
        rep.add(measure(f - Op(f.domain, f.codomain, g.columns, g.col_tails), tol, f"transition{n}"))
    return rep


def pairing_report(C: Coalgebra, A: Algebra, tol: int = DEFAULT_TOL) -> CheckReport:
    """``<α⋆β, x> = <α⊗β, Δx>`` on all basis triples, i.e. ``m_A`` is the transpose of ``Δ_C``."""
    rep = CheckReport(f"pairing:{C.name}", "convolution transposes the comultiplication")
    D = dual_op(C.comult)
    rep.add(measure(A.mult - Op(A.mult.domain, A.mult.codomain, D.columns, D.col_tails), tol, "mult"))
    E = dual_op(C.counit)
    rep.add(measure(A.unit - Op(A.unit.domain, A.unit.codomain, E.columns, E.col_tails), tol, "unit"))
    return rep


# -- equivalence ---------------------------------------------------------------------


def ct_equivalence(S: CTSystem, T: CTSystem, forward: Mapping, backward: Mapping,
                   tol: int = DEFAULT_TOL) -> CheckReport:
    """Verify an interleaving ``f_n: S_n -> T_σ(n)``, ``g_m: T_m -> S_τ(m)``.

    ``forward`` maps ``n`` to ``(σ(n), f_n)`` and ``backward`` maps ``m`` to
    ``(τ(m), g_m)``.  Every supplied map must be a coalgebra morphism, every
    naturality square and every composite ``g∘f``, ``f∘g`` that stays inside
    the window must equal the corresponding transition.  The first failing
    square raises NotAnInterleaving.
    """
    rep = CheckReport(f"ct_equivalence:{S.name}~{T.name}", "equivalence of compact type structures")

    def check(D: Op, square: str):
        r = rep.add(measure(D, tol, square))
        if not r.passed:
            raise NotAnInterleaving(f"interleaving square {square} does not commute", square, r.value)

    for label, maps, X, Y in (("f", forward, S, T), ("g", backward, T, S)):
        for n, (m, f) in sorted(maps.items()):
            A, B = X.levels[n], Y.levels[m]
            check(compose(B.comult, f) - compose(tensor_op(f, f), A.comult), f"{label}{n}:comult")
            check(compose(B.counit, f) - A.counit, f"{label}{n}:counit")
        for n in sorted(maps):
            if n + 1 in maps:
                (m0, f0), (m1, f1) = maps[n], maps[n + 1]
                if m1 >= m0:
                    check(compose(f1, X.transition(n, n + 1)) - compose(Y.transition(m0, m1), f0),
                          f"{label}_natural{n}")
    for label, first, second, X in (("gf", forward, backward, S), ("fg", backward, forward, T)):
        for n, (m, f) in sorted(first.items()):
            if m in second:
                k, g = second[m]
                if k >= n:
                    check(compose(g, f) - X.transition(n, k), f"{label}{n}")
    return rep


# -- tensor products -----------------------------------------------------------------


def tensor_ct(S: CTSystem, T: CTSystem, tol: int = DEFAULT_TOL) -> tuple:
    """Level-wise ``S_n⊗T_n`` with transitions ``φ_n⊗ψ_n`` and factor-derived compactness margins."""
    if S.depth != T.depth:
        raise ConfigInvalid("level-wise tensor needs systems of equal depth")
    levels = [tensor_coalgebra(a, b) for a, b in zip(S.levels, T.levels)]
    trans = [tensor_op(f, g) for f, g in zip(S.transitions, T.transitions)]
    out = CTSystem(levels, trans, f"{S.name}⊗{T.name}")
    margins = [tensor_margin(compactness_margin(f), compactness_margin(g))
               for f, g in zip(S.transitions, T.transitions)]
    return out, margins
