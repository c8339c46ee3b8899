"""The Mahler model of continuous functions on Z_p, built from finite differences.

Basis ``e_n = binomial(x, n)``; ``Δ e_n = Σ_{i+j=n} e_i⊗e_j`` and
``ε(e_n) = δ_{n0}``.  Products and the antipode are obtained by expanding
value tables, never from closed-form identities.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from ..linalg import Op, TruncatedSpace, Vec, scalar_space, tensor_space
from ..scalar import DEFAULT_PRECISION, DEFAULT_PRIME, PadicScalar
from .structures import Coalgebra, HopfAlgebra


def mahler_coefficients(values: Sequence) -> list:
    """``a_k = (Δ^k f)(0)`` so that ``f(x) = Σ a_k binomial(x, k)`` on the table's range."""
    row = [Fraction(v) for v in values]
    out = []
    while row:
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return [int(a) if a.denominator == 1 else a for a in out]


def mahler_reconstruct(coeffs: Sequence, x: int):
    return sum(a * binom(x, k) for k, a in enumerate(coeffs))


def binom(x: int, k: int) -> int:
    """``binomial(x, k)`` for any integer ``x`` (negative allowed)."""
    if k < 0:
        return 0
    if x >= 0:
        return comb(x, k)
    return (-1) ** k * comb(k - x - 1, k)


def mahler_space(rank: int, p: int = DEFAULT_PRIME, weight_exps: Sequence[int] | None = None) -> TruncatedSpace:
    return TruncatedSpace(p, range(rank), weight_exps,
                          tail_comment=f"rank-{rank} cut of the Mahler basis of C(Z_p, K)")


def mahler_expand(values: Sequence, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION,
                  space: TruncatedSpace | None = None) -> Vec:
    """Mahler coefficients of a value table on ``0..n-1`` as a vector."""
    space = space or mahler_space(len(values), p)
    coeffs = mahler_coefficients(values)
    return Vec.from_ints(space, dict(zip(space.labels, coeffs)), prec)


def expand_function(f: Callable[[int], int], rank: int) -> list:
    return mahler_coefficients([f(x) for x in range(rank)])


def mahler_coalgebra(rank: int, p: int = DEFAULT_PRIME, weight_exps: Sequence[int] | None = None,
                     prec: int = DEFAULT_PRECISION, name: str | None = None) -> Coalgebra:
    C = mahler_space(rank, p, weight_exps)
    CC = tensor_space(C, C)
    K = scalar_space(p)
    one = PadicScalar.one(p, prec)
    comult = Op(C, CC, {n: Vec(CC, {(i, n - i): one for i in range(n + 1)}, check=False) for n in range(rank)})
    counit = Op(C, K, {0: Vec(K, {(): one}, check=False)})
    return Coalgebra(C, comult, counit, name=name or f"mahler{rank}", precision=prec)


def mahler_hopf(rank: int, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION) -> HopfAlgebra:
    """Unit-weight Mahler Hopf algebra; products of total degree ≥ rank carry tail 1."""
    co = mahler_coalgebra(rank, p, None, prec)
    C = co.space
    CC = tensor_space(C, C)
    K = scalar_space(p)
    cols, tails = {}, {}
    for i in range(rank):
        for j in range(rank):
            c = expand_function(lambda x: binom(x, i) * binom(x, j), rank)
            cols[(i, j)] = Vec.from_ints(C, {k: a for k, a in enumerate(c) if a}, prec)
            if i + j >= rank:
                # integer coefficients beyond the cut have norm at most 1
                tails[(i, j)] = 1
    mult = Op(CC, C, cols, tails)
    unit = Op(K, C, {(): Vec.basis(C, 0, prec)})
    anti = {}
    for i in range(rank):
        c = expand_function(lambda x: binom(-x, i), rank)
        anti[i] = Vec.from_ints(C, {k: a for k, a in enumerate(c) if a}, prec)
    antipode = Op(C, C, anti)
    return HopfAlgebra(C, co.comult, co.counit, name=f"mahler_hopf{rank}", precision=prec,
                       mult=mult, unit=unit, antipode=antipode)


def evaluation_functional(a: int, rank: int, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION,
                          space: TruncatedSpace | None = None) -> Vec:
    """``ev_a`` on the truncated Mahler space: ``e_n ↦ binomial(a, n)``."""
    space = (space or mahler_space(rank, p)).dual()
    return Vec.from_ints(space, {n: binom(a, n) for n in range(rank) if binom(a, n)}, prec)
