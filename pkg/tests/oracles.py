"""Independent exact oracles used by the tests (plain integers and Fractions only)."""

from __future__ import annotations

import math
import random
from fractions import Fraction


def valuation(q, p: int):
    q = Fraction(q)
    if q == 0:
        return math.inf
    v = 0
    a, b = q.numerator, q.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def rref(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return [], []
    nr, nc = len(M), len(M[0])
    piv, r = [], 0
    for c in range(nc):
        k = next((i for i in range(r, nr) if M[i][c] != 0), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        lead = M[r][c]
        M[r] = [x / lead for x in M[r]]
        for i in range(nr):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv.append(c)
        r += 1
        if r == nr:
            break
    return M[:r], piv


def rational_kernel(A):
    """Basis of ``{x : A x = 0}`` over Q, one vector per free column."""
    nc = len(A[0])
    R, piv = rref(A)
    free = [c for c in range(nc) if c not in piv]
    out = []
    for f in free:
        x = [Fraction(0)] * nc
        x[f] = Fraction(1)
        for row, c in zip(R, piv):
            x[c] = -row[f]
        out.append(x)
    return out


def primitive(vec, p: int):
    """Scale a rational vector so its entries are p-integral with at least one unit."""
    v = min(valuation(x, p) for x in vec if x != 0)
    s = Fraction(p) ** (-v)
    return [x * s for x in vec]


def residue(q, p: int, n: int) -> int:
    """``q mod p^n`` for a p-integral rational."""
    q = Fraction(q)
    m = p ** n
    return q.numerator * pow(q.denominator, -1, m) % m


def finite_differences(values):
    """Newton forward differences: coefficients of ``f`` in the binomial basis."""
    vals = list(values)
    coeffs = []
    while vals:
        coeffs.append(vals[0])
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return coeffs


def gen_binom(x: int, k: int) -> int:
    """``binomial(x, k)`` for any integer ``x`` via the falling factorial."""
    num = 1
    for i in range(k):
        num *= x - i
    return num // math.factorial(k)


OPS = ("+", "-", "*", "/")


def random_expression(rng: random.Random, depth: int = 3, lo: int = -10 ** 6, hi: int = 10 ** 6):
    """A random arithmetic tree as nested tuples with integer leaves."""
    if depth == 0 or rng.random() < 0.25:
        return rng.randint(lo, hi)
    return (rng.choice(OPS), random_expression(rng, depth - 1, lo, hi), random_expression(rng, depth - 1, lo, hi))


def eval_tree(tree, leaf, ops):
    if not isinstance(tree, tuple):
        return leaf(tree)
    op, a, b = tree
    return ops[op](eval_tree(a, leaf, ops), eval_tree(b, leaf, ops))


FRACTION_OPS = {"+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b,
                "/": lambda a, b: a / b}
