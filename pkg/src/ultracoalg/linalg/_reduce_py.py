"""Sparse Gauss-Jordan over Z/p^L in pure Python.

Rows are dicts ``column -> residue``; ``prec[r]`` is the number of p-adic
digits row ``r`` is known to, and entries are kept reduced modulo
``p^prec[r]`` (so a residue of 0 means "zero at this row's precision").
"""

from __future__ import annotations

from ..errors import PrecisionExhausted


def valuation(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _find_pivot(rows, active, p):
    best = None
    for r in active:
        for c, x in rows[r].items():
            v = 0
            while x % p == 0:
                x //= p
                v += 1
            cand = (v, r, c)
            if best is None or cand < best:
                best = cand
        if best is not None and best[0] == 0:
            break
    return best


def minval_reduce(rows: list, prec: list, p: int, need: int) -> list:
    """Full-pivoting Gauss-Jordan; pivots minimise valuation, ties by row then column.

    Each pivot row is divided by its pivot, so the result has a 1 at every
    pivot and zeros elsewhere in pivot columns; all entries stay integral.
    Mutates ``rows`` and ``prec``; returns the ``(row, column)`` pivots in order.
    Raises PrecisionExhausted if a pivot would leave fewer than ``need`` digits.
    """
    col_rows: dict = {}
    for r, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    active = list(range(len(rows)))
    pivots = []
    while active:
        best = _find_pivot(rows, active, p)
        if best is None:
            break
        k, r, c = best
        P = prec[r] - k
        if P < need:
            raise PrecisionExhausted(
                f"pivot of valuation {k} leaves {P} digits, {need} required")
        M = p ** P
        pk = p ** k
        inv = pow(rows[r][c] // pk, -1, M)
        prow = {cc: (x // pk) * inv % M for cc, x in rows[r].items()}
        rows[r] = prow
        prec[r] = P
        for s in sorted(col_rows[c]):
            if s == r:
                continue
            srow = rows[s]
            a = srow[c]
            Ps = min(prec[s], P + valuation(a, p))
            Ms = p ** Ps
            if Ps < prec[s]:
                for cc in list(srow):
                    y = srow[cc] % Ms
                    if y:
                        srow[cc] = y
                    else:
                        del srow[cc]
                        col_rows[cc].discard(s)
            for cc, x in prow.items():
                y = (srow.get(cc, 0) - a * x) % Ms
                if y:
                    if cc not in srow:
                        col_rows.setdefault(cc, set()).add(s)
                    srow[cc] = y
                elif cc in srow:
                    del srow[cc]
                    col_rows[cc].discard(s)
            prec[s] = Ps
        active.remove(r)
        pivots.append((r, c))
    return pivots


def leftmost_reduce(rows: list, prec: list, p: int, order: list) -> list:
    """Gauss-Jordan whose pivot is the leftmost column (in ``order``) holding a unit.

    Applied to a saturated integral basis this yields the unique reduced basis
    whose pivot set is lexicographically smallest; no precision is lost.
    """
    pos = {c: i for i, c in enumerate(order)}
    active = list(range(len(rows)))
    pivots = []
    while active:
        best = None
        for r in active:
            for c, x in rows[r].items():
                if x % p:
                    cand = (pos[c], r)
                    if best is None or cand < best:
                        best = cand
        if best is None:
            break
        ci, r = best
        c = order[ci]
        M = p ** prec[r]
        inv = pow(rows[r][c], -1, M)
        prow = {cc: x * inv % M for cc, x in rows[r].items()}
        prow = {cc: x for cc, x in prow.items() if x}
        rows[r] = prow
        for s in range(len(rows)):
            if s == r or c not in rows[s]:
                continue
            srow = rows[s]
            a = srow[c]
            Ps = min(prec[s], prec[r])
            Ms = p ** Ps
            out = {}
            for cc in set(srow) | set(prow):
                y = (srow.get(cc, 0) - a * prow.get(cc, 0)) % Ms
                if y:
                    out[cc] = y
            rows[s] = out
            prec[s] = Ps
        active.remove(r)
        pivots.append((r, c))
    return pivots
