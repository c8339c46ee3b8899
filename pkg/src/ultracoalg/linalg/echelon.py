"""Kernels, spans and echelon normal forms at finite p-adic precision.

Canonical form of a subspace ``U`` of ``K^E``: the unique basis of the lattice
``U ∩ O^E`` (raw coordinates) that is the identity on the lexicographically
first set of lead labels.  Every basis vector then has its lead coefficient
equal to 1, zeros at the other leads, and all coefficients integral, so two
subspaces agree iff their canonical bases agree coefficientwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import PrecisionExhausted, SpaceMismatch
from ..scalar import INF, PadicScalar, ppow
from . import _reduce_py, backend
from .space import Op, TruncatedSpace, Vec, label_str

# Extra digits carried beyond the target so pivots of small valuation are free.
MARGIN = 6


def _scaled_rows(dicts: Sequence[dict], p: int, need: int, L: int):
    """Integer rows (each scaled to be primitive) and their precisions, capped at ``L``."""
    rows, prec = [], []
    for d in dicts:
        vmin = None
        avail = INF
        for x in d.values():
            if x.unit is not None and (vmin is None or x.valuation < vmin):
                vmin = x.valuation
        if vmin is None:
            for x in d.values():
                if x.abs_precision < need:
                    raise PrecisionExhausted(f"row known only to O({p}^{x.abs_precision})")
            continue
        for x in d.values():
            a = x.abs_precision - vmin
            if a < avail:
                avail = a
        P = int(min(avail, L))
        if P < need:
            raise PrecisionExhausted(f"row carries {P} digits, {need} required")
        M = ppow(p, P)
        row = {}
        for c, x in d.items():
            if x.unit is None:
                continue
            r = x.unit * ppow(p, x.valuation - vmin) % M
            if r:
                row[c] = r
        rows.append(row)
        prec.append(P)
    return rows, prec


def _available(dicts: Sequence[dict]) -> int:
    best = 0
    for d in dicts:
        vmin = min((x.valuation for x in d.values() if x.unit is not None), default=None)
        if vmin is None:
            continue
        a = min(x.abs_precision - vmin for x in d.values())
        if a != INF and a > best:
            best = int(a)
    return best


def _reduce_adaptive(dicts: Sequence[dict], ncols: int, p: int, need: int, engine: str | None):
    """Full-pivot reduction with ``L = need + MARGIN``, widened once on exhaustion."""
    avail = max(_available(dicts), need)
    L = min(avail, need + MARGIN)
    while True:
        rows, prec = _scaled_rows(dicts, p, need, L)
        try:
            pivots = backend.minval_reduce(rows, prec, ncols, p, L, need, engine)
            return rows, prec, pivots
        except PrecisionExhausted:
            if L >= avail:
                raise
            L = avail


def _canonical(rows: list, prec: list, p: int, ncols: int):
    """Leftmost-unit reduction of a saturated integral basis; returns (leads, rows, precision)."""
    prec = list(prec)
    pivots = _reduce_py.leftmost_reduce(rows, prec, p, list(range(ncols)))
    if len(pivots) != len(rows):
        raise PrecisionExhausted("basis is not saturated at the working precision")
    pivots.sort(key=lambda rc: rc[1])
    P = min(prec, default=None)
    return [c for _, c in pivots], [rows[r] for r, _ in pivots], P


class Subspace:
    """Subspace of a truncated space in canonical echelon form."""

    __slots__ = ("space", "basis", "leads", "precision")

    def __init__(self, space: TruncatedSpace, basis: Sequence[Vec], leads: Sequence, precision):
        self.space = space
        self.basis = list(basis)
        self.leads = list(leads)
        self.precision = precision

    @classmethod
    def _from_rows(cls, space, leads_idx, rows, P) -> "Subspace":
        p = space.prime
        labels = space.labels
        basis = []
        for row in rows:
            coeffs = {labels[c]: PadicScalar.from_residue(x, p, P) for c, x in row.items()}
            basis.append(Vec(space, coeffs, check=False))
        return cls(space, basis, [labels[c] for c in leads_idx], P)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def coordinates(self, v: Vec) -> list:
        return [v[lab] for lab in self.leads]

    def residual(self, v: Vec) -> Vec:
        """``v`` minus its projection along the lead coordinates."""
        r = v
        for lab, b in zip(self.leads, self.basis):
            x = v[lab]
            if not x.is_zero:
                r = r - b.scale(x)
        return r

    def contains(self, v: Vec, n: int | None = None) -> bool:
        """Whether ``v`` lies in the span, to ``n`` digits relative to its largest coefficient."""
        if v.space.labels != self.space.labels:
            raise SpaceMismatch("vector is not in the ambient space")
        n = self.precision if n is None else n
        if n is None or n == INF:
            n = 20
        vmin = min((x.valuation for x in v.coeffs.values() if x.unit is not None), default=None)
        if vmin is None:
            return True
        for x in self.residual(v).coeffs.values():
            if x.unit is not None and x.valuation < vmin + n:
                return False
        return True

    def same_span(self, other: "Subspace", n: int | None = None) -> bool:
        if self.space.labels != other.space.labels or self.leads != other.leads:
            return False
        n = min((x for x in (self.precision, other.precision, n) if x is not None), default=20)
        for a, b in zip(self.basis, other.basis):
            d = a - b
            if any(x.unit is not None and x.valuation < n for x in d.coeffs.values()):
                return False
        return True

    def as_space(self, tail_comment: str | None = None) -> TruncatedSpace:
        """The subspace as a space in its own right: lead labels, weights = basis norms."""
        exps = []
        for b in self.basis:
            nrm = b.norm()
            k = 0
            p = self.space.prime
            while nrm > 1:
                nrm /= p
                k += 1
            while nrm < 1:
                nrm *= p
                k -= 1
            exps.append(k)
        return TruncatedSpace(self.space.prime, self.leads, exps, self.space.arity, tail_comment)

    def inclusion(self) -> Op:
        S = self.as_space()
        return Op(S, self.space, {lab: Vec(self.space, b.coeffs, check=False)
                                  for lab, b in zip(self.leads, self.basis)})

    def complement_labels(self) -> list:
        lead = set(self.leads)
        return [lab for lab in self.space.labels if lab not in lead]

    def quotient_space(self) -> TruncatedSpace:
        labs = self.complement_labels()
        sp = self.space
        return TruncatedSpace(sp.prime, labs, [sp.weight_exp(lab) for lab in labs], sp.arity)

    def quotient_map(self) -> Op:
        """Projection onto the span of the non-lead basis vectors, killing this subspace."""
        Q = self.quotient_space()
        P = self.precision if self.precision is not None else 30
        cols = {lab: Vec.basis(Q, lab, P) for lab in Q.labels}
        for lab, b in zip(self.leads, self.basis):
            cols[lab] = Vec(Q, {m: -x for m, x in b.coeffs.items() if m in Q}, check=False)
        return Op(self.space, Q, cols)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "leads": [label_str(lab) for lab in self.leads],
            "precision": self.precision,
            "basis": [b.to_dict() for b in self.basis],
        }

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.space.rank})"


def _vec_dicts(vectors: Sequence[Vec], space: TruncatedSpace) -> list:
    out = []
    idx = space.index
    for v in vectors:
        if v.space.labels != space.labels:
            raise SpaceMismatch("vectors must share one ambient space")
        out.append({idx(lab): x for lab, x in v.coeffs.items()})
    return out


def echelon(vectors: Sequence[Vec], target_precision: int = 20, space: TruncatedSpace | None = None,
            engine: str | None = None) -> Subspace:
    """Canonical basis of the span of ``vectors``."""
    if space is None:
        if not vectors:
            raise ValueError("an ambient space is required for an empty spanning set")
        space = vectors[0].space
    dicts = _vec_dicts(vectors, space)
    if not dicts:
        return Subspace(space, [], [], target_precision)
    p = space.prime
    rows, prec, pivots = _reduce_adaptive(dicts, space.rank, p, target_precision, engine)
    rows = [rows[r] for r, _ in pivots]
    prec = [prec[r] for r, _ in pivots]
    if not rows:
        return Subspace(space, [], [], target_precision)
    leads, crow, P = _canonical(rows, prec, p, space.rank)
    return Subspace._from_rows(space, leads, crow, P)


def _op_rows(T: Op) -> list:
    idx = T.domain.index
    cod = T.codomain.index
    rows: dict = {}
    for lab, v in T.columns.items():
        j = idx(lab)
        for out, x in v.coeffs.items():
            rows.setdefault(cod(out), {})[j] = x
    return [rows[i] for i in sorted(rows)]


def kernel_subspace(T: Op, target_precision: int = 20, engine: str | None = None) -> Subspace:
    """Canonical basis of ``{v : T v = 0}`` at ``target_precision``."""
    V = T.domain
    p = V.prime
    n = V.rank
    dicts = _op_rows(T)
    if dicts:
        rows, prec, pivots = _reduce_adaptive(dicts, n, p, target_precision, engine)
    else:
        rows, prec, pivots = [], [], []
    piv_cols = {c: r for r, c in pivots}
    P = min((prec[r] for r, _ in pivots), default=target_precision)
    M = ppow(p, P)
    krows = []
    for f in range(n):
        if f in piv_cols:
            continue
        row = {f: 1}
        for r, c in pivots:
            x = rows[r].get(f)
            if x:
                row[c] = (-x) % M
        krows.append(row)
    if not krows:
        return Subspace(V, [], [], P)
    leads, crow, P = _canonical(krows, [P] * len(krows), p, n)
    return Subspace._from_rows(V, leads, crow, P)


def kernel(T: Op, target_precision: int = 20, engine: str | None = None) -> list:
    """Echelonized kernel basis; each vector has lead coefficient 1 and sup-coefficient 1."""
    return kernel_subspace(T, target_precision, engine).basis


def rank(T: Op, target_precision: int = 20) -> int:
    return T.domain.rank - kernel_subspace(T, target_precision).dim


def image(T: Op, target_precision: int = 20) -> Subspace:
    return echelon(list(T.columns.values()), target_precision, space=T.codomain)


def in_span(v: Vec, vectors: Sequence[Vec], target_precision: int = 20) -> bool:
    return echelon(list(vectors), target_precision, space=v.space).contains(v, target_precision)


def same_span(a: Sequence[Vec], b: Sequence[Vec], target_precision: int = 20,
              space: TruncatedSpace | None = None) -> bool:
    return echelon(list(a), target_precision, space).same_span(echelon(list(b), target_precision, space),
                                                                target_precision)


def restrict_op(T: Op, U: Subspace, W: Subspace, target_precision: int = 20):
    """``T|_U : U -> W`` in lead coordinates, plus the norm of the part of ``T(U)`` outside ``W``."""
    Us, Ws = U.as_space(), W.as_space()
    cols = {}
    worst = Fraction(0)
    for lab, b in zip(U.leads, U.basis):
        img = T(Vec(T.domain, b.coeffs, check=False))
        coords = {m: img[m] for m in W.leads if not img[m].is_exact_zero}
        cols[lab] = Vec(Ws, coords, check=False)
        r = W.residual(img).norm()
        if r > worst:
            worst = r
    return Op(Us, Ws, cols), worst
