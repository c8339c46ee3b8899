"""Weighted free Banach spaces cut to finite rank, their vectors and operators.

A space is an ordered list of basis labels, each carrying a weight ``p^k``
(the norm of the basis vector).  Tensor products flatten labels: a label of
a tensor space with ``n`` base factors is an ``n``-tuple of base labels, a
base label is never a tuple, and the ground field ``K`` has the single label
``()``.  With this convention ``(U⊗V)⊗W`` and ``U⊗(V⊗W)`` are the same
space, as are ``V⊗K`` and ``V``.

Operators keep per-column tail bounds: ``col_tails[l]`` bounds
``||(T_true - T) e_l|| / ||e_l||`` for the part of an infinite operator that
the truncation discards.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import SpaceMismatch
from ..scalar import DEFAULT_PRECISION, PadicScalar

ZERO = Fraction(0)


def label_str(label) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(label_str(x) for x in label) + ")"
    return str(label)


def _flat(label, arity: int) -> tuple:
    return (label,) if arity == 1 else label


def _wrap(parts: tuple):
    return parts[0] if len(parts) == 1 else parts


def join_labels(a, arity_a: int, b, arity_b: int):
    return _wrap(_flat(a, arity_a) + _flat(b, arity_b))


def split_label(label, arities: Sequence[int]) -> list:
    flat = _flat(label, sum(arities))
    out, i = [], 0
    for k in arities:
        out.append(_wrap(flat[i:i + k]))
        i += k
    return out


class TruncatedSpace:
    """Rank-n cut of ``c_0(E, K)`` with weights ``p^k`` on the basis."""

    __slots__ = ("prime", "labels", "weight_exps", "arity", "tail_comment", "_index", "_hash")

    def __init__(self, prime: int, labels: Iterable, weight_exps: Iterable[int] | None = None,
                 arity: int | None = None, tail_comment: str | None = None):
        labels = tuple(labels)
        exps = tuple(int(k) for k in weight_exps) if weight_exps is not None else (0,) * len(labels)
        if len(exps) != len(labels):
            raise ValueError("one weight exponent per label is required")
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise ValueError("labels must be distinct")
        if arity is None:
            if labels and isinstance(labels[0], tuple):
                arity = len(labels[0])
            else:
                arity = 1
        for lab in labels:
            if (arity == 1) == isinstance(lab, tuple) or (arity != 1 and len(lab) != arity):
                raise ValueError(f"label {lab!r} does not have arity {arity}")
        self.prime = prime
        self.labels = labels
        self.weight_exps = exps
        self.arity = arity
        self.tail_comment = tail_comment
        self._index = index
        self._hash = hash((prime, labels, exps))

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self._index

    def index(self, label) -> int:
        return self._index[label]

    def weight_exp(self, label) -> int:
        return self.weight_exps[self._index[label]]

    def weight(self, label) -> Fraction:
        return Fraction(self.prime) ** self.weight_exps[self._index[label]]

    def dual(self) -> "TruncatedSpace":
        """Dual basis: same labels, reciprocal weights."""
        return TruncatedSpace(self.prime, self.labels, [-k for k in self.weight_exps], self.arity,
                              self.tail_comment)

    def with_weights(self, weight_exps) -> "TruncatedSpace":
        return TruncatedSpace(self.prime, self.labels, weight_exps, self.arity, self.tail_comment)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, TruncatedSpace):
            return NotImplemented
        return (self._hash == other._hash and self.prime == other.prime and self.labels == other.labels
                and self.weight_exps == other.weight_exps)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TruncatedSpace(p={self.prime}, rank={self.rank}, arity={self.arity})"

    def to_dict(self) -> dict:
        d = {
            "prime": self.prime,
            "labels": [label_str(lab) for lab in self.labels],
            "weights": [f"{self.prime}^{k}" for k in self.weight_exps],
        }
        if self.tail_comment:
            d["tail_comment"] = self.tail_comment
        return d


def scalar_space(p: int) -> TruncatedSpace:
    """The ground field K as a rank-1 unit-weight space."""
    return TruncatedSpace(p, [()], [0], arity=0)


_TENSOR_CACHE: dict = {}


def tensor_space(V: TruncatedSpace, W: TruncatedSpace) -> TruncatedSpace:
    key = (V, W)
    hit = _TENSOR_CACHE.get(key)
    if hit is not None:
        return hit
    if V.prime != W.prime:
        raise SpaceMismatch("tensor factors over different primes")
    if V.arity == 0:
        out = W
    elif W.arity == 0:
        out = V
    else:
        labels = [join_labels(a, V.arity, b, W.arity) for a in V.labels for b in W.labels]
        exps = [ka + kb for ka in V.weight_exps for kb in W.weight_exps]
        out = TruncatedSpace(V.prime, labels, exps, V.arity + W.arity)
    if len(_TENSOR_CACHE) > 20000:
        _TENSOR_CACHE.clear()
    _TENSOR_CACHE[key] = out
    return out


def tensor_spaces(*spaces: TruncatedSpace) -> TruncatedSpace:
    out = spaces[0]
    for s in spaces[1:]:
        out = tensor_space(out, s)
    return out


def direct_sum_space(spaces: Sequence[TruncatedSpace], tags: Sequence[str] | None = None) -> TruncatedSpace:
    """Direct sum of base spaces; summand ``i`` gets labels ``f"{tag_i}:{l}"``."""
    if tags is None:
        tags = [str(i) for i in range(len(spaces))]
    labels, exps = [], []
    for tag, s in zip(tags, spaces):
        if s.arity != 1:
            raise ValueError("direct sums are formed from base (arity 1) spaces")
        labels.extend(f"{tag}:{lab}" for lab in s.labels)
        exps.extend(s.weight_exps)
    return TruncatedSpace(spaces[0].prime, labels, exps)


class Vec:
    """Finite vector; absent labels carry the exact zero."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: TruncatedSpace, coeffs: Mapping | None = None, check: bool = True):
        self.space = space
        c = {}
        if coeffs:
            for lab, x in coeffs.items():
                if check and lab not in space:
                    raise SpaceMismatch(f"label {lab!r} not in space")
                if not x.is_exact_zero:
                    c[lab] = x
        self.coeffs = c

    @classmethod
    def zero(cls, space):
        return cls(space)

    @classmethod
    def basis(cls, space: TruncatedSpace, label, prec: int = DEFAULT_PRECISION) -> "Vec":
        return cls(space, {label: PadicScalar.one(space.prime, prec)})

    @classmethod
    def from_ints(cls, space: TruncatedSpace, values: Mapping, prec: int = DEFAULT_PRECISION) -> "Vec":
        p = space.prime
        return cls(space, {lab: PadicScalar.from_rational(x, p, prec) for lab, x in values.items()})

    @classmethod
    def from_list(cls, space: TruncatedSpace, values: Sequence, prec: int = DEFAULT_PRECISION) -> "Vec":
        return cls.from_ints(space, dict(zip(space.labels, values)), prec)

    def __getitem__(self, label) -> PadicScalar:
        x = self.coeffs.get(label)
        if x is None:
            if label not in self.space:
                raise KeyError(label)
            return PadicScalar.zero(self.space.prime)
        return x

    def items(self):
        """Coefficients in canonical label order."""
        idx = self.space.index
        return sorted(self.coeffs.items(), key=lambda kv: idx(kv[0]))

    def support(self) -> list:
        return [lab for lab, x in self.items() if not x.is_zero]

    def norm(self) -> Fraction:
        """Sup of ``|c_l| * w(l)`` over known-nonzero coefficients."""
        best = None
        sp = self.space
        for lab, x in self.coeffs.items():
            if x.unit is None:
                continue
            e = sp.weight_exp(lab) - x.valuation
            if best is None or e > best:
                best = e
        return ZERO if best is None else Fraction(sp.prime) ** best

    def precision_floor(self) -> Fraction:
        """Largest norm an approximate-zero coefficient could hide."""
        best = None
        sp = self.space
        for lab, x in self.coeffs.items():
            if x.unit is None:
                e = sp.weight_exp(lab) - x.valuation
                if best is None or e > best:
                    best = e
        return ZERO if best is None else Fraction(sp.prime) ** best

    def is_zero(self) -> bool:
        return all(x.is_zero for x in self.coeffs.values())

    def _check(self, other: "Vec"):
        if other.space != self.space:
            raise SpaceMismatch("vectors live in different spaces")

    def __add__(self, other: "Vec") -> "Vec":
        self._check(other)
        c = dict(self.coeffs)
        for lab, x in other.coeffs.items():
            y = c.get(lab)
            c[lab] = x if y is None else y + x
        return Vec(self.space, c, check=False)

    def __sub__(self, other: "Vec") -> "Vec":
        self._check(other)
        c = dict(self.coeffs)
        for lab, x in other.coeffs.items():
            y = c.get(lab)
            c[lab] = -x if y is None else y - x
        return Vec(self.space, c, check=False)

    def __neg__(self) -> "Vec":
        return Vec(self.space, {lab: -x for lab, x in self.coeffs.items()}, check=False)

    def scale(self, s) -> "Vec":
        return Vec(self.space, {lab: x * s for lab, x in self.coeffs.items()}, check=False)

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def tensor(self, other: "Vec") -> "Vec":
        V, W = self.space, other.space
        T = tensor_space(V, W)
        c = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                c[join_labels(a, V.arity, b, W.arity)] = x * y
        return Vec(T, c, check=False)

    def restrict_precision(self, n: int) -> "Vec":
        return Vec(self.space, {lab: x.with_abs_precision(n) for lab, x in self.coeffs.items()}, check=False)

    def agrees(self, other: "Vec", n: int) -> bool:
        """Coefficientwise agreement to absolute precision ``n``."""
        d = self - other
        return all(x.valuation >= n for x in d.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, Vec):
            return NotImplemented
        return self.space == other.space and self.coeffs == other.coeffs

    def __repr__(self):
        body = ", ".join(f"{label_str(lab)}: {x}" for lab, x in self.items())
        return f"Vec({{{body}}})"

    def to_dict(self) -> dict:
        return {label_str(lab): x.to_dict() for lab, x in self.items()}


def pair(functional: Vec, v: Vec) -> PadicScalar:
    """``<f, v>`` for ``f`` in the dual basis of ``v``'s space."""
    if functional.space.labels != v.space.labels:
        raise SpaceMismatch("functional and vector are not on dual spaces")
    acc = PadicScalar.zero(v.space.prime)
    for lab, x in functional.coeffs.items():
        y = v.coeffs.get(lab)
        if y is not None:
            acc = acc + x * y
    return acc


def _axpy(acc: dict, vec: Vec, s: PadicScalar):
    for lab, x in vec.coeffs.items():
        y = acc.get(lab)
        t = x * s
        acc[lab] = t if y is None else y + t


def _ratio(vec_norm: Fraction, domain: TruncatedSpace, label) -> Fraction:
    if not vec_norm:
        return ZERO
    return vec_norm / domain.weight(label)


class Op:
    """Bounded operator between truncated spaces, stored column by column."""

    __slots__ = ("domain", "codomain", "columns", "col_tails")

    def __init__(self, domain: TruncatedSpace, codomain: TruncatedSpace, columns: Mapping | None = None,
                 col_tails: Mapping | None = None):
        self.domain = domain
        self.codomain = codomain
        cols = {}
        for lab, v in (columns or {}).items():
            if lab not in domain:
                raise SpaceMismatch(f"column label {lab!r} not in domain")
            if v.space != codomain:
                raise SpaceMismatch(f"column {lab!r} is not in the codomain")
            if v.coeffs:
                cols[lab] = v
        self.columns = cols
        self.col_tails = {lab: Fraction(t) for lab, t in (col_tails or {}).items() if t}

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, V: TruncatedSpace, prec: int = DEFAULT_PRECISION) -> "Op":
        return cls(V, V, {lab: Vec.basis(V, lab, prec) for lab in V.labels})

    @classmethod
    def zero(cls, V: TruncatedSpace, W: TruncatedSpace) -> "Op":
        return cls(V, W)

    @classmethod
    def from_matrix(cls, domain, codomain, rows: Sequence[Sequence], prec: int = DEFAULT_PRECISION) -> "Op":
        """``rows[i][j]`` is the coefficient of codomain label i in the image of domain label j."""
        p = domain.prime
        cols = {}
        for j, lab in enumerate(domain.labels):
            c = {}
            for i, out in enumerate(codomain.labels):
                x = rows[i][j]
                if not isinstance(x, PadicScalar):
                    x = PadicScalar.from_rational(x, p, prec)
                c[out] = x
            cols[lab] = Vec(codomain, c, check=False)
        return cls(domain, codomain, cols)

    @classmethod
    def from_function(cls, domain, codomain, fn, col_tails=None) -> "Op":
        """Build from ``fn(label) -> Vec`` evaluated on every domain label."""
        return cls(domain, codomain, {lab: fn(lab) for lab in domain.labels}, col_tails)

    # -- access -------------------------------------------------------------

    def column(self, label) -> Vec:
        v = self.columns.get(label)
        if v is None:
            if label not in self.domain:
                raise KeyError(label)
            return Vec(self.codomain)
        return v

    def entry(self, out_label, in_label) -> PadicScalar:
        return self.column(in_label)[out_label]

    def col_tail(self, label) -> Fraction:
        return self.col_tails.get(label, ZERO)

    @property
    def tail_bound(self) -> Fraction:
        return max(self.col_tails.values(), default=ZERO)

    def column_ratios(self) -> list:
        """``||T e_l|| / w(l)`` in domain label order."""
        return [_ratio(self.column(lab).norm(), self.domain, lab) for lab in self.domain.labels]

    def norm(self) -> Fraction:
        return max(self.column_ratios(), default=ZERO)

    def to_matrix(self) -> list:
        return [[self.column(j)[i] for j in self.domain.labels] for i in self.codomain.labels]

    # -- algebra ------------------------------------------------------------

    def __call__(self, v: Vec) -> Vec:
        if v.space != self.domain:
            raise SpaceMismatch("vector is not in the operator domain")
        acc = {}
        for lab, x in v.coeffs.items():
            col = self.columns.get(lab)
            if col is not None:
                _axpy(acc, col, x)
        return Vec(self.codomain, acc, check=False)

    def __matmul__(self, other: "Op") -> "Op":
        return compose(self, other)

    def _same_shape(self, other: "Op"):
        if self.domain != other.domain or self.codomain != other.codomain:
            raise SpaceMismatch("operators have different domain or codomain")

    def __add__(self, other: "Op") -> "Op":
        self._same_shape(other)
        cols = {}
        for lab in self.domain.labels:
            a, b = self.columns.get(lab), other.columns.get(lab)
            if a is None and b is None:
                continue
            cols[lab] = b if a is None else a if b is None else a + b
        return Op(self.domain, self.codomain, cols, _max_tails(self, other))

    def __sub__(self, other: "Op") -> "Op":
        self._same_shape(other)
        cols = {}
        for lab in self.domain.labels:
            a, b = self.columns.get(lab), other.columns.get(lab)
            if a is None and b is None:
                continue
            cols[lab] = -b if a is None else a if b is None else a - b
        return Op(self.domain, self.codomain, cols, _max_tails(self, other))

    def __neg__(self) -> "Op":
        return Op(self.domain, self.codomain, {lab: -v for lab, v in self.columns.items()}, self.col_tails)

    def scale(self, s) -> "Op":
        return Op(self.domain, self.codomain, {lab: v.scale(s) for lab, v in self.columns.items()},
                  self.col_tails)

    def with_tails(self, col_tails) -> "Op":
        return Op(self.domain, self.codomain, self.columns, col_tails)

    def restrict_domain(self, labels) -> "Op":
        """Restriction to the span of a subset of domain labels (new domain)."""
        labels = [lab for lab in self.domain.labels if lab in set(labels)]
        D = TruncatedSpace(self.domain.prime, labels, [self.domain.weight_exp(lab) for lab in labels],
                           self.domain.arity)
        return Op(D, self.codomain, {lab: self.columns[lab] for lab in labels if lab in self.columns},
                  {lab: self.col_tail(lab) for lab in labels})

    def agrees(self, other: "Op", n: int) -> bool:
        d = self - other
        return all(v.agrees(Vec(v.space), n) for v in d.columns.values())

    def __eq__(self, other):
        if not isinstance(other, Op):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.columns == other.columns and self.col_tails == other.col_tails)

    def __repr__(self):
        return f"Op({self.domain.rank} -> {self.codomain.rank}, tail={self.tail_bound})"

    def to_dict(self) -> dict:
        d = {
            "domain": self.domain.to_dict(),
            "codomain": self.codomain.to_dict(),
            "columns": {label_str(lab): self.columns[lab].to_dict()
                        for lab in self.domain.labels if lab in self.columns},
        }
        if self.col_tails:
            d["col_tails"] = {label_str(lab): str(t) for lab, t in self.col_tails.items()}
        return d


def _max_tails(a: Op, b: Op) -> dict:
    out = dict(a.col_tails)
    for lab, t in b.col_tails.items():
        if t > out.get(lab, ZERO):
            out[lab] = t
    return out


def compose(S: Op, T: Op) -> Op:
    """``S ∘ T`` with tail bounds propagated column by column."""
    if S.domain != T.codomain:
        raise SpaceMismatch("cannot compose: codomain of right factor is not the domain of the left")
    cols, tails = {}, {}
    s_tails = S.col_tails
    s_big = max(S.norm(), S.tail_bound) if T.col_tails else ZERO
    mid = T.codomain
    for lab, tv in T.columns.items():
        acc = {}
        worst = ZERO
        for m, x in tv.coeffs.items():
            col = S.columns.get(m)
            if col is not None:
                _axpy(acc, col, x)
            if s_tails:
                t = s_tails.get(m)
                if t and x.unit is not None:
                    cand = t * x.norm() * mid.weight(m)
                    if cand > worst:
                        worst = cand
        if acc:
            cols[lab] = Vec(S.codomain, acc, check=False)
        if worst:
            tails[lab] = worst / T.domain.weight(lab)
    for lab, t in T.col_tails.items():
        cand = s_big * t
        if cand > tails.get(lab, ZERO):
            tails[lab] = cand
    return Op(T.domain, S.codomain, cols, tails)


def compose_all(*ops: Op) -> Op:
    """``ops[0] ∘ ops[1] ∘ ...``."""
    out = ops[-1]
    for op in reversed(ops[:-1]):
        out = compose(op, out)
    return out


def tensor_op(S: Op, T: Op) -> Op:
    """``S ⊗ T``; ``(S⊗T)(e_l ⊗ e_m) = S e_l ⊗ T e_m``."""
    dom = tensor_space(S.domain, T.domain)
    cod = tensor_space(S.codomain, T.codomain)
    ad, bd = S.domain.arity, T.domain.arity
    cols, tails = {}, {}
    t_ratio = {m: _ratio(T.column(m).norm(), T.domain, m) for m in T.domain.labels} if S.col_tails else {}
    s_ratio = {l: _ratio(S.column(l).norm(), S.domain, l) for l in S.domain.labels} if T.col_tails else {}
    for l in S.domain.labels:
        sv = S.columns.get(l)
        ts = S.col_tails.get(l, ZERO)
        for m in T.domain.labels:
            tv = T.columns.get(m)
            lab = join_labels(l, ad, m, bd)
            if sv is not None and tv is not None:
                cols[lab] = sv.tensor(tv)
            tt = T.col_tails.get(m, ZERO)
            if ts or tt:
                cand = ZERO
                if ts:
                    cand = ts * max(t_ratio[m], tt)
                if tt:
                    cand = max(cand, s_ratio[l] * tt)
                if cand:
                    tails[lab] = cand
    return Op(dom, cod, cols, tails)


def tensor_ops(*ops: Op) -> Op:
    out = ops[0]
    for op in ops[1:]:
        out = tensor_op(out, op)
    return out


def permute_op(factors: Sequence[TruncatedSpace], perm: Sequence[int], prec: int = DEFAULT_PRECISION) -> Op:
    """Isometry ``⊗ factors -> ⊗ factors[perm[i]]`` moving tensor factors around."""
    dom = tensor_spaces(*factors)
    out_factors = [factors[i] for i in perm]
    cod = tensor_spaces(*out_factors)
    arities = [f.arity for f in factors]
    out_ar = [f.arity for f in out_factors]
    cols = {}
    for lab in dom.labels:
        parts = split_label(lab, arities)
        new = ()
        for i, k in zip(perm, out_ar):
            new = new + _flat(parts[i], k)
        cols[lab] = Vec.basis(cod, _wrap(new), prec)
    return Op(dom, cod, cols)


def flip(V: TruncatedSpace, W: TruncatedSpace, prec: int = DEFAULT_PRECISION) -> Op:
    """``τ(a⊗b) = b⊗a``."""
    return permute_op([V, W], [1, 0], prec)


def dual_op(T: Op) -> Op:
    """Transpose ``T': W' -> V'``; isometric, and an involution on exact operators.

    A declared tail is spread uniformly over the transposed columns, since the
    discarded part of the true operator cannot be localised after transposition.
    """
    dom, cod = T.codomain.dual(), T.domain.dual()
    acc: dict = {}
    for lab, v in T.columns.items():
        for out, x in v.coeffs.items():
            acc.setdefault(out, {})[lab] = x
    cols = {out: Vec(cod, c, check=False) for out, c in acc.items()}
    tb = T.tail_bound
    tails = {lab: tb for lab in dom.labels} if tb else None
    return Op(dom, cod, cols, tails)


def dual_space(V: TruncatedSpace) -> TruncatedSpace:
    return V.dual()


def direct_sum_op(ops: Sequence[Op], dom_tags=None, cod_tags=None) -> Op:
    """Block-diagonal operator between direct sums of base spaces."""
    dom = direct_sum_space([op.domain for op in ops], dom_tags)
    cod = direct_sum_space([op.codomain for op in ops], cod_tags)
    dt = dom_tags or [str(i) for i in range(len(ops))]
    ct = cod_tags or [str(i) for i in range(len(ops))]
    cols, tails = {}, {}
    for op, a, b in zip(ops, dt, ct):
        for lab, v in op.columns.items():
            cols[f"{a}:{lab}"] = Vec(cod, {f"{b}:{o}": x for o, x in v.coeffs.items()}, check=False)
        for lab, t in op.col_tails.items():
            tails[f"{a}:{lab}"] = t
    return Op(dom, cod, cols, tails)


def injection(spaces: Sequence[TruncatedSpace], i: int, tags=None, prec: int = DEFAULT_PRECISION) -> Op:
    total = direct_sum_space(spaces, tags)
    tag = (tags or [str(k) for k in range(len(spaces))])[i]
    return Op(spaces[i], total, {lab: Vec.basis(total, f"{tag}:{lab}", prec) for lab in spaces[i].labels})


def projection(spaces: Sequence[TruncatedSpace], i: int, tags=None, prec: int = DEFAULT_PRECISION) -> Op:
    total = direct_sum_space(spaces, tags)
    tag = (tags or [str(k) for k in range(len(spaces))])[i]
    return Op(total, spaces[i], {f"{tag}:{lab}": Vec.basis(spaces[i], lab, prec) for lab in spaces[i].labels})


def vector_norm(v: Vec) -> Fraction:
    return v.norm()


def operator_norm(T: Op) -> Fraction:
    return T.norm()


@dataclass(frozen=True)
class CompactnessMargin:
    """Finite-rank certificate standing in for compactness of an operator.

    ``ratios`` are the column ratios in domain label order.  The certificate
    holds when they stay at or below ``threshold`` from ``decay_index`` on,
    the decay starts inside the represented range, and the declared tail is
    also below the threshold.
    """

    ratios: tuple
    sorted_ratios: tuple
    threshold: Fraction
    decay_index: int | None
    tail_bound: Fraction
    compact_at_truncation: bool

    def to_dict(self) -> dict:
        return {
            "ratios": [str(r) for r in self.ratios],
            "threshold": str(self.threshold),
            "decay_index": self.decay_index,
            "tail_bound": str(self.tail_bound),
            "compact_at_truncation": self.compact_at_truncation,
        }


def _decay_index(ratios: Sequence[Fraction], threshold: Fraction):
    idx = None
    for i in range(len(ratios) - 1, -1, -1):
        if ratios[i] <= threshold:
            idx = i
        else:
            break
    return idx


def compactness_margin(T: Op, threshold: Fraction | None = None) -> CompactnessMargin:
    if threshold is None:
        threshold = Fraction(1, T.domain.prime)
    ratios = tuple(T.column_ratios())
    idx = _decay_index(ratios, threshold)
    tail = T.tail_bound
    ok = idx is not None and tail <= threshold
    return CompactnessMargin(ratios, tuple(sorted(ratios, reverse=True)), threshold, idx, tail, ok)


def tensor_margin(m1: CompactnessMargin, m2: CompactnessMargin) -> CompactnessMargin:
    """Certificate for ``S⊗T`` (lexicographic labels) derived only from the factors' certificates."""
    thr = min(m1.threshold, m2.threshold)
    n1, n2 = len(m1.ratios), len(m2.ratios)
    ratios = tuple(a * b for a in m1.ratios for b in m2.ratios)
    norms_ok = max(m1.ratios, default=ZERO) <= 1 and max(m2.ratios, default=ZERO) <= 1
    idx = None
    ok = False
    if m1.compact_at_truncation and m2.compact_at_truncation and norms_ok:
        # only labels (i, j) with i < i1 and j < i2 can exceed the threshold
        i1, i2 = m1.decay_index, m2.decay_index
        idx = 0 if i1 == 0 or i2 == 0 else (i1 - 1) * n2 + i2
        ok = idx < n1 * n2
    tail = max(m1.tail_bound, m2.tail_bound)
    return CompactnessMargin(ratios, tuple(sorted(ratios, reverse=True)), thr, idx, tail, ok and tail <= thr)
