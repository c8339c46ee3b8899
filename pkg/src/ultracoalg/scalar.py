"""Precision-tracked arithmetic in Q_p.

A nonzero scalar is stored as ``p^v * u`` with ``u`` a unit known modulo
``p^r`` (``r`` digits of relative precision).  Two kinds of zero exist and
are never conflated:

* the exact zero, with valuation ``+inf``;
* an approximate zero ``O(p^N)``: a value whose first ``N`` digits vanish
  and about which nothing else is known.

All instances are immutable.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZeroOrImprecise, InsufficientPrecision, PrimeMismatch

DEFAULT_PRIME = 5
DEFAULT_PRECISION = 30

INF = math.inf


@lru_cache(maxsize=4096)
def ppow(p: int, k: int) -> int:
    return p**k


def int_valuation(n: int, p: int) -> int:
    """Valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_valuation(q, p: int):
    q = Fraction(q)
    if q == 0:
        return INF
    return int_valuation(q.numerator, p) - int_valuation(q.denominator, p)


class PadicScalar:
    __slots__ = ("prime", "valuation", "unit", "rel_precision")

    def __init__(self, prime: int, valuation, unit, rel_precision):
        # Internal constructor: callers are expected to pass a normalized triple.
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "rel_precision", rel_precision)

    def __setattr__(self, name, value):
        raise AttributeError("PadicScalar is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p: int = DEFAULT_PRIME) -> "PadicScalar":
        return cls(p, INF, 0, INF)

    @classmethod
    def approx_zero(cls, p: int, n: int) -> "PadicScalar":
        return cls(p, n, None, 0)

    @classmethod
    def from_int(cls, n: int, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION) -> "PadicScalar":
        if n == 0:
            return cls.zero(p)
        v = int_valuation(n, p)
        return cls(p, v, (n // ppow(p, v)) % ppow(p, prec), prec)

    @classmethod
    def from_rational(cls, q, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION) -> "PadicScalar":
        q = Fraction(q)
        if q == 0:
            return cls.zero(p)
        num, den = q.numerator, q.denominator
        vn, vd = int_valuation(num, p), int_valuation(den, p)
        m = ppow(p, prec)
        u = (num // ppow(p, vn)) * pow(den // ppow(p, vd), -1, m) % m
        return cls(p, vn - vd, u, prec)

    @classmethod
    def from_residue(cls, n: int, p: int, abs_prec: int) -> "PadicScalar":
        """Scalar known modulo ``p^abs_prec`` from an integer representative."""
        n %= ppow(p, abs_prec)
        if n == 0:
            return cls.approx_zero(p, abs_prec)
        v = int_valuation(n, p)
        return cls(p, v, n // ppow(p, v), abs_prec - v)

    @classmethod
    def one(cls, p: int = DEFAULT_PRIME, prec: int = DEFAULT_PRECISION) -> "PadicScalar":
        return cls(p, 0, 1, prec)

    # -- predicates ---------------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.valuation == INF

    @property
    def is_approx_zero(self) -> bool:
        return self.unit is None

    @property
    def is_zero(self) -> bool:
        """True for exact and approximate zeros alike."""
        return self.unit is None or self.valuation == INF

    @property
    def abs_precision(self):
        if self.valuation == INF:
            return INF
        return self.valuation + self.rel_precision

    # -- conversions --------------------------------------------------------

    def norm(self) -> Fraction:
        """``p^-v``; for ``O(p^N)`` this is the upper bound ``p^-N``."""
        if self.valuation == INF:
            return Fraction(0)
        return Fraction(self.prime) ** (-self.valuation)

    def lift(self) -> Fraction:
        """The rational representative ``p^v * u`` (0 for any zero)."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.prime) ** self.valuation * self.unit

    def residue(self, n: int) -> int:
        """Representative modulo ``p^n``; needs ``v >= 0`` and enough precision."""
        if self.valuation == INF:
            return 0
        if self.abs_precision < n:
            raise InsufficientPrecision(f"{self} is not known modulo {self.prime}^{n}")
        if self.valuation < 0:
            raise ValueError(f"{self} is not integral")
        if self.unit is None:
            return 0
        return self.unit * ppow(self.prime, self.valuation) % ppow(self.prime, n)

    def with_abs_precision(self, n: int) -> "PadicScalar":
        """Reduce (never extend) the absolute precision to ``n``."""
        if self.abs_precision <= n:
            return self
        if self.valuation >= n:
            return PadicScalar.approx_zero(self.prime, n)
        r = n - self.valuation
        return PadicScalar(self.prime, self.valuation, self.unit % ppow(self.prime, r), r)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "PadicScalar":
        if isinstance(other, PadicScalar):
            if other.prime != self.prime:
                raise PrimeMismatch(f"primes {self.prime} and {other.prime}")
            return other
        prec = self.rel_precision if 0 < self.rel_precision < INF else DEFAULT_PRECISION
        if isinstance(other, int):
            return _small_int(other, self.prime, prec)
        if isinstance(other, Fraction):
            return PadicScalar.from_rational(other, self.prime, prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.valuation == INF:
            return other
        if other.valuation == INF:
            return self
        p = self.prime
        a = min(self.abs_precision, other.abs_precision)
        vmin = min(self.valuation, other.valuation)
        if vmin >= a:
            return PadicScalar.approx_zero(p, a)
        s = 0
        if self.unit is not None:
            s += self.unit * ppow(p, self.valuation - vmin)
        if other.unit is not None:
            s += other.unit * ppow(p, other.valuation - vmin)
        s %= ppow(p, a - vmin)
        if s == 0:
            return PadicScalar.approx_zero(p, a)
        k = 0
        while s % p == 0:
            s //= p
            k += 1
        return PadicScalar(p, vmin + k, s, a - vmin - k)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        return PadicScalar(self.prime, self.valuation, (-self.unit) % ppow(self.prime, self.rel_precision),
                           self.rel_precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.prime
        if self.valuation == INF or other.valuation == INF:
            return PadicScalar.zero(p)
        if self.unit is None or other.unit is None:
            return PadicScalar.approx_zero(p, self.valuation + other.valuation)
        r = min(self.rel_precision, other.rel_precision)
        return PadicScalar(p, self.valuation + other.valuation, self.unit * other.unit % ppow(p, r), r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise DivisionByZeroOrImprecise(f"cannot divide by {other}")
        p = self.prime
        if self.valuation == INF:
            return self
        if self.unit is None:
            return PadicScalar.approx_zero(p, self.valuation - other.valuation)
        r = min(self.rel_precision, other.rel_precision)
        m = ppow(p, r)
        return PadicScalar(p, self.valuation - other.valuation, self.unit * pow(other.unit, -1, m) % m, r)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    # -- structural identity (not numeric equality, see eq_to_precision) ----

    def _key(self):
        return (self.prime, self.valuation, self.unit, self.rel_precision)

    def __eq__(self, other):
        if not isinstance(other, PadicScalar):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PadicScalar({self})"

    def __str__(self):
        p = self.prime
        if self.valuation == INF:
            return "0"
        if self.unit is None:
            return f"O({p}^{self.valuation})"
        return f"{p}^{self.valuation} * {self.unit} + O({p}^{self.abs_precision})"

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        if self.valuation == INF:
            return {"p": str(self.prime), "v": "inf", "u": "0", "r": "inf"}
        return {
            "p": str(self.prime),
            "v": str(self.valuation),
            "u": None if self.unit is None else str(self.unit),
            "r": str(self.rel_precision),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PadicScalar":
        p = int(d["p"])
        if d["v"] == "inf":
            return cls.zero(p)
        if d["u"] is None:
            return cls.approx_zero(p, int(d["v"]))
        return cls(p, int(d["v"]), int(d["u"]), int(d["r"]))

    @classmethod
    def parse(cls, text: str, p: int | None = None) -> "PadicScalar":
        text = text.strip()
        if text == "0":
            return cls.zero(p or DEFAULT_PRIME)
        m = _APPROX_RE.fullmatch(text)
        if m:
            return cls.approx_zero(int(m["p"]), int(m["n"]))
        m = _FULL_RE.fullmatch(text)
        if not m or m["p"] != m["p2"]:
            raise ValueError(f"cannot parse p-adic scalar {text!r}")
        prime, v, u, n = int(m["p"]), int(m["v"]), int(m["u"]), int(m["n"])
        if u % prime == 0 or n <= v:
            raise ValueError(f"not a normalized p-adic scalar: {text!r}")
        return cls(prime, v, u % ppow(prime, n - v), n - v)


_APPROX_RE = re.compile(r"O\((?P<p>\d+)\^(?P<n>-?\d+)\)")
_FULL_RE = re.compile(
    r"(?P<p>\d+)\^(?P<v>-?\d+) \* (?P<u>\d+) \+ O\((?P<p2>\d+)\^(?P<n>-?\d+)\)"
)


# Coercion of bare ints (signs, small structure constants) in mixed arithmetic.
@lru_cache(maxsize=1024)
def _small_int(n: int, p: int, prec: int) -> PadicScalar:
    return PadicScalar.from_int(n, p, prec)


def arith(op: str, x: PadicScalar, y: PadicScalar) -> PadicScalar:
    if x.prime != y.prime:
        raise PrimeMismatch(f"primes {x.prime} and {y.prime}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def valuation_norm(x: PadicScalar):
    """Return ``(v, p^-v)``; ``(inf, 0)`` for the exact zero.

    For an approximate zero ``O(p^N)`` the pair is ``(N, p^-N)``, read as the
    bounds ``v >= N`` and ``|x| <= p^-N``.
    """
    if x.is_exact_zero:
        return INF, Fraction(0)
    return x.valuation, Fraction(x.prime) ** (-x.valuation)


def eq_to_precision(x: PadicScalar, y: PadicScalar, n: int) -> bool:
    """Decide ``v(x - y) >= n``.

    Raises InsufficientPrecision when the difference is an approximate zero
    known to fewer than ``n`` digits, i.e. the question cannot be settled.
    """
    if x.prime != y.prime:
        raise PrimeMismatch(f"primes {x.prime} and {y.prime}")
    d = x - y
    if d.is_exact_zero:
        return True
    if d.is_approx_zero:
        if d.valuation >= n:
            return True
        raise InsufficientPrecision(f"difference {d} undecided at {x.prime}^{n}")
    return d.valuation >= n
