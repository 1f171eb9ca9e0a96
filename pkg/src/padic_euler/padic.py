"""Fixed-precision arithmetic in Z_p and Q_p.

A :class:`PadicNumber` stores ``p^val * unit`` together with an absolute
precision ``prec``: the value is known modulo ``p^prec``.  The unit lives in
the window ``[0, p^(prec - val))`` and is prime to ``p``, so two equal values
at equal precision always have identical fields.  Zero (to the stated
precision) is a separate state with ``is_zero`` set, ``val == prec`` and
``unit == 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import isprime

from .errors import DivisionByZero, DomainError, PrecisionError

__all__ = [
    "PadicNumber",
    "PrecisionPolicy",
    "make",
    "zero",
    "one",
    "add",
    "neg",
    "mul",
    "inv",
    "pow_int",
    "teichmuller",
    "valuation",
    "coerce",
]


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise DomainError(f"p must be an odd prime, got {p!r}")
    return p


def _split(n: int, p: int) -> tuple[int, int]:
    """Return (v, u) with n = p^v * u and p not dividing u (n != 0)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _normalize(p: int, val: int, raw: int, prec: int) -> "PadicNumber":
    # value = p^val * raw, known mod p^prec
    if val >= prec or raw % p ** (prec - val) == 0:
        return PadicNumber(p, prec, 0, prec, True)
    v, u = _split(raw, p)
    val += v
    if val >= prec:
        return PadicNumber(p, prec, 0, prec, True)
    return PadicNumber(p, val, u % p ** (prec - val), prec, False)


@dataclass(frozen=True)
class PadicNumber:
    p: int
    val: int
    unit: int
    prec: int
    is_zero: bool = False

    # -- inspection -------------------------------------------------------

    @property
    def valuation(self) -> float | int:
        return math.inf if self.is_zero else self.val

    def is_unit(self) -> bool:
        return not self.is_zero and self.val == 0

    def residue(self) -> int:
        """Integer representative in ``[0, p^prec)``; requires val >= 0."""
        if self.val < 0:
            raise DomainError(f"{self} is not in Z_p")
        return p_pow(self.p, self.val) * self.unit % p_pow(self.p, self.prec)

    def residue_mod(self, m: int) -> int:
        """Reduce into Z/m for ``m = p^k`` with ``k <= prec``."""
        if self.val < 0:
            raise DomainError(f"{self} is not in Z_p")
        return p_pow(self.p, self.val) * self.unit % m

    def to_fraction(self) -> Fraction:
        """The canonical lift ``p^val * unit`` as an exact rational."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def rational(self, bound: int | None = None) -> Fraction | None:
        """Smallest rational r/s congruent to this number, if one exists.

        Searches |r|, s <= bound (default: sqrt(p^(prec-val) / 2)) by the
        half-extended Euclidean algorithm.
        """
        if self.is_zero:
            return Fraction(0)
        m = p_pow(self.p, self.prec - self.val)
        if bound is None:
            bound = math.isqrt(m // 2)
        r0, r1 = m, self.unit
        s0, s1 = 0, 1
        while r1 > bound:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        if s1 == 0 or abs(s1) > bound or math.gcd(r1, s1) != 1 or s1 % self.p == 0:
            return None
        return Fraction(r1, s1) * Fraction(self.p) ** self.val

    def with_prec(self, prec: int) -> "PadicNumber":
        """Reduce to a lower absolute precision."""
        if prec > self.prec:
            raise PrecisionError(f"cannot raise precision from {self.prec} to {prec}")
        if prec < 1:
            raise PrecisionError(f"precision must be >= 1, got {prec}")
        if self.is_zero:
            return PadicNumber(self.p, prec, 0, prec, True)
        return _normalize(self.p, self.val, self.unit, prec)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = coerce(other, self)
        return add(self, other) if other is not NotImplemented else NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        other = coerce(other, self)
        return add(self, neg(other)) if other is not NotImplemented else NotImplemented

    def __rsub__(self, other):
        other = coerce(other, self)
        return add(other, neg(self)) if other is not NotImplemented else NotImplemented

    def __mul__(self, other):
        other = coerce(other, self)
        return mul(self, other) if other is not NotImplemented else NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = coerce(other, self)
        return mul(self, inv(other)) if other is not NotImplemented else NotImplemented

    def __rtruediv__(self, other):
        other = coerce(other, self)
        return mul(other, inv(self)) if other is not NotImplemented else NotImplemented

    def __neg__(self):
        return neg(self)

    def __pow__(self, n: int):
        return pow_int(self, n)

    # -- text / JSON ---------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return f"0 + O({self.p}^{self.prec})"
        return f"{self.p}^{self.val} * {self.unit} + O({self.p}^{self.prec})"

    def representative(self) -> str:
        """Integer representative as a string, ``unit/p^k`` when val < 0."""
        if self.val >= 0:
            return str(self.residue())
        return f"{self.unit}/{self.p}^{-self.val}"

    def to_json(self) -> dict:
        return {
            "value": self.representative(),
            "p": self.p,
            "val": None if self.is_zero else self.val,
            "unit": str(self.unit),
            "prec": self.prec,
        }


@lru_cache(maxsize=4096)
def p_pow(p: int, k: int) -> int:
    return p**k


@dataclass(frozen=True)
class PrecisionPolicy:
    """Target absolute precision plus extra truncation depth for sums."""

    working_prec: int
    guard_digits: int = 2

    def __post_init__(self):
        if self.working_prec < 1:
            raise PrecisionError(f"working_prec must be >= 1, got {self.working_prec}")
        if self.guard_digits < 0:
            raise PrecisionError(f"guard_digits must be >= 0, got {self.guard_digits}")


def make(p: int, prec: int, value) -> PadicNumber:
    """Embed an integer or rational into Q_p at absolute precision ``prec``."""
    check_prime(p)
    if not isinstance(prec, int) or prec < 1:
        raise PrecisionError(f"precision must be a positive integer, got {prec!r}")
    if isinstance(value, PadicNumber):
        if value.p != p:
            raise DomainError(f"prime mismatch: {value.p} != {p}")
        return value.with_prec(min(prec, value.prec))
    value = Fraction(value)
    if value == 0:
        return PadicNumber(p, prec, 0, prec, True)
    vn, num = _split(value.numerator, p)
    vd, den = _split(value.denominator, p)
    val = vn - vd
    if val >= prec:
        return PadicNumber(p, prec, 0, prec, True)
    m = p_pow(p, prec - val)
    return PadicNumber(p, val, num * pow(den, -1, m) % m, prec, False)


def zero(p: int, prec: int) -> PadicNumber:
    return make(p, prec, 0)


def one(p: int, prec: int) -> PadicNumber:
    return make(p, prec, 1)


def coerce(x, like: PadicNumber):
    """Turn ints/Fractions into PadicNumbers matching ``like``'s context."""
    if isinstance(x, PadicNumber):
        if x.p != like.p:
            raise DomainError(f"prime mismatch: {x.p} != {like.p}")
        return x
    if isinstance(x, (int, Fraction)):
        # exact scalars carry enough precision never to be the bottleneck
        return make(like.p, max(like.prec, 1) + max(0, -like.val), x)
    return NotImplemented


def _same_prime(a: PadicNumber, b: PadicNumber) -> int:
    if a.p != b.p:
        raise DomainError(f"prime mismatch: {a.p} != {b.p}")
    return a.p


def add(a: PadicNumber, b: PadicNumber) -> PadicNumber:
    p = _same_prime(a, b)
    prec = min(a.prec, b.prec)
    v = min(a.val, b.val)
    raw = a.unit * p_pow(p, a.val - v) + b.unit * p_pow(p, b.val - v)
    return _normalize(p, v, raw, prec)


def neg(a: PadicNumber) -> PadicNumber:
    if a.is_zero:
        return a
    return _normalize(a.p, a.val, -a.unit, a.prec)


def mul(a: PadicNumber, b: PadicNumber) -> PadicNumber:
    p = _same_prime(a, b)
    # a zero known mod p^prec has valuation at least prec
    prec = min(a.prec + b.val, b.prec + a.val)
    return _normalize(p, a.val + b.val, a.unit * b.unit, prec)


def inv(a: PadicNumber) -> PadicNumber:
    if a.is_zero:
        raise DivisionByZero(f"cannot invert {a}")
    rel = a.prec - a.val
    m = p_pow(a.p, rel)
    return PadicNumber(a.p, -a.val, pow(a.unit, -1, m), -a.val + rel, False)


def pow_int(a: PadicNumber, n: int) -> PadicNumber:
    """Binary exponentiation; ``a^0 == 1`` for every ``a``, zero included."""
    if n < 0:
        raise DomainError(f"exponent must be non-negative, got {n}")
    result = make(a.p, a.prec, 1)
    base = a
    first = True
    while n:
        if n & 1:
            result = base if first else mul(result, base)
            first = False
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def teichmuller(a: int, p: int, prec: int) -> PadicNumber:
    """The (p-1)-th root of unity congruent to ``a`` mod p."""
    check_prime(p)
    if math.gcd(a, p) != 1:
        raise DomainError(f"teichmuller lift needs a unit, got {a} mod {p}")
    m = p_pow(p, prec)
    x = a % m
    while True:
        y = pow(x, p, m)
        if y == x:
            return make(p, prec, x)
        x = y


def valuation(a: PadicNumber) -> float | int:
    return a.valuation
