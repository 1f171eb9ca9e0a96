"""Terms denoting uniformly differentiable functions Z_p -> Q_p.

Terms are immutable trees built from constants, monomials ``x^n``, twists
``lam^x``, Dirichlet characters, shifts, sums, products and scalar
multiples.  They can be combined with ``+``, ``*`` and ``**``::

    f = 3 * X**2 * twist(make(5, 6, 6)) + shift(X, 1)

Evaluation goes through :func:`compile_term`, which turns a term into a
vectorized evaluator over blocks of consecutive integers modulo ``p^k``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from .characters import DirichletCharacter
from .errors import DomainError
from .padic import PadicNumber, make, p_pow, pow_int

__all__ = [
    "UDFunction",
    "Const",
    "Power",
    "Twist",
    "Char",
    "Shift",
    "Add",
    "Mul",
    "Scale",
    "X",
    "const",
    "monomial",
    "twist",
    "character",
    "shift",
    "evaluate",
    "compile_term",
    "random_function",
]


class UDFunction:
    """Base class of all DSL terms."""

    __slots__ = ()

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return Add((self, other))

    def __radd__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return Add((other, self))

    def __sub__(self, other):
        return self + (-1) * _lift(other)

    def __rsub__(self, other):
        return _lift(other) + (-1) * self

    def __neg__(self):
        return Scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicNumber)):
            return Scale(other, self)
        if isinstance(other, UDFunction):
            return Mul((self, other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, PadicNumber)):
            return Scale(other, self)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError(f"exponent must be a non-negative integer, got {n!r}")
        if self == Power(1):
            return Power(n)
        if n == 0:
            return Const(1)
        return Mul((self,) * n)

    def __call__(self, x: int, p: int, prec: int) -> PadicNumber:
        return evaluate(self, x, p, prec)


def _lift(x):
    if isinstance(x, UDFunction):
        return x
    if isinstance(x, (int, Fraction, PadicNumber)):
        return Const(x)
    return NotImplemented


@dataclass(frozen=True, eq=True)
class Const(UDFunction):
    value: int | Fraction | PadicNumber

    def __str__(self):
        return str(self.value.to_fraction() if isinstance(self.value, PadicNumber) else self.value)


@dataclass(frozen=True, eq=True)
class Power(UDFunction):
    n: int

    def __str__(self):
        return "1" if self.n == 0 else "x" if self.n == 1 else f"x^{self.n}"


@dataclass(frozen=True, eq=True)
class Twist(UDFunction):
    """``x -> base^x``; uniformly differentiable only when base = 1 mod p."""

    base: int | Fraction | PadicNumber

    def __str__(self):
        b = self.base.to_fraction() if isinstance(self.base, PadicNumber) else self.base
        return f"twist({b})"


@dataclass(frozen=True, eq=True)
class Char(UDFunction):
    chi: DirichletCharacter

    def __str__(self):
        kind = "quad" if self.chi.kind == "quadratic" else self.chi.label.split(":")[0]
        return f"chi({kind},{self.chi.modulus})"


@dataclass(frozen=True, eq=True)
class Shift(UDFunction):
    f: UDFunction
    by: int

    def __str__(self):
        return f"shift({self.f}, {self.by})"


@dataclass(frozen=True, eq=True)
class Add(UDFunction):
    terms: tuple

    def __str__(self):
        return " + ".join(str(t) for t in self.terms)


@dataclass(frozen=True, eq=True)
class Mul(UDFunction):
    factors: tuple

    def __str__(self):
        return " * ".join(f"({f})" if isinstance(f, Add) else str(f) for f in self.factors)


@dataclass(frozen=True, eq=True)
class Scale(UDFunction):
    c: int | Fraction | PadicNumber
    f: UDFunction

    def __str__(self):
        c = self.c.to_fraction() if isinstance(self.c, PadicNumber) else self.c
        inner = f"({self.f})" if isinstance(self.f, Add) else str(self.f)
        return f"{c} * {inner}"


X = Power(1)


def const(c) -> Const:
    return Const(c)


def monomial(n: int) -> Power:
    if n < 0:
        raise DomainError(f"monomial degree must be >= 0, got {n}")
    return Power(n)


def twist(base) -> Twist:
    return Twist(base)


def character(chi: DirichletCharacter) -> Char:
    return Char(chi)


def _scalar_pow(base, n):
    if isinstance(base, PadicNumber):
        return pow_int(base, n)
    return Fraction(base) ** n if isinstance(base, Fraction) else base**n


def shift(f: UDFunction, n: int) -> UDFunction:
    """The term for ``x -> f(x + n)``, pushed through the tree."""
    if n < 0:
        raise DomainError(f"shift must be non-negative, got {n}")
    if n == 0 or isinstance(f, Const):
        return f
    if isinstance(f, Twist):
        return Scale(_scalar_pow(f.base, n), f)
    if isinstance(f, Shift):
        return shift(f.f, f.by + n)
    if isinstance(f, Add):
        return Add(tuple(shift(t, n) for t in f.terms))
    if isinstance(f, Mul):
        return Mul(tuple(shift(t, n) for t in f.factors))
    if isinstance(f, Scale):
        return Scale(f.c, shift(f.f, n))
    return Shift(f, n)


# -- tree queries --------------------------------------------------------------


def walk(f: UDFunction):
    yield f
    if isinstance(f, Shift):
        yield from walk(f.f)
    elif isinstance(f, Scale):
        yield from walk(f.f)
    elif isinstance(f, Add):
        for t in f.terms:
            yield from walk(t)
    elif isinstance(f, Mul):
        for t in f.factors:
            yield from walk(t)


def scalars(f: UDFunction):
    for node in walk(f):
        if isinstance(node, Const):
            yield node.value
        elif isinstance(node, Twist):
            yield node.base
        elif isinstance(node, Scale):
            yield node.c


def scalar_prec(f: UDFunction) -> int | None:
    """Smallest precision carried by a p-adic scalar or character in ``f``."""
    precs = [s.prec for s in scalars(f) if isinstance(s, PadicNumber)]
    precs += [node.chi.prec for node in walk(f) if isinstance(node, Char)]
    return min(precs) if precs else None


def check_prime_of(f: UDFunction, p: int) -> None:
    for s in scalars(f):
        if isinstance(s, PadicNumber) and s.p != p:
            raise DomainError(f"scalar {s} is at prime {s.p}, expected {p}")
    for node in walk(f):
        if isinstance(node, Char) and node.chi.p != p:
            raise DomainError(f"character {node.chi.label} realized at prime {node.chi.p}, expected {p}")


def check_uniformly_differentiable(f: UDFunction, p: int) -> None:
    """Reject twists whose base is not congruent to 1 mod p.

    For such bases ``lam^(x + p^N)`` tends to ``omega(lam) * lam^x`` rather than
    ``lam^x``, so ``lam^x`` does not extend continuously to Z_p.
    """
    for node in walk(f):
        if isinstance(node, Twist):
            b = node.base
            if isinstance(b, PadicNumber):
                ok = (b - 1).valuation >= 1
                b = b.to_fraction()
            else:
                d = Fraction(b) - 1
                ok = d.denominator % p != 0 and d.numerator % p == 0
            if not ok:
                raise DomainError(
                    f"twist base {b} is not 1 mod {p}: x -> base^x is not uniformly differentiable on Z_{p}"
                )


def characters_of(f: UDFunction):
    return [node.chi for node in walk(f) if isinstance(node, Char)]


# -- evaluation ----------------------------------------------------------------

# residues below this bound multiply without int64 overflow
_INT64_SAFE = 3_037_000_499


def dtype_for(m: int):
    return np.int64 if m <= _INT64_SAFE else object


def _residue(c, p: int, m: int) -> int:
    if isinstance(c, PadicNumber):
        if c.p != p:
            raise DomainError(f"scalar {c} is at prime {c.p}, expected {p}")
        return c.residue_mod(m)
    c = Fraction(c)
    if c.denominator % p == 0:
        raise DomainError(f"scalar {c} is not in Z_{p}")
    return c.numerator * pow(c.denominator, -1, m) % m


def _geometric(b: int, m: int, length: int, dtype) -> np.ndarray:
    """``[1, b, b^2, ..., b^(length-1)] mod m`` by repeated doubling."""
    table = np.empty(length, dtype=dtype)
    table[0] = 1
    k = 1
    while k < length:
        n = min(k, length - k)
        table[k:k + n] = table[:n] * pow(b, k, m) % m
        k += n
    return table


class _Block:
    __slots__ = ("start", "cache")

    def __init__(self, start: int):
        self.start = start
        self.cache = {}


def compile_term(f: UDFunction, p: int, m: int, length: int):
    """Vectorized evaluator for ``f`` modulo ``m``.

    Returns ``ev(start)`` giving the residues of ``f(start), ...,
    f(start + length - 1)`` mod ``m`` as a numpy array (or a Python int when
    ``f`` is constant).
    """
    dtype = dtype_for(m)
    idx = np.arange(length, dtype=np.int64).astype(dtype)

    def power(block, offset, n):
        key = (offset, n)
        cached = block.cache.get(key)
        if cached is not None:
            return cached
        if n == 1:
            out = (idx + ((block.start + offset) % m)) % m
        else:
            out = power(block, offset, n - 1) * power(block, offset, 1) % m
        block.cache[key] = out
        return out

    def build(term, offset):
        if isinstance(term, Const):
            r = _residue(term.value, p, m)
            return lambda block: r
        if isinstance(term, Power):
            n = term.n
            if n == 0:
                return lambda block: 1
            return lambda block: power(block, offset, n)
        if isinstance(term, Twist):
            b = _residue(term.base, p, m)
            table = _geometric(b, m, length, dtype)
            return lambda block: table * pow(b, block.start + offset, m) % m
        if isinstance(term, Char):
            F = term.chi.modulus
            values = np.array(term.chi.residues(m), dtype=dtype)
            if F == 1:
                r = int(values[0])
                return lambda block: r
            fidx = idx % F
            return lambda block: values[(fidx + (block.start + offset) % F) % F]
        if isinstance(term, Shift):
            return build(term.f, offset + term.by)
        if isinstance(term, Scale):
            c = _residue(term.c, p, m)
            inner = build(term.f, offset)
            return lambda block: inner(block) * c % m
        if isinstance(term, Add):
            parts = [build(t, offset) for t in term.terms]
            return lambda block: reduce(lambda a, b: (a + b) % m, (g(block) for g in parts))
        if isinstance(term, Mul):
            parts = [build(t, offset) for t in term.factors]
            return lambda block: reduce(lambda a, b: a * b % m, (g(block) for g in parts))
        raise TypeError(f"not a UDFunction term: {term!r}")

    root = build(f, 0)
    return lambda start: root(_Block(start))


def evaluate(f: UDFunction, x: int, p: int, prec: int) -> PadicNumber:
    """f(x) for a non-negative integer x, as an element of Z_p mod p^prec."""
    if x < 0:
        raise DomainError(f"evaluation point must be >= 0, got {x}")
    sp = scalar_prec(f)
    if sp is not None:
        prec = min(prec, sp)
    m = p_pow(p, prec)
    v = compile_term(f, p, m, 1)(x)
    v = int(v[0]) if isinstance(v, np.ndarray) else int(v)
    return make(p, prec, v)


# -- random corpus -------------------------------------------------------------


def random_function(rng: random.Random, p: int, prec: int, max_degree: int = 6, max_twists: int = 2) -> UDFunction:
    """Draw a random term: up to three monomial terms with unit-congruent twists.

    Every draw is uniformly differentiable: twist bases are 1 mod p, all
    scalars are p-adic integers, at most ``max_twists`` twists occur and
    degrees stay at or below ``max_degree``.
    """
    m = p_pow(p, prec)
    twists_left = max_twists
    terms = []
    for _ in range(rng.randint(1, 3)):
        c = make(p, prec, rng.randrange(m))
        t = monomial(rng.randint(0, max_degree))
        if twists_left and rng.random() < 0.5:
            t = t * twist(make(p, prec, 1 + p * rng.randrange(m // p)))
            twists_left -= 1
        if rng.random() < 0.3:
            t = Shift(t, rng.randint(1, 5))
        terms.append(c * t)
    return terms[0] if len(terms) == 1 else Add(tuple(terms))
