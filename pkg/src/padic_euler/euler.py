"""Twisted Euler numbers and polynomials, their higher-order and
character-twisted relatives, and the twisted Bernoulli analogue.

Every family has a generating function with a unit constant term in its
denominator; the recurrences below solve the resulting triangular systems
directly in Q_p.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

from .characters import DirichletCharacter
from .egf import egf_exp_linear, egf_mul, euler_egf, generalized_euler_egf
from .errors import DomainError, NotInvertible
from .padic import PadicNumber, inv, make, pow_int

__all__ = [
    "EulerTable",
    "euler_numbers",
    "euler_polynomial",
    "euler_polynomial_table",
    "distribution_sides",
    "distribution_check",
    "euler_higher_order",
    "generalized_euler_numbers",
    "bernoulli_analogue",
]

FAMILIES = ("twisted", "polynomial", "higher_order", "generalized", "bernoulli_analogue")
ROUTES = ("recurrence", "egf", "integral")


@dataclass(frozen=True)
class EulerTable:
    family: str
    params: dict
    p: int
    route: str
    values: tuple[PadicNumber, ...]

    @property
    def achieved_prec(self) -> int:
        return min(v.prec for v in self.values)

    def __getitem__(self, n: int) -> PadicNumber:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def truncate(self, prec: int) -> "EulerTable":
        """Same table with every entry reduced to at most ``prec`` digits."""
        vals = tuple(v.with_prec(min(prec, v.prec)) for v in self.values)
        return EulerTable(self.family, self.params, self.p, self.route, vals)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "p": self.p,
            "prec": self.achieved_prec,
            "route": self.route,
            "values": [dict(n=n, **v.to_json()) for n, v in enumerate(self.values)],
        }

    def rows(self):
        """``(n, value-string)`` pairs for delimited output."""
        return [(n, v.representative()) for n, v in enumerate(self.values)]


def _label(x: PadicNumber) -> str:
    r = x.rational()
    return str(r) if r is not None else x.representative()


def _unit_plus_one(lam: PadicNumber) -> PadicNumber:
    s = lam + 1
    if not s.is_unit():
        raise NotInvertible(
            f"lambda + 1 must be a p-adic unit, i.e. lambda != -1 mod {lam.p}; got lambda = {_label(lam)}"
        )
    return s


def euler_numbers(lam: PadicNumber, max_n: int) -> EulerTable:
    """``E_n(lam)`` for ``n <= max_n`` from ``(lam e^t + 1) sum E_n t^n/n! = 2``.

    ``E_0 = 2/(lam+1)`` and ``E_n = -lam/(lam+1) sum_{k<n} C(n,k) E_k``.
    """
    if max_n < 0:
        raise DomainError(f"max_n must be >= 0, got {max_n}")
    u = inv(_unit_plus_one(lam))
    ratio = -(lam * u)
    values = [2 * u]
    for n in range(1, max_n + 1):
        s = values[0]
        for k in range(1, n):
            s = s + values[k] * comb(n, k)
        values.append(ratio * s)
    return EulerTable("twisted", {"lambda": _label(lam)}, lam.p, "recurrence", tuple(values))


def _binomial_transform(numbers, x: PadicNumber, n: int) -> PadicNumber:
    """``sum_k C(n,k) numbers[k] x^(n-k)``."""
    s = numbers[n]
    xp = pow_int(x, 0)
    for k in range(n - 1, -1, -1):
        xp = xp * x
        s = s + numbers[k] * xp * comb(n, k)
    return s


def euler_polynomial(lam: PadicNumber, x: PadicNumber, n: int) -> PadicNumber:
    """``E_n(lam : x) = sum_k C(n,k) E_k(lam) x^(n-k)``."""
    table = euler_numbers(lam, n)
    return _binomial_transform(table.values, x, n)


def euler_polynomial_table(lam: PadicNumber, x: PadicNumber, max_n: int) -> EulerTable:
    table = euler_numbers(lam, max_n)
    values = tuple(_binomial_transform(table.values, x, n) for n in range(max_n + 1))
    return EulerTable("polynomial", {"lambda": _label(lam), "x": _label(x)}, lam.p, "recurrence", values)


def _check_F(F: int, p: int) -> None:
    if not isinstance(F, int) or F < 1 or F % 2 == 0:
        raise DomainError(f"F must be an odd positive integer, got {F!r}")
    if math.gcd(F, p) != 1:
        raise DomainError(f"F = {F} must be prime to p = {p}")


def distribution_sides(lam: PadicNumber, x: PadicNumber, n: int, F: int) -> tuple[PadicNumber, PadicNumber]:
    """Both sides of the distribution relation at conductor ``F``.

    Left: ``E_n(lam : x)``.  Right: ``F^n sum_{a<F} (-1)^a lam^a
    E_n(lam^F : (x+a)/F)``.
    """
    _check_F(F, lam.p)
    lhs = euler_polynomial(lam, x, n)
    lamF = pow_int(lam, F)
    _unit_plus_one(lamF)
    numbers = euler_numbers(lamF, n).values
    invF = inv(make(lam.p, x.prec, F))
    rhs = make(lam.p, lhs.prec, 0)
    lam_a = pow_int(lam, 0)
    for a in range(F):
        term = lam_a * _binomial_transform(numbers, (x + a) * invF, n)
        rhs = rhs + term if a % 2 == 0 else rhs - term
        lam_a = lam_a * lam
    return lhs, rhs * F**n


def distribution_check(lam: PadicNumber, x: PadicNumber, n: int, F: int, prec: int | None = None) -> bool:
    """True iff the distribution relation holds mod p^prec (default: the achieved precision)."""
    lhs, rhs = distribution_sides(lam, x, n, F)
    d = lhs - rhs
    if prec is None:
        return d.is_zero
    if prec > d.prec:
        return False
    return d.is_zero or d.val >= prec


def euler_higher_order(lam: PadicNumber, r: int, x: PadicNumber, max_n: int) -> EulerTable:
    """``(2/(lam e^t + 1))^r e^(x t)`` expanded through ``t^max_n``."""
    if r < 1:
        raise DomainError(f"order r must be >= 1, got {r}")
    _unit_plus_one(lam)
    base = euler_egf(lam, max_n)
    series = egf_exp_linear(x, max_n)
    for _ in range(r):
        series = egf_mul(base, series)
    params = {"lambda": _label(lam), "r": r, "x": _label(x)}
    return EulerTable("higher_order", params, lam.p, "egf", series.coeffs)


def generalized_euler_numbers(chi: DirichletCharacter, max_n: int) -> EulerTable:
    """``E_{n,chi}`` as coefficients of the character-twisted generating function."""
    if max_n < 0:
        raise DomainError(f"max_n must be >= 0, got {max_n}")
    series = generalized_euler_egf(chi, max_n)
    return EulerTable("generalized", {"chi": chi.label}, chi.p, "egf", series.coeffs)


def bernoulli_analogue(w: PadicNumber, max_n: int) -> EulerTable:
    """``B_n(w)`` from ``(w e^t - 1) sum B_n t^n/n! = t``; needs ``w - 1`` a unit."""
    if max_n < 0:
        raise DomainError(f"max_n must be >= 0, got {max_n}")
    d = w - 1
    if not d.is_unit():
        raise NotInvertible(f"w - 1 must be a p-adic unit, i.e. w != 1 mod {w.p}; got w = {_label(w)}")
    u = inv(d)
    ratio = -(w * u)
    values = [make(w.p, w.prec, 0)]
    if max_n >= 1:
        values.append(u)
    for n in range(2, max_n + 1):
        s = values[0]
        for k in range(1, n):
            s = s + values[k] * comb(n, k)
        values.append(ratio * s)
    return EulerTable("bernoulli_analogue", {"w": _label(w)}, w.p, "recurrence", tuple(values))
