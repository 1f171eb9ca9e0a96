"""Dirichlet characters with values realized inside Z_p."""
from __future__ import annotations

import math
from dataclasses import dataclass

from sympy import factorint, isprime, primitive_root

from .errors import DomainError
from .padic import PadicNumber, check_prime, make, p_pow, teichmuller

KINDS = ("trivial", "quadratic", "teichmuller_power")
_ALIASES = {"quad": "quadratic", "triv": "trivial", "teich": "teichmuller_power"}


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod ``modulus`` whose value table lives in Z_p.

    ``values[a]`` is chi(a) for ``0 <= a < modulus``; evaluation anywhere else
    reduces the argument mod ``modulus``.
    """

    modulus: int
    kind: str
    power: int
    p: int
    prec: int
    values: tuple[PadicNumber, ...]

    def __call__(self, a: int) -> PadicNumber:
        return self.values[a % self.modulus]

    def residues(self, m: int) -> list[int]:
        return [v.residue_mod(m) for v in self.values]

    @property
    def label(self) -> str:
        if self.kind == "teichmuller_power":
            return f"teich{self.power}:{self.modulus}"
        return f"{'quad' if self.kind == 'quadratic' else self.kind}:{self.modulus}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "power": self.power, "modulus": self.modulus}


def _check_modulus(F: int, p: int) -> None:
    if not isinstance(F, int) or F < 1 or F % 2 == 0:
        raise DomainError(f"character modulus must be an odd positive integer, got {F!r}")
    if math.gcd(F, p) != 1:
        raise DomainError(f"character modulus {F} must be prime to p = {p}")


def _root_of_unity(e: int, p: int, prec: int) -> int:
    """Residue mod p^prec of a primitive e-th root of unity, e | p - 1."""
    h = primitive_root(p)
    return pow(teichmuller(h, p, prec).residue(), (p - 1) // e, p_pow(p, prec))


def _power_component(ell: int, a: int, j: int, p: int, prec: int) -> list[int]:
    """Table of a Z_p-valued character mod ell^a, as residues mod p^prec."""
    q = ell**a
    order = ell ** (a - 1) * (ell - 1)
    e = math.gcd(order, p - 1)
    m = p_pow(p, prec)
    table = [0] * q
    zeta = _root_of_unity(e, p, prec)
    g = primitive_root(q)
    x, z = 1, 1
    step = pow(zeta, j, m)
    for _ in range(order):
        table[x] = z
        x = x * g % q
        z = z * step % m
    return table


def make_character(kind: str, F: int, p: int, prec: int, power: int = 1) -> DirichletCharacter:
    """Build a character mod ``F`` (odd, prime to ``p``).

    ``trivial``: principal character mod F.  ``quadratic``: Legendre symbol,
    F an odd prime.  ``teichmuller_power``: on each prime-power factor
    ell^a of F, a generator g is sent to zeta^power where zeta is a primitive
    gcd(phi(ell^a), p - 1)-th root of unity obtained from Teichmuller lifts;
    the components are multiplied together by CRT.
    """
    kind = _ALIASES.get(kind, kind)
    check_prime(p)
    _check_modulus(F, p)
    if kind not in KINDS:
        raise DomainError(f"unknown character kind {kind!r}; expected one of {KINDS}")
    m = p_pow(p, prec)
    if kind == "trivial":
        res = [1 if math.gcd(a, F) == 1 else 0 for a in range(F)]
        power = 0
    elif kind == "quadratic":
        if not isprime(F):
            raise DomainError(f"quadratic character needs an odd prime modulus, got {F}")
        res = [0] + [1 if pow(a, (F - 1) // 2, F) == 1 else m - 1 for a in range(1, F)]
        power = 1
    else:
        res = [1 if math.gcd(a, F) == 1 else 0 for a in range(F)]
        for ell, a in factorint(F).items():
            comp = _power_component(ell, a, power, p, prec)
            q = ell**a
            res = [r * comp[x % q] % m for x, r in enumerate(res)]
    values = tuple(make(p, prec, r) for r in res)
    return DirichletCharacter(F, kind, power, p, prec, values)


def parse_character(text: str, p: int, prec: int) -> DirichletCharacter:
    """Parse ``kind:F`` such as ``quad:3``, ``trivial:1`` or ``teich2:7``."""
    try:
        kind, F = text.split(":")
        F = int(F)
    except ValueError:
        raise DomainError(f"character must look like 'quad:3', got {text!r}") from None
    kind = kind.strip()
    power = 1
    if kind.startswith("teich") and kind[5:].isdigit():
        power = int(kind[5:])
        kind = "teichmuller_power"
    return make_character(kind, F, p, prec, power)
