"""Truncated exponential generating functions over Q_p.

A :class:`TruncatedEGF` with coefficients ``c_0..c_M`` stands for
``sum c_n t^n / n!``.  Products are binomial convolutions, so the
coefficient of ``t^n`` of a product only depends on the operands through
``t^n``; no order guard is needed anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .characters import DirichletCharacter
from .errors import DomainError, NotInvertible
from .padic import PadicNumber, inv, make, pow_int

__all__ = [
    "TruncatedEGF",
    "egf_constant",
    "egf_exp_linear",
    "egf_mul",
    "egf_inv",
    "egf_scale_arg",
    "euler_egf",
    "generalized_euler_egf",
]


@dataclass(frozen=True)
class TruncatedEGF:
    p: int
    coeffs: tuple[PadicNumber, ...]

    def __post_init__(self):
        if any(c.p != self.p for c in self.coeffs):
            raise DomainError("all coefficients must share the prime p")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def prec(self) -> int:
        return min(c.prec for c in self.coeffs)

    def __getitem__(self, n: int) -> PadicNumber:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> "TruncatedEGF":
        return TruncatedEGF(self.p, self.coeffs[: order + 1])

    def _check(self, other: "TruncatedEGF") -> int:
        if not isinstance(other, TruncatedEGF):
            raise TypeError(f"expected TruncatedEGF, got {type(other).__name__}")
        if other.p != self.p:
            raise DomainError(f"prime mismatch: {self.p} != {other.p}")
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, (int, PadicNumber)):
            other = egf_constant(other, self.order, like=self.coeffs[0])
        n = self._check(other)
        return TruncatedEGF(self.p, tuple(self[i] + other[i] for i in range(n + 1)))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedEGF(self.p, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedEGF):
            return egf_mul(self, other)
        if isinstance(other, (int, PadicNumber)):
            return TruncatedEGF(self.p, tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, r: int):
        if r < 0:
            raise DomainError(f"power must be non-negative, got {r}")
        out = egf_constant(1, self.order, like=self.coeffs[0])
        for _ in range(r):
            out = egf_mul(out, self)
        return out

    def to_json(self) -> dict:
        return {"p": self.p, "order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}


def egf_constant(c, M: int, like: PadicNumber) -> TruncatedEGF:
    """The constant series ``c`` through order ``M``."""
    c = make(like.p, like.prec, c) if not isinstance(c, PadicNumber) else c
    zero = make(like.p, like.prec, 0)
    return TruncatedEGF(like.p, (c,) + (zero,) * M)


def egf_exp_linear(a: PadicNumber, M: int) -> TruncatedEGF:
    """``e^(a t)``: coefficients ``a^n`` for ``n <= M``."""
    coeffs = [pow_int(a, 0)]
    for _ in range(M):
        coeffs.append(coeffs[-1] * a)
    return TruncatedEGF(a.p, tuple(coeffs))


def egf_mul(A: TruncatedEGF, B: TruncatedEGF) -> TruncatedEGF:
    """Binomial convolution ``c_n = sum_k C(n, k) a_k b_(n-k)``."""
    M = A._check(B)
    out = []
    for n in range(M + 1):
        s = A[0] * B[n]
        for k in range(1, n + 1):
            s = s + A[k] * B[n - k] * comb(n, k)
        out.append(s)
    return TruncatedEGF(A.p, tuple(out))


def egf_inv(A: TruncatedEGF) -> TruncatedEGF:
    """Multiplicative inverse; the constant term must be a p-adic unit."""
    a0 = A[0]
    if not a0.is_unit():
        raise NotInvertible(f"constant term {a0} is not a p-adic unit")
    u = inv(a0)
    out = [u]
    for n in range(1, A.order + 1):
        s = A[n] * out[0]
        for k in range(1, n):
            s = s + A[n - k] * out[k] * comb(n, k)
        out.append(-(s * u))
    return TruncatedEGF(A.p, tuple(out))


def egf_scale_arg(A: TruncatedEGF, F: int) -> TruncatedEGF:
    """Substitute ``t -> F t``: ``c_n -> F^n c_n``."""
    if not isinstance(F, int) or F < 1:
        raise DomainError(f"scale factor must be a positive integer, got {F!r}")
    return TruncatedEGF(A.p, tuple(c * F**n for n, c in enumerate(A.coeffs)))


def euler_egf(lam: PadicNumber, M: int) -> TruncatedEGF:
    """``2 / (lam e^t + 1)``, whose n-th coefficient is the twisted Euler number."""
    if not (lam + 1).is_unit():
        raise NotInvertible(f"lambda + 1 must be a p-adic unit (lambda != -1 mod {lam.p}), got lambda = {lam}")
    half = make(lam.p, lam.prec, 2)
    exp_t = egf_exp_linear(make(lam.p, lam.prec, 1), M)
    return egf_inv((exp_t * lam + 1) * inv(half))


def generalized_euler_egf(chi: DirichletCharacter, M: int) -> TruncatedEGF:
    """``2 sum_{a<F} (-1)^a chi(a) e^(a t) / (e^(F t) + 1)`` for a character mod F."""
    F = chi.modulus
    if F % 2 == 0:
        raise DomainError(f"character modulus must be odd, got {F}")
    p, prec = chi.p, chi.prec
    one = make(p, prec, 1)
    numer = egf_constant(0, M, like=one)
    for a in range(F):
        if chi.values[a].is_zero:
            continue
        term = egf_exp_linear(make(p, prec, a), M) * chi.values[a]
        numer = numer + term if a % 2 == 0 else numer - term
    denom = egf_scale_arg(egf_exp_linear(one, M), F) + 1
    return egf_mul(numer * 2, egf_inv(denom))
